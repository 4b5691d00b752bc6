#include "support.hpp"

using namespace pctest;

namespace {

// Defect by the textbook formula, with permutations from std::next_permutation
// and cycles found by walking sigma directly.
RingValue naive_defect(const TaylorPC& t, const std::vector<int>& tuple) {
  const std::size_t m = tuple.size();
  const Ring& R = t.ring;
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  RingValue acc = RingValue::zero(R);
  do {
    std::vector<bool> seen(m);
    RingValue term = RingValue::one(R);
    int transpositions = 0;
    for (std::size_t s = 0; s < m; ++s) {
      if (seen[s]) continue;
      int g = t.group->identity();
      std::size_t len = 0;
      for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(sigma[i])) {
        seen[i] = true;
        g = t.group->mul(g, tuple[i]);
        ++len;
      }
      transpositions += static_cast<int>(len) - 1;
      term = term * t.value(g);
    }
    acc = transpositions % 2 ? acc - term : acc + term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return acc;
}

}  // namespace

TEST(Taylor, FromRepExamples) {
  const Ring Z = Ring::integers();
  const TaylorPC triv = taylor_from_rep(Representation::trivial(symmetric_group(3), Z, 2));
  for (std::size_t g = 0; g < 6; ++g) EXPECT_EQ(triv.value(static_cast<int>(g)), val(Z, 2));

  const TaylorPC sw = taylor_from_rep(swap_rep());
  EXPECT_EQ(sw.value(0), val(Z, 2));
  EXPECT_EQ(sw.value(1), val(Z, 0));

  const Representation rho = chi_plus_chi2();
  const TaylorPC t = taylor_from_rep(rho);
  const Ring& F4 = rho.ring();
  EXPECT_TRUE(t.value(0).is_zero());
  // w + w^2 = 1 by the hand table: 2 ^ 3 = 1
  EXPECT_TRUE(F4.eq(t.values[1], f4(F4, 2 ^ 3)));
  EXPECT_TRUE(F4.eq(t.values[2], F4.one()));
}

TEST(Taylor, CycleDecompose) {
  auto id = cycle_decompose({0, 1, 2});
  EXPECT_EQ(id.cycles, (std::vector<std::vector<int>>{{0}, {1}, {2}}));
  EXPECT_EQ(id.sign, 1);
  auto tr = cycle_decompose({1, 0});
  EXPECT_EQ(tr.cycles, (std::vector<std::vector<int>>{{0, 1}}));
  EXPECT_EQ(tr.sign, -1);
  auto c3 = cycle_decompose({1, 2, 0});
  EXPECT_EQ(c3.cycles, (std::vector<std::vector<int>>{{0, 1, 2}}));
  EXPECT_EQ(c3.sign, 1);
  EXPECT_THROW(cycle_decompose({0, 3}), Error);
}

TEST(Taylor, DefectExamples) {
  // d = 1, a character
  const Ring F5 = Ring::prime_field(5);
  const GroupPtr c4 = cyclic_group(4);
  const auto chars = characters(c4, F5);
  ASSERT_EQ(chars.size(), 4u);
  for (const auto& chi : chars) {
    const TaylorPC t{c4, F5, 1, chi};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const RingValue expected = t.value(a) * t.value(b) - t.value(c4->mul(a, b));
        EXPECT_EQ(taylor_defect(t, {a, b}), expected);
        EXPECT_TRUE(expected.is_zero());
      }
  }

  // the 2-dim swap trace claimed as 1-dimensional
  TaylorPC wrong = taylor_from_rep(swap_rep());
  wrong.d = 1;
  EXPECT_EQ(taylor_defect(wrong, {1, 1}), val(Ring::integers(), -2));
  EXPECT_THROW(taylor_defect(wrong, {1, 1, 1}), Error);
  const Verdict v = is_taylor_pc(wrong);
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.failure, "T(1) != d");
}

TEST(Taylor, TraceIdentityOverZAgainstNaive) {
  Rng rng(4);
  for (const char* name : {"S3", "C4", "klein4"}) {
    const GroupPtr g = builtin_group(name);
    const TaylorPC t = taylor_from_rep(random_representation(g, Ring::integers(), 2, rng));
    for_each_tuple(g->order(), 3, CheckMode::exhaustive_mode(), [&](const std::vector<int>& tup) {
      const RingValue a = taylor_defect(t, tup);
      EXPECT_TRUE(a.is_zero());
      EXPECT_EQ(a, naive_defect(t, tup));
      return true;
    });
  }
}

TEST(Taylor, NaiveAgreesOnNonPseudocharacters) {
  // arbitrary tables: the two defect computations must still agree
  Rng rng(5);
  const GroupPtr s3 = symmetric_group(3);
  const Ring Z = Ring::integers();
  for (std::size_t d = 1; d <= 3; ++d)
    for (int i = 0; i < 30; ++i) {
      TaylorPC t{s3, Z, d, {}};
      for (int g = 0; g < 6; ++g) t.values.push_back(Z.from_int(static_cast<long long>(uniform_below(rng, 7)) - 3));
      std::vector<int> tup(d + 1);
      for (auto& x : tup) x = static_cast<int>(uniform_below(rng, 6));
      ASSERT_EQ(taylor_defect(t, tup), naive_defect(t, tup));
    }
}

TEST(Taylor, AcceptsTraces) {
  Rng rng(6);
  EXPECT_TRUE(is_taylor_pc(taylor_from_rep(Representation::trivial(cyclic_group(3), Ring::integers(), 1))).accepted);
  EXPECT_TRUE(is_taylor_pc(taylor_from_rep(random_representation(symmetric_group(3), Ring::prime_field(7), 3, rng))).accepted);
}

TEST(Taylor, NonCentralTableRejected) {
  const GroupPtr s3 = symmetric_group(3);
  const Ring F5 = Ring::prime_field(5);
  TaylorPC t{s3, F5, 1, std::vector<Elem>(6, F5.zero())};
  t.values[0] = F5.one();
  // a transposition and a 3-cycle with ab != ba; put a value on ab only
  const int a = *s3->find_permutation({1, 0, 2}), b = *s3->find_permutation({1, 2, 0});
  ASSERT_NE(s3->mul(a, b), s3->mul(b, a));
  t.values[static_cast<std::size_t>(s3->mul(a, b))] = F5.from_int(3);
  const Verdict v = is_taylor_pc(t);
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.failure, "centrality");
  ASSERT_TRUE(v.witness);
  const auto& w = *v.witness;
  EXPECT_FALSE(F5.eq(t.values[static_cast<std::size_t>(s3->mul(w[0], w[1]))], t.values[static_cast<std::size_t>(s3->mul(w[1], w[0]))]));
}

TEST(Taylor, PreconditionReportedSeparately) {
  const TaylorPC t = taylor_from_rep(Representation::trivial(cyclic_group(2), Ring::prime_field(2), 2));
  const Verdict v = is_taylor_pc(t);
  EXPECT_FALSE(v.accepted);
  ASSERT_EQ(v.precondition_failures.size(), 1u);
  EXPECT_NE(v.precondition_failures[0].find("not a unit"), std::string::npos);
  EXPECT_EQ(v.failure, "precondition");
  // over Z only d <= 1 passes the precondition
  EXPECT_FALSE(is_taylor_pc(taylor_from_rep(Representation::trivial(cyclic_group(2), Ring::integers(), 2))).precondition_failures.empty());
}

TEST(Taylor, DefectSymmetricForClassFunctions) {
  Rng rng(9);
  const GroupPtr s3 = symmetric_group(3);
  const Ring F7 = Ring::prime_field(7);
  for (std::size_t d = 1; d <= 3; ++d)
    for (int i = 0; i < 40; ++i) {
      // random class function; cycle products are only rotation-invariant for these
      std::vector<Elem> per_class(6);
      for (auto& e : per_class) e = random_elem(F7, rng);
      TaylorPC t{s3, F7, d, {}};
      for (int g = 0; g < 6; ++g) {
        int rep = g;
        for (int h = 0; h < 6; ++h) rep = std::min(rep, s3->mul(s3->mul(h, g), s3->inv(h)));
        t.values.push_back(per_class[static_cast<std::size_t>(rep)]);
      }
      std::vector<int> tup(d + 1);
      for (auto& x : tup) x = static_cast<int>(uniform_below(rng, 6));
      const RingValue ref = taylor_defect(t, tup);
      std::vector<int> p = tup;
      std::shuffle(p.begin(), p.end(), rng);
      ASSERT_EQ(taylor_defect(t, p), ref);
    }
}

TEST(Taylor, RandomRepsAcrossGroupsAndRings) {
  Rng rng(10);
  std::size_t accepted = 0;
  for (const char* name : {"C2", "C3", "C4", "C5", "C6", "S3", "klein4", "D4", "Q8"})
    for (const Ring& R : {Ring::integers(), Ring::prime_field(5), Ring::integers_mod(9)})
      for (std::size_t d = 1; d <= 3; ++d)
        for (int i = 0; i < 3; ++i) {
          const GroupPtr g = builtin_group(name);
          const TaylorPC t = taylor_from_rep(random_representation(g, R, d, rng));
          const bool unit = R.is_unit(R.from_int(static_cast<long long>(pseudochar::detail::factorial(d))));
          const Verdict v = is_taylor_pc(t, 3, 300);
          if (unit) {
            ASSERT_TRUE(v.accepted) << name << " " << R.name() << " d=" << d << ": " << v.failure;
            ++accepted;
          } else {
            ASSERT_FALSE(v.precondition_failures.empty());
          }
        }
  EXPECT_GT(accepted, 100u);
}
