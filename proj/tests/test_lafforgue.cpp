#include "support.hpp"

using namespace pctest;

namespace {

DonkinExpression L(std::size_t n, int k, const Word& w) { return DonkinExpression::lambda(n, k, w); }

// f at concrete matrices, walking the terms by hand: Leibniz charpolys of
// word products, det^{-1} via the ring inverse of a Leibniz determinant.
RingValue naive_eval(const DonkinExpression& f, const std::vector<SquareMatrix>& gs) {
  const Ring& R = gs.front().ring();
  const std::size_t d = gs.front().dim();
  RingValue acc = RingValue::zero(R);
  for (const auto& [mono, c] : f.terms()) {
    RingValue term = RingValue(R, R.from_int(c));
    for (const auto& g : mono) {
      if (g.kind == DonkinGen::Kind::DetInv) {
        term = term * *leibniz_det(gs[static_cast<std::size_t>(g.slot)]).inverse();
      } else {
        SquareMatrix p = SquareMatrix::identity(R, d);
        for (int l : g.word) p = p * gs[static_cast<std::size_t>(l)];
        term = term * (static_cast<std::size_t>(g.k) <= d ? brute_charpoly(p)[static_cast<std::size_t>(g.k)] : RingValue::zero(R));
      }
    }
    acc = acc + term;
  }
  return acc;
}

std::vector<SquareMatrix> images_of(const Representation& rho, const std::vector<int>& tuple) {
  std::vector<SquareMatrix> out;
  for (int g : tuple) out.push_back(rho.image(g));
  return out;
}

std::vector<std::vector<Elem>> theta_from_charpolys(const Representation& rho) {
  std::vector<std::vector<Elem>> theta(rho.dim());
  for (const auto& m : rho.images()) {
    const auto cp = brute_charpoly(m);
    for (std::size_t k = 1; k <= rho.dim(); ++k) theta[k - 1].push_back(cp[k].elem());
  }
  return theta;
}

std::vector<int> random_tuple(std::size_t order, std::size_t n, Rng& rng) {
  std::vector<int> t(n);
  for (auto& x : t) x = static_cast<int>(uniform_below(rng, order));
  return t;
}

}  // namespace

TEST(LpcFromRep, Examples) {
  const Ring Z = Ring::integers();
  const GroupPtr s3 = symmetric_group(3);
  const LafforguePC triv = lpc_from_rep(Representation::trivial(s3, Z, 2));
  for (int g = 0; g < 6; ++g) EXPECT_EQ(theta_evaluate(triv, L(1, 1, {0}), {g}), val(Z, -2));

  Rng rng(1);
  const Representation rho = random_representation(s3, Ring::prime_field(7), 2, rng);
  const LafforguePC th = lpc_from_rep(rho);
  for (int g = 0; g < 6; ++g) EXPECT_EQ(theta_evaluate(th, L(2, 1, {0, 1}), {g, s3->inv(g)}), val(Ring::prime_field(7), -2));

  const LafforguePC sw = lpc_from_rep(swap_rep());
  EXPECT_EQ(theta_evaluate(sw, DonkinExpression::det_inv(1, 0), {1}), val(Z, -1));
  EXPECT_EQ(theta_evaluate(sw, DonkinExpression::det_inv(1, 0), {0}), val(Z, 1));
}

TEST(ThetaEvaluate, Examples) {
  const Representation rho = chi_plus_chi2();
  const Ring& F4 = rho.ring();
  const LafforguePC th = lpc_from_rep(rho);
  EXPECT_EQ(theta_evaluate(th, DonkinExpression::constant(2, 1), {1, 2}), RingValue::one(F4));

  const LafforguePC data = lpc_from_theta(rho.group(), F4, 2, theta_from_charpolys(rho));
  // Lambda_2(g g) = det rho(g^2) = w^2 w^4 = 1
  EXPECT_EQ(theta_evaluate(data, L(2, 2, {0, 1}), {1, 1}), RingValue::one(F4));
  EXPECT_EQ(theta_evaluate(th, L(2, 2, {0, 1}), {1, 1}), RingValue::one(F4));

  EXPECT_THROW(theta_evaluate(th, L(2, 1, {0}), {1}), Error);
  EXPECT_THROW(theta_evaluate(th, L(1, 1, {0}), {7}), Error);
}

TEST(ThetaEvaluate, HarvestedAgreesWithRep) {
  Rng rng(2);
  for (const Ring& R : {Ring::prime_field(5), Ring::finite_field(4), Ring::integers()})
    for (const char* name : {"C3", "S3", "klein4", "Q8"})
      for (std::size_t d = 1; d <= 3; ++d) {
        const GroupPtr g = builtin_group(name);
        const Representation rho = random_representation(g, R, d, rng);
        const LafforguePC rep = lpc_from_rep(rho);
        const LafforguePC data = lpc_from_theta(g, R, d, theta_from_charpolys(rho));
        for (int i = 0; i < 20; ++i) {
          const std::size_t n = 1 + uniform_below(rng, 3);
          const DonkinExpression f = random_donkin_expression(n, static_cast<int>(d), rng);
          const auto t = random_tuple(g->order(), n, rng);
          const RingValue expected = naive_eval(f, images_of(rho, t));
          ASSERT_EQ(theta_evaluate(rep, f, t), expected) << f.to_string();
          ASSERT_EQ(theta_evaluate(data, f, t), expected) << f.to_string();
        }
      }
}

TEST(ThetaEvaluate, AlgebraMorphism) {
  Rng rng(3);
  const Representation rho = random_representation(builtin_group("D4"), Ring::prime_field(7), 3, rng);
  const LafforguePC th = lpc_from_rep(rho);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + uniform_below(rng, 3);
    const DonkinExpression f = random_donkin_expression(n, 3, rng), g = random_donkin_expression(n, 3, rng);
    const auto t = random_tuple(8, n, rng);
    ASSERT_EQ(theta_evaluate(th, f + g, t), theta_evaluate(th, f, t) + theta_evaluate(th, g, t));
    ASSERT_EQ(theta_evaluate(th, f * g, t), theta_evaluate(th, f, t) * theta_evaluate(th, g, t));
    ASSERT_EQ(theta_evaluate(th, f.simplify_det_pairs(3), t), theta_evaluate(th, f, t));
  }
}

TEST(ThetaEvaluate, RotationOfWords) {
  Rng rng(4);
  const GroupPtr s3 = symmetric_group(3);
  const Representation rho = random_representation(s3, Ring::integers_mod(9), 2, rng);
  for (int i = 0; i < 100; ++i) {
    Word w(1 + uniform_below(rng, 4));
    for (auto& l : w) l = static_cast<int>(uniform_below(rng, 3));
    const auto t = random_tuple(6, 3, rng);
    // the matrix products of w and its rotations have equal charpolys
    Word rot = w;
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    SquareMatrix a = SquareMatrix::identity(rho.ring(), 2), b = a;
    for (int l : w) a = a * rho.image(t[static_cast<std::size_t>(l)]);
    for (int l : rot) b = b * rho.image(t[static_cast<std::size_t>(l)]);
    for (int k = 1; k <= 2; ++k) {
      ASSERT_EQ(brute_charpoly(a)[static_cast<std::size_t>(k)], brute_charpoly(b)[static_cast<std::size_t>(k)]);
      ASSERT_EQ(theta_evaluate(lpc_from_rep(rho), L(3, k, rot), t), brute_charpoly(a)[static_cast<std::size_t>(k)]);
    }
  }
}

TEST(Donkin, CanonicalFormAndArity) {
  EXPECT_EQ(L(2, 1, {1, 0}), L(2, 1, {0, 1}));
  EXPECT_EQ(L(3, 1, {2, 0, 1}), L(3, 1, {0, 1, 2}));
  EXPECT_NE(L(3, 1, {0, 2, 1}), L(3, 1, {0, 1, 2}));
  EXPECT_THROW(L(1, 1, {1}), Error);
  EXPECT_THROW(L(1, 1, {0}) + L(2, 1, {0}), Error);
  EXPECT_EQ(L(1, 2, {0}).hat(), L(2, 2, {0, 1}));
  EXPECT_EQ(L(2, 1, {0, 1}).relabel({0, 0}, 1), L(1, 1, {0, 0}));
  const DonkinExpression pair = DonkinExpression::det_inv(1, 0) * L(1, 2, {0});
  EXPECT_EQ(pair.simplify_det_pairs(2), DonkinExpression::constant(1, 1));
  EXPECT_EQ(pair.simplify_det_pairs(3), pair);
  EXPECT_EQ((DonkinExpression::det_inv(1, 0) * L(1, 3, {0})).simplify_det_pairs(3), DonkinExpression::constant(1, -1));
}

TEST(Lpc1, Examples) {
  Rng rng(5);
  const GroupPtr c4 = cyclic_group(4);
  const Representation rho = random_representation(c4, Ring::prime_field(5), 2, rng);
  const LafforguePC th = lpc_from_rep(rho);
  for (int i = 0; i < 30; ++i) {
    const DonkinExpression f = random_donkin_expression(2, 2, rng);
    EXPECT_TRUE(lpc1_defect(th, f, {0, 1}, random_tuple(4, 2, rng)).is_zero());
  }
  const Verdict v = check_lpc1(th, 9, 200);
  EXPECT_TRUE(v.accepted) << v.failure;
  EXPECT_EQ(v.checks, 200u);

  // corrupted theta(1, g): LPC1 still holds, it is a substitution identity
  auto theta = theta_from_charpolys(rho);
  theta[0][1] = Ring::prime_field(5).add(theta[0][1], Ring::prime_field(5).one());
  const LafforguePC bad = lpc_from_theta(c4, Ring::prime_field(5), 2, theta);
  const DonkinExpression f = L(2, 1, {0}) + L(2, 1, {1});
  EXPECT_TRUE(lpc1_defect(bad, f, {0, 0}, {1}).is_zero());
  EXPECT_TRUE(check_lpc1(bad, 9, 200).accepted);

  EXPECT_THROW(lpc1_defect(th, f, {0}, {1}), Error);
  EXPECT_THROW(lpc1_defect(th, f, {0, 2}, {1, 1}), Error);
}

TEST(Lpc1, RelabelMatchesNaive) {
  Rng rng(6);
  const Representation rho = random_representation(symmetric_group(3), Ring::integers(), 2, rng);
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = 1 + uniform_below(rng, 3), n = 1 + uniform_below(rng, 3);
    const DonkinExpression f = random_donkin_expression(m, 2, rng);
    std::vector<int> zeta(m);
    for (auto& z : zeta) z = static_cast<int>(uniform_below(rng, n));
    const auto t = random_tuple(6, n, rng);
    std::vector<int> pulled;
    for (int z : zeta) pulled.push_back(t[static_cast<std::size_t>(z)]);
    ASSERT_EQ(naive_eval(f.relabel(zeta, n), images_of(rho, t)), naive_eval(f, images_of(rho, pulled)));
    ASSERT_TRUE(lpc1_defect(lpc_from_rep(rho), f, zeta, t).is_zero());
  }
}

TEST(Lpc2, Examples) {
  Rng rng(7);
  const GroupPtr s3 = symmetric_group(3);
  const Representation rho = random_representation(s3, Ring::integers(), 2, rng);
  const LafforguePC th = lpc_from_rep(rho);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      // -tr(rho(a) rho(b)) + tr(rho(ab))
      const RingValue by_hand = -(rho.image(a) * rho.image(b)).trace() + rho.image(s3->mul(a, b)).trace();
      ASSERT_TRUE(by_hand.is_zero());
      ASSERT_EQ(lpc2_defect(th, L(1, 1, {0}), {a, b}), by_hand);
    }
  EXPECT_THROW(lpc2_defect(th, L(1, 1, {0}), {1}), Error);
}

TEST(Lpc2, HarvestedThetaAllBuiltinGroups) {
  Rng rng(8);
  for (const char* name : {"C2", "C3", "C4", "C5", "C6", "S3", "klein4", "D4", "Q8"}) {
    const GroupPtr g = builtin_group(name);
    const Representation rho = random_representation(g, Ring::prime_field(5), 2, rng);
    const LafforguePC data = lpc_from_theta(g, rho.ring(), 2, theta_from_charpolys(rho));
    const Verdict v = check_lpc2(data, 11, 500);
    EXPECT_TRUE(v.accepted) << name << ": " << v.failure;
    EXPECT_EQ(v.checks, 500u);
  }
}

TEST(Lpc2, ExhaustiveForSmallGroups) {
  Rng rng(9);
  for (const char* name : {"C2", "C3", "C4", "C5", "C6", "S3", "klein4"})
    for (const Ring& R : {Ring::prime_field(7), Ring::integers_mod(4)}) {
      const GroupPtr g = builtin_group(name);
      const Representation rho = random_representation(g, R, 2, rng);
      for (const LafforguePC& th : {lpc_from_rep(rho), lpc_from_theta(g, R, 2, theta_from_charpolys(rho))}) {
        const Verdict v = check_lpc2_exhaustive(th, 2);
        ASSERT_TRUE(v.accepted) << name << " " << R.name() << ": " << v.failure;
        ASSERT_GT(v.checks, 0u);
      }
    }
}

TEST(Lpc2, PerturbedTopCoefficient) {
  const Representation rho = chi_plus_chi2();
  const Ring& F4 = rho.ring();
  const GroupPtr c3 = rho.group();
  auto theta = theta_from_charpolys(rho);
  // theta(2, g) = 1; adding 1 gives 0, which cannot back det^{-1}
  auto plus_one = theta;
  plus_one[1][1] = F4.add(plus_one[1][1], F4.one());
  EXPECT_TRUE(F4.is_zero(plus_one[1][1]));
  EXPECT_THROW(lpc_from_theta(c3, F4, 2, plus_one), Error);

  // scaling by w keeps it a unit and breaks multiplicativity of det
  auto scaled = theta;
  scaled[1][1] = F4.mul(scaled[1][1], F4.generator());
  const LafforguePC bad = lpc_from_theta(c3, F4, 2, scaled);
  const RingValue def = lpc2_defect(bad, DonkinExpression::det_inv(1, 0), {1, 1});
  // Dinv(1) Dinv(2) at (g, g) minus Dinv(1) at g^2: 1/(w * w) - 1
  const RingValue w(F4, F4.generator());
  EXPECT_EQ(def, *(w * w).inverse() - RingValue::one(F4));
  const Verdict v = check_lpc2(bad, 11, 500);
  EXPECT_FALSE(v.accepted);
  ASSERT_TRUE(v.witness);
  EXPECT_FALSE(check_lpc2_exhaustive(bad).accepted);
}

TEST(Lpc2, FreeDomain) {
  const Ring F7 = Ring::prime_field(7);
  const std::vector<SquareMatrix> letters = {SquareMatrix::from_ints(F7, 2, {1, 2, 3, 4}), SquareMatrix::from_ints(F7, 2, {0, 1, 6, 0})};
  const LafforguePC th = lpc_from_letter_matrices(letters);
  EXPECT_TRUE(check_lpc2(th, 3, 300).accepted);
  EXPECT_TRUE(check_lpc1(th, 3, 300).accepted);
  EXPECT_THROW(check_lpc2_exhaustive(th), Error);
  EXPECT_THROW(theta_evaluate(th, L(1, 1, {0}), {0}), Error);
  const std::vector<Word> tuple = {{0, 1}, {1}};
  EXPECT_EQ(theta_evaluate_words(th, L(2, 1, {0, 1}), tuple), -(letters[0] * letters[1] * letters[1]).trace());

  const LafforguePC singular = lpc_from_letter_matrices({SquareMatrix::from_ints(F7, 2, {1, 0, 0, 0})});
  EXPECT_THROW(theta_evaluate_words(singular, DonkinExpression::det_inv(1, 0), {{0}}), Error);
}

TEST(LpcFromTheta, Validation) {
  const Ring F5 = Ring::prime_field(5);
  const GroupPtr c2 = cyclic_group(2);
  EXPECT_THROW(lpc_from_theta(c2, F5, 1, {{F5.one(), F5.one()}}), Error);
  EXPECT_THROW(lpc_from_theta(c2, F5, 1, {{F5.neg(F5.one())}}), Error);
  EXPECT_THROW(lpc_from_theta(c2, F5, 1, {{F5.neg(F5.one()), F5.zero()}}), Error);
  EXPECT_NO_THROW(lpc_from_theta(c2, F5, 1, {{F5.neg(F5.one()), F5.one()}}));
}

TEST(InvariancePit, Examples) {
  EXPECT_TRUE(invariance_pit(L(2, 1, {0, 1}), 2, 101, 20, 1).accepted);
  EXPECT_TRUE(invariance_pit(DonkinExpression::det_inv(1, 0), 3, 101, 20, 1).accepted);
  const MatrixFunction entry = [](const std::vector<SquareMatrix>& g) { return g[0](0, 0); };
  const Verdict v = invariance_pit(entry, 1, 2, 101, 20, 1);
  EXPECT_FALSE(v.accepted);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->size(), 4u);
  EXPECT_THROW(invariance_pit(entry, 1, 2, 7, 5, 1), Error);
  EXPECT_THROW(invariance_pit(entry, 1, 2, 102, 5, 1), Error);
}

TEST(InvariancePit, GeneratedExpressionsAccepted) {
  Rng rng(10);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 1 + uniform_below(rng, 3);
    const int d = 1 + static_cast<int>(uniform_below(rng, 3));
    const DonkinExpression f = random_donkin_expression(n, d, rng);
    const Verdict v = invariance_pit(f, static_cast<std::size_t>(d), 101, 8, static_cast<std::uint64_t>(i));
    ASSERT_TRUE(v.accepted) << f.to_string() << " d=" << d;
  }
  for (std::size_t d = 1; d <= 3; ++d)
    for (const auto& f : generator_probes(2, d, 3)) ASSERT_TRUE(invariance_pit(f, d, 103, 5, 2).accepted) << f.to_string();
}

TEST(InvariancePit, PlantedProbesRejected) {
  struct Probe {
    std::size_t n, d;
    MatrixFunction f;
  };
  std::vector<Probe> probes;
  for (std::size_t d : {2, 3})
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        probes.push_back({1, d, [i, j](const std::vector<SquareMatrix>& g) { return g[0](i, j); }});
  for (std::size_t i = 0; i < 2; ++i)
    probes.push_back({2, 2, [i](const std::vector<SquareMatrix>& g) { return (g[0] * g[1])(i, 1 - i); }});
  // trace(g1 g2^T): transposition does not commute with conjugation
  probes.push_back({2, 2, [](const std::vector<SquareMatrix>& g) {
                      const Ring& F = g[0].ring();
                      Elem acc = F.zero();
                      for (std::size_t i = 0; i < 2; ++i)
                        for (std::size_t j = 0; j < 2; ++j) acc = F.add(acc, F.mul(g[0](i, j), g[1](i, j)));
                      return acc;
                    }});
  ASSERT_EQ(probes.size(), 16u);
  // invariant part plus a raw entry is still not invariant
  for (std::size_t k = 0; k < 4; ++k)
    probes.push_back({2, 2, [k](const std::vector<SquareMatrix>& g) {
                        const Ring& F = g[0].ring();
                        const Elem inv = as_matrix_function(DonkinExpression::lambda(2, 1, {0, 1}))(g);
                        return F.add(inv, g[1](k / 2, k % 2));
                      }});
  ASSERT_EQ(probes.size(), 20u);
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const Verdict v = invariance_pit(probes[i].f, probes[i].n, probes[i].d, 101, 20, i);
    EXPECT_FALSE(v.accepted) << "probe " << i;
    EXPECT_TRUE(v.witness.has_value());
  }
}
