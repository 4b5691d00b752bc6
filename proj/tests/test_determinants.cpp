#include "support.hpp"

using namespace pctest;

namespace {

// theta[k-1][g] straight from characteristic polynomials of the images.
std::vector<std::vector<Elem>> theta_from_charpolys(const Representation& rho) {
  std::vector<std::vector<Elem>> theta(rho.dim());
  for (const auto& m : rho.images()) {
    const auto cp = brute_charpoly(m);
    for (std::size_t k = 1; k <= rho.dim(); ++k) theta[k - 1].push_back(cp[k].elem());
  }
  return theta;
}

GroupAlgebraElement element(const Ring& R, const GroupPtr& g, std::initializer_list<std::pair<int, Elem>> terms) {
  GroupAlgebraElement x(R, g);
  for (const auto& [h, c] : terms) x.add_term(h, c);
  return x;
}

// Every element of F[Gamma] with support of size <= max_support.
template <class F>
void for_each_small_element(const Ring& R, const GroupPtr& g, std::size_t max_support, F&& f) {
  const auto elems = finite_ring_elements(R);
  std::vector<Elem> nonzero;
  for (const auto& e : elems)
    if (!R.is_zero(e)) nonzero.push_back(e);
  const int n = static_cast<int>(g->order());
  std::vector<int> support;
  auto rec = [&](auto&& self, int start) -> void {
    if (!support.empty()) {
      std::vector<std::size_t> pick(support.size(), 0);
      while (true) {
        GroupAlgebraElement x(R, g);
        for (std::size_t i = 0; i < support.size(); ++i) x.set(support[i], nonzero[pick[i]]);
        f(x);
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == nonzero.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
    if (support.size() == max_support) return;
    for (int h = start; h < n; ++h) {
      support.push_back(h);
      self(self, h + 1);
      support.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

TEST(DetFromRep, Examples) {
  const Ring Z = Ring::integers();
  const GroupPtr c2 = cyclic_group(2);
  const Determinant triv = det_from_rep(Representation::trivial(c2, Z, 2));
  EXPECT_EQ(triv.evaluate(GroupAlgebraElement::one(Z, c2).scaled(Z.from_int(7))), val(Z, 49));

  const Determinant D = det_from_rep(swap_rep());
  EXPECT_EQ(D.evaluate(element(Z, c2, {{0, Z.one()}, {1, Z.one()}})), val(Z, 0));

  const Ring Zt = Ring::polynomial(Z, {"t1", "t2"});
  const RingValue t1(Zt, Zt.variable(0)), t2(Zt, Zt.variable(1));
  EXPECT_EQ(D.evaluate(element(Zt, c2, {{0, t1.elem()}, {1, t2.elem()}})), t1 * t1 - t2 * t2);
}

TEST(Evaluate, Examples) {
  const Ring Zt = Ring::polynomial(Ring::integers(), {"t1"});
  const GroupPtr c3 = cyclic_group(3);
  const RingValue t1(Zt, Zt.variable(0));
  const Determinant triv = det_from_rep(Representation::trivial(c3, Ring::integers(), 2));
  EXPECT_EQ(triv.evaluate(GroupAlgebraElement::basis(Zt, c3, 0).scaled(t1.elem())), t1 * t1);

  const Determinant gen = generic_determinant(2, 1);
  const Ring& F = gen.ring();
  auto x = [&](const char* n) { return RingValue(F, F.variable(n)); };
  EXPECT_EQ(gen.evaluate_word({0}), x("x1_11") * x("x1_22") - x("x1_12") * x("x1_21"));

  // data-backed vs the matrix computation det(I + rho(g)) = (1 + w)(1 + w^2) = 1
  const Representation rho = chi_plus_chi2();
  const Ring& F4 = rho.ring();
  const Determinant data = det_from_theta(c3, F4, 2, theta_from_charpolys(rho));
  const GroupAlgebraElement e_plus_g = element(F4, c3, {{0, F4.one()}, {1, F4.one()}});
  EXPECT_EQ(data.evaluate(e_plus_g), RingValue::one(F4));
  EXPECT_EQ(data.evaluate(e_plus_g), leibniz_det(rho_B(rho, e_plus_g)));
  EXPECT_EQ(data.kind(), "data");
}

TEST(Evaluate, DataBackedTooLargeSupport) {
  const GroupPtr c4 = cyclic_group(4);
  const Ring F5 = Ring::prime_field(5);
  const Determinant D = det_from_theta(c4, F5, 1, {{F5.neg(F5.one()), F5.neg(F5.one()), F5.neg(F5.one()), F5.neg(F5.one())}});
  GroupAlgebraElement x(F5, c4);
  for (int g = 0; g < 4; ++g) x.set(g, F5.one());
  try {
    D.evaluate(x);
    FAIL() << "support 4 accepted";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("table unavailable"), std::string::npos);
  }
}

TEST(Evaluate, ThetaMustMatchIdentity) {
  const Ring F5 = Ring::prime_field(5);
  EXPECT_THROW(det_from_theta(cyclic_group(2), F5, 2, {{F5.zero(), F5.zero()}, {F5.one(), F5.one()}}), Error);
  EXPECT_THROW(det_from_theta(cyclic_group(2), F5, 1, {{F5.one()}}), Error);
}

TEST(LambdaOf, Examples) {
  const Ring Z = Ring::integers();
  const GroupPtr s3 = symmetric_group(3);
  const Determinant triv = det_from_rep(Representation::trivial(s3, Z, 2));
  const GroupAlgebraElement zero(Z, s3);
  EXPECT_EQ(lambda_of(triv, zero, 0), val(Z, 1));
  EXPECT_EQ(lambda_of(triv, zero, 1), val(Z, 0));
  EXPECT_EQ(lambda_of(triv, zero, 2), val(Z, 0));
  const GroupAlgebraElement e = GroupAlgebraElement::one(Z, s3);
  EXPECT_EQ(lambda_of(triv, e, 0), val(Z, 1));
  EXPECT_EQ(lambda_of(triv, e, 1), val(Z, -2));
  EXPECT_EQ(lambda_of(triv, e, 2), val(Z, 1));
  EXPECT_THROW(lambda_of(triv, e, 3), Error);
}

TEST(LambdaOf, MatchesCharpolyOfImages) {
  Rng rng(21);
  for (const Ring& R : {Ring::integers(), Ring::integers_mod(4), Ring::finite_field(9), Ring::polynomial(Ring::prime_field(5), {"t"})})
    for (const char* name : {"S3", "C4", "Q8"})
      for (std::size_t d = 1; d <= 3; ++d) {
        const Representation rho = random_representation(builtin_group(name), R, d, rng);
        const Determinant D = det_from_rep(rho);
        for (std::size_t g = 0; g < rho.group()->order(); ++g) {
          const auto cp = brute_charpoly(rho.image(static_cast<int>(g)));
          for (std::size_t i = 0; i <= d; ++i) ASSERT_EQ(lambda_of_word(D, {static_cast<int>(g)}, i), cp[i]);
          ASSERT_EQ(lambda_of_word(D, {static_cast<int>(g)}, 1), -rho.image(static_cast<int>(g)).trace());
        }
      }
}

TEST(DetProduct, Examples) {
  const Ring Z = Ring::integers();
  const GroupPtr s3 = symmetric_group(3);
  const Determinant one = det_from_rep(Representation::trivial(s3, Z, 1));
  const Determinant prod = det_product(one, one);
  EXPECT_EQ(prod.dim(), 2u);
  const Determinant two = det_from_rep(Representation::trivial(s3, Z, 2));
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_group_algebra_element(Z, s3, 3, rng);
    ASSERT_EQ(prod.evaluate(x), two.evaluate(x));
    const Elem b = random_elem(Z, rng);
    ASSERT_EQ(prod.evaluate(x.scaled(b)), RingValue(Z, b).pow(2) * prod.evaluate(x));
  }
  EXPECT_THROW(det_product(one, det_from_rep(Representation::trivial(cyclic_group(3), Z, 1))), Error);
  EXPECT_THROW(det_product(one, det_from_rep(Representation::trivial(s3, Ring::prime_field(5), 1))), Error);
}

TEST(DetProduct, CharactersOverF4Exhaustive) {
  const Ring F4 = Ring::finite_field(4);
  const GroupPtr c3 = cyclic_group(3);
  const auto chars = characters(c3, F4);
  ASSERT_EQ(chars.size(), 3u);
  std::size_t checked = 0;
  for (const auto& chi : chars)
    for (const auto& psi : chars) {
      const Representation a = character_rep(c3, F4, chi), b = character_rep(c3, F4, psi);
      const Determinant prod = det_product(det_from_rep(a), det_from_rep(b));
      const Representation sum = a.direct_sum(b);
      for_each_small_element(F4, c3, 3, [&](const GroupAlgebraElement& x) {
        ASSERT_EQ(prod.evaluate(x), leibniz_det(rho_B(sum, x)));
        ++checked;
      });
    }
  // (3 * 3 + 3 * 9 + 27) nonzero elements per pair
  EXPECT_EQ(checked, 9u * 63u);
}

TEST(DetPullback, Examples) {
  const Ring F7 = Ring::prime_field(7);
  const GroupPtr c6 = cyclic_group(6), c3 = cyclic_group(3);
  std::vector<int> map(6);
  for (std::uint64_t k = 0; k < 6; ++k) map[static_cast<std::size_t>(c6->power(1, k))] = c3->power(1, k % 3);
  const GroupMorphism u(c6, c3, map);
  for (const auto& chi : characters(c3, F7)) {
    const Representation r = character_rep(c3, F7, chi);
    const Determinant pulled = det_pullback(det_from_rep(r), u);
    const Determinant direct = det_from_rep(pull_back(r, u));
    for (int g = 0; g < 6; ++g) ASSERT_EQ(pulled.evaluate_element(g), direct.evaluate_element(g));
    Rng rng(2);
    for (int i = 0; i < 40; ++i) {
      const auto x = random_group_algebra_element(F7, c6, 4, rng);
      ASSERT_EQ(pulled.evaluate(x), direct.evaluate(x));
    }
  }

  // identity morphism
  const Determinant D = det_from_rep(chi_plus_chi2());
  std::vector<int> id = {0, 1, 2};
  const Determinant same = det_pullback(D, GroupMorphism(c3, c3, id));
  for (const auto& x : {GroupAlgebraElement::basis(D.ring(), c3, 1), GroupAlgebraElement::one(D.ring(), c3)})
    EXPECT_EQ(same.evaluate(x), D.evaluate(x));

  // trivial morphism: every element behaves like the identity
  const Determinant flat = det_pullback(D, GroupMorphism(c6, c3, std::vector<int>(6, 0)));
  for (int g = 0; g < 6; ++g)
    for (std::size_t k = 0; k <= 2; ++k)
      EXPECT_EQ(lambda_of_word(flat, {g}, k), RingValue(D.ring(), lambda_of_identity(D.ring(), 2, k)));

  EXPECT_THROW(det_pullback(D, GroupMorphism(c6, c6, {0, 1, 2, 3, 4, 5})), Error);
  EXPECT_THROW(GroupMorphism(c3, c6, {0, 1, 1}), Error);
}

TEST(MultiplicativeHomogeneous, RepBackedAccepted) {
  Rng rng(31);
  for (const Ring& R : all_rings())
    for (const char* name : {"C2", "S3", "klein4"})
      for (std::size_t d = 1; d <= 3; ++d) {
        const Determinant D = det_from_rep(random_representation(builtin_group(name), R, d, rng));
        const Verdict v = check_multiplicative_homogeneous(D, 7, 500);
        ASSERT_TRUE(v.accepted) << R.name() << " " << name << " d=" << d << ": " << v.failure;
        EXPECT_EQ(v.checks, 1001u);
      }
}

TEST(MultiplicativeHomogeneous, GenericAccepted) {
  const Verdict v = check_multiplicative_homogeneous(generic_determinant(2, 2), 3, 30);
  EXPECT_TRUE(v.accepted) << v.failure;
}

TEST(MultiplicativeHomogeneous, CorruptedDataRejected) {
  const Ring F5 = Ring::prime_field(5);
  const GroupPtr c4 = cyclic_group(4);
  Rng rng(8);
  const Representation rho = random_representation(c4, F5, 2, rng);
  auto theta = theta_from_charpolys(rho);
  ASSERT_TRUE(check_multiplicative_homogeneous(det_from_theta(c4, F5, 2, theta), 1, 200).accepted);
  theta[0][1] = F5.add(theta[0][1], F5.one());
  const Verdict v = check_multiplicative_homogeneous(det_from_theta(c4, F5, 2, theta), 1, 200);
  EXPECT_FALSE(v.accepted);
  EXPECT_TRUE(v.witness.has_value());
  EXPECT_FALSE(v.failure.empty());
}

TEST(IsGlValued, Examples) {
  Rng rng(4);
  for (const char* name : {"C5", "S3", "D4"}) {
    const Determinant D = det_from_rep(random_representation(builtin_group(name), Ring::integers(), 2, rng));
    EXPECT_TRUE(is_gl_valued(D).accepted);
    // D(g) D(g^-1) = D(e) = 1
    const GroupPtr g = builtin_group(name);
    for (int h = 0; h < static_cast<int>(g->order()); ++h)
      EXPECT_EQ(D.evaluate_element(h) * D.evaluate_element(g->inv(h)), val(Ring::integers(), 1));
  }
  const Ring Z = Ring::integers();
  EXPECT_FALSE(is_gl_valued(det_from_letter_matrices({SquareMatrix::from_ints(Z, 2, {1, 0, 0, 0})})).accepted);
  const Verdict v = is_gl_valued(det_from_letter_matrices({SquareMatrix::from_ints(Z, 2, {2, 0, 0, 3})}));
  EXPECT_FALSE(v.accepted);
  EXPECT_NE(v.failure.find("6"), std::string::npos);
  EXPECT_TRUE(is_gl_valued(det_from_letter_matrices({SquareMatrix::from_ints(Z, 2, {0, 1, 1, 0})})).accepted);
}

// Data-backed evaluation is the table expansion; rep-backed is a matrix
// determinant. Exhaustive over small supports.
TEST(DataVsRep, ExhaustiveSmallSupport) {
  Rng rng(12);
  std::size_t total = 0;
  for (const Ring& F : {Ring::prime_field(2), Ring::prime_field(3), Ring::finite_field(4), Ring::prime_field(5)})
    for (const char* name : {"C2", "C3", "klein4", "S3", "C6"}) {
      const GroupPtr g = builtin_group(name);
      const Representation rho = random_representation(g, F, 2, rng);
      const Determinant data = det_from_theta(g, F, 2, theta_from_charpolys(rho));
      const Determinant rep = det_from_rep(rho);
      for_each_small_element(F, g, 3, [&](const GroupAlgebraElement& x) {
        ASSERT_EQ(data.evaluate(x), rep.evaluate(x)) << name << " " << F.name() << " " << x.to_string();
        ++total;
      });
    }
  EXPECT_GT(total, 5000u);
}

TEST(DataVsRep, PolarizedAndDimensionThree) {
  Rng rng(13);
  for (const Ring& R : {Ring::integers(), Ring::integers_mod(4), Ring::prime_field(7)})
    for (const char* name : {"S3", "Q8"})
      for (std::size_t d = 1; d <= 3; ++d) {
        const GroupPtr g = builtin_group(name);
        const Representation rho = random_representation(g, R, d, rng);
        const Determinant data = det_from_theta(g, R, d, theta_from_charpolys(rho));
        const Ring Rt = R.adjoin({"t1", "t2"});
        for (int i = 0; i < 20; ++i) {
          GroupAlgebraElement x = random_group_algebra_element(Rt, g, 3, rng);
          if (x.support_size() > 0) {
            const int h = x.terms().begin()->first;
            x.add_term(h, Rt.variable("t1"));
          }
          ASSERT_EQ(data.evaluate(x), leibniz_det(rho_B(rho, x))) << R.name() << " " << name << " d=" << d;
        }
      }
}

TEST(FreeDomain, LetterMatricesAndWordTheta) {
  const Ring Z = Ring::integers();
  const std::vector<SquareMatrix> letters = {SquareMatrix::from_ints(Z, 2, {1, 2, 0, 1}), SquareMatrix::from_ints(Z, 2, {0, 1, -1, 0})};
  const Determinant D = det_from_letter_matrices(letters);
  const Determinant W = det_from_word_theta(2, Z, 2, [&](int k, const Word& w) {
    SquareMatrix m = SquareMatrix::identity(Z, 2);
    for (int l : w) m = m * letters[static_cast<std::size_t>(l)];
    return brute_charpoly(m)[static_cast<std::size_t>(k)].elem();
  });
  Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    FreeAlgebraElement x(Z, 2);
    const std::size_t s = 1 + uniform_below(rng, 3);
    for (std::size_t j = 0; j < s; ++j) {
      Word w(uniform_below(rng, 4));
      for (auto& l : w) l = static_cast<int>(uniform_below(rng, 2));
      x.add_term(w, random_elem(Z, rng));
    }
    if (x.support_size() == 0) continue;
    ASSERT_EQ(D.evaluate(x), W.evaluate(x));
  }
  EXPECT_TRUE(check_multiplicative_homogeneous(D, 2, 200).accepted);
  EXPECT_TRUE(check_multiplicative_homogeneous(W, 2, 200).accepted);
  EXPECT_THROW(D.evaluate(GroupAlgebraElement::one(Z, cyclic_group(2))), Error);
}
