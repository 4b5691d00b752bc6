#include <fstream>

#include <json.hpp>

#include "support.hpp"

using namespace pctest;

namespace {

std::size_t count_of_order(const FiniteGroup& g, std::size_t k) {
  std::size_t c = 0;
  for (std::size_t x = 0; x < g.order(); ++x) c += g.element_order(static_cast<int>(x)) == k;
  return c;
}

}  // namespace

TEST(Groups, BuiltinExamples) {
  const GroupPtr c3 = builtin_group("cyclic(3)");
  EXPECT_EQ(c3->order(), 3u);
  for (int g = 0; g < 3; ++g) EXPECT_EQ(c3->power(g, 3), c3->identity());

  const GroupPtr s3 = builtin_group("symmetric(3)");
  EXPECT_EQ(s3->order(), 6u);
  EXPECT_EQ(count_of_order(*s3, 2), 3u);
  EXPECT_EQ(s3->identity(), 0);

  const GroupPtr q8 = builtin_group("quaternion8");
  EXPECT_EQ(q8->order(), 8u);
  EXPECT_EQ(count_of_order(*q8, 2), 1u);
  EXPECT_EQ(count_of_order(*q8, 4), 6u);

  EXPECT_EQ(builtin_group("klein4")->order(), 4u);
  EXPECT_EQ(count_of_order(*builtin_group("V4"), 2), 3u);
  EXPECT_EQ(builtin_group("D4")->order(), 8u);
  EXPECT_EQ(builtin_group("dihedral(12)")->order(), 24u);
  EXPECT_EQ(builtin_group("S5")->order(), 120u);
  EXPECT_EQ(builtin_group("C24")->order(), 24u);
}

TEST(Groups, UnknownNameListsCatalog) {
  try {
    builtin_group("monster");
    FAIL();
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("cyclic(n)"), std::string::npos);
    EXPECT_NE(msg.find("klein4"), std::string::npos);
  }
  EXPECT_THROW(builtin_group("cyclic(25)"), Error);
  EXPECT_THROW(builtin_group("symmetric(6)"), Error);
}

TEST(Groups, CyclicIndexOneGenerates) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const GroupPtr g = cyclic_group(n);
    EXPECT_EQ(g->element_order(1), n);
  }
}

TEST(Groups, TableValidation) {
  // not associative: a Latin square that is no group
  std::vector<int> bad = {0, 1, 2, 1, 0, 2, 2, 2, 0};
  EXPECT_THROW(FiniteGroup("bad", 3, bad), Error);
  EXPECT_THROW(FiniteGroup("short", 2, {0, 1, 1}), Error);
}

TEST(Groups, CatalogFileMatchesBuiltins) {
  std::ifstream in(std::string(PSEUDOCHAR_DATA_DIR) + "/groups.json");
  ASSERT_TRUE(in);
  const auto j = nlohmann::json::parse(in);
  ASSERT_FALSE(j.at("groups").empty());
  for (const auto& entry : j.at("groups")) {
    const GroupPtr g = builtin_group(entry.at("name").get<std::string>());
    const GroupPtr a = builtin_group(entry.at("alias").get<std::string>());
    ASSERT_EQ(g->order(), entry.at("order").get<std::size_t>());
    ASSERT_EQ(a->table(), g->table());
    std::vector<int> flat;
    for (const auto& row : entry.at("table"))
      for (const auto& x : row) flat.push_back(x.get<int>());
    EXPECT_EQ(flat, g->table()) << g->name();
    EXPECT_EQ(entry.at("generators").get<std::vector<int>>(), g->generators());
  }
}

TEST(Words, Examples) {
  const GroupPtr c3 = cyclic_group(3);
  EXPECT_EQ(evaluate_word_in_group(*c3, {}, {}), c3->identity());
  EXPECT_EQ(evaluate_word_in_group(*c3, {0, 0, 0}, {1}), c3->identity());

  const GroupPtr s3 = symmetric_group(3);
  const int t12 = *s3->find_permutation({1, 0, 2});
  const int t23 = *s3->find_permutation({0, 2, 1});
  const int w = evaluate_word_in_group(*s3, {0, 1}, {t12, t23});
  // apply (12) then (23): 1 -> 2 -> 3
  EXPECT_EQ(s3->action()[static_cast<std::size_t>(w)], (Permutation{2, 0, 1}));
  EXPECT_THROW(evaluate_word_in_group(*s3, {0, 2}, {t12, t23}), Error);
}

TEST(Words, CyclicCanonical) {
  EXPECT_EQ(cyclic_canonical({1, 0, 0}), (Word{0, 0, 1}));
  EXPECT_EQ(cyclic_canonical({0, 1, 0, 1}), (Word{0, 1, 0, 1}));
  EXPECT_EQ(cyclic_canonical({2, 1}), (Word{1, 2}));
  EXPECT_EQ(cyclic_canonical({}), Word{});
  EXPECT_TRUE(is_primitive_word({0, 1}));
  EXPECT_FALSE(is_primitive_word({0, 1, 0, 1}));
}

TEST(Words, Properties) {
  Rng rng(17);
  const GroupPtr s4 = symmetric_group(4);
  for (int i = 0; i < 300; ++i) {
    Word a(uniform_below(rng, 5)), b(uniform_below(rng, 5));
    for (auto& l : a) l = static_cast<int>(uniform_below(rng, 3));
    for (auto& l : b) l = static_cast<int>(uniform_below(rng, 3));
    std::vector<int> asg(3);
    for (auto& x : asg) x = static_cast<int>(uniform_below(rng, s4->order()));
    Word ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    ASSERT_EQ(evaluate_word_in_group(*s4, ab, asg),
              s4->mul(evaluate_word_in_group(*s4, a, asg), evaluate_word_in_group(*s4, b, asg)));
    const Word c = cyclic_canonical(ab);
    ASSERT_EQ(cyclic_canonical(c), c);
    if (!ab.empty()) {
      Word rot(ab.begin() + 1, ab.end());
      rot.push_back(ab.front());
      ASSERT_EQ(cyclic_canonical(rot), c);
    }
  }
}

TEST(Words, CharpolyConstantOnRotations) {
  const Ring F7 = Ring::prime_field(7);
  Rng rng(21);
  for (std::size_t d : {2, 3})
    for (int i = 0; i < 50; ++i) {
      std::vector<SquareMatrix> letters;
      for (int l = 0; l < 3; ++l) letters.push_back(random_matrix(F7, d, rng));
      Word w(1 + uniform_below(rng, 5));
      for (auto& l : w) l = static_cast<int>(uniform_below(rng, 3));
      const CharPoly ref = charpoly(word_product(letters, cyclic_canonical(w), F7, d));
      for (std::size_t s = 0; s < w.size(); ++s) {
        Word rot(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
        ASSERT_EQ(charpoly(word_product(letters, rot, F7, d)), ref);
      }
    }
}

TEST(RhoB, Examples) {
  const Representation rho = swap_rep();
  const GroupPtr& c2 = rho.group();
  const Ring Z = Ring::integers();
  EXPECT_EQ(rho_B(rho, GroupAlgebraElement::one(Z, c2)), SquareMatrix::identity(Z, 2));
  const auto x = GroupAlgebraElement::basis(Z, c2, 0) + GroupAlgebraElement::basis(Z, c2, 1);
  EXPECT_EQ(rho_B(rho, x), SquareMatrix::from_ints(Z, 2, {1, 1, 1, 1}));

  const Ring R = Ring::polynomial(Z, {"t1", "t2"});
  GroupAlgebraElement y(R, c2);
  y.set(0, R.variable(0));
  y.set(1, R.variable(1));
  const SquareMatrix m = rho_B(rho, y);
  EXPECT_EQ(m.to_string(), SquareMatrix::from_values(2, {RingValue(R, R.variable(0)), RingValue(R, R.variable(1)),
                                                        RingValue(R, R.variable(1)), RingValue(R, R.variable(0))})
                               .to_string());
  EXPECT_THROW(rho_B(swap_rep(Ring::prime_field(5)), GroupAlgebraElement::one(Ring::prime_field(7), c2)), Error);
}

TEST(RhoB, AlgebraMorphism) {
  Rng rng(31);
  const GroupPtr s3 = symmetric_group(3);
  for (const Ring& R : {Ring::integers(), Ring::prime_field(5), Ring::integers_mod(4)}) {
    const Representation rho = random_representation(s3, R, 3, rng);
    const Ring C = Ring::polynomial(R, {"t1", "t2"});
    for (int i = 0; i < 200; ++i) {
      const auto x = random_group_algebra_element(C, s3, 3, rng);
      const auto y = random_group_algebra_element(C, s3, 3, rng);
      ASSERT_EQ(rho_B(rho, x * y), rho_B(rho, x) * rho_B(rho, y));
      ASSERT_EQ(rho_B(rho, x + y), rho_B(rho, x) + rho_B(rho, y));
    }
  }
}

TEST(Representation, Validation) {
  const Ring Z = Ring::integers();
  const GroupPtr c2 = cyclic_group(2);
  // not a homomorphism: s^2 != e
  EXPECT_THROW(Representation(c2, {SquareMatrix::identity(Z, 2), SquareMatrix::from_ints(Z, 2, {1, 1, 0, 1})}), Error);
  // identity image must be I
  EXPECT_THROW(Representation(c2, {SquareMatrix::from_ints(Z, 2, {0, 1, 1, 0}), SquareMatrix::from_ints(Z, 2, {0, 1, 1, 0})}), Error);
  // over F2 the unipotent matrix has order 2
  EXPECT_NO_THROW(swap_rep(Ring::prime_field(2)));
  const Ring F2 = Ring::prime_field(2);
  EXPECT_NO_THROW(Representation(c2, {SquareMatrix::identity(F2, 2), SquareMatrix::from_ints(F2, 2, {1, 1, 0, 1})}));
}

TEST(Representation, FromGenerators) {
  const GroupPtr s3 = symmetric_group(3);
  const Ring F5 = Ring::prime_field(5);
  const Representation std_rep = *augmentation_rep(s3, F5);
  std::vector<SquareMatrix> gens;
  for (int g : s3->generators()) gens.push_back(std_rep.image(g));
  const Representation rebuilt = Representation::from_generators(s3, s3->generators(), gens);
  for (std::size_t g = 0; g < s3->order(); ++g) EXPECT_EQ(rebuilt.image(static_cast<int>(g)), std_rep.image(static_cast<int>(g)));
}

TEST(Representation, RandomSamplesAreHomomorphisms) {
  Rng rng(8);
  for (const char* name : {"C4", "S3", "klein4", "Q8", "D4"})
    for (const Ring& R : {Ring::integers(), Ring::prime_field(5), Ring::finite_field(4), Ring::integers_mod(4)})
      for (std::size_t d = 1; d <= 3; ++d) {
        const GroupPtr g = builtin_group(name);
        const Representation rho = random_representation(g, R, d, rng);
        ASSERT_EQ(rho.dim(), d);
        for (std::size_t a = 0; a < g->order(); ++a)
          for (std::size_t b = 0; b < g->order(); ++b)
            ASSERT_EQ(rho.image(static_cast<int>(a)) * rho.image(static_cast<int>(b)),
                      rho.image(g->mul(static_cast<int>(a), static_cast<int>(b))));
      }
}

TEST(GroupMorphism, Validation) {
  const GroupPtr c6 = cyclic_group(6), c3 = cyclic_group(3);
  std::vector<int> map(6);
  for (int k = 0; k < 6; ++k) map[static_cast<std::size_t>(k)] = c3->power(1, static_cast<std::uint64_t>(k));
  // c6 element k is the k-th power of index 1 only if the BFS order says so
  std::vector<int> reduce(6);
  for (int k = 0; k < 6; ++k) reduce[static_cast<std::size_t>(c6->power(1, static_cast<std::uint64_t>(k)))] = c3->power(1, static_cast<std::uint64_t>(k));
  EXPECT_NO_THROW(GroupMorphism(c6, c3, reduce));
  std::vector<int> bad(6, 1);
  EXPECT_THROW(GroupMorphism(c6, c3, bad), Error);
}
