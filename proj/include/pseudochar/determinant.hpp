#pragma once

// Determinants as evaluatable multiplicative, degree-d homogeneous laws on a
// group algebra B[Gamma] or on a free algebra B{X}.

#include <functional>

#include "amitsur.hpp"

namespace pseudochar {

// Gamma (group != nullptr) or the free monoid on `alphabet` letters.
struct Domain {
  GroupPtr group;
  std::size_t alphabet = 0;

  static Domain of_group(GroupPtr g) { return {std::move(g), 0}; }
  static Domain free(std::size_t n) { return {nullptr, n}; }
  bool is_group() const { return group != nullptr; }
  std::size_t size() const { return group ? group->order() : alphabet; }

  friend bool operator==(const Domain& a, const Domain& b) {
    if (a.is_group() != b.is_group()) return false;
    if (!a.is_group()) return a.alphabet == b.alphabet;
    return a.group == b.group || a.group->table() == b.group->table();
  }

  // Group: words in element indices, reduced to their product.
  int reduce(const Word& w) const {
    int r = group->identity();
    for (int g : w) r = group->mul(r, g);
    return r;
  }

  std::string name() const { return group ? group->name() : "free(" + std::to_string(alphabet) + ")"; }
};

// sum_i coeffs[i] * words[i] with coefficients in `ring`. For group domains
// each word is a single element index.
struct LinearCombination {
  Ring ring;
  std::vector<Word> words;
  std::vector<Elem> coeffs;

  static LinearCombination of(const GroupAlgebraElement& x) {
    LinearCombination c{x.ring(), {}, {}};
    for (const auto& [g, b] : x.terms()) {
      c.words.push_back({g});
      c.coeffs.push_back(b);
    }
    return c;
  }
  static LinearCombination of(const FreeAlgebraElement& x) {
    LinearCombination c{x.ring(), {}, {}};
    for (const auto& [w, b] : x.terms()) {
      c.words.push_back(w);
      c.coeffs.push_back(b);
    }
    return c;
  }
};

class DeterminantBacking {
 public:
  virtual ~DeterminantBacking() = default;
  // x's words are domain words; the result lives in common_ring(value ring, x.ring).
  virtual RingValue evaluate(const LinearCombination& x) const = 0;
  virtual std::string kind() const = 0;
};

class Determinant {
 public:
  Determinant(std::size_t d, Domain domain, Ring ring, std::shared_ptr<const DeterminantBacking> backing,
              Ring coefficient_ring)
      : d_(d), domain_(std::move(domain)), ring_(std::move(ring)), coef_ring_(std::move(coefficient_ring)),
        backing_(std::move(backing)) {}

  std::size_t dim() const { return d_; }
  const Domain& domain() const { return domain_; }
  // The value ring B.
  const Ring& ring() const { return ring_; }
  // Ring from which test scalars are drawn (Z for the generic determinant).
  const Ring& coefficient_ring() const { return coef_ring_; }
  std::string kind() const { return backing_->kind(); }
  const DeterminantBacking& backing() const { return *backing_; }

  RingValue evaluate(const LinearCombination& x) const { return backing_->evaluate(x); }

  RingValue evaluate(const GroupAlgebraElement& x) const {
    if (!domain_.is_group() || !(Domain::of_group(x.group()) == domain_)) throw Error("group mismatch");
    return evaluate(LinearCombination::of(x));
  }

  RingValue evaluate(const FreeAlgebraElement& x) const {
    if (domain_.is_group() || x.alphabet() != domain_.alphabet) throw Error("alphabet mismatch");
    return evaluate(LinearCombination::of(x));
  }

  // D(1 * w) for a domain word (a group element index for group domains).
  RingValue evaluate_word(const Word& w) const { return evaluate(LinearCombination{ring_, {w}, {ring_.one()}}); }
  RingValue evaluate_element(int g) const { return evaluate_word(Word{g}); }

  // The multiplicative identity of the domain algebra, as a word.
  Word unit_word() const { return domain_.is_group() ? Word{domain_.group->identity()} : Word{}; }

 private:
  std::size_t d_;
  Domain domain_;
  Ring ring_;
  Ring coef_ring_;
  std::shared_ptr<const DeterminantBacking> backing_;
};

namespace detail {

inline LinearCombination coerce_combination(const LinearCombination& x, const Ring& R) {
  LinearCombination r{R, x.words, {}};
  for (const auto& c : x.coeffs) r.coeffs.push_back(R.coerce(x.ring, c));
  return r;
}

// det(sum c_i M(w_i)) where M(w) is supplied per domain word.
template <class MatrixOf>
RingValue matrix_law(const LinearCombination& x, const Ring& matrix_ring, std::size_t d, MatrixOf&& matrix_of) {
  const Ring R = common_ring(matrix_ring, x.ring);
  const auto cx = coerce_combination(x, R);
  SquareMatrix acc(R, d);
  for (std::size_t i = 0; i < cx.words.size(); ++i) acc = acc + matrix_of(cx.words[i]).to(R).scaled(cx.coeffs[i]);
  return det(acc);
}

class RepBacking : public DeterminantBacking {
 public:
  explicit RepBacking(Representation rho) : rho_(std::move(rho)) {}
  RingValue evaluate(const LinearCombination& x) const override {
    const FiniteGroup& g = *rho_.group();
    return matrix_law(x, rho_.ring(), rho_.dim(), [&](const Word& w) -> const SquareMatrix& {
      int r = g.identity();
      for (int e : w) r = g.mul(r, e);
      return rho_.image(r);
    });
  }
  std::string kind() const override { return "rep"; }
  const Representation& rep() const { return rho_; }

 private:
  Representation rho_;
};

// Letters of a free monoid sent to fixed matrices.
class LetterMatrixBacking : public DeterminantBacking {
 public:
  LetterMatrixBacking(std::vector<SquareMatrix> letters, std::string kind)
      : letters_(std::move(letters)), kind_(std::move(kind)) {}
  RingValue evaluate(const LinearCombination& x) const override {
    const Ring& R = letters_.front().ring();
    const std::size_t d = letters_.front().dim();
    return matrix_law(x, R, d, [&](const Word& w) { return word_product(letters_, w, R, d); });
  }
  std::string kind() const override { return kind_; }
  const std::vector<SquareMatrix>& letters() const { return letters_; }

 private:
  std::vector<SquareMatrix> letters_;
  std::string kind_;
};

// Values of Lambda_k on domain words; the law is recovered through the
// expansion tables.
class DataBacking : public DeterminantBacking {
 public:
  using ThetaFn = std::function<Elem(int k, const Word& w)>;
  DataBacking(std::size_t d, Ring ring, ThetaFn theta, std::optional<std::vector<std::vector<Elem>>> table)
      : d_(d), ring_(std::move(ring)), theta_(std::move(theta)), table_(std::move(table)) {}

  RingValue evaluate(const LinearCombination& x) const override {
    const Ring R = common_ring(ring_, x.ring);
    const std::size_t m = x.words.size();
    if (m == 0) return RingValue::zero(R);
    if (m > 3) throw Error("table unavailable: support " + std::to_string(m) + " exceeds the expansion tables (max 3)");
    const auto cx = coerce_combination(x, R);
    const ExpansionTable& table = amitsur_table(d_, m);
    return RingValue(R, expand_with_table(table, R, cx.coeffs, [&](int k, const Word& w) {
                       Word concat;
                       for (int l : w) {
                         const Word& s = cx.words[static_cast<std::size_t>(l)];
                         concat.insert(concat.end(), s.begin(), s.end());
                       }
                       return R.coerce(ring_, theta_(k, concat));
                     }));
  }
  std::string kind() const override { return "data"; }
  const ThetaFn& theta() const { return theta_; }
  // theta[k-1][gamma] for group domains.
  const std::optional<std::vector<std::vector<Elem>>>& table() const { return table_; }

 private:
  std::size_t d_;
  Ring ring_;
  ThetaFn theta_;
  std::optional<std::vector<std::vector<Elem>>> table_;
};

class ProductBacking : public DeterminantBacking {
 public:
  ProductBacking(Determinant a, Determinant b) : a_(std::move(a)), b_(std::move(b)) {}
  RingValue evaluate(const LinearCombination& x) const override {
    RingValue u = a_.evaluate(x), v = b_.evaluate(x);
    const Ring R = common_ring(u.ring(), v.ring());
    return u.to(R) * v.to(R);
  }
  std::string kind() const override { return "product"; }

 private:
  Determinant a_, b_;
};

class PullbackBacking : public DeterminantBacking {
 public:
  PullbackBacking(Determinant base, GroupMorphism u) : base_(std::move(base)), u_(std::move(u)) {}
  RingValue evaluate(const LinearCombination& x) const override {
    std::map<int, Elem> pushed;
    for (std::size_t i = 0; i < x.words.size(); ++i) {
      int img = u_.target()->identity();
      for (int g : x.words[i]) img = u_.target()->mul(img, u_(g));
      auto it = pushed.find(img);
      pushed[img] = it == pushed.end() ? x.coeffs[i] : x.ring.add(it->second, x.coeffs[i]);
    }
    LinearCombination y{x.ring, {}, {}};
    for (auto& [g, c] : pushed) {
      if (x.ring.is_zero(c)) continue;
      y.words.push_back({g});
      y.coeffs.push_back(c);
    }
    return base_.evaluate(y);
  }
  std::string kind() const override { return "pullback"; }

 private:
  Determinant base_;
  GroupMorphism u_;
};

inline BigInt binomial(std::size_t n, std::size_t k) {
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace detail

// Lambda_k of the d x d identity matrix: binomial(d, k) (-1)^k.
inline Elem lambda_of_identity(const Ring& R, std::size_t d, std::size_t k) {
  BigInt b = detail::binomial(d, k);
  return R.from_int(k % 2 ? BigInt(-b) : b);
}

inline Determinant det_from_rep(const Representation& rho) {
  return Determinant(rho.dim(), Domain::of_group(rho.group()), rho.ring(), std::make_shared<detail::RepBacking>(rho),
                     rho.ring());
}

// Free-domain determinant of letter -> matrix.
inline Determinant det_from_letter_matrices(std::vector<SquareMatrix> letters) {
  if (letters.empty()) throw Error("need at least one letter");
  const Ring R = letters.front().ring();
  const std::size_t d = letters.front().dim();
  for (const auto& m : letters)
    if (m.ring() != R || m.dim() != d) throw Error("letter matrices must share ring and dimension");
  const std::size_t n = letters.size();
  return Determinant(d, Domain::free(n), R, std::make_shared<detail::LetterMatrixBacking>(std::move(letters), "letters"), R);
}

// The universal determinant on n letters, valued in F_X(d) = Z[x{l}_{ij}].
inline Determinant generic_determinant(std::size_t d, std::size_t n) {
  const Ring F = generic_ring(d, n);
  std::vector<SquareMatrix> gens;
  for (std::size_t l = 0; l < n; ++l) gens.push_back(generic_matrix(F, d, static_cast<int>(l)));
  return Determinant(d, Domain::free(n), F, std::make_shared<detail::LetterMatrixBacking>(std::move(gens), "generic"),
                     Ring::integers());
}

// Group determinant from theta[k-1][gamma] = Lambda_k(gamma), k = 1..d.
inline Determinant det_from_theta(GroupPtr group, const Ring& ring, std::size_t d, std::vector<std::vector<Elem>> theta) {
  if (d < 1 || d > 3) throw Error("theta-backed determinants need 1 <= d <= 3");
  if (theta.size() != d) throw Error("theta table needs d rows");
  for (const auto& row : theta)
    if (row.size() != group->order()) throw Error("theta row needs one value per group element");
  const int e = group->identity();
  for (std::size_t k = 1; k <= d; ++k)
    if (!ring.eq(theta[k - 1][static_cast<std::size_t>(e)], lambda_of_identity(ring, d, k)))
      throw Error("theta(" + std::to_string(k) + ", e) must be Lambda_" + std::to_string(k) + " of the identity");
  const Domain dom = Domain::of_group(group);
  auto fn = [dom, theta, d, ring](int k, const Word& w) -> Elem {
    if (k == 0) return ring.one();
    if (k < 0 || static_cast<std::size_t>(k) > d) throw Error("theta index out of range");
    return theta[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(dom.reduce(w))];
  };
  return Determinant(d, dom, ring, std::make_shared<detail::DataBacking>(d, ring, fn, std::move(theta)), ring);
}

// Free-domain determinant from Lambda_k values on words.
inline Determinant det_from_word_theta(std::size_t alphabet, const Ring& ring, std::size_t d, detail::DataBacking::ThetaFn theta) {
  if (d < 1 || d > 3) throw Error("theta-backed determinants need 1 <= d <= 3");
  return Determinant(d, Domain::free(alphabet), ring, std::make_shared<detail::DataBacking>(d, ring, std::move(theta), std::nullopt),
                     ring);
}

// (D1 x D2)(x) = D1(x) D2(x), of dimension d1 + d2.
inline Determinant det_product(const Determinant& a, const Determinant& b) {
  if (!(a.domain() == b.domain())) throw Error("det_product: domain mismatch");
  if (a.ring() != b.ring()) throw Error("det_product: ring mismatch");
  return Determinant(a.dim() + b.dim(), a.domain(), a.ring(), std::make_shared<detail::ProductBacking>(a, b),
                     a.coefficient_ring());
}

// D o u for a group morphism u: Gamma' -> Gamma.
inline Determinant det_pullback(const Determinant& D, const GroupMorphism& u) {
  if (!D.domain().is_group() || !(Domain::of_group(u.target()) == D.domain()))
    throw Error("det_pullback: morphism target is not the determinant's group");
  return Determinant(D.dim(), Domain::of_group(u.source()), D.ring(), std::make_shared<detail::PullbackBacking>(D, u),
                     D.coefficient_ring());
}

// Coefficient of T^(d-i) in D(T*1 - x), T a fresh variable.
inline RingValue lambda_of(const Determinant& D, const LinearCombination& x, std::size_t i) {
  const std::size_t d = D.dim();
  if (i > d) throw Error("lambda_of: index exceeds d");
  const Ring C = common_ring(D.ring(), x.ring);
  const std::string T = C.fresh_variable("T");
  const Ring CT = C.adjoin({T});
  LinearCombination y{CT, {D.unit_word()}, {CT.variable(T)}};
  for (std::size_t j = 0; j < x.words.size(); ++j) {
    Elem c = CT.neg(CT.coerce(x.ring, x.coeffs[j]));
    auto it = std::find(y.words.begin(), y.words.end(), x.words[j]);
    if (it != y.words.end()) {
      auto& slot = y.coeffs[static_cast<std::size_t>(it - y.words.begin())];
      slot = CT.add(slot, c);
    } else {
      y.words.push_back(x.words[j]);
      y.coeffs.push_back(c);
    }
  }
  for (std::size_t j = y.words.size(); j-- > 0;)
    if (CT.is_zero(y.coeffs[j])) {
      y.words.erase(y.words.begin() + static_cast<std::ptrdiff_t>(j));
      y.coeffs.erase(y.coeffs.begin() + static_cast<std::ptrdiff_t>(j));
    }
  RingValue v = D.evaluate(y);
  const Ring V = v.ring();
  auto [ring, coef] = V.coefficient_of(v.elem(), T, static_cast<std::uint32_t>(d - i));
  return RingValue(ring, coef).to(C);
}

inline RingValue lambda_of(const Determinant& D, const GroupAlgebraElement& x, std::size_t i) {
  return lambda_of(D, LinearCombination::of(x), i);
}
inline RingValue lambda_of(const Determinant& D, const FreeAlgebraElement& x, std::size_t i) {
  return lambda_of(D, LinearCombination::of(x), i);
}
// Lambda_i of a single domain word (a group element for group domains).
inline RingValue lambda_of_word(const Determinant& D, const Word& w, std::size_t i) {
  return lambda_of(D, LinearCombination{D.ring(), {w}, {D.ring().one()}}, i);
}

namespace detail {

inline LinearCombination random_combination(const Determinant& D, const Ring& C, std::size_t support, Rng& rng) {
  LinearCombination x{C, {}, {}};
  for (std::size_t s = 0; s < support; ++s) {
    Word w;
    if (D.domain().is_group()) {
      w = {static_cast<int>(uniform_below(rng, D.domain().size()))};
    } else {
      w.resize(uniform_below(rng, 3));
      for (auto& l : w) l = static_cast<int>(uniform_below(rng, D.domain().alphabet));
    }
    Elem c = random_elem(C, rng, 3);
    auto it = std::find(x.words.begin(), x.words.end(), w);
    if (it != x.words.end()) {
      auto& slot = x.coeffs[static_cast<std::size_t>(it - x.words.begin())];
      slot = C.add(slot, c);
    } else {
      x.words.push_back(std::move(w));
      x.coeffs.push_back(std::move(c));
    }
  }
  for (std::size_t j = x.words.size(); j-- > 0;)
    if (C.is_zero(x.coeffs[j])) {
      x.words.erase(x.words.begin() + static_cast<std::ptrdiff_t>(j));
      x.coeffs.erase(x.coeffs.begin() + static_cast<std::ptrdiff_t>(j));
    }
  return x;
}

inline LinearCombination multiply(const Domain& dom, const LinearCombination& x, const LinearCombination& y) {
  if (x.ring != y.ring) throw Error("ring mismatch");
  const Ring& C = x.ring;
  std::map<Word, Elem> acc;
  for (std::size_t i = 0; i < x.words.size(); ++i)
    for (std::size_t j = 0; j < y.words.size(); ++j) {
      Word w;
      if (dom.is_group()) {
        w = {dom.group->mul(dom.reduce(x.words[i]), dom.reduce(y.words[j]))};
      } else {
        w = x.words[i];
        w.insert(w.end(), y.words[j].begin(), y.words[j].end());
      }
      Elem c = C.mul(x.coeffs[i], y.coeffs[j]);
      auto it = acc.find(w);
      acc[w] = it == acc.end() ? c : C.add(it->second, c);
    }
  LinearCombination r{C, {}, {}};
  for (auto& [w, c] : acc)
    if (!C.is_zero(c)) {
      r.words.push_back(w);
      r.coeffs.push_back(c);
    }
  return r;
}

inline std::string describe(const LinearCombination& x) {
  if (x.words.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < x.words.size(); ++i) {
    s += (i ? " + (" : "(") + x.ring.to_string(x.coeffs[i]) + ")*[";
    for (std::size_t j = 0; j < x.words[i].size(); ++j) s += (j ? "," : "") + std::to_string(x.words[i][j]);
    s += "]";
  }
  return s;
}

}  // namespace detail

// D(1) = 1, D(xy) = D(x)D(y) and D(bx) = b^d D(x) on seeded samples. Every
// third trial uses coefficients in B[t1, t2] with fresh t1, t2 and a symbolic
// scalar. Supports are kept so that xy has at most 3 terms, which keeps
// table-backed determinants in range.
inline Verdict check_multiplicative_homogeneous(const Determinant& D, std::uint64_t seed, std::size_t trials) {
  Verdict v;
  Rng rng(seed);
  const Ring B = D.coefficient_ring();
  const Ring all = common_ring(B, D.ring());
  const std::string t1 = all.fresh_variable("t1");
  const std::string t2 = all.adjoin({t1}).fresh_variable("t2");
  const Ring Bt = B.adjoin({t1, t2});
  const RingValue one = D.evaluate(LinearCombination{B, {D.unit_word()}, {B.one()}});
  ++v.checks;
  if (one != RingValue::one(one.ring())) {
    v.reject("D(1) != 1");
    return v;
  }
  static const std::pair<std::size_t, std::size_t> shapes[] = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}};
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const bool polar = trial % 3 == 2;
    const Ring& C = polar ? Bt : B;
    const auto [sa, sb] = shapes[uniform_below(rng, 5)];
    LinearCombination x = detail::random_combination(D, C, sa, rng);
    LinearCombination y = detail::random_combination(D, C, sb, rng);
    if (polar) {
      // Make the coefficients genuinely depend on the polarization variables.
      for (std::size_t i = 0; i < x.coeffs.size(); ++i)
        x.coeffs[i] = C.add(x.coeffs[i], C.variable(i % 2 ? t2 : t1));
      if (!y.coeffs.empty()) y.coeffs[0] = C.add(y.coeffs[0], C.variable(t2));
    }
    const LinearCombination xy = detail::multiply(D.domain(), x, y);
    RingValue dx = D.evaluate(x), dy = D.evaluate(y), dxy = D.evaluate(xy);
    Ring R = common_ring(common_ring(dx.ring(), dy.ring()), dxy.ring());
    ++v.checks;
    if (dx.to(R) * dy.to(R) != dxy.to(R)) {
      v.reject("multiplicativity at trial " + std::to_string(trial) + ": x = " + detail::describe(x) +
                   ", y = " + detail::describe(y),
               std::vector<int>{static_cast<int>(trial)});
      return v;
    }
    Elem b = polar ? C.variable(t1) : random_elem(C, rng, 3);
    LinearCombination bx = x;
    for (auto& c : bx.coeffs) c = C.mul(b, c);
    for (std::size_t j = bx.words.size(); j-- > 0;)
      if (C.is_zero(bx.coeffs[j])) {
        bx.words.erase(bx.words.begin() + static_cast<std::ptrdiff_t>(j));
        bx.coeffs.erase(bx.coeffs.begin() + static_cast<std::ptrdiff_t>(j));
      }
    RingValue dbx = D.evaluate(bx);
    R = common_ring(dbx.ring(), dx.ring());
    RingValue bd = RingValue(C, b).to(R).pow(D.dim());
    ++v.checks;
    if (dbx.to(R) != bd * dx.to(R)) {
      v.reject("homogeneity at trial " + std::to_string(trial) + ": x = " + detail::describe(x) + ", b = " + C.to_string(b),
               std::vector<int>{static_cast<int>(trial)});
      return v;
    }
  }
  return v;
}

// True iff D(gamma) is a unit for every domain generator: group elements,
// or letters of a free monoid.
inline Verdict is_gl_valued(const Determinant& D) {
  Verdict v;
  for (std::size_t g = 0; g < D.domain().size(); ++g) {
    ++v.checks;
    RingValue x = D.evaluate_word(Word{static_cast<int>(g)});
    if (!x.is_unit()) {
      v.reject(std::string(D.domain().is_group() ? "D(gamma)" : "D(letter)") + " = " + x.to_string() + " is not a unit",
               std::vector<int>{static_cast<int>(g)});
      return v;
    }
  }
  return v;
}

}  // namespace pseudochar
