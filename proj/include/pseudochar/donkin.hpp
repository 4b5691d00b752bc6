#pragma once

// Integer polynomials in the formal generators Lambda_k(word) and
// det(g_i)^{-1}: conjugation-invariant functions of n matrices.

#include <map>
#include <variant>

#include "groups.hpp"
#include "verdict.hpp"

namespace pseudochar {

// Lambda_k(g_{w1} ... g_{wr}) with w cyclically canonical, or det(g_slot)^{-1}.
// Letters and slots are 0-based.
struct DonkinGen {
  enum class Kind { Lambda, DetInv };
  Kind kind = Kind::Lambda;
  int k = 0;     // Lambda only
  Word word;     // Lambda only
  int slot = 0;  // DetInv only

  static DonkinGen lambda(int k, const Word& w) { return {Kind::Lambda, k, cyclic_canonical(w), 0}; }
  static DonkinGen det_inv(int slot) { return {Kind::DetInv, 0, {}, slot}; }

  // Lambda before DetInv; Lambda by (word length, word, k).
  friend bool operator<(const DonkinGen& a, const DonkinGen& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == Kind::DetInv) return a.slot < b.slot;
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    if (a.word != b.word) return a.word < b.word;
    return a.k < b.k;
  }
  friend bool operator==(const DonkinGen& a, const DonkinGen& b) { return !(a < b) && !(b < a); }
  friend bool operator!=(const DonkinGen& a, const DonkinGen& b) { return !(a == b); }

  std::string to_string() const {
    if (kind == Kind::DetInv) return "Dinv(" + std::to_string(slot + 1) + ")";
    std::string s = "L" + std::to_string(k) + "(";
    for (std::size_t i = 0; i < word.size(); ++i) s += (i ? "," : "") + std::to_string(word[i] + 1);
    return s + ")";
  }
};

// Sorted list of generators with repetition.
using DonkinMonomial = std::vector<DonkinGen>;

class DonkinExpression {
 public:
  explicit DonkinExpression(std::size_t n = 0) : n_(n) {}

  static DonkinExpression constant(std::size_t n, const BigInt& c) {
    DonkinExpression e(n);
    e.add_term({}, c);
    return e;
  }
  static DonkinExpression lambda(std::size_t n, int k, const Word& w) {
    DonkinExpression e(n);
    e.add_term({DonkinGen::lambda(k, w)}, 1);
    return e;
  }
  static DonkinExpression det_inv(std::size_t n, int slot) {
    DonkinExpression e(n);
    e.add_term({DonkinGen::det_inv(slot)}, 1);
    return e;
  }

  std::size_t arity() const { return n_; }
  const std::map<DonkinMonomial, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(DonkinMonomial m, const BigInt& c) {
    for (const auto& g : m) {
      if (g.kind == DonkinGen::Kind::DetInv) {
        check_letter(g.slot);
      } else {
        if (g.k < 1) throw Error("Lambda index must be >= 1");
        if (g.word.empty()) throw Error("Lambda of the empty word");
        for (int l : g.word) check_letter(l);
      }
    }
    std::sort(m.begin(), m.end());
    auto& slot = terms_[m];
    slot += c;
    if (slot == 0) terms_.erase(m);
  }

  DonkinExpression operator+(const DonkinExpression& o) const {
    check(o);
    DonkinExpression r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  DonkinExpression operator-(const DonkinExpression& o) const { return *this + o.scaled(-1); }
  DonkinExpression operator*(const DonkinExpression& o) const {
    check(o);
    DonkinExpression r(n_);
    for (const auto& [a, ca] : terms_)
      for (const auto& [b, cb] : o.terms_) {
        DonkinMonomial m = a;
        m.insert(m.end(), b.begin(), b.end());
        r.add_term(std::move(m), ca * cb);
      }
    return r;
  }
  DonkinExpression scaled(const BigInt& c) const {
    DonkinExpression r(n_);
    for (const auto& [m, x] : terms_) r.add_term(m, c * x);
    return r;
  }
  friend bool operator==(const DonkinExpression& a, const DonkinExpression& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  // f^zeta(g_1..g_n) = f(g_zeta(1), ..., g_zeta(m)): letter i becomes zeta[i].
  DonkinExpression relabel(const std::vector<int>& zeta, std::size_t n) const {
    if (zeta.size() != n_) throw Error("relabel: map length must equal the arity");
    for (int z : zeta)
      if (z < 0 || static_cast<std::size_t>(z) >= n) throw Error("relabel: image out of range");
    DonkinExpression r(n);
    for (const auto& [m, c] : terms_) {
      DonkinMonomial nm;
      for (const auto& g : m) {
        if (g.kind == DonkinGen::Kind::DetInv) {
          nm.push_back(DonkinGen::det_inv(zeta[static_cast<std::size_t>(g.slot)]));
        } else {
          Word w;
          for (int l : g.word) w.push_back(zeta[static_cast<std::size_t>(l)]);
          nm.push_back(DonkinGen::lambda(g.k, w));
        }
      }
      r.add_term(std::move(nm), c);
    }
    return r;
  }

  // f-hat(g_1..g_{n+1}) = f(g_1, ..., g_{n-1}, g_n g_{n+1}).
  DonkinExpression hat() const {
    if (n_ == 0) throw Error("hat: arity must be >= 1");
    const int last = static_cast<int>(n_) - 1;
    DonkinExpression r(n_ + 1);
    for (const auto& [m, c] : terms_) {
      DonkinMonomial nm;
      for (const auto& g : m) {
        if (g.kind == DonkinGen::Kind::DetInv) {
          nm.push_back(g);
          if (g.slot == last) nm.push_back(DonkinGen::det_inv(last + 1));
        } else {
          Word w;
          for (int l : g.word) {
            w.push_back(l);
            if (l == last) w.push_back(last + 1);
          }
          nm.push_back(DonkinGen::lambda(g.k, w));
        }
      }
      r.add_term(std::move(nm), c);
    }
    return r;
  }

  // Cancels DetInv(i) against Lambda_d((i)) using det(g_i) = (-1)^d Lambda_d(g_i).
  DonkinExpression simplify_det_pairs(int d) const {
    DonkinExpression r(n_);
    for (const auto& [m, c] : terms_) {
      DonkinMonomial rest = m;
      BigInt coef = c;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 0; i < rest.size() && !changed; ++i) {
          if (rest[i].kind != DonkinGen::Kind::DetInv) continue;
          const DonkinGen partner = DonkinGen::lambda(d, Word{rest[i].slot});
          auto it = std::find(rest.begin(), rest.end(), partner);
          if (it == rest.end()) continue;
          const std::size_t j = static_cast<std::size_t>(it - rest.begin());
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
          if (d % 2) coef = -coef;
          changed = true;
        }
      }
      r.add_term(std::move(rest), coef);
    }
    return r;
  }

  // Substitutes lambda_value(k, word) and det_inv_value(slot), both elements
  // of R, and sums in R.
  template <class LambdaFn, class DetInvFn>
  Elem evaluate(const Ring& R, LambdaFn&& lambda_value, DetInvFn&& det_inv_value) const {
    std::map<DonkinGen, Elem> memo;
    Elem acc = R.zero();
    for (const auto& [m, c] : terms_) {
      Elem term = R.from_int(c);
      for (const auto& g : m) {
        auto it = memo.find(g);
        if (it == memo.end()) {
          Elem v = g.kind == DonkinGen::Kind::DetInv ? Elem(det_inv_value(g.slot)) : Elem(lambda_value(g.k, g.word));
          it = memo.emplace(g, std::move(v)).first;
        }
        term = R.mul(term, it->second);
        if (R.is_zero(term)) break;
      }
      acc = R.add(acc, term);
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      std::string t = c.str();
      for (const auto& g : m) t += "*" + g.to_string();
      s += (s.empty() ? "" : " + ") + t;
    }
    return s;
  }

 private:
  void check_letter(int l) const {
    if (l < 0 || static_cast<std::size_t>(l) >= n_) throw Error("letter exceeds arity " + std::to_string(n_));
  }
  void check(const DonkinExpression& o) const {
    if (o.n_ != n_) throw Error("arity mismatch");
  }

  std::size_t n_;
  std::map<DonkinMonomial, BigInt> terms_;
};

// Random expression with small integer coefficients: up to `max_terms`
// monomials of up to 3 generators, words of length <= max_len.
inline DonkinExpression random_donkin_expression(std::size_t n, int d, Rng& rng, std::size_t max_terms = 3,
                                                 std::size_t max_len = 3, bool with_det_inv = true) {
  DonkinExpression e(n);
  const std::size_t nterms = 1 + uniform_below(rng, max_terms);
  for (std::size_t t = 0; t < nterms; ++t) {
    DonkinMonomial m;
    const std::size_t ngens = uniform_below(rng, 4);
    for (std::size_t g = 0; g < ngens; ++g) {
      if (with_det_inv && uniform_below(rng, 5) == 0) {
        m.push_back(DonkinGen::det_inv(static_cast<int>(uniform_below(rng, n))));
        continue;
      }
      Word w(1 + uniform_below(rng, max_len));
      for (auto& l : w) l = static_cast<int>(uniform_below(rng, n));
      m.push_back(DonkinGen::lambda(1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(d))), w));
    }
    e.add_term(std::move(m), BigInt(static_cast<long long>(uniform_below(rng, 7)) - 3));
  }
  return e;
}

}  // namespace pseudochar
