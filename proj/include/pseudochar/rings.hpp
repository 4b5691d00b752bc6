#pragma once

// Exact arithmetic over a small tower of commutative rings:
// Z, Z/n, F_p, F_q = F_p[a]/(m), polynomial rings over those, and Q.
//
// A Ring is an immutable, shareable descriptor. Elements are stored as an
// untyped payload (Elem) whose meaning is fixed by the ring it belongs to;
// RingValue pairs the two and is what user code normally handles.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pseudochar {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RingKind { Integers, IntegersMod, PrimeField, ExtensionField, PolynomialRing, Rationals };

struct Residue {
  std::uint64_t v = 0;
};

// Coefficients c[0] + c[1] a + ... + c[e-1] a^(e-1), always of length e.
struct FqElem {
  std::vector<std::uint64_t> c;
};

struct PolyTerm;

// Sparse polynomial; terms sorted ascending in graded-lex order, no zero
// coefficients. A null pointer is the zero polynomial.
struct PolyElem {
  std::shared_ptr<const std::vector<PolyTerm>> terms;
};

using Elem = std::variant<BigInt, Residue, BigRational, FqElem, PolyElem>;
using Monomial = std::vector<std::uint32_t>;

struct PolyTerm {
  Monomial exps;
  Elem coef;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

// Distinct prime factors, ascending. Trial division first, Pollard rho for
// whatever survives.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  std::vector<std::uint64_t> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    std::uint64_t m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (is_prime_u64(m)) {
      out.push_back(m);
      continue;
    }
    std::uint64_t f = pollard_rho(m);
    stack.push_back(f);
    stack.push_back(m / f);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Univariate polynomial helpers over F_p (coefficient vectors, low to high).
using FpPoly = std::vector<std::uint64_t>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint64_t p) {
  fp_trim(a);
  FpPoly mm = m;
  fp_trim(mm);
  const std::uint64_t lead_inv = powmod(mm.back(), p - 2, p);
  while (a.size() >= mm.size()) {
    std::uint64_t f = mulmod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - mm.size();
    for (std::size_t i = 0; i < mm.size(); ++i) {
      a[i + shift] = (a[i + shift] + p - mulmod(f, mm[i], p)) % p;
    }
    fp_trim(a);
  }
  return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  return fp_mod(std::move(r), m, p);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod m by repeated p-th powering.
inline FpPoly fp_frobenius_power(const FpPoly& m, std::uint64_t p, unsigned k) {
  FpPoly x = fp_mod({0, 1}, m, p);
  for (unsigned step = 0; step < k; ++step) {
    FpPoly base = x, acc = {1};
    std::uint64_t e = p;
    while (e) {
      if (e & 1) acc = fp_mulmod(acc, base, m, p);
      base = fp_mulmod(base, base, m, p);
      e >>= 1;
    }
    x = acc;
  }
  return x;
}

// Rabin's irreducibility test for a monic m of degree e over F_p.
inline bool fp_is_irreducible(const FpPoly& m, std::uint64_t p) {
  const unsigned e = static_cast<unsigned>(m.size() - 1);
  if (e == 0) return false;
  if (e == 1) return true;
  FpPoly x = {0, 1};
  FpPoly full = fp_frobenius_power(m, p, e);
  FpPoly diff = full;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = (diff[1] + p - 1) % p;
  if (!fp_mod(diff, m, p).empty()) return false;
  for (std::uint64_t r : prime_factors(e)) {
    FpPoly h = fp_frobenius_power(m, p, e / static_cast<unsigned>(r));
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    FpPoly g = fp_gcd(m, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

struct RingData {
  RingKind kind = RingKind::Integers;
  std::uint64_t modulus = 0;               // n for Z/n, p for F_p and F_q
  std::uint64_t radical = 0;               // product of primes dividing n
  std::vector<std::uint64_t> ext_modulus;  // monic, low to high, for F_q
  std::shared_ptr<const RingData> base;    // polynomial rings only
  std::vector<std::string> variables;      // polynomial rings only
};

}  // namespace detail

inline bool is_zero_elem(const Elem& e);

// Lexicographic comparison of exponent vectors after total degree.
inline bool grlex_less(const Monomial& a, const Monomial& b) {
  std::uint64_t da = 0, db = 0;
  for (auto x : a) da += x;
  for (auto x : b) db += x;
  if (da != db) return da < db;
  // Larger exponent in an earlier variable is the larger monomial.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

class Ring {
 public:
  Ring() : Ring(integers()) {}

  static Ring integers() {
    static const auto data = [] {
      auto d = std::make_shared<detail::RingData>();
      d->kind = RingKind::Integers;
      return std::shared_ptr<const detail::RingData>(d);
    }();
    return Ring(data);
  }

  static Ring rationals() {
    auto d = std::make_shared<detail::RingData>();
    d->kind = RingKind::Rationals;
    return Ring(std::move(d));
  }

  static Ring integers_mod(std::uint64_t n) {
    if (n < 2) throw Error("IntegersMod requires n >= 2");
    if (n >= (1ull << 63)) throw Error("IntegersMod modulus too large");
    auto d = std::make_shared<detail::RingData>();
    d->kind = RingKind::IntegersMod;
    d->modulus = n;
    d->radical = 1;
    for (auto p : detail::prime_factors(n)) d->radical *= p;
    return Ring(std::move(d));
  }

  static Ring prime_field(std::uint64_t p) {
    if (p >= (1ull << 63) || !detail::is_prime_u64(p)) throw Error("PrimeField requires a prime p");
    auto d = std::make_shared<detail::RingData>();
    d->kind = RingKind::PrimeField;
    d->modulus = p;
    d->radical = p;
    return Ring(std::move(d));
  }

  // modulus: monic irreducible polynomial over F_p, coefficients low to high.
  static Ring extension_field(std::uint64_t p, std::vector<std::uint64_t> modulus) {
    if (p >= (1ull << 31) || !detail::is_prime_u64(p)) throw Error("ExtensionField requires a prime p < 2^31");
    for (auto& c : modulus) c %= p;
    detail::fp_trim(modulus);
    if (modulus.size() < 2) throw Error("ExtensionField modulus must have degree >= 1");
    if (modulus.size() > 9) throw Error("ExtensionField supports degree <= 8");
    if (modulus.back() != 1) throw Error("ExtensionField modulus must be monic");
    if (!detail::fp_is_irreducible(modulus, p)) throw Error("ExtensionField modulus is not irreducible");
    auto d = std::make_shared<detail::RingData>();
    d->kind = RingKind::ExtensionField;
    d->modulus = p;
    d->radical = p;
    d->ext_modulus = std::move(modulus);
    return Ring(std::move(d));
  }

  // Smallest monic irreducible of degree e over F_p in the order used by
  // finite_field(): coefficients read as base-p digits, low digit first.
  static std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned e) {
    std::vector<std::uint64_t> m(e + 1, 0);
    m[e] = 1;
    while (true) {
      if (detail::fp_is_irreducible(m, p)) return m;
      std::size_t i = 0;
      while (i < e) {
        if (++m[i] < p) break;
        m[i] = 0;
        ++i;
      }
      if (i == e) throw Error("no irreducible polynomial found");
    }
  }

  // F_q for q = p^e; prime fields when e = 1.
  static Ring finite_field(std::uint64_t q) {
    for (std::uint64_t p = 2; p <= q; ++p) {
      if (q % p) continue;
      unsigned e = 0;
      std::uint64_t r = q;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      if (r != 1 || !detail::is_prime_u64(p)) throw Error("F_q requires a prime power q");
      if (e == 1) return prime_field(p);
      return extension_field(p, default_modulus(p, e));
    }
    throw Error("F_q requires a prime power q");
  }

  static Ring polynomial(const Ring& base, std::vector<std::string> vars) {
    if (base.kind() == RingKind::PolynomialRing && base.base().kind() == RingKind::PolynomialRing)
      throw Error("polynomial ring nesting depth is limited to 2");
    std::vector<std::string> seen = base.all_variable_names();
    for (const auto& v : vars) {
      if (v.empty()) throw Error("empty variable name");
      if (std::find(seen.begin(), seen.end(), v) != seen.end()) throw Error("duplicate variable name: " + v);
      seen.push_back(v);
    }
    auto d = std::make_shared<detail::RingData>();
    d->kind = RingKind::PolynomialRing;
    d->base = base.data_;
    d->variables = std::move(vars);
    return Ring(std::move(d));
  }

  RingKind kind() const { return data_->kind; }
  std::uint64_t modulus() const { return data_->modulus; }
  const std::vector<std::uint64_t>& ext_modulus() const { return data_->ext_modulus; }
  unsigned ext_degree() const { return static_cast<unsigned>(data_->ext_modulus.size() - 1); }
  Ring base() const {
    if (kind() != RingKind::PolynomialRing) throw Error("not a polynomial ring");
    return Ring(data_->base);
  }
  const std::vector<std::string>& variables() const { return data_->variables; }
  std::size_t nvars() const { return data_->variables.size(); }

  bool is_finite() const {
    return kind() == RingKind::IntegersMod || kind() == RingKind::PrimeField || kind() == RingKind::ExtensionField;
  }
  bool is_field() const {
    return kind() == RingKind::PrimeField || kind() == RingKind::ExtensionField || kind() == RingKind::Rationals;
  }
  // Number of elements of a finite ring.
  BigInt cardinality() const {
    if (kind() == RingKind::ExtensionField) return boost::multiprecision::pow(BigInt(modulus()), ext_degree());
    if (is_finite()) return BigInt(modulus());
    throw Error("ring is infinite");
  }

  std::vector<std::string> all_variable_names() const {
    if (kind() != RingKind::PolynomialRing) return {};
    auto v = base().all_variable_names();
    v.insert(v.end(), variables().begin(), variables().end());
    return v;
  }

  friend bool operator==(const Ring& a, const Ring& b) { return same(a.data_.get(), b.data_.get()); }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

  std::string name() const {
    switch (kind()) {
      case RingKind::Integers: return "Z";
      case RingKind::Rationals: return "Q";
      case RingKind::IntegersMod: return "Z/" + std::to_string(modulus());
      case RingKind::PrimeField: return "F" + std::to_string(modulus());
      case RingKind::ExtensionField: {
        return "F" + cardinality().str();
      }
      case RingKind::PolynomialRing: {
        std::string s = base().name() + "[";
        for (std::size_t i = 0; i < nvars(); ++i) s += (i ? "," : "") + variables()[i];
        return s + "]";
      }
    }
    return "?";
  }

  // ---- element construction ----

  Elem zero() const { return from_int(BigInt(0)); }
  Elem one() const { return from_int(BigInt(1)); }
  Elem from_int(long long v) const { return from_int(BigInt(v)); }

  Elem from_int(const BigInt& v) const {
    switch (kind()) {
      case RingKind::Integers: return v;
      case RingKind::Rationals: return BigRational(v);
      case RingKind::IntegersMod:
      case RingKind::PrimeField: return Residue{reduce(v, modulus())};
      case RingKind::ExtensionField: {
        FqElem f;
        f.c.assign(ext_degree(), 0);
        f.c[0] = reduce(v, modulus());
        return f;
      }
      case RingKind::PolynomialRing: {
        Elem c = base().from_int(v);
        return constant(c);
      }
    }
    throw Error("bad ring kind");
  }

  Elem from_rational(const BigRational& q) const {
    if (kind() == RingKind::Rationals) return q;
    if (boost::multiprecision::denominator(q) == 1) return from_int(BigInt(boost::multiprecision::numerator(q)));
    auto den = inverse(from_int(BigInt(boost::multiprecision::denominator(q))));
    if (!den) throw Error("denominator is not a unit in " + name());
    return mul(from_int(BigInt(boost::multiprecision::numerator(q))), *den);
  }

  // Element of F_q from its coefficient vector.
  Elem fq(std::vector<std::uint64_t> coeffs) const {
    if (kind() != RingKind::ExtensionField) throw Error("not an extension field");
    FqElem f;
    f.c.assign(ext_degree(), 0);
    FqElem tmp;
    tmp.c = std::move(coeffs);
    for (auto& c : tmp.c) c %= modulus();
    return fq_reduce(std::move(tmp.c));
  }

  // The class of a in F_p[a]/(m).
  Elem generator() const { return fq({0, 1}); }

  Elem variable(std::size_t i) const {
    if (kind() != RingKind::PolynomialRing || i >= nvars()) throw Error("variable index out of range");
    Monomial m(nvars(), 0);
    m[i] = 1;
    return make_poly({PolyTerm{std::move(m), base().one()}});
  }

  Elem variable(const std::string& name) const {
    auto it = std::find(variables().begin(), variables().end(), name);
    if (it == variables().end()) throw Error("unknown variable " + name);
    return variable(static_cast<std::size_t>(it - variables().begin()));
  }

  Elem constant(const Elem& c) const {
    if (kind() != RingKind::PolynomialRing) throw Error("not a polynomial ring");
    if (base().is_zero(c)) return PolyElem{};
    return make_poly({PolyTerm{Monomial(nvars(), 0), c}});
  }

  // Normalises arbitrary terms into canonical form.
  Elem make_poly(std::vector<PolyTerm> terms) const {
    const Ring b = base();
    std::sort(terms.begin(), terms.end(), [](const PolyTerm& x, const PolyTerm& y) { return grlex_less(x.exps, y.exps); });
    std::vector<PolyTerm> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.empty() && out.back().exps == t.exps) {
        out.back().coef = b.add(out.back().coef, t.coef);
      } else {
        if (!out.empty() && b.is_zero(out.back().coef)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && b.is_zero(out.back().coef)) out.pop_back();
    if (out.empty()) return PolyElem{};
    return PolyElem{std::make_shared<const std::vector<PolyTerm>>(std::move(out))};
  }

  static const std::vector<PolyTerm>& terms_of(const Elem& e) {
    static const std::vector<PolyTerm> empty;
    const auto& p = std::get<PolyElem>(e);
    return p.terms ? *p.terms : empty;
  }

  // ---- arithmetic ----

  bool is_zero(const Elem& a) const { return is_zero_elem(a); }

  bool eq(const Elem& a, const Elem& b) const {
    switch (kind()) {
      case RingKind::Integers: return std::get<BigInt>(a) == std::get<BigInt>(b);
      case RingKind::Rationals: return std::get<BigRational>(a) == std::get<BigRational>(b);
      case RingKind::IntegersMod:
      case RingKind::PrimeField: return std::get<Residue>(a).v == std::get<Residue>(b).v;
      case RingKind::ExtensionField: return std::get<FqElem>(a).c == std::get<FqElem>(b).c;
      case RingKind::PolynomialRing: {
        const auto& ta = terms_of(a);
        const auto& tb = terms_of(b);
        if (ta.size() != tb.size()) return false;
        const Ring bs = base();
        for (std::size_t i = 0; i < ta.size(); ++i) {
          if (ta[i].exps != tb[i].exps || !bs.eq(ta[i].coef, tb[i].coef)) return false;
        }
        return true;
      }
    }
    return false;
  }

  Elem add(const Elem& a, const Elem& b) const {
    switch (kind()) {
      case RingKind::Integers: return BigInt(std::get<BigInt>(a) + std::get<BigInt>(b));
      case RingKind::Rationals: return BigRational(std::get<BigRational>(a) + std::get<BigRational>(b));
      case RingKind::IntegersMod:
      case RingKind::PrimeField: {
        std::uint64_t s = std::get<Residue>(a).v + std::get<Residue>(b).v;
        if (s >= modulus()) s -= modulus();
        return Residue{s};
      }
      case RingKind::ExtensionField: {
        FqElem r = std::get<FqElem>(a);
        const auto& y = std::get<FqElem>(b).c;
        for (std::size_t i = 0; i < r.c.size(); ++i) {
          r.c[i] += y[i];
          if (r.c[i] >= modulus()) r.c[i] -= modulus();
        }
        return r;
      }
      case RingKind::PolynomialRing: return poly_add(a, b, false);
    }
    throw Error("bad ring kind");
  }

  Elem neg(const Elem& a) const {
    switch (kind()) {
      case RingKind::Integers: return BigInt(-std::get<BigInt>(a));
      case RingKind::Rationals: return BigRational(-std::get<BigRational>(a));
      case RingKind::IntegersMod:
      case RingKind::PrimeField: {
        auto v = std::get<Residue>(a).v;
        return Residue{v == 0 ? 0 : modulus() - v};
      }
      case RingKind::ExtensionField: {
        FqElem r = std::get<FqElem>(a);
        for (auto& c : r.c) c = c == 0 ? 0 : modulus() - c;
        return r;
      }
      case RingKind::PolynomialRing: {
        const Ring b = base();
        std::vector<PolyTerm> out = terms_of(a);
        for (auto& t : out) t.coef = b.neg(t.coef);
        if (out.empty()) return PolyElem{};
        return PolyElem{std::make_shared<const std::vector<PolyTerm>>(std::move(out))};
      }
    }
    throw Error("bad ring kind");
  }

  Elem sub(const Elem& a, const Elem& b) const {
    if (kind() == RingKind::PolynomialRing) return poly_add(a, b, true);
    return add(a, neg(b));
  }

  Elem mul(const Elem& a, const Elem& b) const {
    switch (kind()) {
      case RingKind::Integers: return BigInt(std::get<BigInt>(a) * std::get<BigInt>(b));
      case RingKind::Rationals: return BigRational(std::get<BigRational>(a) * std::get<BigRational>(b));
      case RingKind::IntegersMod:
      case RingKind::PrimeField:
        return Residue{detail::mulmod(std::get<Residue>(a).v, std::get<Residue>(b).v, modulus())};
      case RingKind::ExtensionField: {
        const auto& x = std::get<FqElem>(a).c;
        const auto& y = std::get<FqElem>(b).c;
        const std::uint64_t p = modulus();
        std::vector<std::uint64_t> r(x.size() + y.size() - 1, 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (x[i] == 0) continue;
          for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = (r[i + j] + detail::mulmod(x[i], y[j], p)) % p;
        }
        return fq_reduce(std::move(r));
      }
      case RingKind::PolynomialRing: return poly_mul(a, b);
    }
    throw Error("bad ring kind");
  }

  Elem pow(const Elem& a, std::uint64_t e) const {
    Elem r = one(), base_ = a;
    while (e) {
      if (e & 1) r = mul(r, base_);
      e >>= 1;
      if (e) base_ = mul(base_, base_);
    }
    return r;
  }

  Elem pow(const Elem& a, BigInt e) const {
    Elem r = one(), base_ = a;
    while (e > 0) {
      if (boost::multiprecision::bit_test(e, 0)) r = mul(r, base_);
      e >>= 1;
      if (e > 0) base_ = mul(base_, base_);
    }
    return r;
  }

  bool is_nilpotent(const Elem& a) const {
    switch (kind()) {
      case RingKind::IntegersMod:
      case RingKind::PrimeField: return std::get<Residue>(a).v % data_->radical == 0;
      case RingKind::PolynomialRing: {
        const Ring b = base();
        for (const auto& t : terms_of(a))
          if (!b.is_nilpotent(t.coef)) return false;
        return true;
      }
      default: return is_zero(a);
    }
  }

  bool is_unit(const Elem& a) const {
    switch (kind()) {
      case RingKind::Integers: {
        const auto& v = std::get<BigInt>(a);
        return v == 1 || v == -1;
      }
      case RingKind::Rationals:
      case RingKind::ExtensionField: return !is_zero(a);
      case RingKind::IntegersMod:
      case RingKind::PrimeField: return std::gcd(std::get<Residue>(a).v, modulus()) == 1;
      case RingKind::PolynomialRing: {
        // Unit iff the constant term is a unit and every other coefficient
        // is nilpotent.
        const Ring b = base();
        bool has_const = false;
        for (const auto& t : terms_of(a)) {
          bool is_const = std::all_of(t.exps.begin(), t.exps.end(), [](auto x) { return x == 0; });
          if (is_const) {
            has_const = true;
            if (!b.is_unit(t.coef)) return false;
          } else if (!b.is_nilpotent(t.coef)) {
            return false;
          }
        }
        return has_const;
      }
    }
    return false;
  }

  std::optional<Elem> inverse(const Elem& a) const {
    if (!is_unit(a)) return std::nullopt;
    switch (kind()) {
      case RingKind::Integers: return a;
      case RingKind::Rationals: return BigRational(1 / std::get<BigRational>(a));
      case RingKind::IntegersMod:
      case RingKind::PrimeField: return Residue{inv_mod(std::get<Residue>(a).v, modulus())};
      case RingKind::ExtensionField: return pow(a, cardinality() - 2);
      case RingKind::PolynomialRing: {
        const Ring b = base();
        Elem c = b.zero();
        for (const auto& t : terms_of(a))
          if (std::all_of(t.exps.begin(), t.exps.end(), [](auto x) { return x == 0; })) c = t.coef;
        Elem cinv = *b.inverse(c);
        Elem cinv_p = constant(cinv);
        // a = c (1 + u) with u nilpotent; 1/(1+u) = sum (-u)^j.
        Elem u = sub(mul(cinv_p, a), one());
        Elem mu = neg(u);
        Elem term = one(), sum = one();
        for (int j = 0; j < 100000; ++j) {
          term = mul(term, mu);
          if (is_zero(term)) return mul(sum, cinv_p);
          sum = add(sum, term);
        }
        throw Error("nilpotent series did not terminate");
      }
    }
    return std::nullopt;
  }

  // ---- coercion between rings ----

  // True when there is a canonical map from `from` into this ring.
  bool accepts(const Ring& from) const {
    if (*this == from) return true;
    if (from.kind() == RingKind::Integers) return true;
    if (kind() == RingKind::PolynomialRing) {
      if (base().accepts(from)) return true;
      if (from.kind() == RingKind::PolynomialRing) {
        auto mine = all_variable_names();
        auto theirs = from.all_variable_names();
        if (!flat_base().accepts(from.flat_base())) return false;
        for (const auto& v : theirs)
          if (std::find(mine.begin(), mine.end(), v) == mine.end()) return false;
        return true;
      }
    }
    return false;
  }

  Elem coerce(const Ring& from, const Elem& e) const {
    if (*this == from) return e;
    if (from.kind() == RingKind::Integers) return from_int(std::get<BigInt>(e));
    if (kind() == RingKind::PolynomialRing) {
      const Ring b = base();
      if (b.accepts(from)) return constant(b.coerce(from, e));
      if (from.kind() == RingKind::PolynomialRing && accepts(from)) {
        // Route through flat representations keyed by variable name.
        auto flat_terms = from.flatten(e);
        return unflatten(from.all_variable_names(), from.flat_base(), flat_terms);
      }
    }
    throw Error("ring mismatch: cannot map " + from.name() + " into " + name());
  }

  // The non-polynomial ring at the bottom of the tower.
  Ring flat_base() const { return kind() == RingKind::PolynomialRing ? base().flat_base() : *this; }

  // Terms over flat_base() with exponents indexed by all_variable_names().
  std::vector<PolyTerm> flatten(const Elem& e) const {
    if (kind() != RingKind::PolynomialRing) {
      if (is_zero(e)) return {};
      return {PolyTerm{Monomial{}, e}};
    }
    const Ring b = base();
    const std::size_t nb = b.all_variable_names().size();
    std::vector<PolyTerm> out;
    for (const auto& t : terms_of(e)) {
      for (auto& inner : b.flatten(t.coef)) {
        Monomial m(nb + nvars(), 0);
        std::copy(inner.exps.begin(), inner.exps.end(), m.begin());
        std::copy(t.exps.begin(), t.exps.end(), m.begin() + static_cast<std::ptrdiff_t>(nb));
        out.push_back(PolyTerm{std::move(m), std::move(inner.coef)});
      }
    }
    return out;
  }

  // Rebuild an element of this ring from flat terms over `src_base` whose
  // exponent positions are named by `names`.
  Elem unflatten(const std::vector<std::string>& names, const Ring& src_base, const std::vector<PolyTerm>& terms) const {
    if (kind() != RingKind::PolynomialRing) {
      Elem acc = zero();
      for (const auto& t : terms) {
        for (auto x : t.exps)
          if (x != 0) throw Error("ring mismatch: variable does not exist in " + name());
        acc = add(acc, coerce(src_base, t.coef));
      }
      return acc;
    }
    const Ring b = base();
    std::vector<int> pos(names.size(), -1);
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto it = std::find(variables().begin(), variables().end(), names[i]);
      if (it != variables().end()) pos[i] = static_cast<int>(it - variables().begin());
    }
    // Group by the exponents of this level's variables.
    std::map<Monomial, std::vector<PolyTerm>, bool (*)(const Monomial&, const Monomial&)> groups(grlex_less);
    for (const auto& t : terms) {
      Monomial mine(nvars(), 0);
      Monomial rest(t.exps.size(), 0);
      for (std::size_t i = 0; i < t.exps.size(); ++i) {
        if (pos[i] >= 0)
          mine[static_cast<std::size_t>(pos[i])] = t.exps[i];
        else
          rest[i] = t.exps[i];
      }
      groups[mine].push_back(PolyTerm{std::move(rest), t.coef});
    }
    std::vector<PolyTerm> out;
    for (auto& [m, inner] : groups) out.push_back(PolyTerm{m, b.unflatten(names, src_base, inner)});
    return make_poly(std::move(out));
  }

  // ---- adjoining and removing variables ----

  // A name not used anywhere in this ring's tower, built from `stem`.
  std::string fresh_variable(const std::string& stem) const {
    auto names = all_variable_names();
    if (std::find(names.begin(), names.end(), stem) == names.end()) return stem;
    for (int i = 1;; ++i) {
      std::string s = stem + "_" + std::to_string(i);
      if (std::find(names.begin(), names.end(), s) == names.end()) return s;
    }
  }

  // R[vars], flattened into the existing variable list when R is already a
  // polynomial ring.
  Ring adjoin(const std::vector<std::string>& vars) const {
    if (kind() == RingKind::PolynomialRing) {
      auto all = variables();
      all.insert(all.end(), vars.begin(), vars.end());
      return polynomial(base(), all);
    }
    return polynomial(*this, vars);
  }

  // Coefficient of var^exp, as an element of the ring with var removed.
  // var must be one of this ring's own (outermost) variables.
  std::pair<Ring, Elem> coefficient_of(const Elem& e, const std::string& var, std::uint32_t exp) const {
    auto it = std::find(variables().begin(), variables().end(), var);
    if (it == variables().end()) throw Error("unknown variable " + var);
    const std::size_t idx = static_cast<std::size_t>(it - variables().begin());
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < nvars(); ++i)
      if (i != idx) rest.push_back(variables()[i]);
    Ring target = rest.empty() ? base() : polynomial(base(), rest);
    std::vector<PolyTerm> picked;
    for (const auto& t : terms_of(e)) {
      if (t.exps[idx] != exp) continue;
      Monomial m;
      for (std::size_t i = 0; i < nvars(); ++i)
        if (i != idx) m.push_back(t.exps[i]);
      picked.push_back(PolyTerm{std::move(m), t.coef});
    }
    if (rest.empty()) {
      return {target, picked.empty() ? target.zero() : picked.front().coef};
    }
    return {target, target.make_poly(std::move(picked))};
  }

  // ---- formatting ----

  std::string to_string(const Elem& a) const {
    switch (kind()) {
      case RingKind::Integers: return std::get<BigInt>(a).str();
      case RingKind::Rationals: {
        const auto& q = std::get<BigRational>(a);
        if (boost::multiprecision::denominator(q) == 1) return BigInt(boost::multiprecision::numerator(q)).str();
        return BigInt(boost::multiprecision::numerator(q)).str() + "/" + BigInt(boost::multiprecision::denominator(q)).str();
      }
      case RingKind::IntegersMod:
      case RingKind::PrimeField: return std::to_string(std::get<Residue>(a).v);
      case RingKind::ExtensionField: {
        const auto& c = std::get<FqElem>(a).c;
        std::string s;
        for (std::size_t i = c.size(); i-- > 0;) {
          if (c[i] == 0) continue;
          if (!s.empty()) s += "+";
          if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
          if (i >= 1) s += (i == 0 || c[i] != 1) ? "*a" : "a";
          if (i >= 2) s += "^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
      }
      case RingKind::PolynomialRing: {
        const auto& ts = terms_of(a);
        if (ts.empty()) return "0";
        const Ring b = base();
        std::string s;
        for (std::size_t k = ts.size(); k-- > 0;) {
          const auto& t = ts[k];
          std::string mono;
          for (std::size_t i = 0; i < nvars(); ++i) {
            if (t.exps[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += variables()[i];
            if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
          }
          std::string coef = b.to_string(t.coef);
          bool compound = coef.find_first_of("+*") != std::string::npos || coef.find('-', 1) != std::string::npos;
          if (compound) coef = "(" + coef + ")";
          std::string piece;
          if (mono.empty())
            piece = coef;
          else if (coef == "1")
            piece = mono;
          else if (coef == "-1")
            piece = "-" + mono;
          else
            piece = coef + "*" + mono;
          if (!s.empty()) s += (piece[0] == '-') ? " - " + piece.substr(1) : " + " + piece;
          else s = piece;
        }
        return s;
      }
    }
    return "?";
  }

  const detail::RingData* raw() const { return data_.get(); }

 private:
  explicit Ring(std::shared_ptr<const detail::RingData> d) : data_(std::move(d)) {}

  static bool same(const detail::RingData* a, const detail::RingData* b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->modulus != b->modulus || a->ext_modulus != b->ext_modulus ||
        a->variables != b->variables)
      return false;
    if (a->kind == RingKind::PolynomialRing) return same(a->base.get(), b->base.get());
    return true;
  }

  static std::uint64_t reduce(const BigInt& v, std::uint64_t n) {
    BigInt r = v % n;
    if (r < 0) r += n;
    return r.convert_to<std::uint64_t>();
  }

  static std::uint64_t inv_mod(std::uint64_t a, std::uint64_t n) {
    __int128 t = 0, nt = 1, r = n, nr = a;
    while (nr != 0) {
      __int128 q = r / nr;
      __int128 tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += n;
    return static_cast<std::uint64_t>(t);
  }

  Elem fq_reduce(std::vector<std::uint64_t> r) const {
    const auto& m = ext_modulus();
    const std::size_t e = ext_degree();
    const std::uint64_t p = modulus();
    for (std::size_t i = r.size(); i-- > e;) {
      std::uint64_t f = r[i];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= e; ++j) {
        std::size_t idx = i - e + j;
        r[idx] = (r[idx] + p - detail::mulmod(f, m[j], p)) % p;
      }
    }
    r.resize(e, 0);
    return FqElem{std::move(r)};
  }

  Elem poly_add(const Elem& a, const Elem& b, bool subtract) const {
    const Ring bs = base();
    const auto& ta = terms_of(a);
    const auto& tb = terms_of(b);
    std::vector<PolyTerm> out;
    out.reserve(ta.size() + tb.size());
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
      if (j == tb.size() || (i < ta.size() && grlex_less(ta[i].exps, tb[j].exps))) {
        out.push_back(ta[i++]);
      } else if (i == ta.size() || grlex_less(tb[j].exps, ta[i].exps)) {
        out.push_back(PolyTerm{tb[j].exps, subtract ? bs.neg(tb[j].coef) : tb[j].coef});
        ++j;
      } else {
        Elem c = subtract ? bs.sub(ta[i].coef, tb[j].coef) : bs.add(ta[i].coef, tb[j].coef);
        if (!bs.is_zero(c)) out.push_back(PolyTerm{ta[i].exps, std::move(c)});
        ++i;
        ++j;
      }
    }
    if (out.empty()) return PolyElem{};
    return PolyElem{std::make_shared<const std::vector<PolyTerm>>(std::move(out))};
  }

  Elem poly_mul(const Elem& a, const Elem& b) const {
    const auto& ta = terms_of(a);
    const auto& tb = terms_of(b);
    if (ta.empty() || tb.empty()) return PolyElem{};
    const Ring bs = base();
    std::vector<PolyTerm> prod;
    prod.reserve(ta.size() * tb.size());
    for (const auto& x : ta) {
      for (const auto& y : tb) {
        Elem c = bs.mul(x.coef, y.coef);
        if (bs.is_zero(c)) continue;
        Monomial m(x.exps.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = x.exps[i] + y.exps[i];
        prod.push_back(PolyTerm{std::move(m), std::move(c)});
      }
    }
    return make_poly(std::move(prod));
  }

  std::shared_ptr<const detail::RingData> data_;
};

inline bool is_zero_elem(const Elem& e) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BigInt>) return v == 0;
        if constexpr (std::is_same_v<T, BigRational>) return v == 0;
        if constexpr (std::is_same_v<T, Residue>) return v.v == 0;
        if constexpr (std::is_same_v<T, FqElem>)
          return std::all_of(v.c.begin(), v.c.end(), [](auto x) { return x == 0; });
        if constexpr (std::is_same_v<T, PolyElem>) return !v.terms || v.terms->empty();
      },
      e);
}

// Smallest ring receiving canonical maps from both a and b.
inline Ring common_ring(const Ring& a, const Ring& b) {
  if (a.accepts(b)) return a;
  if (b.accepts(a)) return b;
  if (a.kind() == RingKind::PolynomialRing || b.kind() == RingKind::PolynomialRing) {
    Ring base = common_ring(a.flat_base(), b.flat_base());
    std::vector<std::string> vars = a.all_variable_names();
    for (const auto& v : b.all_variable_names())
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    return Ring::polynomial(base, vars);
  }
  throw Error("ring mismatch: " + a.name() + " vs " + b.name());
}

// An element together with the ring it lives in.
class RingValue {
 public:
  RingValue() : ring_(Ring::integers()), elem_(BigInt(0)) {}
  RingValue(Ring r, Elem e) : ring_(std::move(r)), elem_(std::move(e)) {}

  static RingValue of(const Ring& r, long long v) { return RingValue(r, r.from_int(v)); }
  static RingValue zero(const Ring& r) { return RingValue(r, r.zero()); }
  static RingValue one(const Ring& r) { return RingValue(r, r.one()); }

  const Ring& ring() const { return ring_; }
  const Elem& elem() const { return elem_; }

  RingValue operator+(const RingValue& o) const { return {ring_, ring_.add(elem_, check(o))}; }
  RingValue operator-(const RingValue& o) const { return {ring_, ring_.sub(elem_, check(o))}; }
  RingValue operator*(const RingValue& o) const { return {ring_, ring_.mul(elem_, check(o))}; }
  RingValue operator-() const { return {ring_, ring_.neg(elem_)}; }
  RingValue& operator+=(const RingValue& o) { return *this = *this + o; }
  RingValue& operator-=(const RingValue& o) { return *this = *this - o; }
  RingValue& operator*=(const RingValue& o) { return *this = *this * o; }
  RingValue pow(std::uint64_t e) const { return {ring_, ring_.pow(elem_, e)}; }

  friend bool operator==(const RingValue& a, const RingValue& b) {
    return a.ring_ == b.ring_ && a.ring_.eq(a.elem_, b.elem_);
  }
  friend bool operator!=(const RingValue& a, const RingValue& b) { return !(a == b); }

  bool is_zero() const { return ring_.is_zero(elem_); }
  bool is_unit() const { return ring_.is_unit(elem_); }
  bool is_nilpotent() const { return ring_.is_nilpotent(elem_); }
  std::optional<RingValue> inverse() const {
    auto inv = ring_.inverse(elem_);
    if (!inv) return std::nullopt;
    return RingValue(ring_, std::move(*inv));
  }

  RingValue to(const Ring& target) const { return {target, target.coerce(ring_, elem_)}; }

  std::string to_string() const { return ring_.to_string(elem_); }
  friend std::ostream& operator<<(std::ostream& os, const RingValue& v) { return os << v.to_string(); }

 private:
  const Elem& check(const RingValue& o) const {
    if (!(o.ring_ == ring_)) throw Error("ring mismatch");
    return o.elem_;
  }

  Ring ring_;
  Elem elem_;
};

}  // namespace pseudochar
