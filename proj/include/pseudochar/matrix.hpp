#pragma once

// Square matrices over the ring tower, with a division-free characteristic
// polynomial (Berkowitz) and cofactor-expansion oracles.

#include <vector>

#include "rings.hpp"

namespace pseudochar {

class SquareMatrix {
 public:
  SquareMatrix(Ring ring, std::size_t d) : ring_(std::move(ring)), d_(d), e_(d * d, ring_.zero()) {
    if (d == 0) throw Error("matrix dimension must be >= 1");
  }

  SquareMatrix(Ring ring, std::size_t d, std::vector<Elem> entries)
      : ring_(std::move(ring)), d_(d), e_(std::move(entries)) {
    if (d == 0) throw Error("matrix dimension must be >= 1");
    if (e_.size() != d * d) throw Error("matrix entry count mismatch");
  }

  // Row-major integer entries mapped into `ring`.
  static SquareMatrix from_ints(const Ring& ring, std::size_t d, const std::vector<long long>& v) {
    if (v.size() != d * d) throw Error("matrix entry count mismatch");
    std::vector<Elem> e;
    e.reserve(v.size());
    for (auto x : v) e.push_back(ring.from_int(x));
    return SquareMatrix(ring, d, std::move(e));
  }

  static SquareMatrix from_values(std::size_t d, const std::vector<RingValue>& v) {
    if (v.size() != d * d || v.empty()) throw Error("matrix entry count mismatch");
    Ring r = v.front().ring();
    std::vector<Elem> e;
    for (const auto& x : v) {
      if (x.ring() != r) throw Error("ring mismatch");
      e.push_back(x.elem());
    }
    return SquareMatrix(r, d, std::move(e));
  }

  static SquareMatrix identity(const Ring& ring, std::size_t d) {
    SquareMatrix m(ring, d);
    for (std::size_t i = 0; i < d; ++i) m.set(i, i, ring.one());
    return m;
  }

  static SquareMatrix diagonal(const std::vector<RingValue>& diag) {
    if (diag.empty()) throw Error("matrix dimension must be >= 1");
    SquareMatrix m(diag.front().ring(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i].to(m.ring()).elem());
    return m;
  }

  const Ring& ring() const { return ring_; }
  std::size_t dim() const { return d_; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return e_[i * d_ + j]; }
  RingValue at(std::size_t i, std::size_t j) const { return RingValue(ring_, e_[i * d_ + j]); }
  void set(std::size_t i, std::size_t j, Elem v) { e_[i * d_ + j] = std::move(v); }
  const std::vector<Elem>& entries() const { return e_; }

  SquareMatrix operator*(const SquareMatrix& o) const {
    check(o);
    SquareMatrix r(ring_, d_);
    for (std::size_t i = 0; i < d_; ++i) {
      for (std::size_t k = 0; k < d_; ++k) {
        const Elem& a = (*this)(i, k);
        if (ring_.is_zero(a)) continue;
        for (std::size_t j = 0; j < d_; ++j) {
          const Elem& b = o(k, j);
          if (ring_.is_zero(b)) continue;
          r.e_[i * d_ + j] = ring_.add(r.e_[i * d_ + j], ring_.mul(a, b));
        }
      }
    }
    return r;
  }

  SquareMatrix operator+(const SquareMatrix& o) const {
    check(o);
    SquareMatrix r(ring_, d_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = ring_.add(e_[i], o.e_[i]);
    return r;
  }

  SquareMatrix operator-(const SquareMatrix& o) const {
    check(o);
    SquareMatrix r(ring_, d_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = ring_.sub(e_[i], o.e_[i]);
    return r;
  }

  SquareMatrix scaled(const Elem& c) const {
    SquareMatrix r(ring_, d_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = ring_.mul(c, e_[i]);
    return r;
  }

  SquareMatrix pow(std::uint64_t n) const {
    SquareMatrix r = identity(ring_, d_), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }

  RingValue trace() const {
    Elem t = ring_.zero();
    for (std::size_t i = 0; i < d_; ++i) t = ring_.add(t, (*this)(i, i));
    return RingValue(ring_, t);
  }

  // Image under the canonical map into `target`.
  SquareMatrix to(const Ring& target) const {
    if (target == ring_) return *this;
    std::vector<Elem> e;
    e.reserve(e_.size());
    for (const auto& x : e_) e.push_back(target.coerce(ring_, x));
    return SquareMatrix(target, d_, std::move(e));
  }

  // Block-diagonal sum.
  SquareMatrix direct_sum(const SquareMatrix& o) const {
    check_ring(o);
    SquareMatrix r(ring_, d_ + o.d_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) r.set(i, j, (*this)(i, j));
    for (std::size_t i = 0; i < o.d_; ++i)
      for (std::size_t j = 0; j < o.d_; ++j) r.set(d_ + i, d_ + j, o(i, j));
    return r;
  }

  SquareMatrix submatrix(const std::vector<std::size_t>& idx) const {
    SquareMatrix r(ring_, idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) r.set(i, j, (*this)(idx[i], idx[j]));
    return r;
  }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.ring_ != b.ring_ || a.d_ != b.d_) return false;
    for (std::size_t i = 0; i < a.e_.size(); ++i)
      if (!a.ring_.eq(a.e_[i], b.e_[i])) return false;
    return true;
  }
  friend bool operator!=(const SquareMatrix& a, const SquareMatrix& b) { return !(a == b); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < d_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < d_; ++j) s += (j ? "," : "") + ring_.to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_ring(const SquareMatrix& o) const {
    if (o.ring_ != ring_) throw Error("ring mismatch");
  }
  void check(const SquareMatrix& o) const {
    check_ring(o);
    if (o.d_ != d_) throw Error("matrix dimension mismatch");
  }

  Ring ring_;
  std::size_t d_;
  std::vector<Elem> e_;
};

// Coefficients of det(T*I - M) = sum_i lambdas[i] T^(d-i); lambdas[0] = 1.
struct CharPoly {
  std::size_t d = 0;
  std::vector<RingValue> lambdas;

  friend bool operator==(const CharPoly& a, const CharPoly& b) { return a.d == b.d && a.lambdas == b.lambdas; }
};

// Berkowitz: the characteristic polynomial of each leading principal block
// is obtained from the previous one by a Toeplitz product. No divisions, so
// it is valid over Z/4 and friends.
inline CharPoly charpoly(const SquareMatrix& m) {
  const Ring& R = m.ring();
  const std::size_t d = m.dim();
  std::vector<Elem> c = {R.one(), R.neg(m(0, 0))};
  for (std::size_t r = 1; r < d; ++r) {
    std::vector<Elem> t(r + 2, R.zero());
    t[0] = R.one();
    t[1] = R.neg(m(r, r));
    std::vector<Elem> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = m(i, r);
    for (std::size_t k = 2; k <= r + 1; ++k) {
      Elem dot = R.zero();
      for (std::size_t j = 0; j < r; ++j) dot = R.add(dot, R.mul(m(r, j), v[j]));
      t[k] = R.neg(dot);
      if (k == r + 1) break;
      std::vector<Elem> nv(r, R.zero());
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) nv[i] = R.add(nv[i], R.mul(m(i, j), v[j]));
      v = std::move(nv);
    }
    std::vector<Elem> nc(r + 2, R.zero());
    for (std::size_t i = 0; i <= r + 1; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) nc[i] = R.add(nc[i], R.mul(t[i - j], c[j]));
    c = std::move(nc);
  }
  CharPoly cp;
  cp.d = d;
  for (auto& x : c) cp.lambdas.emplace_back(R, std::move(x));
  return cp;
}

inline RingValue det(const SquareMatrix& m) {
  auto cp = charpoly(m);
  return m.dim() % 2 == 0 ? cp.lambdas.back() : -cp.lambdas.back();
}

// Laplace expansion along the first row. Exponential; an oracle for small d.
inline RingValue det_cofactor(const SquareMatrix& m) {
  const Ring& R = m.ring();
  const std::size_t d = m.dim();
  if (d == 1) return m.at(0, 0);
  if (d == 2) return RingValue(R, R.sub(R.mul(m(0, 0), m(1, 1)), R.mul(m(0, 1), m(1, 0))));
  Elem acc = R.zero();
  for (std::size_t j = 0; j < d; ++j) {
    if (R.is_zero(m(0, j))) continue;
    std::vector<Elem> minor;
    minor.reserve((d - 1) * (d - 1));
    for (std::size_t r = 1; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (c != j) minor.push_back(m(r, c));
    Elem term = R.mul(m(0, j), det_cofactor(SquareMatrix(R, d - 1, std::move(minor))).elem());
    acc = (j % 2 == 0) ? R.add(acc, term) : R.sub(acc, term);
  }
  return RingValue(R, acc);
}

// Characteristic polynomial by expanding det(T*I - M) over R[T].
inline CharPoly charpoly_cofactor(const SquareMatrix& m) {
  const Ring& R = m.ring();
  const std::string tname = R.fresh_variable("T");
  const Ring RT = R.adjoin({tname});
  const std::size_t d = m.dim();
  SquareMatrix tm = m.to(RT);
  const Elem T = RT.variable(tname);
  SquareMatrix x(RT, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) x.set(i, j, RT.sub(i == j ? T : RT.zero(), tm(i, j)));
  RingValue p = det_cofactor(x);
  CharPoly cp;
  cp.d = d;
  for (std::size_t i = 0; i <= d; ++i) {
    auto [ring, coef] = RT.coefficient_of(p.elem(), tname, static_cast<std::uint32_t>(d - i));
    cp.lambdas.push_back(RingValue(ring, coef).to(R));
  }
  return cp;
}

// Trace of the k-th exterior power: the sum of all principal k x k minors.
inline RingValue exterior_trace(const SquareMatrix& m, std::size_t k) {
  const std::size_t d = m.dim();
  if (k > d) throw Error("exterior_trace: k out of range");
  if (d > 6) throw Error("exterior_trace: dimension limited to 6");
  const Ring& R = m.ring();
  if (k == 0) return RingValue::one(R);
  RingValue acc = RingValue::zero(R);
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    acc += det_cofactor(m.submatrix(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == d - k + (i - 1)) --i;
    if (i == 0) return acc;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace pseudochar
