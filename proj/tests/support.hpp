#pragma once

// Oracles and fixtures shared by the test binaries. The oracles here are
// deliberately naive and share no code with the library's algorithms.

#include <gtest/gtest.h>

#include <numeric>

#include "pseudochar/correspondence.hpp"

namespace pseudochar {

// Readable gtest failure messages.
inline void PrintTo(const DonkinExpression& e, std::ostream* os) { *os << e.to_string(); }
inline void PrintTo(const RingValue& v, std::ostream* os) { *os << v.to_string() << " in " << v.ring().name(); }

}  // namespace pseudochar

namespace pctest {

using namespace pseudochar;

inline std::vector<Ring> scalar_rings() {
  return {Ring::integers(),       Ring::rationals(),      Ring::integers_mod(4), Ring::integers_mod(6),
          Ring::integers_mod(9),  Ring::prime_field(2),   Ring::prime_field(5),  Ring::prime_field(7),
          Ring::prime_field(101), Ring::finite_field(4),  Ring::finite_field(9), Ring::finite_field(8)};
}

inline std::vector<Ring> all_rings() {
  auto v = scalar_rings();
  v.push_back(Ring::polynomial(Ring::integers(), {"t"}));
  v.push_back(Ring::polynomial(Ring::integers_mod(4), {"t"}));
  v.push_back(Ring::polynomial(Ring::prime_field(5), {"s", "t"}));
  return v;
}

// Sum over all permutations of sign * prod m[i][p(i)].
inline RingValue leibniz_det(const SquareMatrix& m) {
  const Ring& R = m.ring();
  const std::size_t d = m.dim();
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  Elem acc = R.zero();
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (p[i] > p[j]) ++inversions;
    Elem term = R.one();
    for (std::size_t i = 0; i < d; ++i) term = R.mul(term, m(i, static_cast<std::size_t>(p[i])));
    acc = inversions % 2 ? R.sub(acc, term) : R.add(acc, term);
  } while (std::next_permutation(p.begin(), p.end()));
  return RingValue(R, acc);
}

// Coefficients of det(T I - M), read off a Leibniz expansion over R[T].
inline std::vector<RingValue> brute_charpoly(const SquareMatrix& m) {
  const Ring& R = m.ring();
  const std::string T = R.fresh_variable("T");
  const Ring RT = R.adjoin({T});
  const std::size_t d = m.dim();
  SquareMatrix a(RT, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Elem e = RT.neg(RT.coerce(R, m(i, j)));
      if (i == j) e = RT.add(e, RT.variable(T));
      a.set(i, j, e);
    }
  const RingValue p = leibniz_det(a);
  std::vector<RingValue> out;
  for (std::size_t i = 0; i <= d; ++i) {
    auto [base, c] = RT.coefficient_of(p.elem(), T, static_cast<std::uint32_t>(d - i));
    out.push_back(RingValue(base, c).to(R));
  }
  return out;
}

// F_4 = {0, 1, w, w^2 = w + 1} as integers 0..3 with bit i the coefficient
// of w^i; multiplication from w^2 = w + 1 written out by hand.
inline int f4_mul(int a, int b) {
  static const int table[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  return table[a][b];
}

inline Elem f4(const Ring& F4, int code) { return F4.fq({static_cast<std::uint64_t>(code & 1), static_cast<std::uint64_t>(code >> 1)}); }

// chi + chi^2 for cyclic(3) over F4, chi(g) = w.
inline Representation chi_plus_chi2() {
  const Ring F4 = Ring::finite_field(4);
  const GroupPtr c3 = cyclic_group(3);
  std::vector<SquareMatrix> imgs;
  for (int k = 0; k < 3; ++k) {
    SquareMatrix m(F4, 2);
    m.set(0, 0, F4.pow(F4.generator(), static_cast<std::uint64_t>(k)));
    m.set(1, 1, F4.pow(F4.generator(), static_cast<std::uint64_t>(2 * k)));
    imgs.push_back(std::move(m));
  }
  return Representation(c3, std::move(imgs));
}

// cyclic(2) acting on Z^2 by swapping coordinates.
inline Representation swap_rep(const Ring& R = Ring::integers()) {
  const GroupPtr c2 = cyclic_group(2);
  return Representation(c2, {SquareMatrix::identity(R, 2), SquareMatrix::from_ints(R, 2, {0, 1, 1, 0})});
}

inline RingValue val(const Ring& R, long long v) { return RingValue::of(R, v); }

}  // namespace pctest
