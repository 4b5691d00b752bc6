#pragma once

// Taylor pseudocharacters: central functions T on a group with T(1) = d
// whose signed cycle-product sum over S_{d+1} vanishes.

#include <algorithm>
#include <numeric>

#include "groups.hpp"
#include "verdict.hpp"

namespace pseudochar {

struct TaylorPC {
  GroupPtr group;
  Ring ring;
  std::size_t d = 0;
  std::vector<Elem> values;  // indexed by group element

  RingValue value(int g) const { return RingValue(ring, values[static_cast<std::size_t>(g)]); }
};

inline TaylorPC taylor_from_rep(const Representation& rho) {
  TaylorPC t{rho.group(), rho.ring(), rho.dim(), {}};
  for (const auto& m : rho.images()) t.values.push_back(m.trace().elem());
  return t;
}

struct CycleDecomposition {
  std::vector<std::vector<int>> cycles;  // each starts at its minimum; sorted by minimum
  int sign = 1;
};

// Disjoint cycles of sigma (0-based), fixed points included.
inline CycleDecomposition cycle_decompose(const Permutation& sigma) {
  const std::size_t m = sigma.size();
  std::vector<bool> seen(m, false);
  CycleDecomposition out;
  for (std::size_t start = 0; start < m; ++start) {
    if (seen[start]) continue;
    std::vector<int> cyc;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(sigma[i])) {
      if (sigma[i] < 0 || static_cast<std::size_t>(sigma[i]) >= m) throw Error("not a permutation");
      seen[i] = true;
      cyc.push_back(static_cast<int>(i));
    }
    out.cycles.push_back(std::move(cyc));
  }
  out.sign = ((m - out.cycles.size()) % 2 == 0) ? 1 : -1;
  return out;
}

namespace detail {

inline std::size_t factorial(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// Cycle decompositions of S_m in lexicographic order, cached per m.
inline const std::vector<CycleDecomposition>& symmetric_group_cycles(std::size_t m) {
  static const std::vector<std::vector<CycleDecomposition>> table = [] {
    std::vector<std::vector<CycleDecomposition>> t(8);
    for (std::size_t k = 1; k < t.size(); ++k) {
      Permutation p(k);
      std::iota(p.begin(), p.end(), 0);
      do {
        t[k].push_back(cycle_decompose(p));
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return t;
  }();
  if (m == 0 || m >= table.size()) throw Error("symmetric group size out of range");
  return table[m];
}

}  // namespace detail

// sum over sigma in S_{d+1} of sgn(sigma) prod_cycles T(gamma_{i1} ... gamma_{ik}).
inline RingValue taylor_defect(const TaylorPC& t, const std::vector<int>& tuple) {
  if (tuple.size() != t.d + 1) throw Error("taylor_defect: tuple length must be d+1");
  if (t.d > 6) throw Error("taylor_defect: d <= 6 only");
  const Ring& R = t.ring;
  const FiniteGroup& G = *t.group;
  Elem acc = R.zero();
  for (const auto& cd : detail::symmetric_group_cycles(t.d + 1)) {
    Elem term = R.one();
    for (const auto& cyc : cd.cycles) {
      int g = G.identity();
      for (int i : cyc) g = G.mul(g, tuple[static_cast<std::size_t>(i)]);
      term = R.mul(term, t.values[static_cast<std::size_t>(g)]);
      if (R.is_zero(term)) break;
    }
    acc = cd.sign > 0 ? R.add(acc, term) : R.sub(acc, term);
  }
  return RingValue(R, acc);
}

// Checks d! in A^x, T(1) = d, centrality and the pseudocharacter identity.
inline Verdict is_taylor_pc(const TaylorPC& t, const CheckMode& mode) {
  Verdict v;
  const Ring& R = t.ring;
  const FiniteGroup& G = *t.group;
  if (t.values.size() != G.order()) throw Error("TaylorPC table size mismatch");
  const std::size_t fact = detail::factorial(t.d);
  if (!R.is_unit(R.from_int(static_cast<long long>(fact)))) {
    v.precondition_failures.push_back("d! = " + std::to_string(fact) + " is not a unit in " + R.name());
    v.reject("precondition");
  }
  if (!R.eq(t.values[static_cast<std::size_t>(G.identity())], R.from_int(static_cast<long long>(t.d)))) {
    v.reject("T(1) != d", std::vector<int>{G.identity()});
  }
  const int n = static_cast<int>(G.order());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ++v.checks;
      if (!R.eq(t.values[static_cast<std::size_t>(G.mul(a, b))], t.values[static_cast<std::size_t>(G.mul(b, a))])) {
        v.reject("centrality", std::vector<int>{a, b});
        a = n;
        break;
      }
    }
  for_each_tuple(G.order(), t.d + 1, mode, [&](const std::vector<int>& tup) {
    ++v.checks;
    if (!taylor_defect(t, tup).is_zero()) {
      v.reject("identity", tup);
      return false;
    }
    return true;
  });
  return v;
}

// Exhaustive when |Gamma|^(d+1) <= 1e5, otherwise `trials` seeded tuples.
inline Verdict is_taylor_pc(const TaylorPC& t, std::uint64_t seed = 0, std::size_t trials = 2000) {
  return is_taylor_pc(t, CheckMode::automatic(saturating_pow(t.group->order(), t.d + 1), 100000, seed, trials));
}

}  // namespace pseudochar
