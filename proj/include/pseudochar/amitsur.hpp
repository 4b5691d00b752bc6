#pragma once

// Expansion tables: det(t_1 M_1 + ... + t_n M_n) written as a polynomial in
// the t_i whose coefficients are integer polynomials in Lambda_k of words in
// the M_i. Computed by linear algebra over generic matrices.

#include <memory>
#include <mutex>

#include "donkin.hpp"
#include "linear_solve.hpp"
#include "sampling.hpp"

namespace pseudochar {

// Name of the (i, j) entry of the generic matrix of `letter` (all 0-based).
inline std::string generic_variable(int letter, std::size_t i, std::size_t j) {
  return "x" + std::to_string(letter + 1) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
}

// Z[x{l}_{ij}]: the coordinate ring of n-tuples of d x d matrices.
inline Ring generic_ring(std::size_t d, std::size_t n) {
  if (d == 0 || d > 9) throw Error("generic matrices: 1 <= d <= 9");
  std::vector<std::string> vars;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) vars.push_back(generic_variable(static_cast<int>(l), i, j));
  return Ring::polynomial(Ring::integers(), vars);
}

// The generic matrix of `letter` inside R, which must contain its variables.
inline SquareMatrix generic_matrix(const Ring& R, std::size_t d, int letter) {
  SquareMatrix m(R, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m.set(i, j, R.variable(generic_variable(letter, i, j)));
  return m;
}

// Product of letter matrices along w, left to right.
inline SquareMatrix word_product(const std::vector<SquareMatrix>& letters, const Word& w, const Ring& R, std::size_t d) {
  SquareMatrix acc = SquareMatrix::identity(R, d);
  for (int l : w) acc = acc * letters[static_cast<std::size_t>(l)];
  return acc;
}

struct ExpansionTable {
  std::size_t d = 0;
  std::size_t n = 0;
  // Multidegree alpha (|alpha| = d) -> coefficient of t^alpha, arity n.
  std::map<std::vector<int>, DonkinExpression> coefficients;
};

// All alpha in N^n with |alpha| = d, in lexicographic order.
inline std::vector<std::vector<int>> multidegrees(std::size_t d, std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      a[i] = left;
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (n > 0) rec(rec, 0, static_cast<int>(d));
  std::sort(out.begin(), out.end());
  return out;
}

// "t1^2*t3" for alpha = (2, 0, 1).
inline std::string multidegree_name(const std::vector<int>& alpha) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    s += (s.empty() ? "t" : "*t") + std::to_string(i + 1);
    if (alpha[i] > 1) s += "^" + std::to_string(alpha[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::vector<int> parse_multidegree(const std::string& s, std::size_t n) {
  std::vector<int> alpha(n, 0);
  if (s == "1") return alpha;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find('*', pos);
    if (end == std::string::npos) end = s.size();
    const std::string part = s.substr(pos, end - pos);
    if (part.size() < 2 || part[0] != 't') throw Error("bad multidegree '" + s + "'");
    const std::size_t caret = part.find('^');
    const std::size_t var = std::stoul(part.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
    const int e = caret == std::string::npos ? 1 : std::stoi(part.substr(caret + 1));
    if (var < 1 || var > n || e < 1) throw Error("bad multidegree '" + s + "'");
    alpha[var - 1] += e;
    pos = end + 1;
  }
  return alpha;
}

namespace detail {

// Cyclically canonical words of length 1..max_len over n letters.
inline std::vector<Word> canonical_words(std::size_t n, std::size_t max_len) {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    Word w(len, 0);
    while (true) {
      if (cyclic_canonical(w) == w) out.push_back(w);
      std::size_t i = len;
      while (i > 0 && static_cast<std::size_t>(++w[i - 1]) == n) w[--i] = 0;
      if (i == 0) break;
    }
  }
  return out;
}

// Products of Lambda generators whose multidegree sum_j k_j * count(w_j) is alpha.
inline std::vector<DonkinMonomial> candidate_monomials(std::size_t d, const std::vector<int>& alpha) {
  const std::size_t n = alpha.size();
  std::vector<std::pair<DonkinGen, std::vector<int>>> gens;
  for (const auto& w : canonical_words(n, d)) {
    std::vector<int> count(n, 0);
    for (int l : w) ++count[static_cast<std::size_t>(l)];
    for (std::size_t k = 1; k * w.size() <= d; ++k) {
      std::vector<int> deg(n);
      bool fits = true;
      for (std::size_t i = 0; i < n; ++i) {
        deg[i] = static_cast<int>(k) * count[i];
        fits = fits && deg[i] <= alpha[i];
      }
      if (fits) gens.push_back({DonkinGen::lambda(static_cast<int>(k), w), deg});
    }
  }
  std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<DonkinMonomial> out;
  DonkinMonomial cur;
  std::vector<int> left = alpha;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (std::all_of(left.begin(), left.end(), [](int x) { return x == 0; })) {
      out.push_back(cur);
      return;
    }
    for (std::size_t g = from; g < gens.size(); ++g) {
      const auto& deg = gens[g].second;
      bool fits = true;
      for (std::size_t i = 0; i < n && fits; ++i) fits = deg[i] <= left[i];
      if (!fits) continue;
      for (std::size_t i = 0; i < n; ++i) left[i] -= deg[i];
      cur.push_back(gens[g].first);
      self(self, g);
      cur.pop_back();
      for (std::size_t i = 0; i < n; ++i) left[i] += deg[i];
    }
  };
  rec(rec, 0);
  // Products of primitive words first: with leftmost pivots the solver then
  // expresses everything through them, which keeps the solution integral.
  std::stable_sort(out.begin(), out.end(), [](const DonkinMonomial& a, const DonkinMonomial& b) {
    auto prim = [](const DonkinMonomial& m) {
      return std::all_of(m.begin(), m.end(), [](const DonkinGen& g) { return is_primitive_word(g.word); });
    };
    const bool pa = prim(a), pb = prim(b);
    if (pa != pb) return pa;
    return a < b;
  });
  return out;
}

inline std::map<Monomial, BigInt> integer_terms(const Ring& R, const Elem& e) {
  std::map<Monomial, BigInt> out;
  for (const auto& t : R.flatten(e)) out[t.exps] = std::get<BigInt>(t.coef);
  return out;
}

// Value of a Lambda generator on the letter matrices, in R.
struct LambdaOracle {
  const std::vector<SquareMatrix>& letters;
  const Ring& R;
  std::size_t d;
  std::map<Word, CharPoly> cache;

  Elem operator()(int k, const Word& w) {
    auto it = cache.find(w);
    if (it == cache.end()) it = cache.emplace(w, charpoly(word_product(letters, w, R, d))).first;
    return it->second.lambdas[static_cast<std::size_t>(k)].elem();
  }
};

}  // namespace detail

// sum_alpha prod_i coeff_i^alpha_i * P_alpha(Lambda), where lambda_value(k, w)
// returns Lambda_k of the word w in the support letters, as an element of R.
template <class LambdaFn>
Elem expand_with_table(const ExpansionTable& table, const Ring& R, const std::vector<Elem>& coeffs, LambdaFn&& lambda_value) {
  if (coeffs.size() != table.n) throw Error("expansion: support size does not match table");
  std::map<DonkinGen, Elem> memo;
  auto cached = [&](int k, const Word& w) -> Elem {
    const DonkinGen g = DonkinGen::lambda(k, w);
    auto it = memo.find(g);
    if (it == memo.end()) it = memo.emplace(g, lambda_value(k, w)).first;
    return it->second;
  };
  Elem acc = R.zero();
  for (const auto& [alpha, expr] : table.coefficients) {
    Elem mono = R.one();
    for (std::size_t i = 0; i < alpha.size() && !R.is_zero(mono); ++i)
      mono = R.mul(mono, R.pow(coeffs[i], static_cast<std::uint64_t>(alpha[i])));
    if (R.is_zero(mono)) continue;
    Elem p = expr.evaluate(R, cached, [](int) -> Elem { throw Error("expansion tables contain no inverse determinants"); });
    acc = R.add(acc, R.mul(mono, p));
  }
  return acc;
}

// Checks det(sum t_i M_i) = table expansion for `trials` random tuples of
// matrices over R, with the t_i kept symbolic.
inline Verdict verify_table_random(const ExpansionTable& table, const Ring& R, std::size_t trials, std::uint64_t seed) {
  Verdict v;
  Rng rng(seed);
  std::vector<std::string> tnames;
  for (std::size_t i = 0; i < table.n; ++i) tnames.push_back(R.fresh_variable("t" + std::to_string(i + 1)));
  const Ring Rt = R.adjoin(tnames);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<SquareMatrix> ms;
    for (std::size_t l = 0; l < table.n; ++l) ms.push_back(random_matrix(R, table.d, rng));
    SquareMatrix sum(Rt, table.d);
    std::vector<Elem> ts;
    for (std::size_t l = 0; l < table.n; ++l) {
      ts.push_back(Rt.variable(tnames[l]));
      sum = sum + ms[l].to(Rt).scaled(ts.back());
    }
    const Elem lhs = det(sum).elem();
    detail::LambdaOracle oracle{ms, R, table.d, {}};
    const Elem rhs = expand_with_table(table, Rt, ts, [&](int k, const Word& w) { return Rt.coerce(R, oracle(k, w)); });
    ++v.checks;
    if (!Rt.eq(lhs, rhs)) {
      v.reject("expansion mismatch over " + R.name() + " at trial " + std::to_string(trial),
               std::vector<int>{static_cast<int>(trial)});
      break;
    }
  }
  return v;
}

// Exact check in F_X(d)[t]: det(sum t_i X_i) equals the expansion.
inline Verdict verify_table_symbolic(const ExpansionTable& table) {
  Verdict v;
  const Ring F = generic_ring(table.d, table.n);
  std::vector<std::string> tnames;
  for (std::size_t i = 0; i < table.n; ++i) tnames.push_back(F.fresh_variable("t" + std::to_string(i + 1)));
  const Ring Ft = F.adjoin(tnames);
  std::vector<SquareMatrix> gens;
  SquareMatrix sum(Ft, table.d);
  std::vector<Elem> ts;
  for (std::size_t l = 0; l < table.n; ++l) {
    gens.push_back(generic_matrix(Ft, table.d, static_cast<int>(l)));
    ts.push_back(Ft.variable(tnames[l]));
    sum = sum + gens.back().scaled(ts.back());
  }
  detail::LambdaOracle oracle{gens, Ft, table.d, {}};
  ++v.checks;
  if (!Ft.eq(det(sum).elem(), expand_with_table(table, Ft, ts, oracle))) v.reject("symbolic expansion mismatch");
  return v;
}

// Rings used to re-verify tables after computation or loading.
inline std::vector<Ring> table_check_rings() {
  return {Ring::integers(), Ring::integers_mod(4), Ring::prime_field(5), Ring::prime_field(101)};
}

inline Verdict verify_table(const ExpansionTable& table, std::size_t trials = 100, std::uint64_t seed = 1) {
  Verdict v = verify_table_symbolic(table);
  for (const auto& R : table_check_rings()) {
    if (!v.accepted) break;
    Verdict r = verify_table_random(table, R, trials, seed);
    v.checks += r.checks;
    if (!r.accepted) v.reject(r.failure, r.witness);
  }
  return v;
}

// Solves for each coefficient over Q in the candidate basis and insists on
// an integral solution.
inline ExpansionTable compute_amitsur_table(std::size_t d, std::size_t n) {
  if (d < 1 || d > 3 || n < 1 || n > 3) throw Error("amitsur_table: requires 1 <= d <= 3 and 1 <= n <= 3");
  const Ring F = generic_ring(d, n);
  std::vector<std::string> tnames;
  for (std::size_t i = 0; i < n; ++i) tnames.push_back("t" + std::to_string(i + 1));
  const Ring Ft = F.adjoin(tnames);
  SquareMatrix sum(Ft, d);
  std::vector<SquareMatrix> gens;
  for (std::size_t l = 0; l < n; ++l) {
    gens.push_back(generic_matrix(F, d, static_cast<int>(l)));
    sum = sum + gens.back().to(Ft).scaled(Ft.variable(tnames[l]));
  }
  // Split det(sum) by t-exponents (the last n flat positions).
  std::map<std::vector<int>, std::map<Monomial, BigInt>> target;
  const std::size_t nx = F.nvars();
  for (const auto& t : Ft.flatten(det(sum).elem())) {
    std::vector<int> alpha(t.exps.begin() + static_cast<std::ptrdiff_t>(nx), t.exps.end());
    Monomial xm(t.exps.begin(), t.exps.begin() + static_cast<std::ptrdiff_t>(nx));
    target[alpha][xm] = std::get<BigInt>(t.coef);
  }

  detail::LambdaOracle oracle{gens, F, d, {}};
  ExpansionTable table{d, n, {}};
  for (const auto& alpha : multidegrees(d, n)) {
    const auto cands = detail::candidate_monomials(d, alpha);
    std::vector<std::map<Monomial, BigInt>> cols;
    std::map<Monomial, std::size_t> row_index;
    for (const auto& m : cands) {
      Elem p = F.one();
      for (const auto& g : m) p = F.mul(p, oracle(g.k, g.word));
      cols.push_back(detail::integer_terms(F, p));
      for (const auto& [mono, c] : cols.back()) row_index.emplace(mono, row_index.size());
    }
    const auto& rhs_terms = target[alpha];
    for (const auto& [mono, c] : rhs_terms) row_index.emplace(mono, row_index.size());
    RationalMatrix a(row_index.size(), RationalVector(cands.size(), BigRational(0)));
    RationalVector b(row_index.size(), BigRational(0));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [mono, x] : cols[c]) a[row_index[mono]][c] = BigRational(x);
    for (const auto& [mono, x] : rhs_terms) b[row_index[mono]] = BigRational(x);
    auto sol = solve_rational(std::move(a), std::move(b));
    if (!sol) throw Error("amitsur_table: no expression for " + multidegree_name(alpha) + " in the candidate space");
    DonkinExpression expr(n);
    for (std::size_t c = 0; c < cands.size(); ++c) {
      const BigRational& x = sol->particular[c];
      if (x == 0) continue;
      if (boost::multiprecision::denominator(x) != 1)
        throw Error("amitsur_table: non-integral coefficient for " + multidegree_name(alpha));
      expr.add_term(cands[c], boost::multiprecision::numerator(x));
    }
    table.coefficients.emplace(alpha, std::move(expr));
  }
  Verdict v = verify_table(table);
  if (!v.accepted) throw Error("amitsur_table: verification failed: " + v.failure);
  return table;
}

namespace detail {

struct TableCache {
  std::mutex mu;
  std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const ExpansionTable>> tables;
};

inline TableCache& table_cache() {
  static TableCache c;
  return c;
}

}  // namespace detail

// Cached per (d, n); computed on first use. Thread-safe.
inline const ExpansionTable& amitsur_table(std::size_t d, std::size_t n) {
  auto& c = detail::table_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto& slot = c.tables[{d, n}];
  if (!slot) slot = std::make_shared<const ExpansionTable>(compute_amitsur_table(d, n));
  return *slot;
}

// Installs an externally loaded table after re-verifying it.
inline Verdict install_amitsur_table(ExpansionTable table) {
  Verdict v = verify_table(table);
  if (!v.accepted) return v;
  auto& c = detail::table_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  c.tables[{table.d, table.n}] = std::make_shared<const ExpansionTable>(std::move(table));
  return v;
}

}  // namespace pseudochar
