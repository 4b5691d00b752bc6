#pragma once

// alpha: Lafforgue PCs -> determinants, its inverse, round-trip checks, the
// bridge to Taylor PCs, and desk-scale classification checks over F_q.

#include <chrono>
#include <future>
#include <thread>

#include "lafforgue.hpp"
#include "taylor.hpp"

namespace pseudochar {

struct ConversionReport {
  std::string direction;
  std::string inputs;
  std::map<std::string, std::uint64_t> counts;
  std::vector<std::string> defects;
  double elapsed_ms = 0;
  bool partial = false;  // a budget was exceeded; never a success

  bool ok() const { return defects.empty() && !partial; }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// theta[k-1][gamma] = Lambda_k(gamma) read off D.
inline std::vector<std::vector<Elem>> harvest_theta(const Determinant& D) {
  if (!D.domain().is_group()) throw Error("harvest_theta needs a group domain");
  std::vector<std::vector<Elem>> theta(D.dim());
  for (std::size_t k = 1; k <= D.dim(); ++k)
    for (std::size_t g = 0; g < D.domain().size(); ++g)
      theta[k - 1].push_back(lambda_of_word(D, Word{static_cast<int>(g)}, k).elem());
  return theta;
}

// Table-backed determinant with theta(k, gamma) = Theta(Lambda_k(g_1))(gamma).
inline Determinant alpha(const LafforguePC& theta) {
  const std::size_t d = theta.dim();
  if (theta.domain().is_group()) {
    std::vector<std::vector<Elem>> table(d);
    for (std::size_t k = 1; k <= d; ++k)
      for (std::size_t g = 0; g < theta.domain().size(); ++g)
        table[k - 1].push_back(theta.lambda_value(static_cast<int>(k), Word{static_cast<int>(g)}));
    return det_from_theta(theta.domain().group, theta.ring(), d, std::move(table));
  }
  return det_from_word_theta(theta.domain().alphabet, theta.ring(), d,
                             [theta](int k, const Word& w) { return theta.lambda_value(k, w); });
}

// Theta(Lambda_k(g_{i1}...g_{ir}))(gammas) = Lambda_k of D at the product.
// Free domains must pass the unit criterion first.
inline LafforguePC alpha_inverse(const Determinant& D) {
  if (D.domain().is_group()) return lpc_from_theta(D.domain().group, D.ring(), D.dim(), harvest_theta(D));
  Verdict gl = is_gl_valued(D);
  if (!gl.accepted)
    throw Error("not GL-valued: " + gl.failure +
                "; a determinant on a free monoid comes from a Lafforgue pseudocharacter only if every letter value is a unit");
  return lpc_from_word_theta(D.domain().alphabet, D.ring(), D.dim(),
                             [D](int k, const Word& w) { return lambda_of_word(D, w, static_cast<std::size_t>(k)).elem(); });
}

namespace detail {

inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Calls f on every group algebra element with 1..max_support terms and
// nonzero coefficients from `coeffs` (exhaustive), stopping when f returns false.
template <class F>
void for_each_small_support(const GroupPtr& g, const Ring& C, const std::vector<Elem>& coeffs, std::size_t max_support, F&& f) {
  const std::size_t n = g->order();
  std::vector<Elem> nonzero;
  for (const auto& c : coeffs)
    if (!C.is_zero(c)) nonzero.push_back(c);
  for (std::size_t s = 1; s <= max_support && s <= n; ++s) {
    std::vector<int> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = static_cast<int>(i);
    while (true) {
      std::vector<std::size_t> pick(s, 0);
      while (true) {
        GroupAlgebraElement x(C, g);
        for (std::size_t i = 0; i < s; ++i) x.set(idx[i], nonzero[pick[i]]);
        if (!f(x)) return;
        std::size_t i = 0;
        while (i < s && ++pick[i] == nonzero.size()) pick[i++] = 0;
        if (i == s) break;
      }
      std::size_t i = s;
      while (i > 0 && static_cast<std::size_t>(idx[i - 1]) == n - s + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

inline std::uint64_t small_support_count(std::size_t n, std::uint64_t nonzero, std::size_t max_support) {
  std::uint64_t total = 0;
  for (std::size_t s = 1; s <= max_support && s <= n; ++s) total += choose(n, s) * saturating_pow(nonzero, s);
  return total;
}

}  // namespace detail

// Compares two group determinants on elements of support <= 3 with
// coefficients in C: exhaustively when C is finite and the space has at most
// `limit` points, otherwise on `samples` seeded elements. Returns the first
// mismatch, if any; `checks` is incremented per comparison.
inline std::optional<std::string> compare_determinants(const Determinant& a, const Determinant& b, const Ring& C,
                                                       std::uint64_t seed, std::size_t samples, std::uint64_t& checks,
                                                       std::uint64_t limit = 60000) {
  const GroupPtr& g = a.domain().group;
  std::optional<std::string> bad;
  auto test = [&](const GroupAlgebraElement& x) {
    ++checks;
    RingValue u = a.evaluate(x), v = b.evaluate(x);
    const Ring R = common_ring(u.ring(), v.ring());
    if (u.to(R) != v.to(R)) {
      bad = "mismatch at x = " + x.to_string() + ": " + u.to_string() + " vs " + v.to_string();
      return false;
    }
    return true;
  };
  if (C.is_finite() &&
      detail::small_support_count(g->order(), C.cardinality().convert_to<std::uint64_t>() - 1, 3) <= limit) {
    detail::for_each_small_support(g, C, finite_ring_elements(C), 3, test);
    return bad;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    GroupAlgebraElement x(C, g);
    const std::size_t s = 1 + uniform_below(rng, 3);
    for (std::size_t j = 0; j < s; ++j) x.add_term(static_cast<int>(uniform_below(rng, g->order())), random_elem(C, rng, 5));
    if (x.support_size() == 0) continue;
    if (!test(x)) break;
  }
  return bad;
}

// Compares two PCs on every generator probe Lambda_k(w), |w| <= 2, and
// det^{-1} of arity n <= 2, on all tuples (sampled beyond 10^4 tuples).
inline std::optional<std::string> compare_lafforgue(const LafforguePC& a, const LafforguePC& b, std::uint64_t seed,
                                                    std::uint64_t& checks, std::size_t max_len = 2) {
  const std::size_t order = a.domain().size();
  for (std::size_t n = 1; n <= 2; ++n) {
    const CheckMode mode = CheckMode::automatic(saturating_pow(order, n), 10000, seed, 2000);
    for (const auto& f : generator_probes(n, a.dim(), max_len)) {
      std::optional<std::string> bad;
      for_each_tuple(order, n, mode, [&](const std::vector<int>& t) {
        ++checks;
        RingValue u = theta_evaluate(a, f, t), v = theta_evaluate(b, f, t);
        if (u == v) return true;
        std::string s;
        for (int x : t) s += (s.empty() ? "" : ",") + std::to_string(x);
        bad = "generator " + f.to_string() + " differs at (" + s + "): " + u.to_string() + " vs " + v.to_string();
        return false;
      });
      if (bad) return bad;
    }
  }
  return std::nullopt;
}

namespace detail {

// Round trips plus validity of the converted objects.
inline void roundtrip_core(const Determinant& D, const LafforguePC& theta, const Ring& coeff_ring, std::uint64_t seed,
                           std::size_t samples, ConversionReport& rep) {
  const LafforguePC theta_from_d = alpha_inverse(D);
  const Determinant d_back = alpha(theta_from_d);
  std::uint64_t evals = 0;
  if (auto bad = compare_determinants(d_back, D, coeff_ring, seed, samples, evals))
    rep.defects.push_back("alpha(alpha_inverse(D)) != D: " + *bad);
  rep.counts["det_evaluations"] = evals;

  const LafforguePC theta_back = alpha_inverse(alpha(theta));
  std::uint64_t gens = 0;
  if (auto bad = compare_lafforgue(theta_back, theta, seed, gens))
    rep.defects.push_back("alpha_inverse(alpha(Theta)) != Theta: " + *bad);
  rep.counts["generator_values"] = gens;

  Verdict lpc2 = check_lpc2(theta_from_d, seed, 500);
  rep.counts["lpc2_samples"] = lpc2.checks;
  if (!lpc2.accepted) rep.defects.push_back("alpha_inverse(D) fails LPC2: " + lpc2.failure);

  Verdict mult = check_multiplicative_homogeneous(alpha(theta), seed, 100);
  rep.counts["law_checks"] = mult.checks;
  if (!mult.accepted) rep.defects.push_back("alpha(Theta) is not a determinant: " + mult.failure);
}

}  // namespace detail

// Both composites are identities for the PC data of rho. Element
// comparisons are exhaustive over finite rings, `samples` seeded ones otherwise.
inline ConversionReport roundtrip_check(const Representation& rho, std::uint64_t seed, std::size_t samples = 200) {
  detail::Stopwatch sw;
  ConversionReport rep;
  rep.direction = "roundtrip";
  rep.inputs = "rep of " + rho.group()->name() + " over " + rho.ring().name() + ", d=" + std::to_string(rho.dim());
  try {
    detail::roundtrip_core(det_from_rep(rho), lpc_from_rep(rho), rho.ring(), seed, samples, rep);
  } catch (const Error& e) {
    rep.defects.push_back(std::string("conversion failed: ") + e.what());
  }
  rep.elapsed_ms = sw.ms();
  return rep;
}

// Same, starting from a theta table.
inline ConversionReport roundtrip_check(GroupPtr group, const Ring& ring, std::size_t d, const std::vector<std::vector<Elem>>& theta,
                                        std::uint64_t seed, std::size_t samples = 200) {
  detail::Stopwatch sw;
  ConversionReport rep;
  rep.direction = "roundtrip";
  rep.inputs = "theta data on " + group->name() + " over " + ring.name() + ", d=" + std::to_string(d);
  try {
    detail::roundtrip_core(det_from_theta(group, ring, d, theta), lpc_from_theta(group, ring, d, theta), ring, seed, samples, rep);
  } catch (const Error& e) {
    rep.defects.push_back(std::string("invalid theta data: ") + e.what());
  }
  rep.elapsed_ms = sw.ms();
  return rep;
}

// T = -Lambda_1 under D; requires d! to be a unit.
inline TaylorPC taylor_bridge(const Determinant& D) {
  if (!D.domain().is_group()) throw Error("taylor_bridge needs a group domain");
  const Ring& R = D.ring();
  for (std::size_t p = 2; p <= D.dim(); ++p) {
    if (!detail::is_prime_u64(p)) continue;
    if (!R.is_unit(R.from_int(static_cast<long long>(p))))
      throw Error(std::to_string(p) + " not a unit in " + R.name() + ": d! = " + std::to_string(detail::factorial(D.dim())) +
                  " is not invertible");
  }
  TaylorPC t{D.domain().group, R, D.dim(), {}};
  for (std::size_t g = 0; g < D.domain().size(); ++g)
    t.values.push_back(R.neg(lambda_of_word(D, Word{static_cast<int>(g)}, 1).elem()));
  return t;
}

// ---- classification over finite fields (d = 2) ----

namespace detail {

// Image of the prime-field-or-F_q element a of F inside E = F_{q^k}, where
// `root` is a root in E of F's defining polynomial.
inline Elem embed_field(const Ring& F, const Ring& E, const Elem& root, const Elem& a) {
  if (F.kind() == RingKind::PrimeField) {
    const std::uint64_t v = std::get<Residue>(a).v;
    return E.from_int(static_cast<long long>(v));
  }
  const auto& c = std::get<FqElem>(a).c;
  Elem acc = E.zero(), pw = E.one();
  for (auto x : c) {
    acc = E.add(acc, E.mul(E.from_int(static_cast<long long>(x)), pw));
    pw = E.mul(pw, root);
  }
  return acc;
}

inline Elem find_modulus_root(const Ring& F, const Ring& E) {
  if (F.kind() == RingKind::PrimeField) return E.zero();
  const auto& m = F.ext_modulus();
  for (const auto& r : finite_ring_elements(E)) {
    Elem acc = E.zero(), pw = E.one();
    for (auto c : m) {
      acc = E.add(acc, E.mul(E.from_int(static_cast<long long>(c)), pw));
      pw = E.mul(pw, r);
    }
    if (E.is_zero(acc)) return r;
  }
  throw Error("no embedding of " + F.name() + " into " + E.name());
}

inline Ring extension_of(const Ring& F, unsigned k) {
  const std::uint64_t p = F.modulus();
  const unsigned e = F.kind() == RingKind::ExtensionField ? F.ext_degree() : 1;
  if (k == 1) return F;
  return Ring::extension_field(p, Ring::default_modulus(p, e * k));
}

}  // namespace detail

struct ConjugacyResult {
  bool conjugate = false;
  unsigned extension_degree = 0;  // smallest k <= max_k at which an invertible intertwiner was found
  std::size_t intertwiner_dim = 0;
  bool undetermined = false;      // a nonzero det polynomial without a found point
};

// Is there X in GL_d(F_{q^k}), k <= max_k, with rho_a(g) X = X rho_b(g)?
// The intertwiner space is solved over F_q; a combination sum c_i X_i is
// invertible for some c over an extension iff det(sum c_i X_i) is a nonzero
// polynomial in the c_i.
inline ConjugacyResult conjugate_over_extensions(const Representation& a, const Representation& b, unsigned max_k = 4,
                                                 std::uint64_t seed = 7) {
  const Ring& F = a.ring();
  if (b.ring() != F || a.dim() != b.dim()) throw Error("conjugacy: representations differ in ring or dimension");
  if (!F.is_field() || !F.is_finite()) throw Error("conjugacy: finite field required");
  const std::size_t d = a.dim();
  const std::size_t nv = d * d;
  std::vector<std::vector<Elem>> rows;
  for (int g : a.group()->generators()) {
    const SquareMatrix& A = a.image(g);
    const SquareMatrix& B = b.image(g);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<Elem> row(nv, F.zero());
        for (std::size_t k = 0; k < d; ++k) {
          row[k * d + j] = F.add(row[k * d + j], A(i, k));
          row[i * d + k] = F.sub(row[i * d + k], B(k, j));
        }
        rows.push_back(std::move(row));
      }
  }
  auto basis = field_nullspace(F, rows, nv);
  ConjugacyResult res;
  res.intertwiner_dim = basis.size();
  if (basis.empty()) return res;
  const std::size_t m = basis.size();

  std::vector<std::string> cvars;
  for (std::size_t i = 0; i < m; ++i) cvars.push_back("c" + std::to_string(i + 1));
  const Ring Fc = Ring::polynomial(F, cvars);
  SquareMatrix generic(Fc, d);
  for (std::size_t i = 0; i < m; ++i)
    generic = generic + SquareMatrix(F, d, basis[i]).to(Fc).scaled(Fc.variable(i));
  if (det(generic).is_zero()) return res;

  for (unsigned k = 1; k <= max_k; ++k) {
    const Ring E = detail::extension_of(F, k);
    const Elem root = detail::find_modulus_root(F, E);
    std::vector<SquareMatrix> xs;
    for (const auto& v : basis) {
      std::vector<Elem> e;
      for (const auto& x : v) e.push_back(detail::embed_field(F, E, root, x));
      xs.push_back(SquareMatrix(E, d, std::move(e)));
    }
    auto invertible_at = [&](const std::vector<Elem>& c) {
      SquareMatrix s(E, d);
      for (std::size_t i = 0; i < m; ++i) s = s + xs[i].scaled(c[i]);
      return !det(s).is_zero();
    };
    const std::uint64_t q = E.cardinality().convert_to<std::uint64_t>();
    if (saturating_pow(q, m) <= 20000) {
      const auto elems = finite_ring_elements(E);
      bool found = false;
      for_each_tuple(elems.size(), m, CheckMode::exhaustive_mode(), [&](const std::vector<int>& t) {
        std::vector<Elem> c;
        for (int i : t) c.push_back(elems[static_cast<std::size_t>(i)]);
        found = invertible_at(c);
        return !found;
      });
      if (found) return {true, k, m, false};
    } else {
      Rng rng(seed + k);
      for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Elem> c;
        for (std::size_t i = 0; i < m; ++i) c.push_back(random_elem(E, rng));
        if (invertible_at(c)) return {true, k, m, false};
      }
    }
  }
  res.undetermined = true;
  return res;
}

// Lines of F_q^2 (row vectors) stable under v -> v rho(g) for every g.
inline std::vector<std::vector<Elem>> stable_lines_2d(const Representation& rho) {
  if (rho.dim() != 2) throw Error("stable lines: d = 2 only");
  const Ring& F = rho.ring();
  std::vector<std::vector<Elem>> lines;
  for (const auto& a : finite_ring_elements(F)) lines.push_back({F.one(), a});
  lines.push_back({F.zero(), F.one()});
  std::vector<std::vector<Elem>> stable;
  const auto gens = rho.group()->generators();
  for (const auto& v : lines) {
    bool ok = true;
    for (int g : gens) {
      const SquareMatrix& M = rho.image(g);
      Elem w0 = F.add(F.mul(v[0], M(0, 0)), F.mul(v[1], M(1, 0)));
      Elem w1 = F.add(F.mul(v[0], M(0, 1)), F.mul(v[1], M(1, 1)));
      if (!F.eq(F.mul(w0, v[1]), F.mul(w1, v[0]))) {
        ok = false;
        break;
      }
    }
    if (ok) stable.push_back(v);
  }
  return stable;
}

// Semisimple iff there is no stable line (irreducible) or there are two
// (a stable line with a stable complement).
inline bool is_semisimple_2d(const Representation& rho) { return stable_lines_2d(rho).size() != 1; }

// Direct sum of the characters on a stable line and on the quotient; rho
// itself when irreducible.
inline Representation semisimplification_2d(const Representation& rho) {
  const auto lines = stable_lines_2d(rho);
  if (lines.empty()) return rho;
  const Ring& F = rho.ring();
  const auto& v = lines.front();
  const std::size_t piv = F.is_zero(v[0]) ? 1 : 0;
  std::vector<SquareMatrix> imgs;
  for (const auto& M : rho.images()) {
    Elem w = F.add(F.mul(v[0], M(0, piv)), F.mul(v[1], M(1, piv)));
    Elem chi1 = F.mul(w, *F.inverse(v[piv]));
    Elem chi2 = F.mul(det(M).elem(), *F.inverse(chi1));
    SquareMatrix D(F, 2);
    D.set(0, 0, chi1);
    D.set(1, 1, chi2);
    imgs.push_back(std::move(D));
  }
  return Representation(rho.group(), std::move(imgs));
}

// theta(k, gamma) for k = 1..d, flattened to a comparable key.
inline std::string fingerprint_key(const Representation& rho) {
  std::string key;
  for (const auto& M : rho.images()) {
    auto cp = charpoly(M);
    for (std::size_t k = 1; k <= rho.dim(); ++k) key += cp.lambdas[k].to_string() + ";";
    key += "|";
  }
  return key;
}

// All morphisms Gamma -> GL_2(F_q); the semisimple ones grouped by
// fingerprint must be conjugate within a class and non-conjugate across.
inline ConversionReport semisimple_bijection_check(const GroupPtr& group, std::uint64_t q, std::size_t d = 2,
                                                   std::uint64_t budget = 4000000) {
  detail::Stopwatch sw;
  ConversionReport rep;
  rep.direction = "semisimple_bijection";
  rep.inputs = group->name() + " over F" + std::to_string(q) + ", d=" + std::to_string(d);
  if (d != 2) throw Error("semisimple_bijection_check: semisimplification is implemented for d = 2 only");
  if (group->order() > 12) throw Error("semisimple_bijection_check: |Gamma| <= 12 required");
  if (q > 9) throw Error("semisimple_bijection_check: q <= 9 required");
  const Ring F = Ring::finite_field(q);
  const auto elems = finite_ring_elements(F);

  std::vector<SquareMatrix> gl;
  for_each_tuple(elems.size(), 4, CheckMode::exhaustive_mode(), [&](const std::vector<int>& t) {
    std::vector<Elem> e;
    for (int i : t) e.push_back(elems[static_cast<std::size_t>(i)]);
    SquareMatrix M(F, 2, std::move(e));
    if (!det(M).is_zero()) gl.push_back(std::move(M));
    return true;
  });
  const auto gens = group->generators();
  std::vector<std::vector<const SquareMatrix*>> cands(gens.size());
  std::uint64_t space = 1;
  const SquareMatrix I = SquareMatrix::identity(F, 2);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::size_t ord = group->element_order(gens[i]);
    for (const auto& M : gl)
      if (M.pow(ord) == I) cands[i].push_back(&M);
    space = space > budget / std::max<std::size_t>(cands[i].size(), 1) ? budget + 1 : space * cands[i].size();
  }
  rep.counts["gl2_order"] = gl.size();
  rep.counts["candidate_assignments"] = space;
  if (space > budget) {
    rep.partial = true;
    rep.defects.push_back("budget exceeded: " + std::to_string(space) + " generator assignments");
    rep.elapsed_ms = sw.ms();
    return rep;
  }

  // The assignment space is split into contiguous blocks of the first
  // generator's candidates, one task per block; blocks are merged in order.
  struct Block {
    std::vector<Representation> semisimple;
    std::uint64_t morphisms = 0, non_ss = 0;
    std::vector<std::string> defects;
  };
  auto run_block = [&](std::size_t lo, std::size_t hi) {
    Block b;
    if (gens.empty() || lo >= hi) return b;
    std::vector<std::size_t> pick(gens.size(), 0);
    pick[0] = lo;
    while (true) {
      std::vector<SquareMatrix> imgs;
      for (std::size_t i = 0; i < gens.size(); ++i) imgs.push_back(*cands[i][pick[i]]);
      if (auto ext = Representation::extend_generators(*group, gens, imgs)) {
        ++b.morphisms;
        Representation rho(group, std::move(*ext));
        if (is_semisimple_2d(rho)) {
          b.semisimple.push_back(std::move(rho));
        } else {
          ++b.non_ss;
          if (fingerprint_key(rho) != fingerprint_key(semisimplification_2d(rho)))
            b.defects.push_back("semisimplification changes the fingerprint");
        }
      }
      std::size_t i = pick.size();
      while (i > 0) {
        --i;
        const std::size_t end = i == 0 ? hi : cands[i].size();
        if (++pick[i] < end) break;
        if (i == 0) return b;
        pick[i] = 0;
      }
    }
  };
  std::vector<Block> blocks;
  if (gens.empty()) {
    Block b;
    b.morphisms = 1;
    b.semisimple.push_back(Representation::trivial(group, F, 2));
    blocks.push_back(std::move(b));
  } else {
    const std::size_t n0 = cands[0].size();
    const std::size_t tasks = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n0, 1));
    std::vector<std::future<Block>> futs;
    for (std::size_t t = 0; t < tasks; ++t)
      futs.push_back(std::async(std::launch::async, run_block, n0 * t / tasks, n0 * (t + 1) / tasks));
    for (auto& f : futs) blocks.push_back(f.get());
  }
  std::vector<Representation> semisimple;
  std::uint64_t morphisms = 0, non_ss = 0;
  for (auto& b : blocks) {
    morphisms += b.morphisms;
    non_ss += b.non_ss;
    for (auto& r : b.semisimple) semisimple.push_back(std::move(r));
    for (auto& d : b.defects) rep.defects.push_back(std::move(d));
  }
  rep.counts["morphisms"] = morphisms;
  rep.counts["semisimple"] = semisimple.size();
  rep.counts["non_semisimple"] = non_ss;

  std::map<std::string, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < semisimple.size(); ++i) classes[fingerprint_key(semisimple[i])].push_back(i);
  rep.counts["fingerprint_classes"] = classes.size();

  std::uint64_t within = 0, across = 0, max_degree = 0;
  std::vector<std::size_t> reps;
  for (const auto& [key, members] : classes) {
    reps.push_back(members.front());
    const Representation& r0 = semisimple[members.front()];
    for (std::size_t j = 1; j < members.size(); ++j) {
      ++within;
      auto c = conjugate_over_extensions(r0, semisimple[members[j]]);
      if (!c.conjugate) {
        rep.defects.push_back("same fingerprint but not conjugate: semisimple reps #" + std::to_string(members.front()) +
                              " and #" + std::to_string(members[j]));
      }
      max_degree = std::max<std::uint64_t>(max_degree, c.extension_degree);
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      ++across;
      auto c = conjugate_over_extensions(semisimple[reps[i]], semisimple[reps[j]]);
      if (c.conjugate || c.undetermined)
        rep.defects.push_back("different fingerprints but conjugate: semisimple reps #" + std::to_string(reps[i]) + " and #" +
                              std::to_string(reps[j]));
    }
  rep.counts["within_class_checks"] = within;
  rep.counts["across_class_checks"] = across;
  rep.counts["max_extension_degree"] = max_degree;
  rep.elapsed_ms = sw.ms();
  return rep;
}

// ---- characteristic p ----

struct SeparationData {
  std::vector<std::string> traces;  // -Lambda_1(gamma)
  std::vector<std::string> theta2;  // Lambda_2(gamma)
};

inline SeparationData separation_data(const Representation& rho) {
  const Determinant D = det_from_rep(rho);
  SeparationData s;
  for (std::size_t g = 0; g < rho.group()->order(); ++g) {
    s.traces.push_back((-lambda_of_word(D, Word{static_cast<int>(g)}, 1)).to_string());
    s.theta2.push_back(lambda_of_word(D, Word{static_cast<int>(g)}, 2).to_string());
  }
  return s;
}

struct CharPDemo {
  ConversionReport report;
  SeparationData first, second;                  // cyclic(3) over F4
  SeparationData control_first, control_second;  // cyclic(2) over F5
  bool traces_equal = false;
  bool determinants_equal = false;
  bool semisimple = false;
  bool conjugate = false;
  bool control_traces_equal = false;
};

// Over F4 the trace cannot tell chi+chi from psi+psi for two characters of
// cyclic(3) (2 = 0), while Lambda_2 = det can. Over F5 the traces already
// differ; the control uses cyclic(2) (trivial vs sign) because F5 has no
// nontrivial cube root of unity.
inline CharPDemo char_p_separation_demo() {
  detail::Stopwatch sw;
  CharPDemo out;
  out.report.direction = "char_p_separation";
  out.report.inputs = "cyclic(3) over F4: chi+chi vs psi+psi; control cyclic(2) over F5";

  const GroupPtr c3 = cyclic_group(3);
  const Ring F4 = Ring::finite_field(4);
  const Elem w = F4.generator();
  auto scalar_rep = [](const GroupPtr& g, const Ring& R, const Elem& gen_value) {
    std::vector<SquareMatrix> imgs;
    Elem v = R.one();
    for (std::size_t k = 0; k < g->order(); ++k) {
      SquareMatrix M(R, 2);
      M.set(0, 0, v);
      M.set(1, 1, v);
      imgs.push_back(std::move(M));
      v = R.mul(v, gen_value);
    }
    return Representation(g, std::move(imgs));
  };
  const Representation rho1 = scalar_rep(c3, F4, F4.one());
  const Representation rho2 = scalar_rep(c3, F4, w);
  out.first = separation_data(rho1);
  out.second = separation_data(rho2);
  out.traces_equal = out.first.traces == out.second.traces;
  out.determinants_equal = out.first.theta2 == out.second.theta2;
  out.semisimple = is_semisimple_2d(rho1) && is_semisimple_2d(rho2);
  out.conjugate = conjugate_over_extensions(rho1, rho2).conjugate;

  const GroupPtr c2 = cyclic_group(2);
  const Ring F5 = Ring::prime_field(5);
  const Representation ctl1 = scalar_rep(c2, F5, F5.one());
  const Representation ctl2 = scalar_rep(c2, F5, F5.neg(F5.one()));
  out.control_first = separation_data(ctl1);
  out.control_second = separation_data(ctl2);
  out.control_traces_equal = out.control_first.traces == out.control_second.traces;

  auto& r = out.report;
  r.counts["group_order"] = c3->order();
  if (!out.traces_equal) r.defects.push_back("traces differ over F4");
  if (out.determinants_equal) r.defects.push_back("theta(2, .) tables coincide over F4");
  if (!out.semisimple) r.defects.push_back("a representation is not semisimple");
  if (out.conjugate) r.defects.push_back("the representations are conjugate");
  if (out.control_traces_equal) r.defects.push_back("control over F5: traces coincide");
  r.elapsed_ms = sw.ms();
  return out;
}

}  // namespace pseudochar
