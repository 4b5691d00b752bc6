#pragma once

// Lafforgue pseudocharacters: families Theta_n sending invariant functions
// f(g_1..g_n) (Donkin expressions) to functions on n-tuples of the domain.

#include "determinant.hpp"

namespace pseudochar {

class LafforguePC {
 public:
  using LambdaFn = std::function<Elem(int k, const Word& w)>;
  using DetInvFn = std::function<Elem(const Word& w)>;

  LafforguePC(std::size_t d, Domain domain, Ring ring, std::string kind, LambdaFn lambda, DetInvFn det_inv,
              std::optional<std::vector<std::vector<Elem>>> theta = std::nullopt)
      : d_(d), domain_(std::move(domain)), ring_(std::move(ring)), kind_(std::move(kind)), lambda_(std::move(lambda)),
        det_inv_(std::move(det_inv)), theta_(std::move(theta)) {}

  std::size_t dim() const { return d_; }
  const Domain& domain() const { return domain_; }
  const Ring& ring() const { return ring_; }
  const std::string& kind() const { return kind_; }
  // theta[k-1][gamma] for theta-backed group PCs.
  const std::optional<std::vector<std::vector<Elem>>>& theta_table() const { return theta_; }

  // Value of Lambda_k at a domain word (element indices for groups).
  Elem lambda_value(int k, const Word& w) const {
    if (k == 0) return ring_.one();
    if (k < 0 || static_cast<std::size_t>(k) > d_) return ring_.zero();
    return lambda_(k, w);
  }
  Elem det_inv_value(const Word& w) const { return det_inv_(w); }

 private:
  std::size_t d_;
  Domain domain_;
  Ring ring_;
  std::string kind_;
  LambdaFn lambda_;
  DetInvFn det_inv_;
  std::optional<std::vector<std::vector<Elem>>> theta_;
};

namespace detail {

inline Elem checked_inverse(const Ring& R, const Elem& x, const std::string& what) {
  auto inv = R.inverse(x);
  if (!inv) throw Error(what + " = " + R.to_string(x) + " is not a unit");
  return *inv;
}

}  // namespace detail

// Theta_rho: words are evaluated as products of the matrices rho(gamma_i), so
// LPC2 probes the homomorphism property itself.
inline LafforguePC lpc_from_rep(const Representation& rho) {
  const Ring R = rho.ring();
  const std::size_t d = rho.dim();
  auto product = [rho](const Word& w) {
    SquareMatrix m = SquareMatrix::identity(rho.ring(), rho.dim());
    for (int g : w) m = m * rho.image(g);
    return m;
  };
  return LafforguePC(
      d, Domain::of_group(rho.group()), R, "rep",
      [product](int k, const Word& w) { return charpoly(product(w)).lambdas[static_cast<std::size_t>(k)].elem(); },
      [product, R](const Word& w) { return detail::checked_inverse(R, det(product(w)).elem(), "det"); });
}

// Free-domain PC of letter -> matrix.
inline LafforguePC lpc_from_letter_matrices(const std::vector<SquareMatrix>& letters) {
  if (letters.empty()) throw Error("need at least one letter");
  const Ring R = letters.front().ring();
  const std::size_t d = letters.front().dim();
  return LafforguePC(
      d, Domain::free(letters.size()), R, "letters",
      [letters, R, d](int k, const Word& w) {
        return charpoly(word_product(letters, w, R, d)).lambdas[static_cast<std::size_t>(k)].elem();
      },
      [letters, R, d](const Word& w) { return detail::checked_inverse(R, det(word_product(letters, w, R, d)).elem(), "det"); });
}

// Lambda_k(g_{i1}...g_{ir}) -> theta(k, gamma_{i1}...gamma_{ir});
// det(g_i)^{-1} -> ((-1)^d theta(d, gamma_i))^{-1}.
inline LafforguePC lpc_from_theta(GroupPtr group, const Ring& R, std::size_t d, std::vector<std::vector<Elem>> theta) {
  if (d < 1) throw Error("d must be >= 1");
  if (theta.size() != d) throw Error("theta table needs d rows");
  for (const auto& row : theta)
    if (row.size() != group->order()) throw Error("theta row needs one value per group element");
  const int e = group->identity();
  for (std::size_t k = 1; k <= d; ++k)
    if (!R.eq(theta[k - 1][static_cast<std::size_t>(e)], lambda_of_identity(R, d, k)))
      throw Error("theta(" + std::to_string(k) + ", e) must be Lambda_" + std::to_string(k) + " of the identity");
  for (std::size_t g = 0; g < group->order(); ++g)
    if (!R.is_unit(theta[d - 1][g])) throw Error("theta(d, " + std::to_string(g) + ") is not a unit");
  const Domain dom = Domain::of_group(group);
  return LafforguePC(
      d, dom, R, "theta",
      [dom, theta](int k, const Word& w) { return theta[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(dom.reduce(w))]; },
      [dom, theta, d, R](const Word& w) {
        Elem top = theta[d - 1][static_cast<std::size_t>(dom.reduce(w))];
        if (d % 2) top = R.neg(top);
        return detail::checked_inverse(R, top, "(-1)^d theta(d, gamma)");
      },
      theta);
}

// Free-domain PC from Lambda_k values on words.
inline LafforguePC lpc_from_word_theta(std::size_t alphabet, const Ring& R, std::size_t d, LafforguePC::LambdaFn theta) {
  auto det_inv = [theta, d, R](const Word& w) {
    Elem top = theta(static_cast<int>(d), w);
    if (d % 2) top = R.neg(top);
    return detail::checked_inverse(R, top, "(-1)^d theta(d, w)");
  };
  return LafforguePC(d, Domain::free(alphabet), R, "theta", std::move(theta), det_inv);
}

// Theta_n(f)(tuple) for a tuple of domain words.
inline RingValue theta_evaluate_words(const LafforguePC& theta, const DonkinExpression& f, const std::vector<Word>& tuple) {
  if (f.arity() != tuple.size()) throw Error("arity mismatch: expression has " + std::to_string(f.arity()) + " slots, tuple has " +
                                             std::to_string(tuple.size()));
  const Ring& R = theta.ring();
  return RingValue(R, f.evaluate(
                          R,
                          [&](int k, const Word& w) {
                            Word concat;
                            for (int l : w) {
                              const Word& s = tuple[static_cast<std::size_t>(l)];
                              concat.insert(concat.end(), s.begin(), s.end());
                            }
                            return theta.lambda_value(k, concat);
                          },
                          [&](int slot) { return theta.det_inv_value(tuple[static_cast<std::size_t>(slot)]); }));
}

inline std::vector<Word> singleton_words(const std::vector<int>& tuple) {
  std::vector<Word> out;
  for (int g : tuple) out.push_back({g});
  return out;
}

inline RingValue theta_evaluate(const LafforguePC& theta, const DonkinExpression& f, const std::vector<int>& tuple) {
  if (!theta.domain().is_group()) throw Error("theta_evaluate: group tuple given to a free-domain PC");
  for (int g : tuple)
    if (g < 0 || static_cast<std::size_t>(g) >= theta.domain().size()) throw Error("group element out of range");
  return theta_evaluate_words(theta, f, singleton_words(tuple));
}

// Theta_m(f)(g_zeta(1..m)) - Theta_n(f^zeta)(g_1..g_n).
inline RingValue lpc1_defect_words(const LafforguePC& theta, const DonkinExpression& f, const std::vector<int>& zeta,
                                   const std::vector<Word>& tuple) {
  if (zeta.size() != f.arity()) throw Error("arity mismatch: zeta must have one entry per slot of f");
  std::vector<Word> pulled;
  for (int z : zeta) {
    if (z < 0 || static_cast<std::size_t>(z) >= tuple.size()) throw Error("arity mismatch: zeta image out of range");
    pulled.push_back(tuple[static_cast<std::size_t>(z)]);
  }
  return theta_evaluate_words(theta, f, pulled) - theta_evaluate_words(theta, f.relabel(zeta, tuple.size()), tuple);
}

inline RingValue lpc1_defect(const LafforguePC& theta, const DonkinExpression& f, const std::vector<int>& zeta,
                             const std::vector<int>& tuple) {
  return lpc1_defect_words(theta, f, zeta, singleton_words(tuple));
}

// Theta_{n+1}(f-hat)(g_1..g_{n+1}) - Theta_n(f)(g_1, ..., g_{n-1}, g_n g_{n+1}).
inline RingValue lpc2_defect_words(const LafforguePC& theta, const DonkinExpression& f, const std::vector<Word>& tuple) {
  const std::size_t n = f.arity();
  if (tuple.size() != n + 1) throw Error("arity mismatch: lpc2 needs a tuple of length n+1");
  std::vector<Word> merged(tuple.begin(), tuple.end() - 1);
  merged.back().insert(merged.back().end(), tuple.back().begin(), tuple.back().end());
  if (theta.domain().is_group()) merged.back() = {theta.domain().reduce(merged.back())};
  return theta_evaluate_words(theta, f.hat(), tuple) - theta_evaluate_words(theta, f, merged);
}

inline RingValue lpc2_defect(const LafforguePC& theta, const DonkinExpression& f, const std::vector<int>& tuple) {
  return lpc2_defect_words(theta, f, singleton_words(tuple));
}

// Lambda_k(w) for every canonical w of length <= max_len and k <= d, and
// every det(g_i)^{-1}, all of arity n.
inline std::vector<DonkinExpression> generator_probes(std::size_t n, std::size_t d, std::size_t max_len = 2) {
  std::vector<DonkinExpression> out;
  for (const auto& w : detail::canonical_words(n, max_len))
    for (std::size_t k = 1; k <= d; ++k) out.push_back(DonkinExpression::lambda(n, static_cast<int>(k), w));
  for (std::size_t i = 0; i < n; ++i) out.push_back(DonkinExpression::det_inv(n, static_cast<int>(i)));
  return out;
}

namespace detail {

inline std::vector<Word> random_domain_tuple(const Domain& dom, std::size_t len, Rng& rng) {
  std::vector<Word> t(len);
  for (auto& w : t) {
    if (dom.is_group()) {
      w = {static_cast<int>(uniform_below(rng, dom.size()))};
    } else {
      w.resize(uniform_below(rng, 3));
      for (auto& l : w) l = static_cast<int>(uniform_below(rng, dom.alphabet));
    }
  }
  return t;
}

inline std::vector<int> flatten_tuple(const std::vector<Word>& t) {
  std::vector<int> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out.push_back(-1);  // separator between words
    out.insert(out.end(), t[i].begin(), t[i].end());
  }
  return out;
}

// Group tuples flatten to plain element lists.
inline std::vector<int> witness_of(const Domain& dom, const std::vector<Word>& t) {
  if (!dom.is_group()) return flatten_tuple(t);
  std::vector<int> out;
  for (const auto& w : t) out.push_back(w.front());
  return out;
}

}  // namespace detail

// Seeded LPC2 sampler: each trial picks n in {1, 2}, a generator probe or a
// random expression of arity n, and a random (n+1)-tuple.
inline Verdict check_lpc2(const LafforguePC& theta, std::uint64_t seed, std::size_t trials) {
  Verdict v;
  Rng rng(seed);
  const std::size_t d = theta.dim();
  const std::vector<std::vector<DonkinExpression>> probes = {{}, generator_probes(1, d), generator_probes(2, d)};
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 2);
    const DonkinExpression f = uniform_below(rng, 4) == 0 ? random_donkin_expression(n, static_cast<int>(d), rng)
                                                          : probes[n][uniform_below(rng, probes[n].size())];
    const auto tuple = detail::random_domain_tuple(theta.domain(), n + 1, rng);
    ++v.checks;
    RingValue def = lpc2_defect_words(theta, f, tuple);
    if (!def.is_zero()) {
      v.reject("LPC2 defect " + def.to_string() + " for f = " + f.to_string() + " at trial " + std::to_string(trial),
               detail::witness_of(theta.domain(), tuple));
      return v;
    }
  }
  return v;
}

// Every generator probe of arity n <= max_n on every tuple; group domains
// with |Gamma|^(n+1) <= 10^4 only (larger spaces are skipped).
inline Verdict check_lpc2_exhaustive(const LafforguePC& theta, std::size_t max_n = 2) {
  if (!theta.domain().is_group()) throw Error("exhaustive LPC2 check needs a group domain");
  Verdict v;
  const std::size_t order = theta.domain().size();
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (saturating_pow(order, n + 1) > 10000) break;
    for (const auto& f : generator_probes(n, theta.dim())) {
      bool ok = true;
      for_each_tuple(order, n + 1, CheckMode::exhaustive_mode(), [&](const std::vector<int>& t) {
        ++v.checks;
        RingValue def = lpc2_defect(theta, f, t);
        if (def.is_zero()) return true;
        v.reject("LPC2 defect " + def.to_string() + " for f = " + f.to_string(), t);
        ok = false;
        return false;
      });
      if (!ok) return v;
    }
  }
  return v;
}

// Seeded LPC1 sampler over random expressions of arity m <= 3 and maps zeta
// into n <= 3 slots.
inline Verdict check_lpc1(const LafforguePC& theta, std::uint64_t seed, std::size_t trials) {
  Verdict v;
  Rng rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t m = 1 + uniform_below(rng, 3), n = 1 + uniform_below(rng, 3);
    const DonkinExpression f = random_donkin_expression(m, static_cast<int>(theta.dim()), rng);
    std::vector<int> zeta(m);
    for (auto& z : zeta) z = static_cast<int>(uniform_below(rng, n));
    const auto tuple = detail::random_domain_tuple(theta.domain(), n, rng);
    ++v.checks;
    RingValue def = lpc1_defect_words(theta, f, zeta, tuple);
    if (!def.is_zero()) {
      v.reject("LPC1 defect " + def.to_string() + " for f = " + f.to_string(), detail::witness_of(theta.domain(), tuple));
      return v;
    }
  }
  return v;
}

// A function of an n-tuple of d x d matrices over a field.
using MatrixFunction = std::function<Elem(const std::vector<SquareMatrix>&)>;

// f read as a function of matrices: Lambda_k via characteristic polynomials
// of word products, det(g_i)^{-1} via inversion.
inline MatrixFunction as_matrix_function(const DonkinExpression& f) {
  return [f](const std::vector<SquareMatrix>& gs) {
    const Ring& R = gs.front().ring();
    const std::size_t d = gs.front().dim();
    return f.evaluate(
        R,
        [&](int k, const Word& w) {
          if (static_cast<std::size_t>(k) > d) return R.zero();
          return charpoly(word_product(gs, w, R, d)).lambdas[static_cast<std::size_t>(k)].elem();
        },
        [&](int slot) { return detail::checked_inverse(R, det(gs[static_cast<std::size_t>(slot)]).elem(), "det"); });
  };
}

namespace detail {

inline SquareMatrix random_invertible_by_rejection(const Ring& F, std::size_t d, Rng& rng) {
  while (true) {
    SquareMatrix m = random_matrix(F, d, rng);
    if (!det(m).is_zero()) return m;
  }
}

inline SquareMatrix field_inverse(const SquareMatrix& m) {
  // Adjugate over a field: M^{-1} = adj(M) / det(M), cofactors by submatrix
  // determinants. d is small.
  const Ring& F = m.ring();
  const std::size_t d = m.dim();
  const Elem dinv = checked_inverse(F, det(m).elem(), "det");
  SquareMatrix r(F, d);
  if (d == 1) {
    r.set(0, 0, dinv);
    return r;
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Elem> minor;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          if (a != j && b != i) minor.push_back(m(a, b));
      Elem c = det(SquareMatrix(F, d - 1, std::move(minor))).elem();
      if ((i + j) % 2) c = F.neg(c);
      r.set(i, j, F.mul(c, dinv));
    }
  return r;
}

}  // namespace detail

// Randomized identity test of f(t g_i t^{-1}) = f(g_i) over F_p with random
// invertible g_i and t. On failure the witness is t, row-major.
inline Verdict invariance_pit(const MatrixFunction& f, std::size_t n, std::size_t d, std::uint64_t p, std::size_t trials,
                              std::uint64_t seed) {
  if (p < 101 || !detail::is_prime_u64(p)) throw Error("invariance_pit needs a prime p >= 101");
  const Ring F = Ring::prime_field(p);
  Rng rng(seed);
  Verdict v;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<SquareMatrix> gs, conj;
    for (std::size_t i = 0; i < n; ++i) gs.push_back(detail::random_invertible_by_rejection(F, d, rng));
    const SquareMatrix t = detail::random_invertible_by_rejection(F, d, rng);
    const SquareMatrix tinv = detail::field_inverse(t);
    for (const auto& g : gs) conj.push_back(t * g * tinv);
    ++v.checks;
    if (!F.eq(f(gs), f(conj))) {
      std::vector<int> w;
      for (const auto& e : t.entries()) w.push_back(static_cast<int>(std::get<Residue>(e).v));
      v.reject("not conjugation invariant at trial " + std::to_string(trial), w);
      return v;
    }
  }
  return v;
}

inline Verdict invariance_pit(const DonkinExpression& f, std::size_t d, std::uint64_t p, std::size_t trials, std::uint64_t seed) {
  return invariance_pit(as_matrix_function(f), f.arity(), d, p, trials, seed);
}

}  // namespace pseudochar
