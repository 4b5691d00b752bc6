#pragma once

// Seeded generators for ring elements, matrices, group algebra elements and
// representations. Everything is a deterministic function of the Rng state.

#include <set>

#include "groups.hpp"
#include "verdict.hpp"

namespace pseudochar {

// Integers are drawn from [-bound, bound].
inline Elem random_elem(const Ring& R, Rng& rng, long long bound = 4) {
  switch (R.kind()) {
    case RingKind::Integers:
      return BigInt(static_cast<long long>(uniform_below(rng, static_cast<std::uint64_t>(2 * bound + 1))) - bound);
    case RingKind::Rationals: {
      long long num = static_cast<long long>(uniform_below(rng, static_cast<std::uint64_t>(2 * bound + 1))) - bound;
      long long den = static_cast<long long>(uniform_below(rng, static_cast<std::uint64_t>(bound))) + 1;
      return BigRational(num, den);
    }
    case RingKind::IntegersMod:
    case RingKind::PrimeField: return Residue{uniform_below(rng, R.modulus())};
    case RingKind::ExtensionField: {
      std::vector<std::uint64_t> c(R.ext_degree());
      for (auto& x : c) x = uniform_below(rng, R.modulus());
      return R.fq(std::move(c));
    }
    case RingKind::PolynomialRing: {
      const Ring b = R.base();
      std::vector<PolyTerm> terms;
      const std::size_t nterms = uniform_below(rng, 4);
      for (std::size_t k = 0; k < nterms; ++k) {
        Monomial m(R.nvars(), 0);
        std::size_t deg = uniform_below(rng, 3);
        for (std::size_t j = 0; j < deg; ++j) ++m[uniform_below(rng, R.nvars())];
        terms.push_back(PolyTerm{std::move(m), random_elem(b, rng, bound)});
      }
      return R.make_poly(std::move(terms));
    }
  }
  return R.zero();
}

inline RingValue random_value(const Ring& R, Rng& rng, long long bound = 4) { return RingValue(R, random_elem(R, rng, bound)); }

inline Elem random_unit(const Ring& R, Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    Elem e = random_elem(R, rng);
    if (R.is_unit(e)) return e;
  }
  return uniform_below(rng, 2) ? R.one() : R.neg(R.one());
}

inline SquareMatrix random_matrix(const Ring& R, std::size_t d, Rng& rng, long long bound = 4) {
  SquareMatrix m(R, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m.set(i, j, random_elem(R, rng, bound));
  return m;
}

// A random invertible matrix together with its inverse, built from
// elementary, permutation and diagonal-unit factors so no division occurs.
inline std::pair<SquareMatrix, SquareMatrix> random_invertible(const Ring& R, std::size_t d, Rng& rng) {
  SquareMatrix p = SquareMatrix::identity(R, d), pinv = SquareMatrix::identity(R, d);
  const std::size_t steps = 2 + 2 * d;
  for (std::size_t s = 0; s < steps; ++s) {
    SquareMatrix e = SquareMatrix::identity(R, d), einv = SquareMatrix::identity(R, d);
    const std::uint64_t kind = uniform_below(rng, d > 1 ? 3 : 1);
    if (kind == 0) {
      std::size_t i = uniform_below(rng, d);
      Elem u = random_unit(R, rng);
      e.set(i, i, u);
      einv.set(i, i, *R.inverse(u));
    } else if (kind == 1) {
      std::size_t i = uniform_below(rng, d), j = uniform_below(rng, d - 1);
      if (j >= i) ++j;
      Elem c = random_elem(R, rng, 2);
      e.set(i, j, c);
      einv.set(i, j, R.neg(c));
    } else {
      std::size_t i = uniform_below(rng, d), j = uniform_below(rng, d - 1);
      if (j >= i) ++j;
      for (auto* m : {&e, &einv}) {
        m->set(i, i, R.zero());
        m->set(j, j, R.zero());
        m->set(i, j, R.one());
        m->set(j, i, R.one());
      }
    }
    p = p * e;
    pinv = einv * pinv;
  }
  return {p, pinv};
}

inline GroupAlgebraElement random_group_algebra_element(const Ring& R, const GroupPtr& g, std::size_t max_support, Rng& rng,
                                                        long long bound = 4) {
  GroupAlgebraElement x(R, g);
  const std::size_t s = uniform_below(rng, max_support + 1);
  for (std::size_t k = 0; k < s; ++k) x.add_term(static_cast<int>(uniform_below(rng, g->order())), random_elem(R, rng, bound));
  return x;
}

// Every element of a finite ring, in counting order (base-p digits for F_q).
inline std::vector<Elem> finite_ring_elements(const Ring& R) {
  if (!R.is_finite()) throw Error("ring is infinite");
  const std::uint64_t q = R.cardinality().convert_to<std::uint64_t>();
  std::vector<Elem> out;
  out.reserve(q);
  for (std::uint64_t k = 0; k < q; ++k) {
    if (R.kind() == RingKind::ExtensionField) {
      std::vector<std::uint64_t> c(R.ext_degree());
      std::uint64_t r = k;
      for (auto& x : c) {
        x = r % R.modulus();
        r /= R.modulus();
      }
      out.push_back(R.fq(std::move(c)));
    } else {
      out.push_back(Residue{k});
    }
  }
  return out;
}

// Units of finite order that can serve as character values: +-1 for
// infinite rings, every unit for small finite rings.
inline std::vector<Elem> torsion_unit_candidates(const Ring& R) {
  std::vector<Elem> out;
  if (R.kind() == RingKind::PolynomialRing) {
    const Ring b = R.base();
    for (auto& u : torsion_unit_candidates(b)) out.push_back(R.constant(u));
    return out;
  }
  if (R.is_finite() && R.cardinality() <= 4096) {
    for (auto& e : finite_ring_elements(R))
      if (R.is_unit(e)) out.push_back(std::move(e));
    return out;
  }
  out.push_back(R.one());
  Elem m1 = R.neg(R.one());
  if (!R.eq(m1, R.one())) out.push_back(m1);
  return out;
}

// All homomorphisms Gamma -> A^x with values among torsion_unit_candidates.
// The trivial character comes first.
inline std::vector<std::vector<Elem>> characters(const GroupPtr& group, const Ring& R) {
  const auto gens = group->generators();
  const auto cands = torsion_unit_candidates(R);
  std::vector<std::vector<Elem>> out;
  if (gens.empty()) return {std::vector<Elem>(group->order(), R.one())};
  std::vector<std::size_t> pick(gens.size(), 0);
  while (true) {
    std::vector<SquareMatrix> imgs;
    for (std::size_t i = 0; i < gens.size(); ++i) imgs.push_back(SquareMatrix(R, 1, {cands[pick[i]]}));
    if (auto ext = Representation::extend_generators(*group, gens, imgs)) {
      std::vector<Elem> chi;
      for (const auto& m : *ext) chi.push_back(m(0, 0));
      out.push_back(std::move(chi));
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == cands.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  std::stable_partition(out.begin(), out.end(), [&](const std::vector<Elem>& chi) {
    return std::all_of(chi.begin(), chi.end(), [&](const Elem& e) { return R.eq(e, R.one()); });
  });
  return out;
}

inline Representation character_rep(const GroupPtr& group, const Ring& R, const std::vector<Elem>& chi) {
  std::vector<SquareMatrix> imgs;
  for (const auto& c : chi) imgs.push_back(SquareMatrix(R, 1, {c}));
  return Representation(group, std::move(imgs));
}

// Permutation matrices of the group's natural action (e_i M_g = e_{g(i)}).
inline std::optional<Representation> permutation_rep(const GroupPtr& group, const Ring& R) {
  if (group->action().empty()) return std::nullopt;
  const std::size_t m = group->action().front().size();
  std::vector<SquareMatrix> imgs;
  for (const auto& p : group->action()) {
    SquareMatrix M(R, m);
    for (std::size_t i = 0; i < m; ++i) M.set(i, static_cast<std::size_t>(p[i]), R.one());
    imgs.push_back(std::move(M));
  }
  return Representation(group, std::move(imgs));
}

// The natural action on {sum x_i = 0}, basis e_i - e_{m-1}.
inline std::optional<Representation> augmentation_rep(const GroupPtr& group, const Ring& R) {
  if (group->action().empty()) return std::nullopt;
  const std::size_t m = group->action().front().size();
  if (m < 2) return std::nullopt;
  std::vector<SquareMatrix> imgs;
  for (const auto& p : group->action()) {
    SquareMatrix M(R, m - 1);
    const std::size_t last = static_cast<std::size_t>(p[m - 1]);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const std::size_t gi = static_cast<std::size_t>(p[i]);
      if (gi != m - 1) M.set(i, gi, R.add(M(i, gi), R.one()));
      if (last != m - 1) M.set(i, last, R.sub(M(i, last), R.one()));
    }
    imgs.push_back(std::move(M));
  }
  return Representation(group, std::move(imgs));
}

inline Representation twist(const Representation& rho, const std::vector<Elem>& chi) {
  std::vector<SquareMatrix> imgs;
  for (std::size_t g = 0; g < rho.images().size(); ++g) imgs.push_back(rho.images()[g].scaled(chi[g]));
  return Representation(rho.group(), std::move(imgs));
}

// Building blocks of dimension <= max_dim: characters, permutation and
// augmentation representations and their character twists.
inline std::vector<Representation> representation_pieces(const GroupPtr& group, const Ring& R, std::size_t max_dim) {
  std::vector<Representation> pieces;
  const auto chars = characters(group, R);
  for (const auto& chi : chars) pieces.push_back(character_rep(group, R, chi));
  for (auto rep : {permutation_rep(group, R), augmentation_rep(group, R)}) {
    if (!rep || rep->dim() > max_dim) continue;
    for (const auto& chi : chars) pieces.push_back(twist(*rep, chi));
  }
  return pieces;
}

// Random d-dimensional representation: a direct sum of building blocks,
// conjugated by a random invertible matrix.
inline Representation random_representation(const GroupPtr& group, const Ring& R, std::size_t d, Rng& rng) {
  const auto pieces = representation_pieces(group, R, d);
  std::optional<Representation> acc;
  std::size_t remaining = d;
  while (remaining > 0) {
    std::vector<const Representation*> fits;
    for (const auto& p : pieces)
      if (p.dim() <= remaining) fits.push_back(&p);
    const Representation& pick = *fits[uniform_below(rng, fits.size())];
    acc = acc ? acc->direct_sum(pick) : pick;
    remaining -= pick.dim();
  }
  auto [p, pinv] = random_invertible(R, d, rng);
  return acc->conjugated(p, pinv);
}

}  // namespace pseudochar
