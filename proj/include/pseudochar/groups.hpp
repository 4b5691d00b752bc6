#pragma once

// Finite groups by multiplication table, words in a free monoid, group
// algebra elements, and matrix representations.

#include <deque>
#include <map>
#include <memory>
#include <regex>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "rings.hpp"

namespace pseudochar {

// A word g_{i1} ... g_{ir} in letters 0..n-1. Empty is the monoid identity.
using Word = std::vector<int>;
using Permutation = std::vector<int>;  // p[i] = image of i, 0-based

class FiniteGroup {
 public:
  // table[a * order + b] = index of a*b. `action` optionally holds a faithful
  // permutation action (action[g] is the permutation of g), compatible with
  // left-to-right composition: action[a*b][i] = action[b][action[a][i]].
  FiniteGroup(std::string name, std::size_t order, std::vector<int> table, std::vector<Permutation> action = {})
      : name_(std::move(name)), order_(order), table_(std::move(table)), action_(std::move(action)) {
    if (order_ == 0) throw Error("group order must be positive");
    if (table_.size() != order_ * order_) throw Error("multiplication table has wrong size");
    for (int v : table_)
      if (v < 0 || static_cast<std::size_t>(v) >= order_) throw Error("multiplication table entry out of range");
    identity_ = -1;
    for (std::size_t e = 0; e < order_ && identity_ < 0; ++e) {
      bool ok = true;
      for (std::size_t g = 0; g < order_ && ok; ++g)
        ok = mul(static_cast<int>(e), static_cast<int>(g)) == static_cast<int>(g) &&
             mul(static_cast<int>(g), static_cast<int>(e)) == static_cast<int>(g);
      if (ok) identity_ = static_cast<int>(e);
    }
    if (identity_ < 0) throw Error("multiplication table has no identity");
    inverse_.assign(order_, -1);
    for (std::size_t g = 0; g < order_; ++g)
      for (std::size_t h = 0; h < order_; ++h)
        if (mul(static_cast<int>(g), static_cast<int>(h)) == identity_ &&
            mul(static_cast<int>(h), static_cast<int>(g)) == identity_)
          inverse_[g] = static_cast<int>(h);
    for (int v : inverse_)
      if (v < 0) throw Error("multiplication table: element without inverse");
    if (order_ <= 64) {
      for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = 0; b < order_; ++b)
          for (std::size_t c = 0; c < order_; ++c) {
            int ia = static_cast<int>(a), ib = static_cast<int>(b), ic = static_cast<int>(c);
            if (mul(mul(ia, ib), ic) != mul(ia, mul(ib, ic))) throw Error("multiplication table is not associative");
          }
    }
    if (!action_.empty() && action_.size() != order_) throw Error("permutation action has wrong size");
  }

  // Closure of the given permutations under left-to-right composition.
  // Elements are indexed in breadth-first order from the identity.
  static FiniteGroup from_permutations(std::string name, const std::vector<Permutation>& gens) {
    if (gens.empty()) throw Error("need at least one generator");
    const std::size_t n = gens.front().size();
    Permutation id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
    std::vector<Permutation> elems = {id};
    std::map<Permutation, int> index = {{id, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& g : gens) {
        Permutation p = compose(elems[head], g);
        if (index.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(p);
        if (elems.size() > 5000) throw Error("permutation group too large");
      }
    }
    return from_element_list(std::move(name), std::move(elems));
  }

  static FiniteGroup from_element_list(std::string name, std::vector<Permutation> elems) {
    std::map<Permutation, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    const std::size_t m = elems.size();
    std::vector<int> table(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        auto it = index.find(compose(elems[a], elems[b]));
        if (it == index.end()) throw Error("element list is not closed under composition");
        table[a * m + b] = it->second;
      }
    return FiniteGroup(std::move(name), m, std::move(table), std::move(elems));
  }

  // Left-to-right: apply a, then b.
  static Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<std::size_t>(a[i])];
    return r;
  }

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::vector<int>& table() const { return table_; }
  const std::vector<Permutation>& action() const { return action_; }

  int power(int a, std::uint64_t k) const {
    int r = identity_;
    for (std::uint64_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  std::size_t element_order(int a) const {
    std::size_t k = 1;
    for (int x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  std::optional<int> find_permutation(const Permutation& p) const {
    for (std::size_t i = 0; i < action_.size(); ++i)
      if (action_[i] == p) return static_cast<int>(i);
    return std::nullopt;
  }

  // Greedy generating set: repeatedly add the smallest index not yet in the
  // generated subgroup.
  std::vector<int> generators() const {
    std::vector<int> gens;
    std::vector<bool> in(order_, false);
    in[static_cast<std::size_t>(identity_)] = true;
    std::size_t count = 1;
    for (std::size_t g = 0; g < order_ && count < order_; ++g) {
      if (in[g]) continue;
      gens.push_back(static_cast<int>(g));
      std::vector<int> elems;
      for (std::size_t i = 0; i < order_; ++i)
        if (in[i]) elems.push_back(static_cast<int>(i));
      for (std::size_t head = 0; head < elems.size(); ++head) {
        for (int s : gens) {
          int p = mul(elems[head], s);
          if (!in[static_cast<std::size_t>(p)]) {
            in[static_cast<std::size_t>(p)] = true;
            elems.push_back(p);
          }
        }
      }
      count = elems.size();
    }
    return gens;
  }

  bool is_commutative(int a, int b) const { return mul(a, b) == mul(b, a); }

 private:
  std::string name_;
  std::size_t order_;
  std::vector<int> table_;
  std::vector<Permutation> action_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

namespace detail {

inline Permutation cycle_perm(std::size_t n, const std::vector<int>& cycle) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < cycle.size(); ++i)
    p[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
  return p;
}

}  // namespace detail

inline GroupPtr cyclic_group(std::size_t n) {
  if (n < 1 || n > 24) throw Error("cyclic(n) requires 1 <= n <= 24");
  std::vector<int> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<int>(i);
  auto g = detail::cycle_perm(std::max<std::size_t>(n, 1), cyc);
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations("cyclic(" + std::to_string(n) + ")", {g}));
}

// All permutations in lexicographic order; index 0 is the identity.
inline GroupPtr symmetric_group(std::size_t n) {
  if (n < 1 || n > 5) throw Error("symmetric(n) requires 1 <= n <= 5");
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  std::vector<Permutation> elems;
  do {
    elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return std::make_shared<const FiniteGroup>(
      FiniteGroup::from_element_list("symmetric(" + std::to_string(n) + ")", std::move(elems)));
}

inline GroupPtr klein_four_group() {
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_element_list(
      "klein4", {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}));
}

// Symmetries of the n-gon, order 2n.
inline GroupPtr dihedral_group(std::size_t n) {
  if (n < 2 || n > 12) throw Error("dihedral(n) requires 2 <= n <= 12");
  const std::string name = "dihedral(" + std::to_string(n) + ")";
  if (n == 2) {
    return std::make_shared<const FiniteGroup>(
        FiniteGroup::from_element_list(name, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}));
  }
  std::vector<int> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<int>(i);
  Permutation rot = detail::cycle_perm(n, cyc);
  Permutation refl(n);
  for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<int>((n - i) % n);
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(name, {rot, refl}));
}

// Regular action on 8 points: i = (1234)(5678), j = (1537)(2846).
inline GroupPtr quaternion_group() {
  Permutation i = {1, 2, 3, 0, 5, 6, 7, 4};
  Permutation j = {4, 7, 6, 5, 2, 1, 0, 3};
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations("quaternion8", {i, j}));
}

inline const std::vector<std::string>& builtin_group_catalog() {
  static const std::vector<std::string> names = {"cyclic(n) n<=24 (alias Cn)", "symmetric(n) n<=5 (alias Sn)",
                                                 "dihedral(n) n<=12 (alias Dn)", "quaternion8 (alias Q8)",
                                                 "klein4 (alias V4)"};
  return names;
}

inline GroupPtr builtin_group(const std::string& name) {
  static const std::regex call(R"(^(cyclic|symmetric|dihedral)\((\d+)\)$)");
  static const std::regex alias(R"(^([CSD])(\d+)$)");
  std::smatch m;
  if (name == "quaternion8" || name == "Q8") return quaternion_group();
  if (name == "klein4" || name == "V4") return klein_four_group();
  std::string kind;
  std::size_t n = 0;
  if (std::regex_match(name, m, call)) {
    kind = m[1];
    n = std::stoul(m[2]);
  } else if (std::regex_match(name, m, alias)) {
    kind = m[1] == "C" ? "cyclic" : m[1] == "S" ? "symmetric" : "dihedral";
    n = std::stoul(m[2]);
  } else {
    std::string msg = "unknown group '" + name + "'; valid: ";
    for (const auto& c : builtin_group_catalog()) msg += c + "; ";
    throw Error(msg);
  }
  if (kind == "cyclic") return cyclic_group(n);
  if (kind == "symmetric") return symmetric_group(n);
  return dihedral_group(n);
}

// Left-to-right product of the assigned elements; the empty word is e.
inline int evaluate_word_in_group(const FiniteGroup& g, const Word& w, const std::vector<int>& assignment) {
  int r = g.identity();
  for (int letter : w) {
    if (letter < 0 || static_cast<std::size_t>(letter) >= assignment.size() || assignment[static_cast<std::size_t>(letter)] < 0)
      throw Error("unassigned letter " + std::to_string(letter));
    r = g.mul(r, assignment[static_cast<std::size_t>(letter)]);
  }
  return r;
}

// Lexicographically minimal rotation.
inline Word cyclic_canonical(const Word& w) {
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    Word rot(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
    if (rot < best) best = std::move(rot);
  }
  return best;
}

// True when w is not a proper power of a shorter word.
inline bool is_primitive_word(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return false;
  }
  return n > 0;
}

// Element of B[Gamma]: sparse coefficients indexed by group element.
class GroupAlgebraElement {
 public:
  GroupAlgebraElement(Ring ring, GroupPtr group) : ring_(std::move(ring)), group_(std::move(group)) {}

  static GroupAlgebraElement basis(const Ring& ring, GroupPtr group, int g) {
    GroupAlgebraElement x(ring, std::move(group));
    x.set(g, ring.one());
    return x;
  }

  static GroupAlgebraElement one(const Ring& ring, GroupPtr group) {
    int e = group->identity();
    return basis(ring, std::move(group), e);
  }

  const Ring& ring() const { return ring_; }
  const GroupPtr& group() const { return group_; }
  const std::map<int, Elem>& terms() const { return coeffs_; }
  std::size_t support_size() const { return coeffs_.size(); }

  RingValue coefficient(int g) const {
    auto it = coeffs_.find(g);
    return it == coeffs_.end() ? RingValue::zero(ring_) : RingValue(ring_, it->second);
  }

  void set(int g, Elem c) {
    if (g < 0 || static_cast<std::size_t>(g) >= group_->order()) throw Error("group element out of range");
    if (ring_.is_zero(c))
      coeffs_.erase(g);
    else
      coeffs_[g] = std::move(c);
  }

  void add_term(int g, const Elem& c) {
    auto it = coeffs_.find(g);
    set(g, it == coeffs_.end() ? c : ring_.add(it->second, c));
  }

  GroupAlgebraElement operator+(const GroupAlgebraElement& o) const {
    check(o);
    GroupAlgebraElement r = *this;
    for (const auto& [g, c] : o.coeffs_) r.add_term(g, c);
    return r;
  }

  GroupAlgebraElement operator-(const GroupAlgebraElement& o) const { return *this + o.scaled(ring_.neg(ring_.one())); }

  GroupAlgebraElement operator*(const GroupAlgebraElement& o) const {
    check(o);
    GroupAlgebraElement r(ring_, group_);
    for (const auto& [g, a] : coeffs_)
      for (const auto& [h, b] : o.coeffs_) r.add_term(group_->mul(g, h), ring_.mul(a, b));
    return r;
  }

  GroupAlgebraElement scaled(const Elem& c) const {
    GroupAlgebraElement r(ring_, group_);
    for (const auto& [g, a] : coeffs_) r.set(g, ring_.mul(c, a));
    return r;
  }

  GroupAlgebraElement to(const Ring& target) const {
    GroupAlgebraElement r(target, group_);
    for (const auto& [g, a] : coeffs_) r.set(g, target.coerce(ring_, a));
    return r;
  }

  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    if (a.ring_ != b.ring_ || a.group_ != b.group_ || a.coeffs_.size() != b.coeffs_.size()) return false;
    for (const auto& [g, c] : a.coeffs_) {
      auto it = b.coeffs_.find(g);
      if (it == b.coeffs_.end() || !a.ring_.eq(c, it->second)) return false;
    }
    return true;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [g, c] : coeffs_) s += (s.empty() ? "" : " + ") + ("(" + ring_.to_string(c) + ")*g" + std::to_string(g));
    return s;
  }

 private:
  void check(const GroupAlgebraElement& o) const {
    if (o.ring_ != ring_) throw Error("ring mismatch");
    if (o.group_ != group_ && o.group_->table() != group_->table()) throw Error("group mismatch");
  }

  Ring ring_;
  GroupPtr group_;
  std::map<int, Elem> coeffs_;
};

// Element of C{X} for the free monoid on `alphabet` letters.
class FreeAlgebraElement {
 public:
  FreeAlgebraElement(Ring ring, std::size_t alphabet) : ring_(std::move(ring)), alphabet_(alphabet) {}

  static FreeAlgebraElement word(const Ring& ring, std::size_t alphabet, const Word& w) {
    FreeAlgebraElement x(ring, alphabet);
    x.add_term(w, ring.one());
    return x;
  }

  const Ring& ring() const { return ring_; }
  std::size_t alphabet() const { return alphabet_; }
  const std::map<Word, Elem>& terms() const { return coeffs_; }
  std::size_t support_size() const { return coeffs_.size(); }

  void add_term(const Word& w, const Elem& c) {
    for (int l : w)
      if (l < 0 || static_cast<std::size_t>(l) >= alphabet_) throw Error("letter out of range");
    auto it = coeffs_.find(w);
    Elem v = it == coeffs_.end() ? c : ring_.add(it->second, c);
    if (ring_.is_zero(v))
      coeffs_.erase(w);
    else
      coeffs_[w] = std::move(v);
  }

  FreeAlgebraElement operator+(const FreeAlgebraElement& o) const {
    if (o.ring_ != ring_ || o.alphabet_ != alphabet_) throw Error("ring mismatch");
    FreeAlgebraElement r = *this;
    for (const auto& [w, c] : o.coeffs_) r.add_term(w, c);
    return r;
  }

  FreeAlgebraElement operator*(const FreeAlgebraElement& o) const {
    if (o.ring_ != ring_ || o.alphabet_ != alphabet_) throw Error("ring mismatch");
    FreeAlgebraElement r(ring_, alphabet_);
    for (const auto& [u, a] : coeffs_)
      for (const auto& [v, b] : o.coeffs_) {
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        r.add_term(uv, ring_.mul(a, b));
      }
    return r;
  }

  FreeAlgebraElement scaled(const Elem& c) const {
    FreeAlgebraElement r(ring_, alphabet_);
    for (const auto& [w, a] : coeffs_) r.add_term(w, ring_.mul(c, a));
    return r;
  }

  FreeAlgebraElement to(const Ring& target) const {
    FreeAlgebraElement r(target, alphabet_);
    for (const auto& [w, a] : coeffs_) r.add_term(w, target.coerce(ring_, a));
    return r;
  }

 private:
  Ring ring_;
  std::size_t alphabet_;
  std::map<Word, Elem> coeffs_;
};

// A group morphism rho: Gamma -> GL_d(A), stored as one matrix per element.
class Representation {
 public:
  Representation(GroupPtr group, std::vector<SquareMatrix> images) : group_(std::move(group)), images_(std::move(images)) {
    if (images_.size() != group_->order()) throw Error("representation needs one image per group element");
    ring_ = images_.front().ring();
    d_ = images_.front().dim();
    for (const auto& m : images_)
      if (m.ring() != ring_ || m.dim() != d_) throw Error("representation images must share ring and dimension");
    if (images_[static_cast<std::size_t>(group_->identity())] != SquareMatrix::identity(ring_, d_))
      throw Error("representation does not send the identity to I_d");
    const int n = static_cast<int>(group_->order());
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        if (image(g) * image(h) != image(group_->mul(g, h)))
          throw Error("not a homomorphism at (" + std::to_string(g) + "," + std::to_string(h) + ")");
    for (const auto& m : images_)
      if (!det(m).is_unit()) throw Error("representation image is not invertible");
  }

  // Extends generator images along the Cayley graph; throws if the
  // assignment does not define a homomorphism.
  static Representation from_generators(GroupPtr group, const std::vector<int>& gens, const std::vector<SquareMatrix>& imgs) {
    auto images = extend_generators(*group, gens, imgs);
    if (!images) throw Error("generator images do not define a homomorphism");
    return Representation(std::move(group), std::move(*images));
  }

  static std::optional<std::vector<SquareMatrix>> extend_generators(const FiniteGroup& g, const std::vector<int>& gens,
                                                                    const std::vector<SquareMatrix>& imgs) {
    if (gens.size() != imgs.size() || imgs.empty()) throw Error("generator/image count mismatch");
    const Ring ring = imgs.front().ring();
    const std::size_t d = imgs.front().dim();
    std::vector<std::optional<SquareMatrix>> out(g.order());
    out[static_cast<std::size_t>(g.identity())] = SquareMatrix::identity(ring, d);
    std::vector<int> queue = {g.identity()};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int x = queue[head];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        int y = g.mul(x, gens[i]);
        SquareMatrix m = *out[static_cast<std::size_t>(x)] * imgs[i];
        auto& slot = out[static_cast<std::size_t>(y)];
        if (!slot) {
          slot = std::move(m);
          queue.push_back(y);
        } else if (*slot != m) {
          return std::nullopt;
        }
      }
    }
    std::vector<SquareMatrix> res;
    for (auto& m : out) {
      if (!m) throw Error("generators do not generate the group");
      res.push_back(std::move(*m));
    }
    return res;
  }

  static Representation trivial(GroupPtr group, const Ring& ring, std::size_t d) {
    std::vector<SquareMatrix> imgs(group->order(), SquareMatrix::identity(ring, d));
    return Representation(std::move(group), std::move(imgs));
  }

  const GroupPtr& group() const { return group_; }
  const Ring& ring() const { return ring_; }
  std::size_t dim() const { return d_; }
  const SquareMatrix& image(int g) const { return images_[static_cast<std::size_t>(g)]; }
  const std::vector<SquareMatrix>& images() const { return images_; }

  Representation direct_sum(const Representation& o) const {
    if (o.group_ != group_ && o.group_->table() != group_->table()) throw Error("group mismatch");
    std::vector<SquareMatrix> imgs;
    for (std::size_t g = 0; g < images_.size(); ++g) imgs.push_back(images_[g].direct_sum(o.images_[g]));
    return Representation(group_, std::move(imgs));
  }

  // g -> P rho(g) P^{-1}.
  Representation conjugated(const SquareMatrix& p, const SquareMatrix& p_inv) const {
    if (p * p_inv != SquareMatrix::identity(ring_, d_)) throw Error("conjugating matrix inverse is wrong");
    std::vector<SquareMatrix> imgs;
    for (const auto& m : images_) imgs.push_back(p * m * p_inv);
    return Representation(group_, std::move(imgs));
  }

  Representation to(const Ring& target) const {
    std::vector<SquareMatrix> imgs;
    for (const auto& m : images_) imgs.push_back(m.to(target));
    return Representation(group_, std::move(imgs));
  }

 private:
  GroupPtr group_;
  std::vector<SquareMatrix> images_;
  Ring ring_;
  std::size_t d_ = 0;
};

// rho_B(sum b_i gamma_i) = sum b_i rho(gamma_i), computed in x's ring.
inline SquareMatrix rho_B(const Representation& rho, const GroupAlgebraElement& x) {
  const Ring& C = x.ring();
  if (!C.accepts(rho.ring())) throw Error("ring mismatch: representation ring does not embed into " + C.name());
  SquareMatrix acc(C, rho.dim());
  for (const auto& [g, c] : x.terms()) acc = acc + rho.image(g).to(C).scaled(c);
  return acc;
}

// A verified group homomorphism source -> target.
class GroupMorphism {
 public:
  GroupMorphism(GroupPtr source, GroupPtr target, std::vector<int> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (map_.size() != source_->order()) throw Error("morphism needs one image per element");
    for (int v : map_)
      if (v < 0 || static_cast<std::size_t>(v) >= target_->order()) throw Error("morphism image out of range");
    const int n = static_cast<int>(source_->order());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (map_[static_cast<std::size_t>(source_->mul(a, b))] != target_->mul(map_[static_cast<std::size_t>(a)], map_[static_cast<std::size_t>(b)]))
          throw Error("not a group homomorphism");
  }

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  int operator()(int g) const { return map_[static_cast<std::size_t>(g)]; }

 private:
  GroupPtr source_, target_;
  std::vector<int> map_;
};

// rho o u.
inline Representation pull_back(const Representation& rho, const GroupMorphism& u) {
  std::vector<SquareMatrix> imgs;
  for (std::size_t g = 0; g < u.source()->order(); ++g) imgs.push_back(rho.image(u(static_cast<int>(g))));
  return Representation(u.source(), std::move(imgs));
}

}  // namespace pseudochar
