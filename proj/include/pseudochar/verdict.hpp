#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pseudochar {

using Rng = std::mt19937_64;

// Result of a property check. A rejected verdict names what failed and, for
// identity failures, the first tuple that exhibits it.
struct Verdict {
  bool accepted = true;
  std::string failure;  // empty when accepted
  std::optional<std::vector<int>> witness;
  std::vector<std::string> precondition_failures;
  std::size_t checks = 0;

  void reject(std::string what, std::optional<std::vector<int>> w = std::nullopt) {
    if (!accepted && !failure.empty()) return;  // keep the first failure
    accepted = false;
    failure = std::move(what);
    witness = std::move(w);
  }
};

// Exhaustive enumeration, or `trials` seeded samples.
struct CheckMode {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::size_t trials = 0;

  static CheckMode exhaustive_mode() { return {true, 0, 0}; }
  static CheckMode sampled(std::uint64_t seed, std::size_t trials) { return {false, seed, trials}; }
  // Exhaustive when the tuple space has at most `limit` points.
  static CheckMode automatic(std::size_t space, std::size_t limit, std::uint64_t seed, std::size_t trials) {
    return space <= limit ? exhaustive_mode() : sampled(seed, trials);
  }
};

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) { return n <= 1 ? 0 : rng() % n; }

// Calls f(tuple) for every tuple in {0..n-1}^len (lexicographic) or for
// `trials` random ones; stops early when f returns false.
template <class F>
void for_each_tuple(std::size_t n, std::size_t len, const CheckMode& mode, F&& f) {
  std::vector<int> t(len, 0);
  if (mode.exhaustive) {
    while (true) {
      if (!f(t)) return;
      std::size_t i = len;
      while (i > 0) {
        --i;
        if (static_cast<std::size_t>(++t[i]) < n) break;
        t[i] = 0;
        if (i == 0) return;
      }
      if (len == 0) return;
    }
  }
  Rng rng(mode.seed);
  for (std::size_t k = 0; k < mode.trials; ++k) {
    for (auto& x : t) x = static_cast<int>(uniform_below(rng, n));
    if (!f(t)) return;
  }
}

inline std::size_t saturating_pow(std::size_t base, std::size_t exp, std::size_t cap = SIZE_MAX / 2) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap;
    r *= base;
  }
  return r;
}

}  // namespace pseudochar
