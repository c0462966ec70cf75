#pragma once

// Brute-force reference computations shared by the property tests and the
// acceptance runner. Nothing here calls into the search or lifting code.

#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "narrow/primes.hpp"

namespace oracle {

inline std::uint64_t distinct_residues(const std::vector<std::uint64_t>& off, std::uint64_t q) {
  std::set<std::uint64_t> hit;
  for (auto h : off) hit.insert(h % q);
  return hit.size();
}

// Random admissible tuples with even offsets and span <= 60, built by rejection.
inline std::vector<std::vector<std::uint64_t>> random_admissible(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::uint64_t>> out;
  while (out.size() < n) {
    const std::uint64_t span = 2 + 2 * (rng() % 30);
    std::set<std::uint64_t> picks{0, span};
    const std::size_t extra = rng() % 8;
    for (std::size_t i = 0; i < extra; ++i) picks.insert(2 * (rng() % (span / 2)));
    std::vector<std::uint64_t> off(picks.begin(), picks.end());
    bool ok = true;
    for (std::uint64_t q : narrow::primes_upto(off.size())) {
      if (distinct_residues(off, q) == q) ok = false;
    }
    if (ok) out.push_back(std::move(off));
  }
  return out;
}

// Number of g in [0, P) with every g + h coprime to P.
inline std::uint64_t residue_scan_count(const std::vector<std::uint64_t>& off, std::uint64_t P) {
  std::uint64_t n = 0;
  for (std::uint64_t g = 0; g < P; ++g) {
    bool ok = true;
    for (auto h : off) {
      if (std::gcd(g + h, P) != 1) {
        ok = false;
        break;
      }
    }
    n += ok;
  }
  return n;
}

// Sieves (q^2, q1^2) by the primes up to q for every prime q <= limit and returns
// the first survivor that fails `is_prime`, or 0 when all survivors are prime.
template <typename IsPrime>
std::uint64_t horizon_counterexample(std::uint64_t limit, IsPrime&& is_prime) {
  const auto primes = narrow::primes_upto(limit + 1000);
  for (std::size_t i = 0; i + 1 < primes.size() && primes[i] <= limit; ++i) {
    const std::uint64_t q = primes[i];
    const std::uint64_t q1 = primes[i + 1];
    const std::uint64_t lo = q * q + 1;
    const std::uint64_t hi = q1 * q1 - 1;
    std::vector<char> alive(hi - lo + 1, 1);
    for (std::size_t k = 0; k <= i; ++k) {
      const std::uint64_t p = primes[k];
      for (std::uint64_t n = (lo + p - 1) / p * p; n <= hi; n += p) alive[n - lo] = 0;
    }
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (alive[n - lo] && !is_prime(n)) return n;
    }
  }
  return 0;
}

}  // namespace oracle
