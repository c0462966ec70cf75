#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "narrow/bignum.hpp"
#include "narrow/primes.hpp"
#include "narrow/tuple.hpp"

namespace narrow {

namespace detail {

inline void require_prime(std::uint64_t q, const char* op) {
  if (!is_prime_u64(q)) throw DomainError(std::string(op) + ": modulus " + std::to_string(q) + " is not prime");
}

// Residues h_i mod q, one per offset.
inline std::vector<std::uint64_t> offset_residues(const Constellation& s, std::uint64_t q) {
  std::vector<std::uint64_t> out;
  out.reserve(s.length() + 1);
  if (s.is_small()) {
    for (std::uint64_t h : s.small_offsets()) out.push_back(h % q);
  } else {
    for (const auto& h : s.offsets()) out.push_back(mod_small(h, q));
  }
  return out;
}

inline std::uint64_t count_distinct_residues(const Constellation& s, std::uint64_t q) {
  // Distinct offsets below q are distinct residues.
  if (s.span() < q) return s.length() + 1;
  auto residues = offset_residues(s, q);
  std::sort(residues.begin(), residues.end());
  return static_cast<std::uint64_t>(std::unique(residues.begin(), residues.end()) - residues.begin());
}

}  // namespace detail

// nu_q: the number of distinct residues of the offsets mod the prime q.
inline std::uint64_t nu(const Constellation& s, std::uint64_t q) {
  detail::require_prime(q, "nu");
  return detail::count_distinct_residues(s, q);
}

// Lazily filled table of nu_q for one constellation. Safe to query from
// several threads; a value computed twice is the same value.
class NuProfile {
public:
  explicit NuProfile(Constellation s) : tuple_(std::move(s)) {}

  NuProfile(const NuProfile& other) : tuple_(other.tuple_) {
    std::lock_guard<std::mutex> lock(other.mu_);
    cache_ = other.cache_;
  }

  NuProfile& operator=(const NuProfile&) = delete;

  const Constellation& tuple() const { return tuple_; }

  std::uint64_t nu(std::uint64_t q) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = cache_.find(q); it != cache_.end()) return it->second;
    }
    const std::uint64_t value = narrow::nu(tuple_, q);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(q, value);
    return value;
  }

  // q - nu_q: admissible residues for the initial generator mod q.
  std::uint64_t admissible_count(std::uint64_t q) const { return q - nu(q); }

private:
  Constellation tuple_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::uint64_t> cache_;
};

// Residues r mod q with (r + h_i) mod q != 0 for every offset; ascending.
inline std::vector<std::uint64_t> admissible_residues(const Constellation& s, std::uint64_t q) {
  detail::require_prime(q, "admissible_residues");
  if (q > 100'000'000) throw DomainError("admissible_residues: modulus too large to enumerate");
  std::vector<char> struck(q, 0);
  for (std::uint64_t h : detail::offset_residues(s, q)) struck[(q - h) % q] = 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < q; ++r) {
    if (!struck[r]) out.push_back(r);
  }
  return out;
}

// Admissible iff nu_q < q for every prime q <= J+1; larger primes satisfy
// nu_q <= J+1 < q automatically.
inline bool is_admissible(const Constellation& s) {
  for (std::uint64_t q : primes_upto(s.length() + 1)) {
    if (detail::count_distinct_residues(s, q) >= q) return false;
  }
  return true;
}

// First prime q with nu_q = q, if any.
inline std::optional<std::uint64_t> first_covering_prime(const Constellation& s) {
  for (std::uint64_t q : primes_upto(s.length() + 1)) {
    if (detail::count_distinct_residues(s, q) >= q) return q;
  }
  return std::nullopt;
}

namespace detail {

inline std::uint64_t countable_span(const Constellation& s, const char* op) {
  if (!s.is_small() || s.small_span() > 100'000'000'000ULL) {
    throw DomainError(std::string(op) + ": span too large for exact prime counting");
  }
  return s.small_span();
}

}  // namespace detail

// J - pi(|s|). Positive means an instance among primes would break convexity.
inline std::int64_t nonconvexity_score(const Constellation& s) {
  const std::uint64_t span = detail::countable_span(s, "nonconvexity_score");
  return static_cast<std::int64_t>(s.length()) - static_cast<std::int64_t>(prime_count(span));
}

// Older tabulated score k - pi(w) with k = J+1 and w = |s|+1.
inline std::int64_t legacy_score(const Constellation& s) {
  const std::uint64_t span = detail::countable_span(s, "legacy_score");
  return static_cast<std::int64_t>(s.length() + 1) - static_cast<std::int64_t>(prime_count(span + 1));
}

// Admissible with |s| < p_J.
inline bool is_counterexample(const Constellation& s) {
  return s.span() < BigNat(nth_prime(s.length())) && is_admissible(s);
}

inline Constellation mirror(const Constellation& s) {
  const auto& off = s.offsets();
  std::vector<BigNat> out;
  out.reserve(off.size());
  for (auto it = off.rbegin(); it != off.rend(); ++it) out.push_back(s.span() - *it);
  return Constellation::from_offsets(std::move(out));
}

inline std::map<BigNat, std::size_t> gap_histogram(const Constellation& s) {
  std::map<BigNat, std::size_t> hist;
  for (auto& g : s.gaps()) ++hist[g];
  return hist;
}

// J copies of the gap g.
inline Constellation repetition(std::size_t J, const BigNat& g) {
  if (J == 0) throw DomainError("repetition: J must be at least 1");
  if (g < 1) throw DomainError("repetition: gap must be positive");
  std::vector<BigNat> gaps(J, g);
  return Constellation::from_gaps(std::span<const BigNat>(gaps));
}

// Smallest g with repetition(J, g) admissible: (J+1)#.
inline BigNat minimal_repetition_gap(std::size_t J) {
  if (J == 0) throw DomainError("minimal_repetition_gap: J must be at least 1");
  return primorial(J + 1);
}

}  // namespace narrow
