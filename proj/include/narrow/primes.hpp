#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "narrow/bignum.hpp"
#include "narrow/tuple.hpp"

namespace narrow {

// All primes <= limit, ascending.
class PrimeTable {
public:
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  // pi(x) for x <= limit.
  std::uint64_t count_upto(std::uint64_t x) const {
    return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

  bool contains(std::uint64_t n) const { return std::binary_search(primes_.begin(), primes_.end(), n); }

private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

namespace detail {

inline std::vector<std::uint64_t> small_primes_upto(std::uint64_t n) {
  std::vector<char> composite(n + 1, 0);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return out;
}

// Odd-only segmented sieve; calls `emit(p)` for each prime <= limit in order.
template <typename Emit>
void segmented_sieve(std::uint64_t limit, Emit&& emit) {
  if (limit < 2) return;
  emit(std::uint64_t{2});
  if (limit < 3) return;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(limit))) + 1;
  const std::vector<std::uint64_t> base = small_primes_upto(root);

  constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;  // odd numbers per segment
  std::vector<char> seg(kSegment);
  // Segment k covers the odd numbers low, low+2, ..., low + 2*(kSegment-1).
  for (std::uint64_t low = 3; low <= limit; low += 2 * kSegment) {
    const std::uint64_t high = std::min(limit, low + 2 * (kSegment - 1));
    const std::uint64_t count = (high - low) / 2 + 1;
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(count), 1);
    for (std::size_t i = 1; i < base.size(); ++i) {
      const std::uint64_t p = base[i];
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t j = (start - low) / 2; j < count; j += p) seg[j] = 0;
    }
    for (std::uint64_t j = 0; j < count; ++j) {
      if (seg[j]) emit(low + 2 * j);
    }
  }
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

inline PrimeTable sieve(std::uint64_t limit) {
  if (limit < 2) throw DomainError("sieve: limit must be at least 2");
  std::vector<std::uint64_t> primes;
  if (limit > 100) {
    const double l = static_cast<double>(limit);
    primes.reserve(static_cast<std::size_t>(1.26 * l / std::log(l)) + 16);
  }
  detail::segmented_sieve(limit, [&](std::uint64_t p) { primes.push_back(p); });
  return PrimeTable(limit, std::move(primes));
}

namespace detail {

// Process-wide table that only ever grows. Readers hold a shared_ptr to an
// immutable snapshot, so concurrent queries are safe.
inline std::shared_ptr<const PrimeTable> table_covering(std::uint64_t limit) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached || cached->limit() < limit) {
    std::uint64_t grow = std::max<std::uint64_t>(limit, std::uint64_t{1} << 16);
    if (cached) grow = std::max(grow, 2 * cached->limit());
    cached = std::make_shared<const PrimeTable>(sieve(grow));
  }
  return cached;
}

constexpr std::uint64_t kTableCountLimit = 50'000'000;

}  // namespace detail

// pi(x): number of primes <= x. Exact; streams a segmented sieve past the cached range.
inline std::uint64_t prime_count(std::uint64_t x) {
  if (x < 2) return 0;
  if (x <= detail::kTableCountLimit) return detail::table_covering(x)->count_upto(x);
  std::uint64_t count = 0;
  detail::segmented_sieve(x, [&](std::uint64_t) { ++count; });
  return count;
}

// p_n with p_1 = 2.
inline std::uint64_t nth_prime(std::uint64_t n) {
  if (n == 0) throw DomainError("nth_prime: n must be at least 1");
  std::uint64_t bound = 16;
  if (n >= 6) {
    const double dn = static_cast<double>(n);
    bound = static_cast<std::uint64_t>(dn * (std::log(dn) + std::log(std::log(dn)))) + 16;
  }
  auto table = detail::table_covering(bound);
  return table->primes()[n - 1];
}

// Smallest prime strictly greater than p.
inline std::uint64_t next_prime(std::uint64_t p) {
  std::uint64_t bound = std::max<std::uint64_t>(2 * p + 16, 64);
  auto table = detail::table_covering(bound);
  auto primes = table->primes();
  return *std::upper_bound(primes.begin(), primes.end(), p);
}

// Primes in the closed interval [lo, hi].
inline std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  if (hi < 2 || lo > hi) return {};
  auto table = detail::table_covering(hi);
  auto primes = table->primes();
  auto first = std::lower_bound(primes.begin(), primes.end(), lo);
  auto last = std::upper_bound(primes.begin(), primes.end(), hi);
  return {first, last};
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t hi) { return primes_between(2, hi); }

// p#, the product of all primes <= p. primorial(0) = primorial(1) = 1.
inline BigNat primorial(std::uint64_t p) {
  BigNat result = 1;
  for (std::uint64_t q : primes_upto(p)) result *= q;
  return result;
}

// Below 2^64 the answer is exact (Miller-Rabin with the first twelve prime bases).
// Above it a Baillie-PSW test is used: no composite is known to pass it, but no
// proof is produced, so the result is labelled probable.
enum class Certainty { deterministic, probable };

struct PrimalityResult {
  bool prime = false;
  Certainty certainty = Certainty::deterministic;

  explicit operator bool() const { return prime; }
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  for (std::uint64_t a : kBases) {
    if (!detail::strong_probable_prime(n, a)) return false;
  }
  return true;
}

namespace detail {

inline BigNat mod_positive(const BigNat& a, const BigNat& n) {
  BigNat r = a % n;
  if (r < 0) r += n;
  return r;
}

// Jacobi symbol (a/n) for odd positive n.
inline int jacobi(BigNat a, BigNat n) {
  a = mod_positive(a, n);
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const unsigned r = static_cast<unsigned>(n % 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline bool strong_probable_prime_base2(const BigNat& n) {
  BigNat d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  BigNat x = boost::multiprecision::powm(BigNat(2), d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

inline BigNat half_mod(BigNat x, const BigNat& n) {
  if ((x & 1) != 0) x += n;
  return x >> 1;
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
inline bool strong_lucas_probable_prime(const BigNat& n) {
  const BigNat root = boost::multiprecision::sqrt(n);
  if (root * root == n) return false;
  long long d_param = 5;
  while (true) {
    const int j = jacobi(BigNat(d_param), n);
    if (j == -1) break;
    if (j == 0 && BigNat(d_param < 0 ? -d_param : d_param) != n) return false;
    d_param = d_param > 0 ? -(d_param + 2) : -d_param + 2;
  }
  const BigNat D(d_param);
  const BigNat P(1);
  const BigNat Q((1 - d_param) / 4);

  BigNat d = n + 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }

  BigNat U = 1;
  BigNat V = P;
  BigNat Qk = mod_positive(Q, n);
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(d));
  for (int b = static_cast<int>(bits) - 1; b >= 0; --b) {
    U = U * V % n;
    V = mod_positive(V * V - 2 * Qk, n);
    Qk = Qk * Qk % n;
    if (boost::multiprecision::bit_test(d, static_cast<unsigned>(b))) {
      const BigNat u2 = half_mod(mod_positive(P * U + V, n), n);
      const BigNat v2 = half_mod(mod_positive(D * U + P * V, n), n);
      U = u2;
      V = v2;
      Qk = mod_positive(Qk * Q, n);
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned r = 1; r < s; ++r) {
    V = mod_positive(V * V - 2 * Qk, n);
    if (V == 0) return true;
    Qk = Qk * Qk % n;
  }
  return false;
}

inline const std::vector<std::uint64_t>& trial_primes() {
  static const std::vector<std::uint64_t> primes = small_primes_upto(1000);
  return primes;
}

}  // namespace detail

inline PrimalityResult is_prime(const BigNat& n) {
  if (n < 0) return {false, Certainty::deterministic};
  if (n <= BigNat(std::numeric_limits<std::uint64_t>::max())) {
    return {is_prime_u64(static_cast<std::uint64_t>(n)), Certainty::deterministic};
  }
  for (std::uint64_t p : detail::trial_primes()) {
    if (mod_small(n, p) == 0) return {false, Certainty::deterministic};
  }
  if (!detail::strong_probable_prime_base2(n)) return {false, Certainty::deterministic};
  if (!detail::strong_lucas_probable_prime(n)) return {false, Certainty::deterministic};
  return {true, Certainty::probable};
}

// The constellation of the first J prime gaps measured from 0: gaps 2,1,2,2,4,...
// so the offsets are 0, p_1, ..., p_J and the span is p_J.
inline Constellation prime_gap_constellation(std::size_t J) {
  if (J == 0) throw DomainError("prime_gap_constellation: J must be at least 1");
  std::vector<std::uint64_t> offsets{0};
  offsets.reserve(J + 1);
  auto table = detail::table_covering(nth_prime(J));
  for (std::size_t i = 0; i < J; ++i) offsets.push_back(table->primes()[i]);
  return Constellation::from_offsets(std::span<const std::uint64_t>(offsets));
}

}  // namespace narrow
