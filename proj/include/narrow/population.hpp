#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "narrow/bignum.hpp"
#include "narrow/constellation.hpp"
#include "narrow/primes.hpp"

namespace narrow {

class ComparabilityError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct InstanceCount {
  BigNat count;
  std::optional<std::uint64_t> inadmissible_at;  // first prime with nu_q = q

  std::string diagnostic() const {
    if (!inadmissible_at) return {};
    return "tuple covers every residue mod " + std::to_string(*inadmissible_at);
  }
};

// prod over primes q in [from, to] of (q - nu_q). Zero, with the offending prime, for
// an inadmissible tuple.
inline InstanceCount instance_count(const Constellation& s, std::uint64_t from, std::uint64_t to) {
  InstanceCount out{BigNat(1), std::nullopt};
  for (std::uint64_t q : primes_between(from, to)) {
    const std::uint64_t admissible = q - nu(s, q);
    if (admissible == 0 && !out.inadmissible_at) out.inadmissible_at = q;
    out.count *= admissible;
  }
  return out;
}

// Asymptotic relative population w_s(inf) = factor1 * factor2 with
//   factor1 = prod_{q <= J+1} (q - nu_q)
//   factor2 = prod_{q > J+1} (q - nu_q) / (q - J - 1).
struct PopulationReport {
  std::size_t index = 0;
  std::size_t length = 0;
  BigNat factor1;
  BigRational factor2{1};
  BigRational w_infinity;
  std::optional<std::uint64_t> inadmissible_at;
  std::uint64_t largest_factor2_prime = 0;  // last prime with a factor != 1 considered

  std::string diagnostic() const {
    if (!inadmissible_at) return {};
    return "tuple covers every residue mod " + std::to_string(*inadmissible_at);
  }
};

namespace detail {

inline BigNat offsets_gcd(const Constellation& s) {
  BigNat g = 0;
  for (const auto& h : s.offsets()) g = boost::multiprecision::gcd(g, h);
  return g;
}

// Distinct prime factors of n; trial division, then a primality test on the cofactor.
inline std::vector<std::uint64_t> prime_factors(BigNat n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_upto(1'000'000)) {
    if (BigNat(p) * p > n) break;
    if (mod_small(n, p) == 0) {
      out.push_back(p);
      while (mod_small(n, p) == 0) n /= p;
    }
  }
  if (n > 1) {
    if (!is_prime(n).prime || n > BigNat(std::numeric_limits<std::uint64_t>::max())) {
      throw DomainError("cannot factor the offsets' common divisor");
    }
    out.push_back(static_cast<std::uint64_t>(n));
  }
  return out;
}

}  // namespace detail

// The second product only involves primes dividing some difference h_j - h_i.
// With g = gcd of the offsets those are the primes <= |s|/g and the prime factors
// of g; every other factor is exactly 1.
inline PopulationReport w_infinity(const Constellation& s) {
  PopulationReport r;
  r.length = s.length();
  const std::uint64_t k = s.length() + 1;

  r.factor1 = 1;
  for (std::uint64_t q : primes_upto(k)) {
    const std::uint64_t admissible = q - nu(s, q);
    if (admissible == 0 && !r.inadmissible_at) r.inadmissible_at = q;
    r.factor1 *= admissible;
  }
  if (r.inadmissible_at) {
    r.factor2 = 0;
    r.w_infinity = 0;
    return r;
  }

  const BigNat g = detail::offsets_gcd(s);
  const BigNat reduced = s.span() / g;
  if (reduced > 1'000'000'000) throw DomainError("w_infinity: reduced span too large");
  const std::uint64_t reduced_span = static_cast<std::uint64_t>(reduced);

  std::vector<std::uint64_t> candidates = primes_between(k + 1, reduced_span);
  for (std::uint64_t p : detail::prime_factors(g)) {
    if (p > k && p > reduced_span) candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end());

  for (std::uint64_t q : candidates) {
    const std::uint64_t n = nu(s, q);
    if (n == k) continue;
    r.factor2 *= BigRational(BigNat(q - n), BigNat(q - k));
    r.largest_factor2_prime = q;
  }

  // Beyond the candidates nu_q = J+1; spot-check the first prime past them.
  std::uint64_t probe = next_prime(std::max<std::uint64_t>({k, reduced_span, candidates.empty() ? 0 : candidates.back()}));
  while (mod_small(g, probe) == 0) probe = next_prime(probe);
  if (nu(s, probe) != k) {
    throw std::logic_error("w_infinity: nu_q != J+1 past the truncation point at q = " + std::to_string(probe));
  }

  r.w_infinity = BigRational(r.factor1) * r.factor2;
  return r;
}

// One report per tuple; relative populations only compare at equal length.
inline std::vector<PopulationReport> w_infinity_table(const std::vector<Constellation>& tuples) {
  std::vector<PopulationReport> out;
  out.reserve(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (tuples[i].length() != tuples.front().length()) {
      throw ComparabilityError("w_infinity_table: tuple " + std::to_string(i) + " has length " +
                               std::to_string(tuples[i].length()) + ", expected " +
                               std::to_string(tuples.front().length()));
    }
  }
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    out.push_back(w_infinity(tuples[i]));
    out.back().index = i;
  }
  return out;
}

struct MertensEstimate {
  double log10_p = 0;
  double mantissa = 0;
  long exponent = 0;

  std::string str(int digits = 4) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*fE%ld", digits - 1, mantissa, exponent);
    return buf;
  }
};

// Solves e^gamma * ln p = mu (Mertens' third theorem for the mean gap) for p.
inline MertensEstimate mertens_mu_threshold(double mu) {
  if (!(mu > 1)) throw DomainError("mertens_mu_threshold: target mean gap must exceed 1");
  constexpr double kEulerGamma = 0.57721566490153286061;
  MertensEstimate est;
  est.log10_p = mu * std::exp(-kEulerGamma) / std::log(10.0);
  est.exponent = static_cast<long>(std::floor(est.log10_p));
  est.mantissa = std::pow(10.0, est.log10_p - static_cast<double>(est.exponent));
  return est;
}

}  // namespace narrow
