#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "narrow/bignum.hpp"
#include "narrow/primes.hpp"

namespace narrow {

class CoordinateBoundError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

// Primorial mixed-radix coordinates: value = sum_j m_j * p_{j-1}#, p_0# = 1,
// with 0 <= m_j < p_j. Digit j is stored at index j-1, lowest position first.
// Trailing zero digits are trimmed so equal values have equal digit vectors.
class PrimorialCoords {
public:
  PrimorialCoords() = default;

  explicit PrimorialCoords(std::vector<std::uint32_t> digits) : digits_(std::move(digits)) {
    validate();
    trim();
  }

  std::span<const std::uint32_t> digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  bool is_zero() const { return digits_.empty(); }

  // m_j, 1-based; positions past the stored digits are zero.
  std::uint32_t digit(std::size_t j) const { return j >= 1 && j <= digits_.size() ? digits_[j - 1] : 0; }

  // Values compare as digit strings read from the highest position down.
  friend std::strong_ordering operator<=>(const PrimorialCoords& a, const PrimorialCoords& b) {
    if (a.digits_.size() != b.digits_.size()) return a.digits_.size() <=> b.digits_.size();
    for (std::size_t i = a.digits_.size(); i-- > 0;) {
      if (a.digits_[i] != b.digits_[i]) return a.digits_[i] <=> b.digits_[i];
    }
    return std::strong_ordering::equal;
  }

  friend bool operator==(const PrimorialCoords&, const PrimorialCoords&) = default;

private:
  void validate() const {
    if (digits_.empty()) return;
    const auto table = detail::table_covering(nth_prime(digits_.size()));
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      const std::uint64_t bound = table->primes()[i];
      if (digits_[i] >= bound) {
        throw CoordinateBoundError("primorial digit m_" + std::to_string(i + 1) + " = " +
                                   std::to_string(digits_[i]) + " must be below " + std::to_string(bound));
      }
    }
  }

  void trim() {
    while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
  }

  std::vector<std::uint32_t> digits_;
};

// Greedy residue extraction mod 2, 3, 5, ...
inline PrimorialCoords encode(const BigNat& n) {
  if (n < 0) throw DomainError("encode: negative value");
  std::vector<std::uint32_t> digits;
  BigNat rest = n;
  std::size_t index = 1;
  while (!rest.is_zero()) {
    const std::uint64_t p = nth_prime(index++);
    digits.push_back(static_cast<std::uint32_t>(mod_small(rest, p)));
    rest /= p;
  }
  return PrimorialCoords(std::move(digits));
}

inline BigNat decode(const PrimorialCoords& c) {
  BigNat value = 0;
  auto d = c.digits();
  if (d.empty()) return value;
  const auto table = detail::table_covering(nth_prime(d.size()));
  // Horner from the top: value = m_1 + p_1 (m_2 + p_2 (m_3 + ...)).
  for (std::size_t i = d.size(); i-- > 0;) {
    if (i + 1 < d.size()) value *= table->primes()[i];
    value += d[i];
  }
  return value;
}

// Highest nonzero term m_k * p_{k-1}#. base_prime is p_{k-1}, or 1 when k = 1.
struct LeadingTerm {
  std::uint32_t multiplier = 0;
  std::uint64_t base_prime = 1;
  std::size_t position = 0;

  std::string str() const {
    if (base_prime == 1) return std::to_string(multiplier);
    return std::to_string(multiplier) + "*" + std::to_string(base_prime) + "#";
  }
};

inline LeadingTerm leading_term(const PrimorialCoords& c) {
  if (c.is_zero()) throw DomainError("leading_term: zero has no leading term");
  const std::size_t k = c.size();
  return {c.digit(k), k == 1 ? 1 : nth_prime(k - 1), k};
}

// value mod p#, from the digits below the p# position.
inline BigNat residue_mod_primorial(const PrimorialCoords& c, std::uint64_t p) {
  const std::size_t keep = std::min<std::size_t>(c.size(), prime_count(p));
  std::vector<std::uint32_t> prefix(c.digits().begin(), c.digits().begin() + static_cast<std::ptrdiff_t>(keep));
  return decode(PrimorialCoords(std::move(prefix)));
}

// p_{j-1}# mod q for positions j = 1..count.
inline std::vector<std::uint64_t> primorial_residues(std::uint64_t q, std::size_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (count == 0) return out;
  const auto table = detail::table_covering(nth_prime(count));
  std::uint64_t acc = 1 % q;
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(acc);
    acc = detail::mulmod(acc, table->primes()[j] % q, q);
  }
  return out;
}

// value mod q for a word-sized modulus, without decoding.
inline std::uint64_t residue_mod(const PrimorialCoords& c, std::uint64_t q) {
  const auto weights = primorial_residues(q, c.size());
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < c.size(); ++i) r = (r + detail::mulmod(c.digits()[i] % q, weights[i], q)) % q;
  return r;
}

// Text form "m1,m2,...,mk", lowest position first; zero is written "0".
inline std::string to_text(const PrimorialCoords& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.digits()[i]);
  }
  return out;
}

inline PrimorialCoords parse_coords(std::string_view text) {
  std::vector<std::uint32_t> digits;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string field(text.substr(pos, comma - pos));
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(field, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed primorial coordinate field '" + field + "'");
    }
    if (used != field.size() || field.empty() || field[0] == '-' || value > 0xFFFFFFFFUL) {
      throw std::invalid_argument("malformed primorial coordinate field '" + field + "'");
    }
    digits.push_back(static_cast<std::uint32_t>(value));
    pos = comma + 1;
  }
  return PrimorialCoords(std::move(digits));
}

// Anchored display "107 + 6*11# + 8*13# + ...": value mod anchor# first, then
// the nonzero terms above it.
inline std::string anchored_display(const PrimorialCoords& c, std::uint64_t anchor = 11) {
  const std::size_t base_positions = prime_count(anchor);
  std::ostringstream out;
  out << residue_mod_primorial(c, anchor);
  for (std::size_t j = base_positions + 1; j <= c.size(); ++j) {
    if (c.digit(j) == 0) continue;
    out << " + " << c.digit(j) << "*" << nth_prime(j - 1) << "#";
  }
  return out.str();
}

}  // namespace narrow
