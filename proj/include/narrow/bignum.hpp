#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace narrow {

using BigNat = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Thrown when an operation is asked for something outside its domain
// (limit < 2, non-prime modulus, inadmissible input where admissible is required).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline BigNat pow10(unsigned e) {
  return boost::multiprecision::pow(BigNat(10), e);
}

inline std::uint64_t mod_small(const BigNat& n, std::uint64_t m) {
  return static_cast<std::uint64_t>(n % m);
}

namespace detail {

// Rounds a decimal digit string to `sig` significant digits (half up).
// Returns the rounded digits and the carry into a new leading digit, if any.
inline std::string round_digits(const std::string& digits, int sig, bool& carried) {
  carried = false;
  if (static_cast<int>(digits.size()) <= sig) {
    return digits + std::string(sig - digits.size(), '0');
  }
  std::string head = digits.substr(0, sig);
  if (digits[sig] >= '5') {
    int i = sig - 1;
    while (i >= 0 && head[i] == '9') {
      head[i] = '0';
      --i;
    }
    if (i < 0) {
      head.insert(head.begin(), '1');
      head.pop_back();
      carried = true;
    } else {
      ++head[i];
    }
  }
  return head;
}

inline std::string format_mantissa(const std::string& head, long exponent) {
  std::string out(1, head[0]);
  if (head.size() > 1) {
    out += '.';
    out += head.substr(1);
  }
  out += 'E';
  out += std::to_string(exponent);
  return out;
}

}  // namespace detail

// Scientific rendering "d.dddE<exp>" with `sig` significant digits, e.g. 4.074808E89.
inline std::string to_scientific(const BigNat& value, int sig = 7) {
  if (sig < 1) throw std::invalid_argument("to_scientific: sig must be positive");
  if (value.is_zero()) return detail::format_mantissa(std::string(sig, '0'), 0);
  const std::string digits = value.str();
  bool carried = false;
  const std::string head = detail::round_digits(digits, sig, carried);
  return detail::format_mantissa(head, static_cast<long>(digits.size()) - 1 + (carried ? 1 : 0));
}

inline std::string to_scientific(const BigRational& value, int sig = 7) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (value < 0) throw std::invalid_argument("to_scientific: negative rational");
  if (value == 0) return detail::format_mantissa(std::string(sig, '0'), 0);
  const BigNat num = numerator(value);
  const BigNat den = denominator(value);
  // Scale so the integer quotient carries comfortably more than `sig` digits.
  const long num_digits = static_cast<long>(num.str().size());
  const long den_digits = static_cast<long>(den.str().size());
  const long shift = std::max<long>(0, den_digits - num_digits + sig + 3);
  const BigNat scaled = num * pow10(static_cast<unsigned>(shift)) / den;
  const std::string digits = scaled.str();
  bool carried = false;
  const std::string head = detail::round_digits(digits, sig, carried);
  const long exponent = static_cast<long>(digits.size()) - 1 - shift + (carried ? 1 : 0);
  return detail::format_mantissa(head, exponent);
}

// log10 of a positive big integer, accurate to double precision at any magnitude.
inline double log10_of(const BigNat& value) {
  if (value <= 0) throw std::invalid_argument("log10_of: non-positive value");
  const std::string digits = value.str();
  const std::size_t keep = std::min<std::size_t>(digits.size(), 17);
  const double lead = std::stod(digits.substr(0, keep));
  return std::log10(lead) + static_cast<double>(digits.size() - keep);
}

inline double log10_of(const BigRational& value) {
  return log10_of(BigNat(boost::multiprecision::numerator(value))) -
         log10_of(BigNat(boost::multiprecision::denominator(value)));
}

// Relative difference |a/b - 1| computed in log space, safe beyond double range.
inline double relative_error(const BigRational& actual, double expected_mantissa, int expected_exponent) {
  const double log_actual = log10_of(actual);
  const double log_expected = std::log10(expected_mantissa) + expected_exponent;
  return std::abs(std::expm1((log_actual - log_expected) * std::log(10.0)));
}

}  // namespace narrow
