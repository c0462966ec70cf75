#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "narrow/bignum.hpp"

namespace narrow {

// Malformed offsets or gaps: unsorted, duplicated, not starting at zero, too short.
class FormatError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A constellation of J gaps between J+1 candidate positions.
//
// Offsets h_0 = 0 < h_1 < ... < h_J are the canonical form; gaps are derived.
// Offsets are exact big integers so reference constructions with primorial-sized
// gaps are representable. When the span fits in 63 bits a machine-word copy of the
// offsets is kept for the window and residue loops.
class Constellation {
public:
  Constellation() = default;

  static Constellation from_offsets(std::vector<BigNat> offsets) {
    if (offsets.size() < 2) throw FormatError("constellation needs at least two offsets");
    if (!offsets.front().is_zero()) throw FormatError("first offset must be 0");
    for (std::size_t i = 1; i < offsets.size(); ++i) {
      if (offsets[i] <= offsets[i - 1]) {
        throw FormatError("offsets must be strictly ascending (position " + std::to_string(i) + ")");
      }
    }
    Constellation s;
    s.offsets_ = std::move(offsets);
    s.fill_small();
    return s;
  }

  static Constellation from_offsets(std::span<const std::uint64_t> offsets) {
    return from_offsets(std::vector<BigNat>(offsets.begin(), offsets.end()));
  }

  static Constellation from_offsets(std::initializer_list<std::uint64_t> offsets) {
    return from_offsets(std::vector<BigNat>(offsets.begin(), offsets.end()));
  }

  static Constellation from_gaps(std::span<const BigNat> gaps) {
    std::vector<BigNat> offsets{BigNat(0)};
    offsets.reserve(gaps.size() + 1);
    for (const auto& g : gaps) {
      if (g < 1) throw FormatError("gaps must be positive");
      offsets.push_back(offsets.back() + g);
    }
    return from_offsets(std::move(offsets));
  }

  static Constellation from_gaps(std::span<const std::uint64_t> gaps) {
    std::vector<BigNat> big(gaps.begin(), gaps.end());
    return from_gaps(std::span<const BigNat>(big));
  }

  static Constellation from_gaps(std::initializer_list<std::uint64_t> gaps) {
    std::vector<BigNat> big(gaps.begin(), gaps.end());
    return from_gaps(std::span<const BigNat>(big));
  }

  // J, the number of gaps.
  std::size_t length() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  const BigNat& span() const { return offsets_.back(); }
  const std::vector<BigNat>& offsets() const { return offsets_; }

  bool is_small() const { return !small_.empty(); }

  std::span<const std::uint64_t> small_offsets() const {
    if (small_.empty()) throw DomainError("constellation span does not fit in a machine word");
    return small_;
  }

  std::uint64_t small_span() const { return small_offsets().back(); }

  std::vector<BigNat> gaps() const {
    std::vector<BigNat> out;
    out.reserve(length());
    for (std::size_t i = 1; i < offsets_.size(); ++i) out.push_back(offsets_[i] - offsets_[i - 1]);
    return out;
  }

  std::vector<std::uint64_t> small_gaps() const {
    auto off = small_offsets();
    std::vector<std::uint64_t> out;
    out.reserve(length());
    for (std::size_t i = 1; i < off.size(); ++i) out.push_back(off[i] - off[i - 1]);
    return out;
  }

  friend bool operator==(const Constellation& a, const Constellation& b) { return a.offsets_ == b.offsets_; }

private:
  void fill_small() {
    small_.clear();
    if (offsets_.back() > BigNat(std::numeric_limits<std::int64_t>::max())) return;
    small_.reserve(offsets_.size());
    for (const auto& h : offsets_) small_.push_back(static_cast<std::uint64_t>(h));
  }

  std::vector<BigNat> offsets_;
  std::vector<std::uint64_t> small_;
};

}  // namespace narrow
