#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "narrow/constellation.hpp"
#include "narrow/pcoords.hpp"
#include "narrow/primes.hpp"
#include "narrow/search.hpp"

namespace narrow {

class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& what, std::uint64_t last_completed_stage)
      : std::runtime_error(what), last_completed_stage_(last_completed_stage) {}

  std::uint64_t last_completed_stage() const { return last_completed_stage_; }

private:
  std::uint64_t last_completed_stage_;
};

// Offsets t in [0, span] with gamma0 + t coprime to stage#. Each prime q <= stage
// strikes the residue class t = -gamma0 (mod q) across the window.
inline std::vector<std::uint64_t> survivors_in_window(const PrimorialCoords& gamma0, std::uint64_t span,
                                                      std::uint64_t stage) {
  if (stage < 2) throw DomainError("survivors_in_window: stage must be at least 2");
  if (decode(gamma0) < 2) throw DomainError("survivors_in_window: gamma0 must be at least 2");
  if (span > 1'000'000'000ULL) throw DomainError("survivors_in_window: window too wide");
  std::vector<char> alive(span + 1, 1);
  for (std::uint64_t q : primes_upto(stage)) {
    const std::uint64_t r = residue_mod(gamma0, q);
    for (std::uint64_t t = (q - r) % q; t <= span; t += q) alive[t] = 0;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = 0; t <= span; ++t) {
    if (alive[t]) out.push_back(t);
  }
  return out;
}

// The sieve survivors over a target's window at one stage.
struct DrivingTerm {
  std::uint64_t stage = 0;
  PrimorialCoords gamma0;
  std::vector<std::uint64_t> survivors;
  std::optional<Constellation> term;  // gaps of the survivors, when they start at 0
  bool contains_target = false;
  std::size_t length = 0;  // survivors - 1

  bool equals(const Constellation& target) const { return term && *term == target; }
};

inline DrivingTerm driving_term(const PrimorialCoords& gamma0, const Constellation& target, std::uint64_t stage) {
  DrivingTerm d;
  d.stage = stage;
  d.gamma0 = gamma0;
  d.survivors = survivors_in_window(gamma0, target.small_span(), stage);
  d.length = d.survivors.empty() ? 0 : d.survivors.size() - 1;
  if (d.survivors.size() >= 2 && d.survivors.front() == 0) {
    d.term = Constellation::from_offsets(std::span<const std::uint64_t>(d.survivors));
  }
  const auto offsets = target.small_offsets();
  d.contains_target = std::includes(d.survivors.begin(), d.survivors.end(), offsets.begin(), offsets.end());
  return d;
}

// One stage of a prefix table.
struct PrefixRow {
  std::uint64_t stage = 0;
  BigNat count;                                  // admissible instances mod stage#
  std::optional<PrimorialCoords> unique;         // set when count == 1
  std::optional<std::size_t> driving_length;     // of the unique instance
  bool exact = false;                            // some instance's driving term is the target
};

struct TrackOptions {
  std::uint64_t start_stage = 11;
  std::uint64_t budget = 1'000'000;
  unsigned threads = 1;
};

namespace detail {

// Instances whose window starts below 2 are not candidates (1 is a unit).
inline bool any_exact(const SearchFrontier& f, const Constellation& target) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const PrimorialCoords c = f.instance(i);
    if (decode(c) < 2) continue;
    if (driving_term(c, target, f.stage()).equals(target)) return true;
  }
  return false;
}

}  // namespace detail

// Stage-by-stage instances of `target` from start_stage to max_stage. When an
// instance is unique its coordinates and driving-term length are reported.
inline std::vector<PrefixRow> track_prefix(const Constellation& target, std::uint64_t max_stage,
                                           const TrackOptions& opt = {}) {
  detail::require_admissible(target, "track_prefix");
  const NuProfile profile(target);
  SearchFrontier f = SearchFrontier::root(target);
  std::uint64_t last_completed = 1;
  std::vector<PrefixRow> rows;
  for (std::uint64_t q : primes_upto(max_stage)) {
    f = lift(f, profile, q, opt.budget, opt.threads);
    if (f.truncated()) {
      throw BudgetExceeded("track_prefix: " + to_scientific(f.count(), 4) + " instances at stage " +
                               std::to_string(q) + " exceed the budget",
                           last_completed);
    }
    if (q >= opt.start_stage) {
      PrefixRow row;
      row.stage = q;
      row.count = f.count();
      if (f.size() == 1) {
        row.unique = f.instance(0);
        if (decode(*row.unique) >= 2) row.driving_length = driving_term(*row.unique, target, q).length;
      }
      row.exact = detail::any_exact(f, target);
      rows.push_back(std::move(row));
    }
    last_completed = q;
  }
  return rows;
}

// Smallest stage at which some instance's driving term is exactly the target.
// Inadmissible targets never appear.
inline std::optional<std::uint64_t> first_appearance(const Constellation& target, std::uint64_t max_stage,
                                                     std::uint64_t budget = 1'000'000, unsigned threads = 1) {
  if (!is_admissible(target)) return std::nullopt;
  const NuProfile profile(target);
  SearchFrontier f = SearchFrontier::root(target);
  std::uint64_t last_completed = 1;
  for (std::uint64_t q : primes_upto(max_stage)) {
    f = lift(f, profile, q, budget, threads);
    if (f.truncated()) {
      throw BudgetExceeded("first_appearance: instances at stage " + std::to_string(q) + " exceed the budget",
                           last_completed);
    }
    if (detail::any_exact(f, target)) return q;
    last_completed = q;
  }
  return std::nullopt;
}

}  // namespace narrow
