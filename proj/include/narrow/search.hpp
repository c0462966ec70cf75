#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "narrow/bignum.hpp"
#include "narrow/constellation.hpp"
#include "narrow/pcoords.hpp"
#include "narrow/primes.hpp"

namespace narrow {

namespace detail {

// Runs body(begin, end) over [0, n) split into at most `threads` contiguous chunks.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 4096) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::jthread> workers;
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    workers.emplace_back([&body, begin, end = std::min(n, begin + chunk)] { body(begin, end); });
  }
}

inline std::uint64_t modinv(std::uint64_t a, std::uint64_t q) {
  // q prime, a != 0 mod q
  return powmod(a % q, q - 2, q);
}

}  // namespace detail

// FNV-1a over the decimal offsets; identifies the tuple a checkpoint belongs to.
inline std::string tuple_digest(const Constellation& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  };
  for (const auto& off : s.offsets()) {
    for (char c : off.str()) mix(c);
    mix(',');
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

// All admissible instances of a tuple mod stage#, as primorial coordinates in
// ascending value order.
//
// Every row has digits for positions 1..width where width = pi(stage). Digits
// shared by all rows are held once in `prefix`; rows store the rest.
class SearchFrontier {
public:
  static SearchFrontier root(const Constellation& s) {
    SearchFrontier f;
    f.digest_ = tuple_digest(s);
    f.stage_ = 1;
    f.count_ = 1;
    f.size_ = 1;
    return f;
  }

  std::uint64_t stage() const { return stage_; }
  std::size_t width() const { return prefix_.size() + suffix_width_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool truncated() const { return truncated_; }
  // Exact number of admissible instances mod stage#, whether or not all are held.
  const BigNat& count() const { return count_; }
  const std::string& digest() const { return digest_; }
  std::uint64_t generated() const { return generated_; }

  std::uint32_t digit(std::size_t row, std::size_t j) const {
    if (j <= prefix_.size()) return prefix_[j - 1];
    return rows_[row * suffix_width_ + (j - prefix_.size() - 1)];
  }

  PrimorialCoords instance(std::size_t row) const {
    std::vector<std::uint32_t> d(width());
    for (std::size_t j = 1; j <= d.size(); ++j) d[j - 1] = digit(row, j);
    return PrimorialCoords(std::move(d));
  }

  BigNat value(std::size_t row) const { return decode(instance(row)); }

  std::vector<PrimorialCoords> instances() const {
    std::vector<PrimorialCoords> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) out.push_back(instance(i));
    return out;
  }

  // value mod q for every row.
  std::vector<std::uint64_t> residues(std::uint64_t q, unsigned threads = 1) const {
    const auto weights = primorial_residues(q, width() + 1);
    std::uint64_t base = 0;
    for (std::size_t j = 1; j <= prefix_.size(); ++j) {
      base = (base + detail::mulmod(prefix_[j - 1] % q, weights[j - 1], q)) % q;
    }
    std::vector<std::uint64_t> out(size_, base);
    detail::parallel_for(size_, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        std::uint64_t r = base;
        const std::uint16_t* row = rows_.data() + i * suffix_width_;
        for (std::size_t k = 0; k < suffix_width_; ++k) {
          r = (r + detail::mulmod(row[k] % q, weights[prefix_.size() + k], q)) % q;
        }
        out[i] = r;
      }
    });
    return out;
  }

  // Builds a frontier from explicit instances (checkpoint reload, tests).
  static SearchFrontier from_instances(std::string digest, std::uint64_t stage, BigNat count, bool truncated,
                                       std::uint64_t generated, const std::vector<PrimorialCoords>& instances) {
    SearchFrontier f;
    f.digest_ = std::move(digest);
    f.stage_ = stage;
    f.count_ = std::move(count);
    f.truncated_ = truncated;
    f.generated_ = generated;
    f.size_ = instances.size();
    const std::size_t width = stage < 2 ? 0 : prime_count(stage);
    f.suffix_width_ = width;
    f.rows_.resize(f.size_ * width, 0);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (instances[i].size() > width) throw std::invalid_argument("instance exceeds the frontier stage");
      if (i > 0 && !(instances[i - 1] < instances[i])) throw std::invalid_argument("instances must be strictly ascending");
      for (std::size_t j = 1; j <= instances[i].size(); ++j) {
        f.rows_[i * width + j - 1] = static_cast<std::uint16_t>(instances[i].digit(j));
      }
    }
    f.compact();
    return f;
  }

private:
  friend SearchFrontier lift(const SearchFrontier&, const NuProfile&, std::uint64_t, std::uint64_t, unsigned);

  // Moves leading row digits shared by every row into the prefix.
  void compact() {
    if (size_ == 0) return;
    std::size_t shared = 0;
    while (shared < suffix_width_) {
      const std::uint16_t d = rows_[shared];
      bool same = true;
      for (std::size_t i = 1; i < size_ && same; ++i) same = rows_[i * suffix_width_ + shared] == d;
      if (!same) break;
      ++shared;
    }
    if (shared == 0) return;
    for (std::size_t k = 0; k < shared; ++k) prefix_.push_back(rows_[k]);
    const std::size_t new_width = suffix_width_ - shared;
    std::vector<std::uint16_t> packed(size_ * new_width);
    for (std::size_t i = 0; i < size_; ++i) {
      std::copy_n(rows_.begin() + static_cast<std::ptrdiff_t>(i * suffix_width_ + shared), new_width,
                  packed.begin() + static_cast<std::ptrdiff_t>(i * new_width));
    }
    rows_ = std::move(packed);
    suffix_width_ = new_width;
  }

  std::string digest_;
  std::uint64_t stage_ = 1;
  BigNat count_ = 0;
  bool truncated_ = false;
  std::uint64_t generated_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint32_t> prefix_;
  std::size_t suffix_width_ = 0;
  std::vector<std::uint16_t> rows_;
};

// Extends every instance g mod stage# to the candidates g + m * stage#, 0 <= m < next,
// keeping those with no translate g + h divisible by `next`. Output is ascending:
// ordered by m, then by parent. At most `budget` instances are kept (the smallest).
inline SearchFrontier lift(const SearchFrontier& frontier, const NuProfile& profile, std::uint64_t next,
                           std::uint64_t budget, unsigned threads = 1) {
  if (next != next_prime(frontier.stage())) {
    throw DomainError("lift: " + std::to_string(next) + " is not the prime after stage " +
                      std::to_string(frontier.stage()));
  }
  if (next > std::numeric_limits<std::uint16_t>::max()) throw DomainError("lift: stage prime too large");

  const std::uint64_t q = next;
  const auto allowed = admissible_residues(profile.tuple(), q);
  const std::uint64_t per_parent = allowed.size();

  SearchFrontier out;
  out.digest_ = frontier.digest_;
  out.stage_ = q;
  out.count_ = frontier.count_ * per_parent;
  out.truncated_ = frontier.truncated_;
  out.prefix_ = frontier.prefix_;
  out.suffix_width_ = frontier.suffix_width_ + 1;

  const std::size_t parents = frontier.size_;
  const unsigned __int128 total = static_cast<unsigned __int128>(parents) * per_parent;
  const std::size_t keep = static_cast<std::size_t>(std::min<unsigned __int128>(total, budget));
  if (keep < total) out.truncated_ = true;
  out.generated_ = frontier.generated_ + keep;
  if (keep == 0) return out;

  // Child digit m satisfies g + m*P = a (mod q) for an allowed residue a, P = stage# mod q.
  const std::uint64_t P = primorial_residues(q, frontier.width() + 1).back();
  const std::uint64_t P_inv = detail::modinv(P, q);
  const auto res = frontier.residues(q, threads);

  // Bucket children by digit m; within a bucket parents stay in ascending order.
  std::vector<std::uint64_t> bucket_size(q, 0);
  for (std::size_t i = 0; i < parents; ++i) {
    for (std::uint64_t a : allowed) ++bucket_size[detail::mulmod((a + q - res[i]) % q, P_inv, q)];
  }
  std::vector<std::uint64_t> bucket_start(q + 1, 0);
  for (std::uint64_t m = 0; m < q; ++m) bucket_start[m + 1] = bucket_start[m] + bucket_size[m];

  const std::size_t old_width = frontier.suffix_width_;
  const std::size_t new_width = out.suffix_width_;
  out.size_ = keep;
  out.rows_.assign(keep * new_width, 0);
  std::vector<std::uint64_t> cursor(bucket_start.begin(), bucket_start.end() - 1);
  for (std::size_t i = 0; i < parents; ++i) {
    for (std::uint64_t a : allowed) {
      const std::uint64_t m = detail::mulmod((a + q - res[i]) % q, P_inv, q);
      const std::uint64_t slot = cursor[m]++;
      if (slot >= keep) continue;
      auto dst = out.rows_.begin() + static_cast<std::ptrdiff_t>(slot * new_width);
      std::copy_n(frontier.rows_.begin() + static_cast<std::ptrdiff_t>(i * old_width), old_width, dst);
      dst[static_cast<std::ptrdiff_t>(old_width)] = static_cast<std::uint16_t>(m);
    }
  }
  out.compact();
  return out;
}

inline SearchFrontier lift(const SearchFrontier& frontier, const Constellation& s, std::uint64_t next,
                           std::uint64_t budget, unsigned threads = 1) {
  return lift(frontier, NuProfile(s), next, budget, threads);
}

// ---------------------------------------------------------------------------
// Checkpoints

inline constexpr int kCheckpointVersion = 1;

inline void write_checkpoint(const SearchFrontier& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  out << "version " << kCheckpointVersion << '\n'
      << "tuple-digest " << f.digest() << '\n'
      << "stage " << f.stage() << '\n'
      << "count " << f.count() << '\n'
      << "truncated " << (f.truncated() ? 1 : 0) << '\n'
      << "generated " << f.generated() << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) out << to_text(f.instance(i)) << '\n';
  if (!out) throw std::runtime_error("failed writing checkpoint: " + path);
}

inline SearchFrontier read_checkpoint(const std::string& path, const Constellation& s) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  auto header = [&](const std::string& key) {
    std::string line;
    if (!std::getline(in, line) || line.rfind(key + ' ', 0) != 0) {
      throw std::runtime_error("checkpoint " + path + ": expected '" + key + "' header");
    }
    return line.substr(key.size() + 1);
  };
  if (std::stoi(header("version")) != kCheckpointVersion) {
    throw std::runtime_error("checkpoint " + path + ": unsupported version");
  }
  const std::string digest = header("tuple-digest");
  if (digest != tuple_digest(s)) throw std::runtime_error("checkpoint " + path + ": tuple digest mismatch");
  const std::uint64_t stage = std::stoull(header("stage"));
  const BigNat count(header("count"));
  const bool truncated = header("truncated") == "1";
  const std::uint64_t generated = std::stoull(header("generated"));
  std::vector<PrimorialCoords> instances;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    instances.push_back(parse_coords(line));
  }
  return SearchFrontier::from_instances(digest, stage, count, truncated, generated, instances);
}

// ---------------------------------------------------------------------------
// Breadth-first search

struct StageCount {
  std::uint64_t stage = 0;
  std::uint64_t nu = 0;
  std::uint64_t admissible = 0;  // stage - nu
  BigNat count;                  // exact, by the product formula
  std::size_t materialized = 0;  // instances actually held
  bool truncated = false;
};

struct BfsOptions {
  std::uint64_t budget = 10'000'000;
  unsigned threads = 1;
  std::string checkpoint_path;  // written after every stage when set
};

struct BfsResult {
  SearchFrontier frontier;
  std::vector<StageCount> stages;
};

namespace detail {

inline void require_admissible(const Constellation& s, const char* op) {
  if (auto q = first_covering_prime(s)) {
    throw DomainError(std::string(op) + ": tuple is inadmissible (covers every residue mod " + std::to_string(*q) + ")");
  }
}

inline StageCount stage_row(const SearchFrontier& f, const NuProfile& profile) {
  StageCount row;
  row.stage = f.stage();
  row.nu = profile.nu(f.stage());
  row.admissible = f.stage() - row.nu;
  row.count = f.count();
  row.materialized = f.size();
  row.truncated = f.truncated();
  if (!f.truncated() && BigNat(f.size()) != f.count()) {
    throw std::logic_error("frontier size disagrees with the product formula at stage " + std::to_string(f.stage()));
  }
  return row;
}

}  // namespace detail

// Continues `start` (any stage) through end_stage, reporting every stage passed.
inline BfsResult bfs_continue(const Constellation& s, SearchFrontier start, std::uint64_t end_stage,
                              const BfsOptions& opt = {}) {
  detail::require_admissible(s, "bfs");
  const NuProfile profile(s);
  BfsResult result{std::move(start), {}};
  while (result.frontier.stage() < end_stage) {
    const std::uint64_t q = next_prime(result.frontier.stage());
    if (q > end_stage) break;
    result.frontier = lift(result.frontier, profile, q, opt.budget, opt.threads);
    result.stages.push_back(detail::stage_row(result.frontier, profile));
    if (!opt.checkpoint_path.empty()) write_checkpoint(result.frontier, opt.checkpoint_path);
  }
  return result;
}

// Exhaustive instances mod start_stage#, then lifted stage by stage to end_stage.
// Rows are reported for start_stage and every later stage.
inline BfsResult bfs(const Constellation& s, std::uint64_t start_stage, std::uint64_t end_stage,
                     const BfsOptions& opt = {}) {
  detail::require_admissible(s, "bfs");
  if (!is_prime_u64(start_stage) || !is_prime_u64(end_stage) || start_stage > end_stage) {
    throw DomainError("bfs: stages must be primes with start <= end");
  }
  const NuProfile profile(s);
  SearchFrontier f = SearchFrontier::root(s);
  for (std::uint64_t q : primes_upto(start_stage)) f = lift(f, profile, q, opt.budget, opt.threads);
  BfsResult result{std::move(f), {}};
  result.stages.push_back(detail::stage_row(result.frontier, profile));
  if (!opt.checkpoint_path.empty()) write_checkpoint(result.frontier, opt.checkpoint_path);
  auto rest = bfs_continue(s, std::move(result.frontier), end_stage, opt);
  result.frontier = std::move(rest.frontier);
  result.stages.insert(result.stages.end(), rest.stages.begin(), rest.stages.end());
  return result;
}

// ---------------------------------------------------------------------------
// Best-first search for the smallest instance

struct MinGammaResult {
  PrimorialCoords gamma0;
  bool optimal = true;
  std::uint64_t nodes = 0;  // nodes pushed
};

namespace detail {

// Search nodes live in an arena as (parent, digit) records, so a node costs a
// fixed 12 bytes however deep it is. Walking up from a node visits its digits
// from the most significant down, which is the order values compare in.
struct NodeRec {
  std::uint32_t parent;
  std::uint16_t digit;
  std::uint16_t depth;
  std::uint16_t significant;  // depth of the highest nonzero digit, 0 for value 0
};

class NodeArena {
public:
  NodeArena() { recs_.push_back({0, 0, 0, 0}); }

  std::uint32_t add(std::uint32_t parent, std::uint16_t digit) {
    const NodeRec& p = recs_[parent];
    const auto depth = static_cast<std::uint16_t>(p.depth + 1);
    recs_.push_back({parent, digit, depth, digit != 0 ? depth : p.significant});
    return static_cast<std::uint32_t>(recs_.size() - 1);
  }

  const NodeRec& operator[](std::uint32_t i) const { return recs_[i]; }

  // Digits at positions 1..depth, least significant first.
  std::vector<std::uint16_t> digits(std::uint32_t i) const {
    std::vector<std::uint16_t> out(recs_[i].depth);
    for (; recs_[i].depth > 0; i = recs_[i].parent) out[recs_[i].depth - 1] = recs_[i].digit;
    return out;
  }

  // Pops the smallest value first; deeper nodes first among equal values.
  bool after(std::uint32_t a, std::uint32_t b) const {
    const NodeRec& ra = recs_[a];
    const NodeRec& rb = recs_[b];
    if (ra.significant != rb.significant) return ra.significant > rb.significant;
    std::uint32_t x = a, y = b;
    while (recs_[x].depth > ra.significant) x = recs_[x].parent;
    while (recs_[y].depth > rb.significant) y = recs_[y].parent;
    while (x != y) {
      if (recs_[x].digit != recs_[y].digit) return recs_[x].digit > recs_[y].digit;
      x = recs_[x].parent;
      y = recs_[y].parent;
    }
    return ra.depth < rb.depth;
  }

private:
  std::vector<NodeRec> recs_;
};

struct StageTables {
  std::uint64_t q;
  std::vector<char> allowed;           // residue r mod q admissible for g
  std::vector<std::uint64_t> weights;  // p_{j-1}# mod q
};

inline std::vector<StageTables> stage_tables(const Constellation& s, std::size_t depth) {
  std::vector<StageTables> out;
  const auto primes = primes_upto(nth_prime(depth));
  for (std::size_t k = 0; k < depth; ++k) {
    StageTables t;
    t.q = primes[k];
    t.allowed.assign(t.q, 0);
    for (std::uint64_t r : admissible_residues(s, t.q)) t.allowed[r] = 1;
    t.weights = primorial_residues(t.q, k + 1);
    out.push_back(std::move(t));
  }
  return out;
}

// Calls emit(m) for every admissible next digit of the node with these digits.
template <typename Emit>
void expand(const std::vector<std::uint16_t>& digits, const StageTables& t, Emit&& emit) {
  const std::uint64_t q = t.q;
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) r = (r + digits[i] % q * t.weights[i]) % q;
  const std::uint64_t P = t.weights[digits.size()];
  for (std::uint64_t m = 0; m < q; ++m) {
    if (t.allowed[(r + m * P) % q]) emit(static_cast<std::uint16_t>(m));
  }
}

inline PrimorialCoords to_coords(const std::vector<std::uint16_t>& digits) {
  return PrimorialCoords(std::vector<std::uint32_t>(digits.begin(), digits.end()));
}

}  // namespace detail

// Smallest admissible instance mod end_stage#, by uniform-cost expansion in value
// order. A child's value is never below its parent's, so the first complete node
// popped is the minimum. Past `budget` pushed nodes the cheapest open node is
// completed greedily and the result is flagged non-optimal. Memory is about
// 16 bytes per pushed node.
inline MinGammaResult min_gamma(const Constellation& s, std::uint64_t end_stage, std::uint64_t budget = 10'000'000) {
  detail::require_admissible(s, "min_gamma");
  if (!is_prime_u64(end_stage)) throw DomainError("min_gamma: end stage must be prime");
  if (end_stage > std::numeric_limits<std::uint16_t>::max()) throw DomainError("min_gamma: end stage too large");
  budget = std::min<std::uint64_t>(budget, std::numeric_limits<std::uint32_t>::max() - 1);
  const std::size_t depth = prime_count(end_stage);
  const auto tables = detail::stage_tables(s, depth);

  detail::NodeArena arena;
  auto after = [&arena](std::uint32_t a, std::uint32_t b) { return arena.after(a, b); };
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(after)> open(after);
  open.push(0);
  MinGammaResult result;
  result.nodes = 1;
  while (!open.empty()) {
    const std::uint32_t n = open.top();
    open.pop();
    auto digits = arena.digits(n);
    if (digits.size() == depth) {
      result.gamma0 = detail::to_coords(digits);
      return result;
    }
    if (result.nodes >= budget) {
      // Greedy completion along the smallest admissible digit.
      result.optimal = false;
      while (digits.size() < depth) {
        std::optional<std::uint16_t> first;
        detail::expand(digits, tables[digits.size()], [&](std::uint16_t m) {
          if (!first) first = m;
        });
        digits.push_back(*first);
      }
      result.gamma0 = detail::to_coords(digits);
      return result;
    }
    detail::expand(digits, tables[digits.size()], [&](std::uint16_t m) {
      open.push(arena.add(n, m));
      ++result.nodes;
    });
  }
  throw std::logic_error("min_gamma: search space exhausted for an admissible tuple");
}

struct MinGammaRow {
  std::size_t index = 0;
  MinGammaResult result;
};

struct MinGammaTable {
  std::vector<MinGammaRow> rows;
  std::size_t argmin = 0;  // index into rows of the global minimum
};

inline MinGammaTable min_gamma_all(const std::vector<Constellation>& tuples, std::uint64_t end_stage,
                                   std::uint64_t budget = 10'000'000, unsigned threads = 1) {
  MinGammaTable table;
  table.rows.resize(tuples.size());
  std::vector<std::exception_ptr> errors(tuples.size());
  detail::parallel_for(tuples.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        table.rows[i] = {i, min_gamma(tuples[i], end_stage, budget)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  });
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i].result.gamma0 < table.rows[table.argmin].result.gamma0) table.argmin = i;
  }
  return table;
}

// ---------------------------------------------------------------------------
// Survival

// H(q) = (q^2, q1^2), q1 the prime after q: an integer there coprime to q# is prime.
struct HorizonOfSurvival {
  std::uint64_t q = 2;
  std::uint64_t q1 = 3;

  BigNat lower() const { return BigNat(q) * q; }
  BigNat upper() const { return BigNat(q1) * q1; }
  bool contains(const BigNat& n) const { return n > lower() && n < upper(); }
};

inline HorizonOfSurvival horizon(std::uint64_t q) {
  if (!is_prime_u64(q)) throw DomainError("horizon: q must be prime");
  return {q, next_prime(q)};
}

enum class Survival { dead, probable, certified };

inline const char* to_string(Survival s) {
  switch (s) {
    case Survival::dead: return "dead";
    case Survival::probable: return "probable";
    case Survival::certified: return "certified";
  }
  return "?";
}

struct SurvivalReport {
  Survival status = Survival::dead;
  std::optional<std::size_t> first_composite;  // offset index
  bool by_horizon = false;
};

// `sieved_through`, when given, is a prime q such that every element is known to
// be coprime to q#; elements below the next prime squared are then prime outright.
inline SurvivalReport survival_check(const PrimorialCoords& gamma0, const Constellation& s,
                                     std::optional<std::uint64_t> sieved_through = std::nullopt) {
  const BigNat g = decode(gamma0);
  SurvivalReport report;
  if (sieved_through) {
    const auto h = horizon(*sieved_through);
    if (g > 1 && g + s.span() < h.upper()) {
      bool coprime = true;
      for (std::uint64_t p : primes_upto(*sieved_through)) {
        for (const auto& off : s.offsets()) {
          if (mod_small(g + off, p) == 0) coprime = false;
        }
      }
      if (coprime) {
        report.status = Survival::certified;
        report.by_horizon = true;
        return report;
      }
    }
  }
  bool all_deterministic = true;
  for (std::size_t i = 0; i < s.offsets().size(); ++i) {
    const auto r = is_prime(g + s.offsets()[i]);
    if (!r.prime) {
      report.status = Survival::dead;
      report.first_composite = i;
      return report;
    }
    if (r.certainty != Certainty::deterministic) all_deterministic = false;
  }
  report.status = all_deterministic ? Survival::certified : Survival::probable;
  return report;
}

struct ZeroRunCandidate {
  PrimorialCoords gamma0;
  std::size_t zero_stages = 0;  // stages passed with m = 0
  std::uint64_t last_stage = 0;
  SurvivalReport survival;
};

// Depth-first extension of every frontier instance along m = 0 digits. An instance
// is dropped as soon as the next prime strikes one of its elements (a multiple of
// q other than q itself). It is emitted once `depth` zero stages pass, or earlier
// when it falls inside a horizon of survival; each emitted candidate is checked.
inline std::vector<ZeroRunCandidate> dfs_zero_run(const Constellation& s, const SearchFrontier& frontier,
                                                  std::size_t depth) {
  std::vector<ZeroRunCandidate> out;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const PrimorialCoords c = frontier.instance(i);
    const BigNat g = decode(c);
    const BigNat top = g + s.span();
    std::uint64_t q = frontier.stage();
    std::size_t zeros = 0;
    bool alive = true;
    bool in_horizon = false;
    while (zeros < depth) {
      const std::uint64_t next = next_prime(q);
      if (g > 1 && top < BigNat(next) * next) {
        in_horizon = true;
        break;
      }
      for (const auto& off : s.offsets()) {
        const BigNat n = g + off;
        if (mod_small(n, next) == 0 && n != next) {
          alive = false;
          break;
        }
      }
      if (!alive) break;
      q = next;
      ++zeros;
    }
    if (!alive) continue;
    ZeroRunCandidate cand{c, zeros, q, {}};
    cand.survival = survival_check(c, s, in_horizon ? std::optional<std::uint64_t>(q) : std::nullopt);
    out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace narrow
