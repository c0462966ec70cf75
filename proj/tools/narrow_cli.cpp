// narrow: command-line front end for the narrow-constellation library.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "narrow/narrow.hpp"

namespace fs = std::filesystem;
using namespace narrow;

namespace {

struct Globals {
  std::string data_dir;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "text";
};

// One output table, rendered either as aligned text or as CSV.
void emit(const Globals& g, const CsvTable& t) {
  if (g.format == "csv") {
    std::cout << t.str();
    return;
  }
  std::vector<std::size_t> width(t.header.size(), 0);
  auto measure = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  };
  measure(t.header);
  for (const auto& r : t.rows) measure(r);
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) std::cout << "  ";
      std::cout << std::string(width[i] - row[i].size(), ' ') << row[i];
    }
    std::cout << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

std::string resolve(const Globals& g, const std::string& file) {
  if (fs::exists(file) || g.data_dir.empty()) return file;
  const fs::path alt = fs::path(g.data_dir) / file;
  return fs::exists(alt) ? alt.string() : file;
}

TupleFile load(const Globals& g, const std::string& file) {
  auto f = parse_tuple_file(resolve(g, file));
  for (const auto& w : f.warnings) std::cerr << "warning: " << w << '\n';
  return f;
}

const Constellation& pick(const TupleFile& f, std::size_t index) {
  if (index >= f.tuples.size()) {
    throw std::out_of_range("index " + std::to_string(index) + " out of range (" + std::to_string(f.tuples.size()) +
                            " tuples in " + f.path + ")");
  }
  return f.tuples[index];
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Narrow prime constellations: scores, residues, sieve evolution, searches, populations"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (const char* env = std::getenv("CONSTELLATION_DATA_DIR")) g.data_dir = env;
  app.add_option("--data-dir", g.data_dir, "Directory searched for tuple files (env CONSTELLATION_DATA_DIR)");
  app.add_option("--threads", g.threads, "Worker threads for the search commands")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "csv"}));

  std::string file;
  std::size_t index = 0;
  bool legacy = false;
  std::uint64_t max_prime = 499, min_prime = 2;
  std::uint64_t from = 0, to = 0, budget = 10'000'000, depth = 8;
  std::uint64_t start_stage = 11;
  std::string checkpoint, out_path;
  bool resume = false, all = false;
  std::optional<double> mu;
  double mertens_mu = 460;

  auto* score = app.add_subcommand("score", "Length, span, nonconvexity score and counterexample flag per tuple");
  score->add_option("file", file, "Tuple file")->required();
  score->add_flag("--legacy-score", legacy, "Also print the k - pi(w) score");

  auto* nu_cmd = app.add_subcommand("nu", "Distinct residues nu_q and admissible counts q - nu_q");
  nu_cmd->add_option("file", file, "Tuple file")->required();
  nu_cmd->add_option("--index", index, "Tuple index (0-based)");
  nu_cmd->add_option("--min-prime", min_prime, "Smallest prime listed");
  nu_cmd->add_option("--max-prime", max_prime, "Largest prime listed");

  auto* evolve = app.add_subcommand("evolve", "Stage-by-stage instance counts and first exact appearance");
  evolve->add_option("file", file, "Tuple file")->required();
  evolve->add_option("--index", index, "Tuple index (0-based)");
  evolve->add_option("--max-stage", to, "Last sieve stage")->required();
  evolve->add_option("--start-stage", start_stage, "First stage reported");
  evolve->add_option("--budget", budget, "Maximum instances held per stage");

  auto* bfs_cmd = app.add_subcommand("bfs", "Breadth-first enumeration of admissible instances");
  bfs_cmd->add_option("file", file, "Tuple file")->required();
  bfs_cmd->add_option("--index", index, "Tuple index (0-based)");
  bfs_cmd->add_option("--from", from, "First stage reported (prime)")->required();
  bfs_cmd->add_option("--to", to, "Last stage (prime)")->required();
  bfs_cmd->add_option("--budget", budget, "Maximum instances held per stage");
  bfs_cmd->add_option("--checkpoint", checkpoint, "Frontier written here after every stage");
  bfs_cmd->add_flag("--resume", resume, "Continue from the checkpoint file");

  auto* mg = app.add_subcommand("min-gamma", "Smallest admissible instance mod stage#");
  mg->add_option("file", file, "Tuple file")->required();
  mg->add_option("--to", to, "Stage (prime)")->required();
  mg->add_option("--index", index, "Tuple index (0-based), ignored with --all");
  mg->add_flag("--all", all, "Every tuple in the file, with the global minimum");
  mg->add_option("--budget", budget, "Node budget before greedy completion");

  auto* winf = app.add_subcommand("winf", "Asymptotic relative population w(inf) per tuple");
  winf->add_option("file", file, "Tuple file")->required();

  auto* hist = app.add_subcommand("histogram", "Gap histogram of one tuple");
  hist->add_option("file", file, "Tuple file")->required();
  hist->add_option("--index", index, "Tuple index (0-based)");

  auto* dphi = app.add_subcommand("deltaphi", "Delta Phi(x) breakpoints as CSV");
  dphi->add_option("file", file, "Tuple file")->required();
  dphi->add_option("--index", index, "Tuple index (0-based)");
  dphi->add_option("--mu", mu, "Mean gap (default p_J / J)");
  dphi->add_option("--out", out_path, "CSV path (default stdout)");

  auto* mertens = app.add_subcommand("mertens", "Prime p at which the mean gap reaches mu (Mertens)");
  mertens->add_option("--mu", mertens_mu, "Target mean gap");

  auto* dfs = app.add_subcommand("dfs", "Follow zero digits from a stage and check survival");
  dfs->add_option("file", file, "Tuple file")->required();
  dfs->add_option("--index", index, "Tuple index (0-based)");
  dfs->add_option("--from", from, "Stage of the starting frontier (prime)")->required();
  dfs->add_option("--depth", depth, "Zero stages to follow");
  dfs->add_option("--budget", budget, "Maximum instances in the starting frontier");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*score) {
      const auto f = load(g, file);
      CsvTable t{{"index", "length", "span", "score", "counterexample"}, {}};
      if (legacy) t.header.push_back("legacy_score");
      for (std::size_t i = 0; i < f.tuples.size(); ++i) {
        const auto& s = f.tuples[i];
        std::vector<std::string> row{std::to_string(i), std::to_string(s.length()), s.span().str(),
                                     std::to_string(nonconvexity_score(s)), yes_no(is_counterexample(s))};
        if (legacy) row.push_back(std::to_string(legacy_score(s)));
        t.rows.push_back(std::move(row));
      }
      emit(g, t);
    } else if (*nu_cmd) {
      const auto f = load(g, file);
      const NuProfile profile(pick(f, index));
      CsvTable t{{"q", "nu", "admissible"}, {}};
      for (std::uint64_t q : primes_between(min_prime, max_prime)) {
        t.rows.push_back({std::to_string(q), std::to_string(profile.nu(q)), std::to_string(profile.admissible_count(q))});
      }
      emit(g, t);
    } else if (*evolve) {
      const auto f = load(g, file);
      const auto& s = pick(f, index);
      TrackOptions opt;
      opt.start_stage = start_stage;
      opt.budget = budget;
      opt.threads = g.threads;
      const auto rows = track_prefix(s, to, opt);
      CsvTable t{{"stage", "count", "gamma0", "driving_length", "exact"}, {}};
      for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.stage), r.count.str(), r.unique ? decode(*r.unique).str() : "-",
                          r.driving_length ? std::to_string(*r.driving_length) : "-", yes_no(r.exact)});
      }
      emit(g, t);
      for (const auto& r : rows) {
        if (r.exact) {
          std::cerr << "first exact appearance at stage " << r.stage << '\n';
          break;
        }
      }
    } else if (*bfs_cmd) {
      const auto f = load(g, file);
      const auto& s = pick(f, index);
      BfsOptions opt;
      opt.budget = budget;
      opt.threads = g.threads;
      opt.checkpoint_path = checkpoint;
      BfsResult r;
      if (resume) {
        if (checkpoint.empty()) throw std::invalid_argument("--resume needs --checkpoint");
        r = bfs_continue(s, read_checkpoint(checkpoint, s), to, opt);
      } else {
        r = bfs(s, from, to, opt);
      }
      CsvTable t{{"stage", "nu", "admissible", "count", "materialized", "truncated"}, {}};
      for (const auto& row : r.stages) {
        t.rows.push_back({std::to_string(row.stage), std::to_string(row.nu), std::to_string(row.admissible),
                          row.count.str(), std::to_string(row.materialized), yes_no(row.truncated)});
      }
      emit(g, t);
    } else if (*mg) {
      const auto f = load(g, file);
      std::vector<Constellation> tuples;
      std::vector<std::size_t> indices;
      if (all) {
        tuples = f.tuples;
        for (std::size_t i = 0; i < tuples.size(); ++i) indices.push_back(i);
      } else {
        tuples.push_back(pick(f, index));
        indices.push_back(index);
      }
      const auto table = min_gamma_all(tuples, to, budget, g.threads);
      CsvTable t{{"index", "leading_term", "gamma0", "optimal"}, {}};
      for (const auto& row : table.rows) {
        const auto& c = row.result.gamma0;
        t.rows.push_back({std::to_string(indices[row.index]), c.is_zero() ? "0" : leading_term(c).str(),
                          to_scientific(decode(c), 4), yes_no(row.result.optimal)});
      }
      emit(g, t);
      if (all && !table.rows.empty()) {
        const auto& best = table.rows[table.argmin];
        std::cerr << "global minimum: tuple " << indices[best.index] << ", "
                  << to_scientific(decode(best.result.gamma0), 4) << '\n';
      }
    } else if (*winf) {
      const auto f = load(g, file);
      const auto reports = w_infinity_table(f.tuples);
      CsvTable t{{"index", "factor1", "factor2", "w_infinity"}, {}};
      for (const auto& r : reports) {
        t.rows.push_back({std::to_string(r.index), to_scientific(r.factor1, 7), to_scientific(r.factor2, 7),
                          to_scientific(r.w_infinity, 7)});
      }
      emit(g, t);
      if (reports.size() > 1) {
        auto lo = reports.front().w_infinity, hi = lo;
        for (const auto& r : reports) {
          lo = std::min(lo, r.w_infinity);
          hi = std::max(hi, r.w_infinity);
        }
        if (lo > 0) std::cerr << "max/min ratio: " << format_real(static_cast<double>(hi / lo), 4) << '\n';
      }
    } else if (*hist) {
      const auto f = load(g, file);
      emit(g, histogram_csv(gap_histogram(pick(f, index))));
    } else if (*dphi) {
      const auto f = load(g, file);
      const auto& s = pick(f, index);
      const auto series = delta_phi(s, mu ? *mu : default_mu(s.length()));
      const auto table = to_csv(series);
      if (out_path.empty()) {
        std::cout << table.str();
      } else {
        emit_csv(table, out_path);
      }
    } else if (*mertens) {
      const auto est = mertens_mu_threshold(mertens_mu);
      if (g.format == "csv") {
        std::cout << "mu,log10_p,p\n" << format_real(mertens_mu) << ',' << format_real(est.log10_p) << ','
                  << est.str() << '\n';
      } else {
        std::cout << "mean gap " << format_real(mertens_mu) << " reached near p = " << est.str()
                  << " (log10 p = " << format_real(est.log10_p, 6) << ")\n";
      }
    } else if (*dfs) {
      const auto f = load(g, file);
      const auto& s = pick(f, index);
      BfsOptions opt;
      opt.budget = budget;
      opt.threads = g.threads;
      const auto start = bfs(s, from, from, opt).frontier;
      CsvTable t{{"gamma0", "zero_stages", "last_stage", "survival"}, {}};
      for (const auto& c : dfs_zero_run(s, start, depth)) {
        t.rows.push_back({decode(c.gamma0).str(), std::to_string(c.zero_stages), std::to_string(c.last_stage),
                          to_string(c.survival.status)});
      }
      emit(g, t);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
