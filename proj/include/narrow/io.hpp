#pragma once

#include <cstdint>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "narrow/bignum.hpp"
#include "narrow/constellation.hpp"
#include "narrow/tuple.hpp"

namespace narrow {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Tuple files: one tuple per line, integers separated by spaces and/or commas.
// Lines are offsets (0 first, strictly ascending) until a `!gaps` line switches
// to gap lists; `!offsets` switches back. `#` starts a comment line.
struct TupleFile {
  std::string path;
  std::vector<Constellation> tuples;  // index = position in the file
  std::vector<bool> admissible;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<BigNat> parse_integers(const std::string& line, const std::string& path, std::size_t lineno) {
  std::vector<BigNat> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    for (char c : token) {
      if (c < '0' || c > '9') throw ParseError(path, lineno, "not a nonnegative integer: '" + token + "'");
    }
    out.emplace_back(token);
    token.clear();
  };
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == ',' || c == '\r') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return out;
}

}  // namespace detail

inline TupleFile parse_tuple_text(std::istream& in, const std::string& path = "<input>") {
  TupleFile file;
  file.path = path;
  bool gaps_mode = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.compare(first, 5, "!gaps") == 0) {
      gaps_mode = true;
      continue;
    }
    if (line.compare(first, 8, "!offsets") == 0) {
      gaps_mode = false;
      continue;
    }
    const auto values = detail::parse_integers(line, path, lineno);
    Constellation s;
    try {
      s = gaps_mode ? Constellation::from_gaps(std::span<const BigNat>(values)) : Constellation::from_offsets(values);
    } catch (const FormatError& e) {
      throw ParseError(path, lineno, e.what());
    }
    const bool ok = is_admissible(s);
    if (!ok) {
      file.warnings.push_back(path + ":" + std::to_string(lineno) + ": tuple " + std::to_string(file.tuples.size()) +
                              " is inadmissible");
    }
    file.tuples.push_back(std::move(s));
    file.admissible.push_back(ok);
  }
  return file;
}

inline TupleFile parse_tuple_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tuple file: " + path);
  return parse_tuple_text(in, path);
}

// Offsets mode, one tuple per line, space separated.
inline std::string serialize_tuples(const std::vector<Constellation>& tuples) {
  std::string out;
  for (const auto& s : tuples) {
    bool first = true;
    for (const auto& h : s.offsets()) {
      if (!first) out += ' ';
      out += h.str();
      first = false;
    }
    out += '\n';
  }
  return out;
}

// Delta Phi(x) = Phi(x) - x/mu, where Phi(x) counts the gaps ending at or before x.
// Piecewise linear: a unit rise at every offset h_1..h_J and slope -1/mu between.
struct DeltaPhiSeries {
  double mu = 1;
  std::vector<std::pair<double, double>> breakpoints;  // (x, value); a rise repeats x

  std::size_t rises() const {
    std::size_t n = 0;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
      if (breakpoints[i].first == breakpoints[i - 1].first) ++n;
    }
    return n;
  }

  double final_value() const { return breakpoints.back().second; }
};

// Phi(x): number of gaps of s that end at or before x.
inline std::size_t phi(const Constellation& s, std::uint64_t x) {
  auto off = s.small_offsets();
  return static_cast<std::size_t>(std::upper_bound(off.begin() + 1, off.end(), x) - (off.begin() + 1));
}

inline DeltaPhiSeries delta_phi(const Constellation& s, double mu) {
  if (!(mu > 0)) throw DomainError("delta_phi: mu must be positive");
  DeltaPhiSeries series;
  series.mu = mu;
  auto off = s.small_offsets();
  series.breakpoints.emplace_back(0.0, 0.0);
  for (std::size_t i = 1; i < off.size(); ++i) {
    const double x = static_cast<double>(off[i]);
    series.breakpoints.emplace_back(x, static_cast<double>(i - 1) - x / mu);
    series.breakpoints.emplace_back(x, static_cast<double>(i) - x / mu);
  }
  return series;
}

// Mean gap of the first J primes measured from zero: p_J / J.
inline double default_mu(std::size_t J) { return static_cast<double>(nth_prime(J)) / static_cast<double>(J); }

// ---------------------------------------------------------------------------
// CSV

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }
};

inline std::string format_real(double v, int sig = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

inline void emit_csv(const CsvTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << table.str();
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline CsvTable to_csv(const DeltaPhiSeries& series) {
  CsvTable t{{"x", "delta_phi"}, {}};
  for (const auto& [x, v] : series.breakpoints) t.rows.push_back({format_real(x), format_real(v)});
  return t;
}

inline CsvTable histogram_csv(const std::map<BigNat, std::size_t>& hist) {
  CsvTable t{{"gap", "count"}, {}};
  for (const auto& [g, n] : hist) t.rows.push_back({g.str(), std::to_string(n)});
  return t;
}

}  // namespace narrow
