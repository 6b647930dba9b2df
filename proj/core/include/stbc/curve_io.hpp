#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stbc/curve.hpp"

namespace stbc {

// Thrown on malformed curve files; the message names the offending line.
class CurveParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Run metadata echoed into JSON output so a result file is self-describing.
// Mirrors the sweep parameters; CSV output intentionally stays minimal.
struct RunMeta {
  SystemConfig config;
  std::vector<double> snr_grid_db;
  std::vector<std::string> kinds;
  long long trials = 0;
  std::uint64_t seed = 0;
  long long min_errors = 0;
  long long max_trials = 0;
  int workers = 0;
  std::string format;
  std::string out;
};

// CSV schema shared by every curve kind:
//   snr_db,value,ci,kind,label
// one row per point, curves concatenated, ci left empty for deterministic
// bounds. Numbers are written with up to 17 significant digits so rereading
// reproduces the exact doubles and reruns are byte-identical.
void write_curves_csv(std::ostream& os, const std::vector<Curve>& curves);
std::string curves_to_csv(const std::vector<Curve>& curves);
std::vector<Curve> parse_curves_csv(std::istream& is);

// JSON alternative carrying the run metadata.
std::string curves_to_json(const std::vector<Curve>& curves, const RunMeta& meta);
std::vector<Curve> parse_curves_json(std::istream& is);

// Reads a curve file, sniffing CSV vs JSON from the first non-space byte.
std::vector<Curve> read_curves_file(const std::string& path);

// 17-significant-digit shortest-exact formatting used across all output.
std::string format_double(double v);

}  // namespace stbc
