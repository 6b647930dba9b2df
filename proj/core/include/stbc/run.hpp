#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stbc/bounds.hpp"
#include "stbc/curve.hpp"
#include "stbc/curve_io.hpp"
#include "stbc/simulate.hpp"

namespace stbc {

enum class OutputFormat { csv, json };

// Everything one sweep needs: the operating point (P is taken per grid
// point), the SNR grid, which curves to produce, and sampling parameters.
struct RunSpec {
  SystemConfig config;                  // config.P ignored; grid supplies it
  std::vector<double> snr_grid_db;
  std::vector<std::string> kinds;       // bounds: integral|bound1|bound2|mc_oracle
  std::string constellation = "";       // simulate: empty = infer from R
  long long trials = 1000000;
  std::uint64_t seed = 1;
  long long min_errors = 0;
  long long max_trials = 0;
  int workers = 0;
  OutputFormat format = OutputFormat::csv;
  std::string out = "-";                // "-" = stdout
  std::string checkpoint_dir;           // empty = no checkpointing
  std::string label;                    // empty = config slug

  void validate() const;
  RunMeta meta() const;
};

// Parses "LO:STEP:HI" (or a single value) into an inclusive dB grid.
std::vector<double> parse_snr_grid(const std::string& text);

// Evaluates the requested bound kinds over the grid. Deterministic kinds use
// quadrature/closed forms; "mc_oracle" derives one seed per grid point.
std::vector<Curve> run_bounds(const RunSpec& spec);

// Runs the beamforming simulator over the grid; one curve, kind
// "sim:<constellation>". Progress goes to `progress` when non-null. Results
// are checkpointed per point when spec.checkpoint_dir is set, so an
// interrupted sweep resumes instead of recomputing.
std::vector<Curve> run_simulate(const RunSpec& spec, std::ostream* progress = nullptr);

// Fitted diversity slope of each curve plus its ceiling M*N*K. A curve whose
// meta lacks a config falls back to `fallback_config` (CSV inputs).
struct SlopeReport {
  std::string label;
  std::string kind;
  double slope = 0.0;
  int ceiling = 0;
  bool violation = false;  // slope > ceiling + tolerance
};
std::vector<SlopeReport> diversity_report(const std::vector<Curve>& curves,
                                          Interval window_db, double tolerance,
                                          const SystemConfig& fallback_config);

// Emits a self-contained gnuplot script plotting every curve found in the
// given CSV/JSON files (log-y SER vs SNR). The script reads the data files
// by the paths given here.
std::string gnuplot_script(const std::vector<std::string>& input_paths,
                           const std::string& output_png);

// Serializes curves per spec.format to spec.out ("-" = stdout).
void write_output(const RunSpec& spec, const std::vector<Curve>& curves);

}  // namespace stbc
