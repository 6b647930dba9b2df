// stbc-limits: sphere-packing lower bounds on MIMO block-fading error
// probability, a beamforming SER simulator to compare against, diversity
// slope fits, and gnuplot script generation.
//
// Exit codes: 0 success, 1 numeric failure, 2 usage/input error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stbc/curve_io.hpp"
#include "stbc/run.hpp"

namespace {

// Reads a flat key=value config file ('#' comments, blank lines allowed).
std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("--config", "cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CLI::ValidationError("--config", "config file line " + std::to_string(line_no) +
                                                 ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t");
      return s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

// Re-assembles argv with config-file values injected ahead of the explicit
// flags, so anything typed on the command line overrides the file.
std::vector<std::string> inject_config(int argc, char** argv,
                                       const std::vector<std::string>& known_keys) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw CLI::ValidationError("--config", "expects a file path");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty()) return rest;
  if (rest.empty())
    throw CLI::ValidationError("--config", "a subcommand is required");

  const auto kv = load_config_file(config_path);
  std::vector<std::string> out;
  out.push_back(rest.front());  // subcommand name first
  for (const auto& [key, value] : kv) {
    if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end()) {
      std::cerr << "note: config key '" << key << "' not used by this invocation\n";
      continue;
    }
    out.push_back("--" + key + "=" + value);
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

struct CommonArgs {
  stbc::RunSpec spec;
  std::string snr = "0:2:30";
  std::string format = "csv";
};

// "LO:HI" in dB, LO < HI.
stbc::Interval parse_window(const std::string& text) {
  const auto pos = text.find(':');
  auto bad = [&] { return std::invalid_argument("bad window '" + text + "': expected LO:HI"); };
  if (pos == std::string::npos) throw bad();
  char* end = nullptr;
  stbc::Interval w;
  const std::string lo_s = text.substr(0, pos), hi_s = text.substr(pos + 1);
  w.lo = std::strtod(lo_s.c_str(), &end);
  if (end == lo_s.c_str() || *end != '\0') throw bad();
  w.hi = std::strtod(hi_s.c_str(), &end);
  if (end == hi_s.c_str() || *end != '\0') throw bad();
  if (!(w.lo < w.hi)) throw bad();
  return w;
}

void add_common_options(CLI::App* cmd, CommonArgs& a, bool with_sampling) {
  auto opt = [&](CLI::Option* o) { o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); };
  opt(cmd->add_option("--M", a.spec.config.M, "Transmit antennas"));
  opt(cmd->add_option("--N", a.spec.config.N, "Receive antennas"));
  opt(cmd->add_option("--K", a.spec.config.K, "Fading blocks per codeword"));
  opt(cmd->add_option("--L", a.spec.config.L, "Symbols per block"));
  opt(cmd->add_option("--R", a.spec.config.R, "Rate, bits per channel use"));
  opt(cmd->add_option("--snr", a.snr, "SNR grid in dB, LO:STEP:HI"));
  opt(cmd->add_option("--format", a.format, "Output format: csv or json"));
  opt(cmd->add_option("--out", a.spec.out, "Output path, '-' for stdout"));
  opt(cmd->add_option("--label", a.spec.label, "Curve label (default: config slug)"));
  opt(cmd->add_option("--workers", a.spec.workers, "Worker threads (0 = hardware)"));
  if (with_sampling) {
    opt(cmd->add_option("--trials", a.spec.trials, "Monte Carlo trials per point"));
    opt(cmd->add_option("--seed", a.spec.seed, "Base RNG seed"));
  }
}

void finish_common(CommonArgs& a) {
  a.spec.snr_grid_db = stbc::parse_snr_grid(a.snr);
  if (a.format == "csv") a.spec.format = stbc::OutputFormat::csv;
  else if (a.format == "json") a.spec.format = stbc::OutputFormat::json;
  else throw std::invalid_argument("unknown --format '" + a.format + "' (csv or json)");
}

int run_app(int argc, char** argv) {
  CLI::App app{"Sphere-packing error-probability limits for MIMO block fading"};
  app.require_subcommand(1);
  app.footer("--config FILE may appear anywhere: a flat key=value file whose entries\n"
             "act as defaults for the subcommand's flags (explicit flags win).");

  const std::vector<std::string> known_keys = {
      "M", "N", "K", "L", "R", "snr", "format", "out", "label", "workers",
      "trials", "seed", "kinds", "constellation", "min-errors", "max-trials",
      "checkpoint-dir", "window", "slope-tol"};

  // --- bounds ---------------------------------------------------------
  CommonArgs bounds_args;
  std::string bounds_kinds = "integral,bound1,bound2";
  auto* cmd_bounds = app.add_subcommand("bounds", "Evaluate lower bounds over an SNR grid");
  add_common_options(cmd_bounds, bounds_args, /*with_sampling=*/true);
  cmd_bounds->add_option("--kinds", bounds_kinds,
                         "Comma list of integral,bound1,bound2,mc_oracle")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // --- simulate -------------------------------------------------------
  CommonArgs sim_args;
  auto* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo beamforming SER");
  add_common_options(cmd_simulate, sim_args, /*with_sampling=*/true);
  cmd_simulate->add_option("--constellation", sim_args.spec.constellation,
                           "bpsk, qpsk or 8qam (default: inferred from R)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd_simulate->add_option("--min-errors", sim_args.spec.min_errors,
                           "Extend each point until this many errors (0 = off)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd_simulate->add_option("--max-trials", sim_args.spec.max_trials,
                           "Trial cap per point when extending")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd_simulate->add_option("--checkpoint-dir", sim_args.spec.checkpoint_dir,
                           "Directory for per-point resume checkpoints")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // --- diversity ------------------------------------------------------
  std::string div_input;
  std::string div_window = "40:60";
  double div_tol = 0.2;
  CommonArgs div_args;
  auto* cmd_diversity = app.add_subcommand("diversity", "Fit diversity slopes from a curve file");
  cmd_diversity->add_option("input", div_input, "Curve file (CSV or JSON)")->required();
  cmd_diversity->add_option("--window", div_window, "dB window LO:HI for the fit")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd_diversity->add_option("--slope-tol", div_tol, "Violation tolerance above the M*N*K ceiling")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  for (auto* o : {cmd_diversity->add_option("--M", div_args.spec.config.M, "Fallback M for CSV inputs"),
                  cmd_diversity->add_option("--N", div_args.spec.config.N, "Fallback N for CSV inputs"),
                  cmd_diversity->add_option("--K", div_args.spec.config.K, "Fallback K for CSV inputs")})
    o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // --- plot -----------------------------------------------------------
  std::vector<std::string> plot_inputs;
  std::string plot_out = "curves.gp";
  auto* cmd_plot = app.add_subcommand("plot", "Emit a gnuplot script for curve CSV files");
  cmd_plot->add_option("inputs", plot_inputs, "Curve CSV files")->required();
  cmd_plot->add_option("--out", plot_out, "Script path ('-' for stdout)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::vector<std::string> args;
  try {
    args = inject_config(argc, argv, known_keys);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (cmd_bounds->parsed()) {
    finish_common(bounds_args);
    bounds_args.spec.kinds.clear();
    std::stringstream ss(bounds_kinds);
    std::string kind;
    while (std::getline(ss, kind, ','))
      if (!kind.empty()) bounds_args.spec.kinds.push_back(kind);
    const auto curves = stbc::run_bounds(bounds_args.spec);
    stbc::write_output(bounds_args.spec, curves);
  } else if (cmd_simulate->parsed()) {
    finish_common(sim_args);
    sim_args.spec.kinds = {"sim:" + (sim_args.spec.constellation.empty()
                                         ? std::string("auto")
                                         : sim_args.spec.constellation)};
    const auto curves = stbc::run_simulate(sim_args.spec, &std::cerr);
    sim_args.spec.kinds = {curves.front().kind};  // resolved name for metadata
    stbc::write_output(sim_args.spec, curves);
  } else if (cmd_diversity->parsed()) {
    const auto curves = stbc::read_curves_file(div_input);
    stbc::Interval window = parse_window(div_window);
    const auto reports =
        stbc::diversity_report(curves, window, div_tol, div_args.spec.config);
    for (const auto& r : reports) {
      std::cout << r.label << " " << r.kind << " slope=" << stbc::format_double(r.slope)
                << " ceiling=" << r.ceiling
                << (r.violation ? " VIOLATION" : " ok") << "\n";
    }
  } else if (cmd_plot->parsed()) {
    std::string png = plot_out == "-" ? "curves.png" : plot_out;
    const auto dot = png.find_last_of('.');
    if (dot != std::string::npos) png = png.substr(0, dot);
    png += ".png";
    const std::string script = stbc::gnuplot_script(plot_inputs, png);
    if (plot_out == "-") {
      std::cout << script;
    } else {
      std::ofstream os(plot_out, std::ios::binary);
      if (!os) throw std::invalid_argument("cannot open output file '" + plot_out + "'");
      os << script;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const stbc::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 1;
  } catch (const stbc::CurveParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
