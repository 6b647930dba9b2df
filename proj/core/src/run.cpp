#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stbc/rng.hpp"
#include "stbc/run.hpp"

namespace stbc {
namespace {

bool is_sim_kind(const std::string& kind) { return kind.rfind("sim:", 0) == 0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string infer_constellation(const SystemConfig& cfg) {
  if (cfg.R == 1.0) return "bpsk";
  if (cfg.R == 2.0) return "qpsk";
  if (cfg.R == 3.0) return "8qam";
  throw std::invalid_argument(
      "cannot infer a constellation for R=" + std::to_string(cfg.R) +
      "; pass one explicitly");
}

// FNV-1a, for checkpoint file names.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string checkpoint_key(const RunSpec& spec, const std::string& cons, double snr_db) {
  std::ostringstream os;
  os << spec.config.slug() << "|cons=" << cons << "|trials=" << spec.trials
     << "|seed=" << spec.seed << "|min_errors=" << spec.min_errors
     << "|max_trials=" << spec.max_trials << "|snr_db=" << format_double(snr_db);
  return os.str();
}

std::filesystem::path checkpoint_path(const std::string& dir, const std::string& key) {
  char name[32];
  std::snprintf(name, sizeof(name), "%016llx.json",
                static_cast<unsigned long long>(fnv1a(key)));
  return std::filesystem::path(dir) / name;
}

bool load_checkpoint(const std::filesystem::path& path, const std::string& key,
                     SerEstimate& est) {
  std::ifstream is(path);
  if (!is) return false;
  try {
    nlohmann::json j = nlohmann::json::parse(is);
    if (j.at("key").get<std::string>() != key) return false;
    est.errors = j.at("errors").get<long long>();
    est.trials = j.at("trials").get<long long>();
    est.ser = j.at("ser").get<double>();
    est.ci95 = j.at("ci95").get<double>();
    est.seed = j.at("seed").get<std::uint64_t>();
    return true;
  } catch (const nlohmann::json::exception&) {
    return false;  // stale or corrupt checkpoint: recompute
  }
}

void store_checkpoint(const std::filesystem::path& path, const std::string& key,
                      const SerEstimate& est) {
  nlohmann::ordered_json j;
  j["key"] = key;
  j["errors"] = est.errors;
  j["trials"] = est.trials;
  j["ser"] = est.ser;
  j["ci95"] = est.ci95;
  j["seed"] = est.seed;
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    os << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);  // atomic publish
}

}  // namespace

void RunSpec::validate() const {
  SystemConfig c = config;
  c.P = 1.0;  // grid supplies power; validate the rest
  c.validate();
  if (snr_grid_db.empty())
    throw std::invalid_argument("RunSpec: SNR grid is empty");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i)
    if (!(snr_grid_db[i] > snr_grid_db[i - 1]))
      throw std::invalid_argument("RunSpec: SNR grid must be strictly increasing");
  if (kinds.empty())
    throw std::invalid_argument("RunSpec: no curve kinds requested");
  const bool stochastic =
      std::any_of(kinds.begin(), kinds.end(), [](const std::string& k) {
        return k == "mc_oracle" || is_sim_kind(k);
      });
  if (stochastic && trials < 1)
    throw std::invalid_argument("RunSpec: stochastic kinds require trials >= 1");
  if (min_errors < 0 || max_trials < 0)
    throw std::invalid_argument("RunSpec: min_errors/max_trials must be >= 0");
  if (workers < 0)
    throw std::invalid_argument("RunSpec: workers must be >= 0");
  if (out.empty())
    throw std::invalid_argument("RunSpec: output path is empty");
}

RunMeta RunSpec::meta() const {
  RunMeta m;
  m.config = config;
  m.config.P = 1.0;
  m.snr_grid_db = snr_grid_db;
  m.kinds = kinds;
  m.trials = trials;
  m.seed = seed;
  m.min_errors = min_errors;
  m.max_trials = max_trials;
  m.workers = workers;
  m.format = format == OutputFormat::csv ? "csv" : "json";
  m.out = out;
  return m;
}

std::vector<double> parse_snr_grid(const std::string& text) {
  auto bad = [&] {
    return std::invalid_argument("bad SNR grid '" + text + "': expected LO:STEP:HI or a single value");
  };
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(':', start);
    const std::string tok = pos == std::string::npos ? text.substr(start)
                                                     : text.substr(start, pos - start);
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) throw bad();
    parts.push_back(v);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (parts.size() == 1) return {parts[0]};
  if (parts.size() != 3) throw bad();
  const double lo = parts[0], step = parts[1], hi = parts[2];
  if (step <= 0.0 || hi < lo) throw bad();
  if ((hi - lo) / step > 1e6) throw std::invalid_argument("SNR grid '" + text + "' is unreasonably dense");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double v = lo + i * step;
    if (v > hi + 1e-9) break;
    grid.push_back(std::min(v, hi));
  }
  return grid;
}

std::vector<Curve> run_bounds(const RunSpec& spec) {
  spec.validate();
  const std::string label = spec.label.empty() ? spec.config.slug() : spec.label;
  std::vector<Curve> curves;
  for (const auto& kind : spec.kinds) {
    Curve c;
    c.kind = kind;
    c.label = label;
    c.config = spec.config;
    c.config->P = 1.0;
    for (std::size_t i = 0; i < spec.snr_grid_db.size(); ++i) {
      SystemConfig cfg = spec.config;
      cfg.P = db_to_linear(spec.snr_grid_db[i]);
      CurvePoint p;
      p.snr_db = spec.snr_grid_db[i];
      try {
        if (kind == "integral") {
          p.value = integral_lowerbound(cfg).value;
        } else if (kind == "bound1") {
          p.value = bound1(cfg).value;
        } else if (kind == "bound2") {
          p.value = bound2(cfg).value;
        } else if (kind == "mc_oracle") {
          BoundResult r = mc_oracle_lowerbound(cfg, spec.trials,
                                               mix_seed(spec.seed, 1000 + i),
                                               spec.workers);
          p.value = r.value;
          p.ci = r.mc_ci;
        } else {
          throw std::invalid_argument("run_bounds: unknown kind '" + kind + "'");
        }
      } catch (const NumericError& e) {
        throw NumericError("bounds kind '" + kind + "' failed for " + cfg.slug() +
                               " at snr_db=" + format_double(p.snr_db) + ": " + e.what(),
                           e.best_estimate(), e.error_bound());
      }
      c.points.push_back(p);
    }
    c.validate();
    curves.push_back(std::move(c));
  }
  return curves;
}

std::vector<Curve> run_simulate(const RunSpec& spec, std::ostream* progress) {
  spec.validate();
  const std::string cons_name =
      spec.constellation.empty() ? infer_constellation(spec.config) : spec.constellation;
  const Constellation cons = Constellation::from_name(cons_name);

  if (!spec.checkpoint_dir.empty())
    std::filesystem::create_directories(spec.checkpoint_dir);

  Curve c;
  c.kind = "sim:" + cons_name;
  c.label = spec.label.empty() ? spec.config.slug() : spec.label;
  c.config = spec.config;
  c.config->P = 1.0;

  for (std::size_t i = 0; i < spec.snr_grid_db.size(); ++i) {
    const double snr_db = spec.snr_grid_db[i];
    SystemConfig cfg = spec.config;
    cfg.P = db_to_linear(snr_db);

    const std::string key = checkpoint_key(spec, cons_name, snr_db);
    const std::filesystem::path ckpath =
        spec.checkpoint_dir.empty() ? std::filesystem::path()
                                    : checkpoint_path(spec.checkpoint_dir, key);

    SerEstimate est;
    bool restored = false;
    if (!spec.checkpoint_dir.empty()) restored = load_checkpoint(ckpath, key, est);
    if (!restored) {
      SerOptions opt;
      opt.trials = spec.trials;
      opt.seed = mix_seed(spec.seed, 2000 + i);
      opt.min_errors = spec.min_errors;
      opt.max_trials = spec.min_errors > 0
                           ? std::max(spec.max_trials, spec.trials)
                           : spec.max_trials;
      opt.workers = spec.workers;
      est = estimate_ser(cfg, cons, opt);
      if (!spec.checkpoint_dir.empty()) store_checkpoint(ckpath, key, est);
    }
    if (progress) {
      *progress << "point " << (i + 1) << "/" << spec.snr_grid_db.size()
                << " snr_db=" << format_double(snr_db) << " trials=" << est.trials
                << " errors=" << est.errors << " ser=" << format_double(est.ser)
                << (restored ? " (checkpoint)" : "") << "\n";
    }
    CurvePoint p;
    p.snr_db = snr_db;
    p.value = est.ser;
    p.ci = est.ci95;
    c.points.push_back(p);
  }
  c.validate();
  return {c};
}

std::vector<SlopeReport> diversity_report(const std::vector<Curve>& curves,
                                          Interval window_db, double tolerance,
                                          const SystemConfig& fallback_config) {
  if (curves.empty()) throw std::invalid_argument("diversity_report: no curves");
  if (!(tolerance >= 0.0))
    throw std::invalid_argument("diversity_report: tolerance must be >= 0");
  std::vector<SlopeReport> reports;
  for (const auto& c : curves) {
    SlopeReport r;
    r.label = c.label;
    r.kind = c.kind;
    const SystemConfig& cfg = c.config ? *c.config : fallback_config;
    r.ceiling = cfg.M * cfg.N * cfg.K;
    r.slope = diversity_slope(c, window_db);
    r.violation = r.slope > r.ceiling + tolerance;
    reports.push_back(r);
  }
  return reports;
}

std::string gnuplot_script(const std::vector<std::string>& input_paths,
                           const std::string& output_png) {
  if (input_paths.empty())
    throw std::invalid_argument("gnuplot_script: no input files");
  // Collect (file, kind, label) triples in file order so every curve gets
  // its own plot clause filtered by the kind/label columns.
  struct Entry {
    std::string file, kind, label;
  };
  std::vector<Entry> entries;
  for (const auto& path : input_paths) {
    {
      // The emitted clauses index CSV columns, so JSON inputs can't be used.
      std::ifstream probe(path);
      if (!probe) throw std::invalid_argument("cannot open curve file '" + path + "'");
      int ch = probe.peek();
      while (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t') {
        probe.get();
        ch = probe.peek();
      }
      if (ch == '{')
        throw std::invalid_argument("plot input '" + path + "' is JSON; plotting needs the CSV format");
    }
    for (const auto& c : read_curves_file(path))
      entries.push_back({path, c.kind, c.label});
  }
  std::ostringstream os;
  os << "# generated by stbc-limits plot\n";
  os << "set datafile separator ','\n";
  os << "set logscale y\n";
  os << "set xlabel 'SNR (dB)'\n";
  os << "set ylabel 'error probability'\n";
  os << "set grid\n";
  os << "set key bottom left\n";
  os << "set terminal pngcairo size 960,720\n";
  os << "set output '" << output_png << "'\n";
  os << "plot \\\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    os << "  '" << e.file << "' every ::1 using 1:(strcol(4) eq '" << e.kind
       << "' && strcol(5) eq '" << e.label
       << "' ? column(2) : NaN) with linespoints title '" << e.label << " "
       << e.kind << "'";
    os << (i + 1 < entries.size() ? ", \\\n" : "\n");
  }
  return os.str();
}

void write_output(const RunSpec& spec, const std::vector<Curve>& curves) {
  std::string payload;
  if (spec.format == OutputFormat::csv) {
    payload = curves_to_csv(curves);
  } else {
    payload = curves_to_json(curves, spec.meta());
  }
  if (spec.out == "-") {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream os(spec.out, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file '" + spec.out + "'");
  os << payload;
  if (!os) throw std::runtime_error("failed writing output file '" + spec.out + "'");
}

}  // namespace stbc
