#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stbc/curve_io.hpp"

namespace stbc {
namespace {

constexpr const char* kCsvHeader = "snr_db,value,ci,kind,label";

double parse_number(const std::string& field, int line_no, const char* what) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw CurveParseError("CSV line " + std::to_string(line_no) + ": bad " +
                          what + " '" + field + "'");
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

void validate_all(std::vector<Curve>& curves) {
  for (auto& c : curves) c.validate();
}

}  // namespace

std::string format_double(double v) {
  // Shortest decimal form that parses back to exactly v; 17 digits always do.
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void write_curves_csv(std::ostream& os, const std::vector<Curve>& curves) {
  os << kCsvHeader << '\n';
  for (const auto& c : curves) {
    c.validate();
    for (const auto& p : c.points) {
      os << format_double(p.snr_db) << ',' << format_double(p.value) << ',';
      if (p.ci) os << format_double(*p.ci);
      os << ',' << c.kind << ',' << c.label << '\n';
    }
  }
}

std::string curves_to_csv(const std::vector<Curve>& curves) {
  std::ostringstream os;
  write_curves_csv(os, curves);
  return os.str();
}

std::vector<Curve> parse_curves_csv(std::istream& is) {
  std::string line;
  int line_no = 0;
  if (!std::getline(is, line))
    throw CurveParseError("CSV line 1: empty input, expected header '" +
                          std::string(kCsvHeader) + "'");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw CurveParseError("CSV line 1: expected header '" + std::string(kCsvHeader) +
                          "', got '" + line + "'");

  std::vector<Curve> curves;
  std::map<std::pair<std::string, std::string>, std::size_t> index;  // (kind,label) -> slot
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 5)
      throw CurveParseError("CSV line " + std::to_string(line_no) + ": expected 5 fields, got " +
                            std::to_string(fields.size()));
    CurvePoint p;
    p.snr_db = parse_number(fields[0], line_no, "snr_db");
    p.value = parse_number(fields[1], line_no, "value");
    if (!fields[2].empty()) p.ci = parse_number(fields[2], line_no, "ci");
    const auto key = std::make_pair(fields[3], fields[4]);
    auto it = index.find(key);
    if (it == index.end()) {
      Curve c;
      c.kind = fields[3];
      c.label = fields[4];
      index.emplace(key, curves.size());
      curves.push_back(std::move(c));
      it = index.find(key);
    }
    curves[it->second].points.push_back(p);
  }
  if (curves.empty())
    throw CurveParseError("CSV: no data rows");
  try {
    validate_all(curves);
  } catch (const std::invalid_argument& e) {
    throw CurveParseError(std::string("CSV: ") + e.what());
  }
  return curves;
}

std::string curves_to_json(const std::vector<Curve>& curves, const RunMeta& meta) {
  nlohmann::ordered_json root;
  root["curves"] = nlohmann::ordered_json::array();
  for (const auto& c : curves) {
    c.validate();
    nlohmann::ordered_json jc;
    jc["label"] = c.label;
    jc["kind"] = c.kind;
    nlohmann::ordered_json jm;
    const SystemConfig& cfg = c.config ? *c.config : meta.config;
    jm["M"] = cfg.M;
    jm["N"] = cfg.N;
    jm["K"] = cfg.K;
    jm["L"] = cfg.L;
    jm["R"] = cfg.R;
    jm["snr_grid_db"] = meta.snr_grid_db;
    jm["kinds"] = meta.kinds;
    jm["trials"] = meta.trials;
    jm["seed"] = meta.seed;
    jm["min_errors"] = meta.min_errors;
    jm["max_trials"] = meta.max_trials;
    jm["workers"] = meta.workers;
    jm["format"] = meta.format;
    jm["out"] = meta.out;
    jc["meta"] = jm;
    jc["points"] = nlohmann::ordered_json::array();
    for (const auto& p : c.points) {
      nlohmann::ordered_json jp;
      jp["snr_db"] = p.snr_db;
      jp["value"] = p.value;
      if (p.ci) jp["ci"] = *p.ci;
      else jp["ci"] = nullptr;
      jc["points"].push_back(jp);
    }
    root["curves"].push_back(jc);
  }
  return root.dump(2) + "\n";
}

std::vector<Curve> parse_curves_json(std::istream& is) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw CurveParseError(std::string("JSON: ") + e.what());
  }
  std::vector<Curve> curves;
  try {
    for (const auto& jc : root.at("curves")) {
      Curve c;
      c.label = jc.at("label").get<std::string>();
      c.kind = jc.at("kind").get<std::string>();
      if (jc.contains("meta")) {
        const auto& jm = jc.at("meta");
        SystemConfig cfg;
        cfg.M = jm.at("M").get<int>();
        cfg.N = jm.at("N").get<int>();
        cfg.K = jm.at("K").get<int>();
        cfg.L = jm.at("L").get<int>();
        cfg.R = jm.at("R").get<double>();
        cfg.P = 1.0;  // per-point power lives in the grid, not the meta
        c.config = cfg;
      }
      for (const auto& jp : jc.at("points")) {
        CurvePoint p;
        p.snr_db = jp.at("snr_db").get<double>();
        p.value = jp.at("value").get<double>();
        if (jp.contains("ci") && !jp.at("ci").is_null())
          p.ci = jp.at("ci").get<double>();
        c.points.push_back(p);
      }
      curves.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw CurveParseError(std::string("JSON: ") + e.what());
  }
  if (curves.empty()) throw CurveParseError("JSON: no curves");
  try {
    validate_all(curves);
  } catch (const std::invalid_argument& e) {
    throw CurveParseError(std::string("JSON: ") + e.what());
  }
  return curves;
}

std::vector<Curve> read_curves_file(const std::string& path) {
  std::ifstream is(path);
  if (!is)
    throw std::invalid_argument("cannot open curve file '" + path + "'");
  // Sniff the format from the first non-whitespace byte.
  int ch = is.peek();
  while (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t') {
    is.get();
    ch = is.peek();
  }
  if (ch == '{') return parse_curves_json(is);
  return parse_curves_csv(is);
}

}  // namespace stbc
