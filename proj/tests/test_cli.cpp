// End-to-end checks of the stbc-limits binary: exit codes, output formats,
// determinism across reruns and worker counts, config-file layering.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "stbc/curve_io.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("stbc_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(STBC_CLI_PATH) + " " + args + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("bounds: csv output, byte-identical across reruns") {
  TempDir tmp("bounds");
  const std::string out1 = (tmp.path / "a.csv").string();
  const std::string out2 = (tmp.path / "b.csv").string();
  const std::string flags = "bounds --M 2 --N 1 --K 1 --L 1 --R 1 --snr 0:10:20 --out ";
  CHECK(run_cli(flags + out1) == 0);
  CHECK(run_cli(flags + out2) == 0);
  const std::string a = slurp(out1);
  CHECK(a == slurp(out2));
  CHECK(a.rfind("snr_db,value,ci,kind,label\n", 0) == 0);

  // Three default kinds, three points each.
  std::istringstream in(a);
  const auto curves = stbc::parse_curves_csv(in);
  CHECK(curves.size() == 3);
  CHECK(curves[0].points.size() == 3);
  CHECK(curves[0].label == "M2N1K1L1R1");
}

TEST_CASE("bounds: stdout and json modes") {
  TempDir tmp("json");
  const fs::path redirect = tmp.path / "stdout.json";
  const int rc = run_cli("bounds --M 2 --N 2 --R 2 --snr 10 --format json --out - > " +
                         redirect.string());
  CHECK(rc == 0);
  std::ifstream f(redirect);
  const auto curves = stbc::parse_curves_json(f);
  CHECK(curves.size() == 3);
  REQUIRE(curves[0].config.has_value());
  CHECK(curves[0].config->M == 2);
  CHECK(curves[0].config->N == 2);
}

TEST_CASE("bounds: mc_oracle kind respects seed and worker invariance") {
  TempDir tmp("mc");
  const std::string base =
      "bounds --M 2 --N 1 --R 1 --snr 0:10:10 --kinds mc_oracle --trials 20000 --seed 9 --out ";
  const std::string w1 = (tmp.path / "w1.csv").string();
  const std::string w4 = (tmp.path / "w4.csv").string();
  CHECK(run_cli(base + w1 + " --workers 1") == 0);
  CHECK(run_cli(base + w4 + " --workers 4") == 0);
  CHECK(slurp(w1) == slurp(w4));

  const std::string s2 = (tmp.path / "s2.csv").string();
  CHECK(run_cli(base + s2 + " --workers 1 --seed 10") == 0);
  CHECK(slurp(w1) != slurp(s2));
}

TEST_CASE("simulate: deterministic, worker-invariant, checkpointable") {
  TempDir tmp("sim");
  const std::string base =
      "simulate --M 2 --N 1 --R 1 --snr 0:5:5 --trials 20000 --seed 4 --out ";
  const std::string a = (tmp.path / "a.csv").string();
  const std::string b = (tmp.path / "b.csv").string();
  CHECK(run_cli(base + a + " --workers 1") == 0);
  CHECK(run_cli(base + b + " --workers 3") == 0);
  CHECK(slurp(a) == slurp(b));

  std::istringstream in(slurp(a));
  const auto curves = stbc::parse_curves_csv(in);
  REQUIRE(curves.size() == 1);
  CHECK(curves[0].kind == "sim:bpsk");
  REQUIRE(curves[0].points.size() == 2);
  CHECK(curves[0].points[0].ci.has_value());

  // Checkpointed rerun reproduces the same bytes.
  const std::string ck = (tmp.path / "ck").string();
  const std::string c1 = (tmp.path / "c1.csv").string();
  const std::string c2 = (tmp.path / "c2.csv").string();
  CHECK(run_cli(base + c1 + " --checkpoint-dir " + ck) == 0);
  CHECK(run_cli(base + c2 + " --checkpoint-dir " + ck) == 0);
  CHECK(slurp(c1) == slurp(a));
  CHECK(slurp(c2) == slurp(a));
}

TEST_CASE("diversity: csv needs a fallback config, json carries its own") {
  TempDir tmp("div");
  const std::string csv = (tmp.path / "hi.csv").string();
  const std::string json = (tmp.path / "hi.json").string();
  const std::string common = "bounds --M 2 --N 1 --R 2 --snr 40:5:60 --kinds integral ";
  CHECK(run_cli(common + "--out " + csv) == 0);
  CHECK(run_cli(common + "--format json --out " + json) == 0);

  const fs::path report = tmp.path / "report.txt";
  CHECK(run_cli("diversity " + csv + " --window 40:60 --M 2 --N 1 --K 1 > " +
                report.string()) == 0);
  const std::string text = slurp(report);
  CHECK(text.find("slope=") != std::string::npos);
  CHECK(text.find("ceiling=2") != std::string::npos);
  CHECK(text.find(" ok") != std::string::npos);

  // Same curve against a ceiling of 1 must be flagged.
  CHECK(run_cli("diversity " + csv + " --window 40:60 --M 1 --N 1 --K 1 > " +
                report.string()) == 0);
  CHECK(slurp(report).find("VIOLATION") != std::string::npos);

  // JSON input: the metadata supplies M, N, K; no fallback flags needed.
  CHECK(run_cli("diversity " + json + " --window 40:60 > " + report.string()) == 0);
  CHECK(slurp(report).find("ceiling=2") != std::string::npos);
}

TEST_CASE("plot: emits a gnuplot script for csv, rejects json") {
  TempDir tmp("plot");
  const std::string csv = (tmp.path / "c.csv").string();
  const std::string json = (tmp.path / "c.json").string();
  CHECK(run_cli("bounds --M 2 --N 1 --R 1 --snr 0:10:20 --out " + csv) == 0);
  CHECK(run_cli("bounds --M 2 --N 1 --R 1 --snr 0:10:20 --format json --out " + json) == 0);

  const std::string gp = (tmp.path / "c.gp").string();
  CHECK(run_cli("plot " + csv + " --out " + gp) == 0);
  const std::string script = slurp(gp);
  CHECK(script.find("set logscale y") != std::string::npos);
  CHECK(script.find("c.png") != std::string::npos);
  CHECK(script.find(csv) != std::string::npos);

  CHECK(run_cli("plot " + json + " --out " + gp) == 2);
  CHECK(run_cli("plot " + (tmp.path / "missing.csv").string() + " --out " + gp) == 2);
}

TEST_CASE("config file supplies defaults, flags override") {
  TempDir tmp("cfg");
  const fs::path cfg = tmp.path / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# sweep defaults\n"
      << "M = 2\n"
      << "N = 1\n"
      << "R = 1\n"
      << "snr = 0:10:20\n"
      << "unused-key = whatever\n";
  }
  const std::string out1 = (tmp.path / "a.csv").string();
  CHECK(run_cli("bounds --config " + cfg.string() + " --out " + out1) == 0);
  std::istringstream in1(slurp(out1));
  CHECK(stbc::parse_curves_csv(in1)[0].label == "M2N1K1L1R1");

  // Explicit flags beat the file.
  const std::string out2 = (tmp.path / "b.csv").string();
  CHECK(run_cli("bounds --config " + cfg.string() + " --M 4 --out " + out2) == 0);
  std::istringstream in2(slurp(out2));
  CHECK(stbc::parse_curves_csv(in2)[0].label == "M4N1K1L1R1");

  CHECK(run_cli("bounds --config " + (tmp.path / "nope.cfg").string()) == 2);
}

TEST_CASE("usage and input errors exit with code 2") {
  TempDir tmp("err");
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("") == 2);  // a subcommand is required
  CHECK(run_cli("bounds --M 2 --snr nonsense --out " + (tmp.path / "x.csv").string()) == 2);
  CHECK(run_cli("bounds --M 0 --out " + (tmp.path / "x.csv").string()) == 2);
  CHECK(run_cli("bounds --kinds bogus --out " + (tmp.path / "x.csv").string()) == 2);
  CHECK(run_cli("simulate --M 2 --N 1 --R 1 --snr 0 --trials 0") == 2);
  CHECK(run_cli("simulate --M 2 --N 1 --R 1 --snr 0 --constellation dodecaphase") == 2);
  CHECK(run_cli("simulate --M 2 --N 1 --R 2 --constellation bpsk --snr 0 --trials 1000") ==
        2);  // rate/constellation mismatch
  CHECK(run_cli("diversity " + (tmp.path / "missing.csv").string()) == 2);
  CHECK(run_cli("plot") == 2);  // missing required input

  // Too few points inside the window.
  const std::string csv = (tmp.path / "short.csv").string();
  CHECK(run_cli("bounds --M 2 --N 1 --R 1 --snr 40:10:50 --kinds integral --out " + csv) == 0);
  CHECK(run_cli("diversity " + csv + " --window 40:60") == 2);

  // Malformed curve file.
  const fs::path bad = tmp.path / "bad.csv";
  {
    std::ofstream f(bad);
    f << "snr_db,value,ci,kind,label\n1,2,3\n";
  }
  CHECK(run_cli("diversity " + bad.string()) == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help > /dev/null") == 0);
  CHECK(run_cli("bounds --help > /dev/null") == 0);
}
