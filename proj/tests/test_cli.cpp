#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "qtherm/dataset.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + (env.empty() ? "" : " ") + "\"" + QTHERM_CLI_PATH + "\" " + args +
      " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe))
    r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

double scrape(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(key, 0) == 0) {
      const auto eq = line.find('=');
      REQUIRE(eq != std::string::npos);
      return std::stod(line.substr(eq + 1));
    }
  }
  FAIL("key not found: ", key, "\n", text);
  return 0.0;
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "qtherm_cli_test";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("cli: version and usage errors") {
  CHECK(run_cli("--version").out.rfind("qtherm ", 0) == 0);
  CHECK(run_cli("--version").code == 0);
  CHECK(run_cli("").code == 2);              // missing subcommand
  CHECK(run_cli("probe --beta nope").code == 2);
  CHECK(run_cli("probe --beta -1").code == 2);
  CHECK(run_cli("probe --theta 2pi").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("cli: probe output") {
  const RunResult frozen = run_cli("probe --beta 2 --theta 0.6 --tau 0");
  CHECK(frozen.code == 0);
  CHECK(scrape(frozen.out, "d_rho_ee") == 0.0);

  const RunResult opt = run_cli("probe --beta 10 --theta pi --tau pi/2");
  CHECK(opt.code == 0);
  CHECK(scrape(opt.out, "rho_ee") == doctest::Approx(4.5397e-5).epsilon(1e-3));
  CHECK(opt.out.find("truncated   = no") != std::string::npos);
}

TEST_CASE("cli: fisher information values") {
  const RunResult fi = run_cli("fi --beta 10 --theta pi --tau pi/2");
  CHECK(fi.code == 0);
  CHECK(scrape(fi.out, "fi") == doctest::Approx(4.5397e-5).epsilon(5e-3));
  const double crb = scrape(fi.out, "crb");
  CHECK(crb == doctest::Approx(1.0 / 4.5397e-5).epsilon(5e-3));

  const RunResult qfi = run_cli("qfi --beta 10 --theta pi --tau pi/2");
  CHECK(qfi.code == 0);
  CHECK(scrape(qfi.out, "qfi") ==
        doctest::Approx(scrape(fi.out, "fi")).epsilon(1e-8));

  // shots rescale the bound
  const RunResult many = run_cli("fi --beta 10 --theta pi --tau pi/2 --shots 100");
  CHECK(scrape(many.out, "crb") == doctest::Approx(crb / 100.0).epsilon(1e-12));
}

TEST_CASE("cli: optimize") {
  const RunResult res =
      run_cli("optimize --beta 10 --theta pi --tau-max pi");
  CHECK(res.code == 0);
  CHECK(scrape(res.out, "tau_max") ==
        doctest::Approx(1.5707963267948966).epsilon(1e-3));
  CHECK(scrape(res.out, "value") == doctest::Approx(4.5397e-5).epsilon(5e-3));

  const RunResult degen =
      run_cli("optimize --beta 10 --theta pi --tau-min 0 --tau-max 0");
  CHECK(degen.code == 1);
}

TEST_CASE("cli: sweep writes a parseable dataset without a phi column") {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "sweep_test.csv";
  const RunResult res = run_cli(
      "sweep --beta 10 --theta pi --tau-grid 0:pi:21 --objective fi -o \"" +
      out.string() + "\"");
  CHECK(res.code == 0);
  REQUIRE(fs::exists(out));
  std::ifstream is(out);
  std::stringstream ss;
  ss << is.rdbuf();
  const qtherm::DatasetFile d = qtherm::parse_csv(ss.str());
  REQUIRE(d.columns.size() == 2);
  CHECK(d.columns[0].name == "tau");
  CHECK(d.columns[1].name == "fi");
  CHECK(d.columns[0].values.size() == 21);
  for (const auto& c : d.columns) CHECK(c.name != "phi");
  CHECK(d.params.at("objective") == "fi");
  fs::remove(out);
}

TEST_CASE("cli: two-axis sweep flattens row-major") {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "sweep2.json";
  const RunResult res = run_cli(
      "sweep --theta pi --beta-grid 5:10:2 --tau-grid 0:1:3 "
      "--format json -o \"" + out.string() + "\"");
  CHECK(res.code == 0);
  std::ifstream is(out);
  std::stringstream ss;
  ss << is.rdbuf();
  const qtherm::DatasetFile d = qtherm::parse_json(ss.str());
  REQUIRE(d.columns.size() == 3);
  CHECK(d.columns[0].values == std::vector<double>{5, 5, 5, 10, 10, 10});
  CHECK(d.columns[1].values == std::vector<double>{0, 0.5, 1, 0, 0.5, 1});
  fs::remove(out);
}

TEST_CASE("cli: figure honours QTHERM_OUT_DIR") {
  const fs::path dir = scratch_dir();
  const RunResult res = run_cli("figure fig1a --points 31",
                                "QTHERM_OUT_DIR=\"" + dir.string() + "\"");
  CHECK(res.code == 0);
  const fs::path out = dir / "fig1a.csv";
  REQUIRE(fs::exists(out));
  std::ifstream is(out);
  std::stringstream ss;
  ss << is.rdbuf();
  const qtherm::DatasetFile d = qtherm::parse_csv(ss.str());
  CHECK(d.columns.front().values.size() == 31);
  fs::remove(out);

  CHECK(run_cli("figure no_such_fig").code == 2);
}

TEST_CASE("cli: estimate") {
  const RunResult res = run_cli(
      "estimate --beta 1 --theta pi --tau pi/2 --shots 2000 --reps 40 --seed 5");
  CHECK(res.code == 0);
  CHECK(scrape(res.out, "mean") == doctest::Approx(1.0).epsilon(0.1));
  const double ratio = scrape(res.out, "cr_ratio");
  CHECK(ratio > 0.4);
  CHECK(ratio < 2.5);
  CHECK(scrape(res.out, "failures") == 0.0);

  // identical seeds give identical reports
  const RunResult again = run_cli(
      "estimate --beta 1 --theta pi --tau pi/2 --shots 2000 --reps 40 --seed 5");
  CHECK(again.out == res.out);
}
