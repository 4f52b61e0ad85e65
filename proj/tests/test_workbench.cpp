#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "lforge/workbench.hpp"

using namespace lforge;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("lforge-test-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

ExperimentSpec spec_for(const std::string& name) {
  ExperimentSpec s;
  s.name = name;
  s.fixture_dir = LFORGE_TEST_FIXTURES;
  return s;
}

int run_cli(const std::string& args) {
  int rc = std::system((std::string(LFORGE_BIN) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("sha256 known answers") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("fixtures verify and corrupted fixtures are rejected") {
  Fixtures fx(LFORGE_TEST_FIXTURES);
  CHECK(fx.verify_all().empty());
  CHECK(fx.manifest().size() == 6);
  CHECK_FALSE(fx.read("n0.txt").empty());
  CHECK_THROWS_AS(fx.read("missing.txt"), FixtureError);

  auto d = temp_dir("fixtures");
  for (auto& e : fs::directory_iterator(LFORGE_TEST_FIXTURES)) fs::copy(e.path(), d / e.path().filename());
  {
    std::ofstream out(d / "n0.txt", std::ios::app);
    out << "0\n";
  }
  Fixtures bad(d.string());
  CHECK(bad.verify_all() == std::vector<std::string>{"n0.txt"});
  CHECK_THROWS_AS(bad.read("n0.txt"), FixtureError);
  auto s = spec_for("d9-special");
  s.fixture_dir = d.string();
  CHECK_THROWS_AS(run_experiment(s), FixtureError);
  CHECK_THROWS_AS(Fixtures((d / "nowhere").string()), FixtureError);
  fs::remove_all(d);
}

TEST_CASE("config files") {
  auto d = temp_dir("config");
  auto path = (d / "run.ini").string();
  {
    std::ofstream out(path);
    out << "[run]\nseed = 9\nfield = qq\nmax_seconds = 12.5\n\n[bounds]\nsamples = 3\n\n[d9-generic]\nseed = 11\n";
  }
  ExperimentSpec s;
  s.name = "d9-generic";
  apply_config_file(path, s);
  CHECK(s.seed == 11);
  CHECK(s.field == "qq");
  CHECK(s.max_seconds == 12.5);
  CHECK(s.bound("samples", 20) == 3);
  CHECK(s.bound("other", 7) == 7);
  ExperimentSpec t;
  t.name = "ln-snf";
  apply_config_file(path, t);
  CHECK(t.seed == 9);
  {
    std::ofstream out(path);
    out << "[run]\nseed = banana\n";
  }
  CHECK_THROWS_AS(apply_config_file(path, s), std::invalid_argument);
  fs::remove_all(d);
}

TEST_CASE("registry and refusals") {
  std::set<std::string> names;
  for (auto& e : experiment_registry()) names.insert(e.name);
  CHECK(names.size() == 12);
  for (auto n : {"d9-generic", "d9-special", "d9-secant-cases", "d9-bilinkage-18", "rao-betti", "ln-snf",
                 "gamma-tangent", "unique-cubic", "t8-bilinkage-17", "d6-unprojection-15",
                 "lemma23-elliptic-quintic", "d9-unprojection-18"})
    CHECK(names.count(n) == 1);
  CHECK_THROWS_AS(run_experiment(spec_for("no-such-experiment")), UnknownExperiment);
  CHECK_THROWS_AS(run_experiment(spec_for("t8-bilinkage-17")), BudgetRefused);
  auto q = spec_for("ln-snf");
  q.field = "qq";
  CHECK_THROWS_AS(run_experiment(q), BudgetRefused);
  q.field = "gf2";
  CHECK_THROWS_AS(run_experiment(q), std::invalid_argument);
  auto stub = run_experiment(spec_for("d9-unprojection-18"));
  CHECK(stub.status == "stub");
  CHECK(stub.exit_code() == ExitCode::ok);
}

TEST_CASE("reports: text and json agree, digests are reproducible") {
  auto a = run_experiment(spec_for("gamma-tangent"));
  auto b = run_experiment(spec_for("gamma-tangent"));
  CHECK(a.digest() == b.digest());
  CHECK(a.all_pass());
  auto j = nlohmann::json::parse(a.to_json());
  CHECK(j["digest"] == a.digest());
  CHECK(j["experiment"] == "gamma-tangent");
  auto text = a.to_text();
  CHECK(text.find("digest: " + a.digest()) != std::string::npos);
  for (auto& as : j["assertions"]) {
    std::string line = std::string(as["pass"].get<bool>() ? "PASS " : "FAIL ") + as["id"].get<std::string>();
    CHECK(text.find(line) != std::string::npos);
  }
  CHECK(j["results"]["tangent"]["codimension"] == 1);
  CHECK(text.find("tangent.codimension: 1") != std::string::npos);
  // Timings do not enter the digest.
  b.timings.clear();
  b.time("other", 99);
  CHECK(a.digest() == b.digest());
  // A different seed changes the inputs digest.
  auto s = spec_for("gamma-tangent");
  s.seed = 2;
  CHECK(run_experiment(s).inputs_digest != a.inputs_digest);
}

TEST_CASE("report emission and I/O errors") {
  auto d = temp_dir("reports");
  auto r = run_experiment(spec_for("d9-unprojection-18"));
  auto path = emit_report(r, ReportFormat::json, d.string());
  CHECK(fs::exists(path));
  CHECK(nlohmann::json::parse(std::ifstream(path))["status"] == "stub");
  auto file = d / "plain-file";
  std::ofstream(file) << "x";
  CHECK_THROWS_AS(emit_report(r, ReportFormat::text, (file / "sub").string()), ReportIOError);
  fs::remove_all(d);
}

TEST_CASE("command line exit codes") {
  auto d = temp_dir("cli");
  CHECK(run_cli("list") == 0);
  CHECK(run_cli("run gamma-tangent --out " + d.string()) == 0);
  CHECK(fs::exists(d / "gamma-tangent.txt"));
  CHECK(fs::exists(d / "gamma-tangent.json"));
  CHECK(run_cli("run no-such-experiment") == (int)ExitCode::usage);
  CHECK(run_cli("run t8-bilinkage-17") == (int)ExitCode::budget);
  CHECK(run_cli("run gamma-tangent --field gf2") == (int)ExitCode::usage);
  CHECK(run_cli("bogus-subcommand") == (int)ExitCode::usage);
  std::ofstream(d / "plain-file") << "x";
  CHECK(run_cli("run d9-unprojection-18 --out " + (d / "plain-file" / "sub").string()) == (int)ExitCode::io);
  {
    std::ofstream poly(d / "tc.txt");
    poly << "ring R vars x0..x3 field GF(17) order grevlex\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n";
    std::ofstream ci(d / "ci.txt");
    ci << "ring R vars x0..x3 field GF(17) order grevlex\nx0*x2 - x1^2\nx1*x3 - x2^2\n";
    std::ofstream snf(d / "m.txt");
    snf << "2 2 lambda\nlambda\n1\n0\nlambda\n";
    std::ofstream pf(d / "a.txt");
    pf << "size 4\nring R vars x,y field GF(17) order grevlex\nx\ny\n0\n0\ny\nx\n";
  }
  CHECK(run_cli("gb " + (d / "tc.txt").string()) == 0);
  CHECK(run_cli("link " + (d / "tc.txt").string() + " " + (d / "ci.txt").string()) == 0);
  CHECK(run_cli("snf " + (d / "m.txt").string()) == 0);
  CHECK(run_cli("pfaffian " + (d / "a.txt").string()) == 0);
  CHECK(run_cli("gb " + (d / "nope.txt").string()) != 0);
  {
    auto env_fx = temp_dir("cli-fixtures");
    for (auto& e : fs::directory_iterator(LFORGE_TEST_FIXTURES)) fs::copy(e.path(), env_fx / e.path().filename());
    std::ofstream(env_fx / "n0.txt", std::ios::app) << "1\n";
    CHECK(run_cli("fixtures") == 0);
    int rc = std::system(("LFORGE_FIXTURES=" + env_fx.string() + " " + LFORGE_BIN + " run d9-special > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc) == (int)ExitCode::fixture);
    fs::remove_all(env_fx);
  }
  {
    std::ofstream(d / "cfg.ini") << "[run]\nseed = 3\n[gamma-tangent]\nseed = 4\n";
    CHECK(run_cli("run gamma-tangent --format json --config " + (d / "cfg.ini").string() + " --out " + d.string()) == 0);
    auto j = nlohmann::json::parse(std::ifstream(d / "gamma-tangent.json"));
    CHECK(j["seed"] == 4);
  }
  fs::remove_all(d);
}
