#include <doctest.h>

#include "report.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wwlab;
using cli::json;

namespace {

const std::filesystem::path kFixtures = WWLAB_FIXTURE_DIR;

cli::Common common(std::optional<std::uint64_t> seed = std::nullopt) {
  cli::Common c;
  c.base_dir = kFixtures;
  c.seed = seed;
  return c;
}

json fixture(const std::string& name) { return io::read_json_file(kFixtures / name); }

cli::Outcome run(const std::string& command, const std::string& config, std::optional<std::uint64_t> seed = std::nullopt) {
  return cli::run_command(command, fixture(config), common(seed));
}

/// Exit status of the wwlab binary; stdout goes to `out` when given.
int run_binary(const std::string& args, const std::filesystem::path& out = "/dev/null") {
  const std::string cmd = std::string(WWLAB_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string cfg(const std::string& name) { return "--config " + (kFixtures / name).string(); }

}  // namespace

TEST_CASE("weight analyze: atom table of the trig-poly fixture") {
  const cli::Outcome o = run("weight analyze", "analyze_trigpoly.json");
  const json tp = fixture("trigpoly.json")["generator"]["terms"];
  const json& atoms = o.payload["atoms"];
  REQUIRE(atoms.size() == tp.size());
  const double tol = o.config["tolerance"].get<double>();
  for (std::size_t i = 0; i < tp.size(); ++i) {
    const double expected = std::norm(io::complex_from_json(tp[i]["coeff"]));
    CHECK(std::abs(atoms[i]["fejer_mass"].get<double>() - expected) < tol);
    CHECK(std::abs(atoms[i]["amplitude_sq_top"].get<double>() - expected) < tol);
  }
  CHECK(o.exit_code == 0);
  CHECK(o.config.contains("ladder"));
  CHECK(o.config.contains("halfwidth"));
}

TEST_CASE("weight analyze: log-band sign sequence correlations near one") {
  const cli::Outcome o = run("weight analyze", "analyze_example59.json");
  const json& entries = o.payload["correlations"]["entries"];
  CHECK(entries.size() == 11);
  for (const auto& e : entries) CHECK(std::abs(io::complex_from_json(e["value"]) - 1.0) < 0.05);
}

TEST_CASE("weight analyze: empty values exit with code 2") {
  CHECK(run_binary("weight analyze " + cfg("analyze_empty.json")) == 2);
  CHECK(run_binary("weight analyze --config /nonexistent.json") == 2);
  CHECK(run_binary("weight frobnicate") == 2);
}

TEST_CASE("weight classify exit codes encode the verdict") {
  CHECK(run_binary("weight classify " + cfg("classify_trigpoly.json")) == 0);
  const int e59 = run_binary("weight classify " + cfg("classify_example59.json"));
  CHECK((e59 == 12 || e59 == 13));
  CHECK(run_binary("weight classify --seed 3 " + cfg("classify_noise.json")) == 10);
  CHECK(run_binary("weight classify " + cfg("classify_noise.json")) == 2);
}

TEST_CASE("weight classify: noise spectrum is empirically continuous") {
  const cli::Outcome o = run("weight classify", "classify_noise.json", 3);
  CHECK(o.payload["verdict"] == "fails-(1)");
  CHECK(o.payload["wiener_value"].get<double>() < 0.05);
  CHECK(o.config["seed"] == 3);
}

TEST_CASE("system simulate: bundled 2x2 fixture") {
  const cli::Outcome o = run("system simulate", "simulate_2x2.json");
  const Operator x = io::operator_from_json(fixture("simulate_2x2.json")["x"]);
  for (const auto& rung : o.payload["averages"]) {
    CHECK((io::operator_from_json(rung["weighted_average"]) - x).norm() < 1e-12);
  }
  CHECK(o.payload["spectral_identity"]["holds"] == true);
  CHECK(o.exit_code == 0);
}

TEST_CASE("system simulate: identity system averages are constant") {
  json c = json::parse(R"({"system": {"N": 2, "unitaries": [[[[1,0],[0,0]],[[0,0],[1,0]]], [[[1,0],[0,0]],[[0,0],[1,0]]]]},
                          "x": [[[1,2],[0,1]],[[3,0],[-1,0]]], "ladder": [[2,2],[4,4],[8,8]]})");
  const cli::Outcome o = cli::run_command("system simulate", c, common());
  const double first = o.payload["averages"][0]["ergodic_average_norm"].get<double>();
  for (const auto& rung : o.payload["averages"]) {
    CHECK(rung["ergodic_average_norm"].get<double>() == doctest::Approx(first));
    CHECK(rung["distance_to_fixed_projection"].get<double>() < 1e-12);
  }
}

TEST_CASE("system simulate: random commuting system passes the two-path identity") {
  json c = json::parse(R"({"system": {"random": {"N": 3, "d": 2}}, "x": {"random": true}, "ladder": [[4,4],[8,8]],
                          "au": {"epsilon": 0.2, "mode": "one_sided"}})");
  const cli::Outcome o = cli::run_command("system simulate", c, common(17));
  CHECK(o.payload["spectral_identity"]["holds"] == true);
  CHECK(o.payload["kronecker"]["defects"]["complement_norm"].get<double>() < 1e-10);
  CHECK(o.payload.contains("au"));
  CHECK_THROWS_AS(cli::run_command("system simulate", c, common()), Error);
}

TEST_CASE("vdc fuzz: default campaign") {
  const cli::Outcome o = run("vdc fuzz", "vdc_fuzz.json", 7);
  CHECK(o.payload["violations"] == 0);
  CHECK(o.payload["zero_trial"]["lhs"] == 0.0);
  CHECK(o.payload["zero_trial"]["rhs"] == 0.0);
  CHECK(o.exit_code == 0);
  CHECK(run_binary("vdc fuzz " + cfg("vdc_fuzz.json")) == 2);
}

TEST_CASE("vdc fuzz: shifts beyond n are flagged") {
  const cli::Outcome o = run("vdc fuzz", "vdc_beyond.json", 1);
  CHECK(o.payload["outside_hypothesis"].get<int>() > 0);
  for (const auto& f : o.payload["flagged_cases"]) CHECK(f["outside_hypothesis"] == true);
}

TEST_CASE("vdc check: identity array") {
  const cli::Outcome o = run("vdc check", "vdc_identity.json");
  REQUIRE(o.payload["bounds"].size() == 1);
  CHECK(o.payload["bounds"][0]["lhs"] == 1.0);
  CHECK(o.payload["bounds"][0]["rhs"] == 9.0);
  CHECK(o.exit_code == 0);
}

TEST_CASE("ww-uniform: classical sign stream decays") {
  const cli::Outcome o = run("system ww-uniform", "ww_uniform_classical.json", 42);
  const json& c = o.payload["classical"];
  CHECK(c["strictly_decreasing"] == true);
  CHECK(c["final"].get<double>() < 0.05);
}

TEST_CASE("ww-uniform: identity operator does not decay") {
  const cli::Outcome o = run("system ww-uniform", "ww_uniform_identity.json");
  const json& m = o.payload["matrix"];
  CHECK(m["expectation"] == "expected-non-decay");
  for (const auto& r : m["rungs"]) CHECK(r["sup"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("ww-uniform: zero stream") {
  json c = json::parse(R"({"classical": {"d": 1, "generator": "zero", "ladder": [[15],[31]], "grid": [8]}})");
  const cli::Outcome o = cli::run_command("system ww-uniform", c, common());
  CHECK(o.payload["classical"]["final"] == 0.0);
}

TEST_CASE("spectral estimate: two-atom measure") {
  const cli::Outcome o = run("spectral estimate", "estimate_two_atoms.json");
  const json& values = o.payload["wiener"]["values"];
  CHECK(std::abs(values[values.size() - 1].get<double>() - 0.58) < 0.01);
}

TEST_CASE("spectral affinity: shared atom") {
  const cli::Outcome o = run("spectral affinity", "affinity_measures.json");
  CHECK(o.payload["affinity"]["value"].get<double>() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("reports are byte-identical apart from the header") {
  const auto a = std::filesystem::temp_directory_path() / "wwlab_det_a.json";
  const auto b = std::filesystem::temp_directory_path() / "wwlab_det_b.json";
  REQUIRE(run_binary("vdc fuzz --seed 7 " + cfg("vdc_beyond.json") + " --out " + a.string()) == 0);
  REQUIRE(run_binary("vdc fuzz --seed 7 " + cfg("vdc_beyond.json") + " --out " + b.string()) == 0);
  json ja = json::parse(slurp(a)), jb = json::parse(slurp(b));
  CHECK(ja["payload"].dump() == jb["payload"].dump());
  CHECK(ja["config"].dump() == jb["config"].dump());
  CHECK(ja["header"]["tool"] == "wwlab");
  CHECK(ja["config"]["seed"] == 7);

  // the resolved config reproduces the payload on its own
  const auto c = std::filesystem::temp_directory_path() / "wwlab_det_config.json";
  io::write_text_file(c, ja["config"].dump());
  REQUIRE(run_binary("vdc fuzz --config " + c.string() + " --out " + b.string()) == 0);
  CHECK(json::parse(slurp(b))["payload"].dump() == ja["payload"].dump());
  for (const auto& p : {a, b, c}) std::filesystem::remove(p);
}

TEST_CASE("csv output") {
  const auto p = std::filesystem::temp_directory_path() / "wwlab_table.csv";
  REQUIRE(run_binary("weight analyze --format csv " + cfg("analyze_example59.json"), p) == 0);
  std::istringstream s(slurp(p));
  std::string header;
  std::getline(s, header);
  CHECK(header == "m1,re,im,ladder_spread");
  CHECK(run_binary("vdc fuzz --seed 1 --format csv " + cfg("vdc_beyond.json")) == 2);
  std::filesystem::remove(p);
}
