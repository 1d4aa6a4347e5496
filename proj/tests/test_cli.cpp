#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "evocert/commands.hpp"

using namespace evocert;

TEST_SUITE_BEGIN("cli");

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("evocert_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

fs::path write_config(const TempDir& dir, const std::string& text) {
  fs::path p = dir.path / "scenario.ini";
  std::ofstream out(p);
  out << text;
  return p;
}

const char* kOdeConfig = R"(
[grid]
t_start = 0
t_end = 1
n = 4
rho = 1.0

[law]
d = 1
regime = lipschitz
m0 = constant
m0_constant = 1
m1 = constant
m1_constant = 0

[forcing]
kind = constant
value = 1
)";

}  // namespace

TEST_CASE("check passes for the constant-coefficient ODE") {
  TempDir dir("check_ok");
  CommandOptions opts;
  opts.config_path = write_config(dir, kOdeConfig).string();
  opts.out_dir = (dir.path / "out").string();
  RunReport r = cmd_check(opts);
  CHECK(r.all_ok());
  REQUIRE_FALSE(r.certificates.empty());
  for (const auto& c : r.certificates) CHECK(c.passed);
  CHECK(fs::exists(dir.path / "out" / "report.json"));
}

TEST_CASE("check fails loudly for an expanding coupling") {
  TempDir dir("check_fail");
  CommandOptions opts;
  opts.config_path = write_config(dir, R"(
[grid]
n = 8
rho = 1.0

[law]
d = 1
regime = commutator
m0 = constant
m0_constant = 1
d_low = 1

[spatial]
kind = transport
N = 8
B = 2
)").string();
  opts.out_dir = (dir.path / "out").string();
  RunReport r = cmd_check(opts);
  CHECK_FALSE(r.all_ok());
  bool spatial_failed = false;
  for (const auto& c : r.certificates)
    if (c.kind == "spatial_accretivity") spatial_failed = !c.passed;
  CHECK(spatial_failed);
}

TEST_CASE("check reports the resolved rho0 for auto rates") {
  TempDir dir("check_auto");
  CommandOptions opts;
  opts.config_path = write_config(dir, R"(
[grid]
n = 8
rho = auto

[law]
d = 2
regime = commutator
m0 = constant
m0_constant = 1 0 0 4
m1 = constant
m1_constant = 0 1 0 0
d_low = 1

[check]
c = 1
)").string();
  opts.out_dir = (dir.path / "out").string();
  RunReport r = cmd_check(opts);
  bool found = false;
  for (const auto& n : r.notes)
    if (n.find("rho0_commutator = 1.5") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("solve writes the exact ODE solution table") {
  TempDir dir("solve_ode");
  CommandOptions opts;
  opts.config_path = write_config(dir, kOdeConfig).string();
  opts.out_dir = (dir.path / "out").string();
  RunReport r = cmd_solve(opts);
  CHECK(r.all_ok());
  REQUIRE(r.solve.has_value());
  CHECK(r.solve->bound_ok);

  ColumnTable t = read_table((dir.path / "out" / "solution.txt").string());
  REQUIRE(t.rows.rows() == 4);
  for (int k = 0; k < 4; ++k)
    CHECK(t.rows(k, 1) == doctest::Approx(t.rows(k, 0)).epsilon(1e-14));
}

TEST_CASE("solve refuses when certificates fail unless forced") {
  TempDir dir("solve_force");
  const char* text = R"(
[grid]
n = 8
rho = 0.1

[law]
d = 1
regime = lipschitz
m0 = constant
m0_constant = 1
m1 = constant
m1_constant = -2

[check]
c = 0.5
)";
  CommandOptions opts;
  opts.config_path = write_config(dir, text).string();
  opts.out_dir = (dir.path / "out").string();
  RunReport refused = cmd_solve(opts);
  CHECK_FALSE(refused.all_ok());
  CHECK_FALSE(refused.solve.has_value());
  CHECK_FALSE(fs::exists(dir.path / "out" / "solution.txt"));

  opts.force = true;
  RunReport forced = cmd_solve(opts);
  CHECK(forced.solve.has_value());
  CHECK(fs::exists(dir.path / "out" / "solution.txt"));
}

TEST_CASE("a solution table re-ingests losslessly as forcing") {
  TempDir dir("round_trip");
  CommandOptions opts;
  opts.config_path = write_config(dir, kOdeConfig).string();
  opts.out_dir = (dir.path / "out").string();
  RunReport first = cmd_solve(opts);
  REQUIRE(first.solve.has_value());

  const std::string table = (dir.path / "out" / "solution.txt").string();
  std::string reuse = std::string(kOdeConfig) +
                      "\n[forcing]\nkind = table\ntable = " + table + "\n";
  fs::path cfg2 = dir.path / "scenario2.ini";
  {
    std::ofstream out(cfg2);
    out << reuse;
  }
  CommandOptions opts2;
  opts2.config_path = cfg2.string();
  opts2.out_dir = (dir.path / "out2").string();
  RunReport second = cmd_solve(opts2);
  REQUIRE(second.solve.has_value());
  // forcing values equal the previous solution bit-for-bit
  for (int k = 0; k < 4; ++k)
    CHECK(second.solve->forcing_norm ==
          doctest::Approx(first.solve->solution_norm).epsilon(1e-15));
}

TEST_CASE("verify --suite is deterministic for a fixed seed") {
  TempDir dir("suite_det");
  CommandOptions opts;
  opts.suite = true;
  opts.seed = 1234;
  opts.out_dir = (dir.path / "a").string();
  RunReport ra = cmd_verify(opts);
  CHECK(ra.all_ok());
  opts.out_dir = (dir.path / "b").string();
  RunReport rb = cmd_verify(opts);
  CHECK(slurp(dir.path / "a" / "report.json") ==
        slurp(dir.path / "b" / "report.json"));
  // a different seed changes the payload (seed is part of the report)
  opts.seed = 1235;
  opts.out_dir = (dir.path / "c").string();
  cmd_verify(opts);
  CHECK(slurp(dir.path / "a" / "report.json") !=
        slurp(dir.path / "c" / "report.json"));
}

TEST_CASE("example runs the built-in scenario end to end") {
  TempDir dir("example");
  CommandOptions opts;
  opts.out_dir = dir.path.string();
  RunReport r = cmd_example(opts);
  CHECK(r.all_ok());
  REQUIRE(r.solve.has_value());
  CHECK(r.solve->bound_ok);
  CHECK(fs::exists(dir.path / "solution.txt"));
  CHECK(fs::exists(dir.path / "report.json"));
}

TEST_CASE("report payload carries schema and provenance") {
  TempDir dir("schema");
  CommandOptions opts;
  opts.config_path = write_config(dir, kOdeConfig).string();
  opts.out_dir = (dir.path / "out").string();
  cmd_check(opts);
  const std::string json = slurp(dir.path / "out" / "report.json");
  CHECK(json.find("\"schema_version\"") != std::string::npos);
  CHECK(json.find("\"config_hash\"") != std::string::npos);
  CHECK(json.find("\"certificates\"") != std::string::npos);
  CHECK(json.find("timestamp") == std::string::npos);
}

TEST_SUITE_END();
