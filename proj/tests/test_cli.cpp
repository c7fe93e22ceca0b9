#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "crepant/json_io.hpp"

// CREPANT_CLI_BIN and CREPANT_DATA_DIR come from the build system.

namespace fs = std::filesystem;

namespace {

const std::string kBin = CREPANT_CLI_BIN;
const std::string kData = CREPANT_DATA_DIR;

fs::path tmp_dir() {
  fs::path p = fs::current_path() / "cli_test_tmp";
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  int rc = std::system((kBin + " " + args + " > /dev/null 2>&1").c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

int run_to(const std::string& args, const fs::path& out) {
  int rc = std::system((kBin + " " + args + " > " + out.string() + " 2> /dev/null").c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string fixture(const std::string& name) { return kData + "/" + name; }

}  // namespace

TEST_CASE("usage and parse failures exit 2") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("analyze") == 2);  // missing required fan path
  CHECK(run("analyze " + (tmp_dir() / "no_such_file.json").string()) == 2);
  CHECK(run("example nonexistent-family") == 2);
  CHECK(run("example ypq") == 2);  // needs --p/--q

  fs::path garbage = tmp_dir() / "garbage.json";
  std::ofstream(garbage) << "{ not json";
  CHECK(run("analyze " + garbage.string()) == 2);

  fs::path wrong = tmp_dir() / "wrong_shape.json";
  std::ofstream(wrong) << "{\"dim\": 3, \"rays\": [[1, 0]], \"cones\": [[0]]}";
  CHECK(run("analyze " + wrong.string()) == 2);
}

TEST_CASE("pipeline commands succeed on the bundled cones") {
  for (const char* name : {"affine_c3.json", "conifold.json", "kcp2.json",
                           "cp2_two_points.json", "ypq_2_1.json", "ypq_5_3.json"}) {
    CHECK(run("analyze " + fixture(name)) == 0);
    CHECK(run("resolve " + fixture(name)) == 0);
    CHECK(run("reeb " + fixture(name)) == 0);
  }
  CHECK(run("analyze " + fixture("kcp1.json")) == 0);
  CHECK(run("support " + fixture("kcp2.json")) == 0);
  CHECK(run("render " + fixture("conifold.json")) == 0);
  CHECK(run("verify " + fixture("kcp2.json") + " --points 20 --samples 20000") == 0);
}

TEST_CASE("missing compact class exits 5") {
  CHECK(run("support " + fixture("conifold.json")) == 5);
  fs::path out = tmp_dir() / "support_conifold.json";
  CHECK(run_to("support --json " + fixture("conifold.json"), out) == 5);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["support"]["exists"] == false);
  CHECK(j["support"]["reason"].is_string());
}

TEST_CASE("unsupported slice dimension exits 4") {
  // 2d fan slices to a segment; there is nothing to draw
  CHECK(run("render " + fixture("kcp1.json")) == 4);
}

TEST_CASE("flip handling") {
  CHECK(run("resolve " + fixture("conifold.json") + " --flop 0") == 0);
  CHECK(run("resolve " + fixture("conifold.json") + " --flop 5") == 2);
  CHECK(run("resolve " + fixture("conifold.json") + " --flop -1") == 2);

  // a rigid triangulation: every interior wall is unflippable
  crepant::Fan f;
  f.dim = 3;
  f.cones.push_back({3, {}});
  for (auto xs : {std::initializer_list<long>{0, 0, 1}, {2, 1, 1}, {1, 2, 1}}) {
    crepant::IntVec v;
    for (long x : xs) v.push_back(crepant::Int(x));
    f.cones[0].generators.push_back(v);
  }
  fs::path rigid = tmp_dir() / "rigid.json";
  crepant::save_fan(f, rigid.string());
  CHECK(run("resolve " + rigid.string() + " --flop 0") == 3);
}

TEST_CASE("machine output is valid json with the advertised fields") {
  fs::path out = tmp_dir() / "reeb_kcp2.json";
  CHECK(run_to("reeb --json " + fixture("kcp2.json"), out) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["gorenstein"]["ell"] == 1);
  CHECK(j["gorenstein"]["gamma"] == nlohmann::json({0, 0, -1}));
  double x0 = j["reeb"]["xi"][0].get<double>();
  double x2 = j["reeb"]["xi"][2].get<double>();
  CHECK(std::abs(x0) < 1e-9);
  CHECK(x2 == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(j["reeb"]["volume"].get<double>() == doctest::Approx(1.0 / 144).epsilon(1e-12));
  CHECK(j["reeb"]["gamma_pairing"].get<double>() == doctest::Approx(-3.0).epsilon(1e-12));

  fs::path aout = tmp_dir() / "analyze_c2p.json";
  CHECK(run_to("analyze --json " + fixture("cp2_two_points.json"), aout) == 0);
  auto a = nlohmann::json::parse(slurp(aout));
  CHECK(a["valid"] == true);
  CHECK(a["nonsingular"] == nlohmann::json({false}));
  CHECK(a["slice"]["interior_count"] == 1);
  CHECK(a["slice"]["boundary_count"] == 5);

  // errors also come out as json on request
  fs::path eout = tmp_dir() / "err.json";
  CHECK(run_to("analyze --json " + (tmp_dir() / "missing.json").string(), eout) == 2);
  auto e = nlohmann::json::parse(slurp(eout));
  CHECK(e["error"]["kind"] == "ParseError");
  CHECK(e["error"]["message"].is_string());
}

TEST_CASE("example output matches the bundled fan files byte for byte") {
  const std::pair<const char*, const char*> cases[] = {
      {"affine-space --n 3", "affine_c3.json"},
      {"conifold", "conifold.json"},
      {"canonical-cp1", "kcp1.json"},
      {"canonical-cp2", "kcp2.json"},
      {"canonical-cp2-two-points", "cp2_two_points.json"},
      {"ypq --p 2 --q 1", "ypq_2_1.json"},
      {"ypq --p 5 --q 3", "ypq_5_3.json"},
  };
  for (const auto& [args, file] : cases) {
    fs::path out = tmp_dir() / ("example_" + std::string(file));
    CHECK(run_to(std::string("example ") + args, out) == 0);
    CHECK(slurp(out) == slurp(fixture(file)));
  }
}

TEST_CASE("fan files round-trip through load and save") {
  for (const char* name : {"affine_c3.json", "conifold.json", "kcp1.json", "kcp2.json",
                           "cp2_two_points.json", "ypq_2_1.json", "ypq_5_3.json"}) {
    crepant::Fan f = crepant::load_fan(fixture(name));
    fs::path out = tmp_dir() / ("roundtrip_" + std::string(name));
    crepant::save_fan(f, out.string());
    CHECK(slurp(out) == slurp(fixture(name)));
  }
}

TEST_CASE("repeated runs produce identical bytes") {
  const std::string cmds[] = {
      "resolve --json " + fixture("cp2_two_points.json"),
      "reeb --json " + fixture("cp2_two_points.json"),
      "render " + fixture("ypq_5_3.json"),
  };
  int k = 0;
  for (const std::string& cmd : cmds) {
    fs::path a = tmp_dir() / ("det_a_" + std::to_string(k));
    fs::path b = tmp_dir() / ("det_b_" + std::to_string(k));
    ++k;
    CHECK(run_to(cmd, a) == 0);
    CHECK(run_to(cmd, b) == 0);
    CHECK(slurp(a) == slurp(b));
  }
}

TEST_CASE("--out writes the same machine form as stdout") {
  fs::path via_stdout = tmp_dir() / "svg_stdout.svg";
  CHECK(run_to("render " + fixture("conifold.json"), via_stdout) == 0);
  fs::path via_out = tmp_dir() / "svg_out.svg";
  CHECK(run("render " + fixture("conifold.json") + " --out " + via_out.string()) == 0);
  CHECK(slurp(via_stdout) == slurp(via_out));
  CHECK(slurp(via_out).find("<svg") != std::string::npos);
}
