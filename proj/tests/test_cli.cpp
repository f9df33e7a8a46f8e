#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string toolPath() {
  if (const char* p = std::getenv("ORBITOPE_LAB_PATH")) return p;
#ifdef ORBITOPE_LAB_PATH
  return ORBITOPE_LAB_PATH;
#else
  FAIL("ORBITOPE_LAB_PATH not set");
  return "";
#endif
}

int runTool(const std::string& args, const fs::path& stdout_file) {
  std::string cmd = toolPath() + " " + args + " > " + stdout_file.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WEXITSTATUS(rc);
}

fs::path freshDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("orbitope_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void writeConfig(const fs::path& path, const Json& doc) {
  std::ofstream out(path);
  out << doc.dump(2) << "\n";
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("polytope command writes vertices") {
  fs::path dir = freshDir("polytope");
  fs::path cfg = dir / "config.json";
  writeConfig(cfg, Json{{"group", {{"family", "SL_R"}, {"n", 3}}},
                        {"representation", "standard"},
                        {"command", "polytope"},
                        {"output_dir", (dir / "out").string()}});
  CHECK(runTool("run " + cfg.string(), dir / "stdout.txt") == 0);

  Json out = Json::parse(slurp(dir / "out" / "polytope.json"));
  REQUIRE(out["vertices"].size() == 3);
  REQUIRE(out["facets"].size() == 3);
  // Vertex lengths all 2/3 * sqrt(3/2) in the trace norm: check squared norms.
  for (const auto& v : out["vertices"]) {
    double sq = 0.0;
    for (const auto& c : v) sq += c.get<double>() * c.get<double>();
    CHECK(std::abs(sq - 2.0 / 3.0) < 1e-10);
  }
  std::string csv = slurp(dir / "out" / "vertices.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
}

TEST_CASE("boundary command counts components") {
  fs::path dir = freshDir("boundary");
  fs::path cfg = dir / "config.json";
  writeConfig(cfg, Json{{"group", {{"family", "SL_R"}, {"n", 4}}},
                        {"command", "boundary"},
                        {"output_dir", (dir / "out").string()}});
  CHECK(runTool("run " + cfg.string(), dir / "stdout.txt") == 0);
  Json out = Json::parse(slurp(dir / "out" / "boundary.json"));
  CHECK(out["count"].get<int>() == 3);
  CHECK(out["components"].size() == 3);
}

TEST_CASE("eigenbound command") {
  fs::path dir = freshDir("eigenbound");
  fs::path cfg = dir / "config.json";
  writeConfig(cfg, Json{{"group", {{"family", "SL_C"}, {"n", 2}}},
                        {"command", "eigenbound"},
                        {"params", {{"level", 4}}},
                        {"output_dir", (dir / "out").string()}});
  CHECK(runTool("run " + cfg.string(), dir / "stdout.txt") == 0);
  Json out = Json::parse(slurp(dir / "out" / "eigenbound.json"));
  CHECK(std::abs(out["bound"].get<double>() - 2.0) < 0.05);
  CHECK(out["balancing_residual"].get<double>() < 1e-8);
  CHECK(out["mesh_size"].get<int>() == 2562);
}

TEST_CASE("validate succeeds without running") {
  fs::path dir = freshDir("validate");
  fs::path cfg = dir / "config.json";
  writeConfig(cfg, Json{{"group", {{"family", "SL_R"}, {"n", 3}}},
                        {"command", "faces"}});
  CHECK(runTool("validate " + cfg.string(), dir / "stdout.txt") == 0);
  Json out = Json::parse(slurp(dir / "stdout.txt"));
  CHECK(out["status"] == "ok");
  CHECK(out["command"] == "faces");
}

TEST_CASE("bad configs exit with the config code and a JSON report") {
  fs::path dir = freshDir("bad");
  fs::path cfg = dir / "config.json";

  writeConfig(cfg, Json{{"group", {{"family", "SL_R"}, {"n", 3}}},
                        {"command", "frobnicate"}});
  CHECK(runTool("run " + cfg.string(), dir / "stdout.txt") == 2);
  Json err = Json::parse(slurp(dir / "stdout.txt"));
  CHECK(err["code"].get<int>() == 2);
  CHECK(err["module"] == "cli");
  CHECK(!err["message"].get<std::string>().empty());

  // Seed is required for stochastic commands.
  writeConfig(cfg, Json{{"group", {{"family", "SL_R"}, {"n", 3}}},
                        {"command", "bly"}});
  CHECK(runTool("run " + cfg.string(), dir / "stdout.txt") == 2);

  // Unsupported model family.
  writeConfig(cfg, Json{{"group", {{"family", "SP_R"}, {"n", 4}}},
                        {"command", "polytope"}});
  CHECK(runTool("run " + cfg.string(), dir / "stdout.txt") == 2);

  // A reducible representation surfaces its own error code.
  writeConfig(cfg, Json{{"group", {{"family", "SL_R"}, {"n", 2}}},
                        {"representation", "tensor(standard, standard)"},
                        {"command", "polytope"}});
  CHECK(runTool("run " + cfg.string(), dir / "stdout.txt") == 10);

  CHECK(runTool("run " + (dir / "missing.json").string(), dir / "stdout.txt") == 2);
}

TEST_CASE("seeded runs are byte-identical") {
  fs::path dir = freshDir("determinism");
  Json base{{"group", {{"family", "SL_R"}, {"n", 3}}},
            {"command", "furstenberg"},
            {"seed", 77},
            {"params", {{"atoms", 200}, {"t", 20.0}, {"beta", {0.9, 0.3}}}}};
  for (int run = 0; run < 2; ++run) {
    Json doc = base;
    doc["output_dir"] = (dir / ("out" + std::to_string(run))).string();
    fs::path cfg = dir / ("config" + std::to_string(run) + ".json");
    writeConfig(cfg, doc);
    CHECK(runTool("run " + cfg.string(), dir / "stdout.txt") == 0);
  }
  CHECK(slurp(dir / "out0" / "furstenberg.json") == slurp(dir / "out1" / "furstenberg.json"));
  CHECK(slurp(dir / "out0" / "pushforward.csv") == slurp(dir / "out1" / "pushforward.csv"));
  Json out = Json::parse(slurp(dir / "out0" / "furstenberg.json"));
  CHECK(out["weak_distance"].get<double>() < 1e-3);
  CHECK(out["moment_identity_gap"].get<double>() < 1e-10);
}
