#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "trajquad/cli.hpp"
#include "trajquad/errors.hpp"

using namespace trajquad;
using cli::Json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "trajquad");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string data_rows(const std::string& doc) {
  std::istringstream is(doc);
  std::string line, out;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') out += line + '\n';
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("golden documents") {
    auto stark = invoke({"--command", "stark", "--order", "12"});
    CHECK(stark.code == 0);
    CHECK(stark.out == slurp(std::filesystem::path(TRAJQUAD_GOLDEN_DIR) / "stark_order12.csv"));
    auto coul = invoke({"--command", "coulomb", "--potential", "r^2", "--order", "8"});
    CHECK(coul.code == 0);
    CHECK(coul.out == slurp(std::filesystem::path(TRAJQUAD_GOLDEN_DIR) / "coulomb_r2_order8.csv"));
  }

  TEST_CASE("config echo round trip") {
    for (const auto& c : cli::commands()) {
      CAPTURE(c);
      auto cfg = cli::resolve(Json{{"command", c}});
      for (const char* fmt : {"csv", "json"}) {
        cfg.params["format"] = fmt;
        std::ostringstream os;
        CHECK(cli::run(cfg, os) == 0);
        CHECK(cli::parse_echo(os.str()) == cfg);
      }
    }
  }

  TEST_CASE("flags override the config file") {
    auto dir = std::filesystem::temp_directory_path() / "trajquad_cli_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "cfg.json";
    std::ofstream(path) << R"({"command": "perturb", "p": 2, "order": 3, "g": 1})";
    auto r = invoke({"--config", path.string(), "--order", "2", "--set", "g=2"});
    REQUIRE(r.code == 0);
    auto cfg = cli::parse_echo(r.out);
    CHECK(cfg.params["order"] == 2);
    CHECK(cfg.params["p"] == 2);
    CHECK(cfg.params["g"] == 2);
    CHECK(data_rows(r.out).find("1,3/4 * ĝ^2,3/16,0.1875\n") != std::string::npos);

    auto file = dir / "out.json";
    auto w = invoke({"--command", "perturb", "--format", "json", "--out", file.string()});
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    auto j = Json::parse(slurp(file));
    CHECK(j["trajquad_version"] == TRAJQUAD_VERSION);
    CHECK(j["config"]["command"] == "perturb");
    CHECK(j["results"].is_array());
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("perturb rows carry exact and decimal values") {
    auto r = invoke({"--command", "perturb", "--order", "3"});
    REQUIRE(r.code == 0);
    auto rows = data_rows(r.out);
    CHECK(rows.find("1,3/4 * ĝ^2,3/4,0.75\n") != std::string::npos);
    CHECK(rows.find("2,-21/8 * ĝ^5,-21/8,-2.625\n") != std::string::npos);
  }

  TEST_CASE("oracle ground state") {
    auto r = invoke({"--command", "oracle", "--format", "json", "--levels", "1", "--n", "600"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["results"][0]["eigenvalue"].get<double>() == doctest::Approx(0.5).epsilon(1e-7));
  }

  TEST_CASE("exit codes") {
    CHECK(invoke({"--version"}).out == std::string("trajquad ") + TRAJQUAD_VERSION + "\n");
    CHECK(invoke({"--command", "stark", "--set", "bogus=1"}).code == 1);
    CHECK(invoke({"--command", "stark", "--order", "99"}).code == 1);
    CHECK(invoke({"--command", "nothing"}).code == 1);
    CHECK(invoke({"--no-such-flag"}).code == 1);
    CHECK(invoke({"--config", "/nonexistent/cfg.json"}).code == 1);
    CHECK(invoke({"--command", "gexpand", "--potential", "1/2*x^2 - x^3"}).code == 1);
    CHECK(invoke({"--command", "coulomb", "--potential", "1/r"}).code != 0);
    // too coarse for the excited-state extraction
    auto e = invoke({"--command", "excited", "--potential", "1/2*x^2 + 1/10*x^4", "--points", "41", "--levels", "[2]"});
    CHECK(e.code == 3);
    CHECK(e.err.find("ExtractionFailure") != std::string::npos);
    // a breakdown in the hierarchy
    CHECK(invoke({"--command", "gexpand", "--potential", "1/2*x^4 - x^2 + 1/2", "--set", "origin=1", "--set",
                  "direction=-1", "--extent", "3", "--points", "41"})
              .code == 2);
  }

  TEST_CASE("greens-check reports every identity") {
    auto r = invoke({"--command", "greens-check", "--format", "json", "--points", "2001"});
    CHECK(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["results"].size() == 16);
    CHECK(cli::parse_echo(r.out).params["points"] == 2001);
  }
}
