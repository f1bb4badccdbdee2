#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RIPLAYER_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("riplayer-test-" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path_ / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }

 private:
  fs::path path_;
};

const TempDir& tmp() {
  static TempDir dir;
  return dir;
}

std::string line_csv(const std::string& name, const std::vector<double>& coords) {
  std::string content;
  for (double c : coords) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g\n", c);
    content += buf;
  }
  return tmp().file(name, content);
}

}  // namespace

TEST_CASE("build emits the hierarchy as JSON") {
  const std::string x = line_csv("x.csv", {0, 1, 3, 7});
  const RunResult r = run_cli("build --points " + x + " --k 1 --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  REQUIRE(j["segments"].size() == 3);
  CHECK(j["segments"][0]["birth"] == 1);
  CHECK(j["segments"][1]["birth"] == 2);
  CHECK(j["segments"][2]["birth"] == 4);
  CHECK(j["segments"][2]["successor"].is_null());

  // identical invocation, identical bytes
  CHECK(run_cli("build --points " + x + " --k 1 --format json").output == r.output);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("build --k 1").exit_code == 1);  // no input
  const std::string x = line_csv("x.csv", {0, 1, 3, 7});
  CHECK(run_cli("build --points " + x + " --k -1").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("validation failures exit 2 with a reported triple") {
  const std::string bad = tmp().file("bad.txt", "3\n1\n5 2\n");
  const RunResult r = run_cli("build --dist-matrix " + bad + " --k 0");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("TriangleViolation") != std::string::npos);
  CHECK(r.output.find("(0,1,2)") != std::string::npos);

  const std::string empty = tmp().file("empty.csv", "");
  CHECK(run_cli("layers --points " + empty + " --k 0").exit_code == 2);
}

TEST_CASE("layers reports parameters") {
  const std::string x = line_csv("x2.csv", {0, 1, 3, 7});
  const RunResult r = run_cli("layers --points " + x + " --k 1 --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["layer_parameters"] == std::vector<double>{1, 2, 4});
  CHECK(j["branch_parameters"] == std::vector<double>{1});

  const RunResult r0 = run_cli("layers --points " + x + " --k 0 --format json");
  const auto j0 = nlohmann::json::parse(r0.output);
  CHECK(j0["segments"].size() == 7);
  for (const auto& seg : j0["segments"]) CHECK(seg["branch"] == true);

  const RunResult dot = run_cli("layers --points " + x + " --k 1 --format dot");
  CHECK(dot.exit_code == 0);
  CHECK(dot.output.find("digraph layer_poset") != std::string::npos);
}

TEST_CASE("stability on the falsifying pair exits 3 with L16 and L17") {
  const std::string x = line_csv("sx.csv", {0, 1, 3, 7});
  const std::string y = line_csv("sy.csv", {0, 1, 3, 7, 7.2});
  const RunResult r =
      run_cli("stability --points " + x + " --points-y " + y + " --k 0 --r 0.25");
  CHECK(r.exit_code == 3);
  const auto j = nlohmann::json::parse(r.output);
  std::set<std::string> failing;
  for (const auto& c : j["checks"])
    if (c["passed"] == false) failing.insert(c["id"].get<std::string>());
  CHECK(failing == std::set<std::string>{"L16", "L17"});
}

TEST_CASE("stability on an identity pair exits 0") {
  const std::string x = line_csv("ix.csv", {0, 1, 3, 7});
  const RunResult r = run_cli("stability --points " + x + " --points-y " + x + " --k 0");
  CHECK(r.exit_code == 0);
}

TEST_CASE("a superspace missing a subspace point exits 2") {
  const std::string x = line_csv("mx.csv", {0, 1, 3, 7});
  const std::string y = line_csv("my.csv", {0, 1, 3, 6.8, 7.2});
  const RunResult r = run_cli("stability --points " + x + " --points-y " + y + " --k 0");
  CHECK(r.exit_code == 2);
}

TEST_CASE("markdown report mirrors the JSON verdicts") {
  const std::string x = line_csv("mdx.csv", {0, 1, 3, 7});
  const std::string y = line_csv("mdy.csv", {0, 1, 3, 7, 7.2});
  const RunResult md = run_cli("stability --points " + x + " --points-y " + y +
                               " --k 0 --r 0.25 --format md");
  CHECK(md.exit_code == 3);
  CHECK(md.output.find("| L16 | ") != std::string::npos);
  CHECK(md.output.find("NO") != std::string::npos);
}

TEST_CASE("generate is deterministic per seed") {
  const RunResult a = run_cli("generate --seed 42 --trials 8");
  const RunResult b = run_cli("generate --seed 42 --trials 8");
  CHECK(a.output == b.output);
  CHECK(a.exit_code == b.exit_code);

  const RunResult empty = run_cli("generate --trials 0");
  CHECK(empty.exit_code == 0);
}

TEST_CASE("output lands in a file with -o") {
  const std::string x = line_csv("ox.csv", {0, 1, 3, 7});
  const std::string out = tmp().file("forest.json", "");
  const RunResult r = run_cli("build --points " + x + " --k 1 -o " + out);
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  nlohmann::json j;
  in >> j;
  CHECK(j["segments"].size() == 3);
}
