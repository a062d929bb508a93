#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" TAUW_CLI_PATH "\" " + args +
                          " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("tauw_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("table") {
  const fs::path t105 = scratch() / "t105.txt";
  const Run r = run("table --limit 105 --out " + t105.string());
  CHECK(r.code == 0);
  CHECK(r.out.rfind("limit=105 checksum=", 0) == 0);
  const std::string text = slurp(t105);
  CHECK(text.find("\n105\t-20380127040\n") != std::string::npos);

  const Run one = run("table --limit 1");
  CHECK(one.code == 0);
  CHECK(one.out == "TAU-TABLE v1 limit=1\n1\t1\n");
  CHECK(run("table --limit 0").code == 3);
  CHECK(run("table --limit 2000001").code == 3);
}

TEST_CASE("verify") {
  CHECK(run("verify --suite zero-sums").code == 0);
  CHECK(run("verify --suite mod691 --limit 100000").code == 0);
  CHECK(run("verify --suite nonsense").code == 3);

  // A corrupted table file fails the sweep with a violation report.
  const fs::path good = scratch() / "t300.txt";
  REQUIRE(run("table --limit 300 --out " + good.string()).code == 0);
  std::string text = slurp(good);
  const auto pos = text.find("\n97\t");
  REQUIRE(pos != std::string::npos);
  const auto end = text.find('\n', pos + 1);
  text.replace(pos, end - pos, "\n97\t1");
  const fs::path bad = scratch() / "bad300.txt";
  spit(bad, text);
  const Run r = run("verify --suite mod691 --table " + bad.string());
  CHECK(r.code == 1);
  CHECK(r.out.rfind("CHECK mod691 n=97 ", 0) == 0);

  // The environment variable supplies the default table.
  CHECK(run("verify --suite mod691", "TAU_TABLE_PATH=" + bad.string()).code == 1);
  CHECK(run("verify --suite mod691", "TAU_TABLE_PATH=" + good.string()).code == 0);
  CHECK(run("verify --suite reference --table " + good.string()).code == 0);
  CHECK(run("verify --suite mod691 --table " + (scratch() / "missing.txt").string()).code == 3);
}

TEST_CASE("represent") {
  const Run one = run("represent --target 1");
  REQUIRE(one.code == 0);
  const auto doc = nlohmann::json::parse(one.out);
  CHECK(doc["plus"] == nlohmann::json::array({1}));
  CHECK(doc["target"] == "1");

  const Run res = run("represent --target 370943 --max-terms 198 --residue");
  REQUIRE(res.code == 0);
  CHECK(nlohmann::json::parse(res.out)["plus"].size() == 198);

  CHECK(run("represent --target 1" + std::string(60, '0')).code == 3);
  CHECK(run("represent --target 12x").code == 3);
  CHECK(run("represent --target 9999 --max-terms 2").code == 2);
  CHECK(run("represent --target 5", "TAUW_FORCE_MISMATCH=1").code == 1);
}

TEST_CASE("modp") {
  CHECK(run("modp --p 29 --lambda 0 --mode pm32").code == 0);
  CHECK(run("modp --p 7 --mode sum96").code == 3);
  const Run s16 = run("modp --p 29 --lambda 28 --mode sum16");
  REQUIRE(s16.code == 0);
  const auto doc = nlohmann::json::parse(s16.out);
  CHECK(doc["kind"] == "sum16");
  CHECK(doc["lambda"] == 28);
  CHECK(run("modp --p 29 --lambda 29").code == 3);
  CHECK(run("modp --p 33 --lambda 1").code == 3);
  CHECK(run("modp --p 101 --lambda 1 --window-cap 40").code == 2);
  CHECK(run("modp --p 31 --lambda 3 --mode sum96", "TAUW_FORCE_MISMATCH=1").code == 1);
}

TEST_CASE("check") {
  const fs::path cert = scratch() / "pm32.json";
  REQUIRE(run("modp --p 31 --lambda 7 --mode pm32 --out " + cert.string()).code == 0);
  const Run ok = run("check " + cert.string());
  CHECK(ok.code == 0);
  CHECK(ok.out == "OK pm32 residue=7 lambda=7 p=31\n");

  auto doc = nlohmann::json::parse(slurp(cert));
  doc["lambda"] = 8;
  const fs::path tampered = scratch() / "tampered.json";
  spit(tampered, doc.dump());
  CHECK(run("check " + tampered.string()).code == 1);

  const std::string text = slurp(cert);
  const fs::path truncated = scratch() / "truncated.json";
  spit(truncated, text.substr(0, text.size() / 2));
  CHECK(run("check " + truncated.string()).code == 3);
  CHECK(run("check " + (scratch() / "none.json").string()).code == 3);

  const fs::path icert = scratch() / "int.json";
  REQUIRE(run("represent --target -777 --out " + icert.string()).code == 0);
  const Run iok = run("check " + icert.string());
  CHECK(iok.code == 0);
  CHECK(iok.out == "OK integer_sum sum=-777 target=-777\n");
}

TEST_CASE("bench") {
  const Run r = run("bench --limit 10 --reps 3");
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int builds = 0, medians = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("metric=", 0) == 0);
    if (line.rfind("metric=table_build rep=", 0) == 0) ++builds;
    if (line.find("_median ") != std::string::npos) ++medians;
  }
  CHECK(builds == 3);
  CHECK(medians == 2);
  CHECK(run("bench --limit 0").code == 3);
}

TEST_CASE("cleanup") { fs::remove_all(scratch()); }
