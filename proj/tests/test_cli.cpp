#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "khab/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("KHAB_CLI");
  REQUIRE_MESSAGE(env != nullptr, "KHAB_CLI must point at the khab binary");
  return env;
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  Table t;
  std::string line;
  REQUIRE(std::getline(in, line));
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (...) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    t.rows.push_back(row);
  }
  return t;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("khab_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("kernel command") {
  TempDir dir;
  const std::string out = dir.file("kernel.csv");
  CHECK(run("kernel --n 1 --grid 0.5,1 --out " + out) == 0);
  const Table t = read_csv(out);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.header[1] == "A_n");
  CHECK(t.rows[0][0] == doctest::Approx(0.5));
  CHECK(t.rows[0][1] == doctest::Approx(0.19314718055994531).epsilon(1e-14));
  CHECK(t.rows[0][2] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(t.rows[1][1] == 0.0);
  CHECK(t.rows[1][2] == 0.0);

  const std::string out0 = dir.file("kernel0.csv");
  CHECK(run("kernel --n 0 --grid 1 --out " + out0) == 0);
  const Table t0 = read_csv(out0);
  CHECK(t0.rows[0][2] == doctest::Approx(-1.0));

  CHECK(run("kernel --n 1 --grid \"\" --out " + dir.file("x.csv")) == 2);
  CHECK(run("kernel --n 1 --grid 0.5,2 --out " + dir.file("x.csv")) == 2);  // x > 1
  CHECK(run("kernel --n 99 --grid 0.5 --out " + dir.file("x.csv")) == 2);
}

TEST_CASE("transform command") {
  TempDir dir;
  const std::string q1 = dir.file("q1.json");
  write(q1, R"({"terms":[{"c":1.0,"beta":0.0}]})");

  const std::string out = dir.file("g.csv");
  CHECK(run("transform --q " + q1 + " --n 2 --grid 3 --out " + out) == 0);
  const Table t = read_csv(out);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][0] == doctest::Approx(3.0));
  CHECK(t.rows[0][1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(t.rows[0][2] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(t.rows[0][3] <= 1e-10);

  const std::string qz = dir.file("qz.json");
  write(qz, R"({"terms":[]})");
  const std::string outz = dir.file("gz.csv");
  CHECK(run("transform --q " + qz + " --n 1 --grid 1,2 --out " + outz) == 0);
  for (const auto& row : read_csv(outz).rows) CHECK(row[1] == 0.0);

  const std::string qbad = dir.file("qbad.json");
  write(qbad, R"({"terms":[{"c":1.0,"beta":-1.5}]})");
  CHECK(run("transform --q " + qbad + " --n 2 --grid 1 --out " + dir.file("x.csv")) == 2);

  CHECK(run("transform --q " + dir.file("missing.json") + " --n 2 --grid 1 --out " +
            dir.file("x.csv")) == 1);
}

TEST_CASE("invert command") {
  TempDir dir;
  const std::string g = dir.file("g.json");
  write(g, R"({"terms":[{"c":0.25,"beta":1.0}]})");
  const std::string out = dir.file("q.csv");
  CHECK(run("invert --g " + g + " --n 3 --grid 0.9,1.7,4 --out " + out) == 0);
  for (const auto& row : read_csv(out).rows)
    CHECK(row[1] == doctest::Approx(1.0).epsilon(1e-12));

  const std::string gz = dir.file("gz.json");
  write(gz, R"({"terms":[]})");
  const std::string outz = dir.file("qz.csv");
  CHECK(run("invert --g " + gz + " --n 2 --grid 1,2 --out " + outz) == 0);
  for (const auto& row : read_csv(outz).rows) CHECK(row[1] == 0.0);
}

TEST_CASE("transform output feeds back into invert") {
  TempDir dir;
  const std::string q = dir.file("q.json");
  write(q, R"({"terms":[{"c":1.0,"beta":0.0},{"c":0.5,"beta":1.5}]})");

  const std::string g = dir.file("g.csv");
  CHECK(run("transform --q " + q + " --n 2 --grid log:0.1:10:200 --out " + g) == 0);

  const std::string qhat = dir.file("qhat.csv");
  CHECK(run("invert --g " + g + " --n 2 --grid log:0.5:2:9 --mode numeric --out " + qhat) == 0);
  const Table t = read_csv(qhat);
  REQUIRE(t.rows.size() == 9);
  for (const auto& row : t.rows) {
    const double truth = 1.0 + 0.5 * std::pow(row[0], 1.5);
    CHECK(row[1] == doctest::Approx(truth).epsilon(1e-3));
  }
}

TEST_CASE("check command") {
  TempDir dir;
  const std::string rep = dir.file("rep.json");
  CHECK(run("check --q extremal --alpha 0.5 --n 2 --grid log:1e-2:1e2:50 --out " + rep) == 0);
  const std::string text = khab::read_file(rep);
  CHECK(text.find("\"verdict\": \"consistent\"") != std::string::npos);

  CHECK(run("check --q extremal --q-scale 2 --alpha 0.5 --n 1 --grid log:1e-2:1e2:50 --out " +
            rep) == 0);
  CHECK(khab::read_file(rep).find("premise-violated") != std::string::npos);

  // divergent conclusion integral: q = 1 with alpha = 0.25
  const std::string q1 = dir.file("q1.json");
  write(q1, R"({"terms":[{"c":1.0,"beta":0.0}]})");
  CHECK(run("check --q " + q1 + " --alpha 0.25 --n 1 --grid log:1e-2:1e2:20 --out " + rep) == 3);
  CHECK(khab::read_file(rep).find("inconclusive") != std::string::npos);
}

TEST_CASE("sweep command") {
  TempDir dir;
  const std::string cfg = dir.file("sweep.json");
  write(cfg, R"({"alphas":[0.5],"ns":[1,2,3],"family":"extremal","grid":"log:1e-2:1e2:60"})");
  const std::string out = dir.file("sweep.csv");
  CHECK(run("sweep --config " + cfg + " --out " + out) == 0);
  const Table t = read_csv(out);
  REQUIRE(t.rows.size() == 3);
  for (const auto& row : t.rows) CHECK(row[4] == doctest::Approx(1.0).epsilon(1e-3));

  const std::string cfg2 = dir.file("sweep2.json");
  write(cfg2, R"({"alphas":[],"ns":[],"family":"extremal"})");
  const std::string out2 = dir.file("sweep2.csv");
  CHECK(run("sweep --config " + cfg2 + " --out " + out2) == 0);
  CHECK(read_csv(out2).rows.empty());

  const std::string cfg3 = dir.file("sweep3.json");
  write(cfg3, R"({"alphas":[0.25,0.5],"ns":[1,2],"family":"extremal","grid":"log:1e-2:1e2:40"})");
  const std::string out3 = dir.file("sweep3.csv");
  CHECK(run("sweep --config " + cfg3 + " --out " + out3) == 0);
  CHECK(read_csv(out3).rows.size() == 4);

  CHECK(run("sweep --config " + dir.file("sweep_bad.json") + " --out " + out3) == 1);
  write(dir.file("sweep_bad.json"), "{");
  CHECK(run("sweep --config " + dir.file("sweep_bad.json") + " --out " + out3) == 2);
}

TEST_CASE("identical runs produce identical bytes") {
  TempDir dir;
  const std::string cfg = dir.file("sweep.json");
  write(cfg, R"({"alphas":[0.4],"ns":[1,2],"family":"extremal","grid":"log:1e-2:1e2:40"})");
  const std::string out_a = dir.file("a.csv");
  const std::string out_b = dir.file("b.csv");
  CHECK(run("sweep --config " + cfg + " --out " + out_a) == 0);
  CHECK(run("sweep --config " + cfg + " --out " + out_b) == 0);
  CHECK(khab::read_file(out_a) == khab::read_file(out_b));
  CHECK(!khab::read_file(out_a).empty());
}

TEST_CASE("argument errors") {
  TempDir dir;
  CHECK(run("transform --n 2") == 2);            // missing required options
  CHECK(run("nonsense-subcommand") == 2);
  CHECK(run("invert --g x.txt --n 2 --grid 1 --out " + dir.file("o.csv")) == 2);  // bad suffix
}
