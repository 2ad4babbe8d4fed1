#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = isc::cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

// exports fixtures once into a scratch directory
const fs::path& dir() {
  static const fs::path d = [] {
    fs::path p = fs::temp_directory_path() / "isc_cli_tests";
    fs::create_directories(p);
    for (const char* n : {"s2", "hopf", "constant-s2", "cone-t2", "hopf-x", "hopf-x-model"})
      REQUIRE(run({"fixture", n, "--out", (p / (std::string(n) + ".json")).string()}).code == 0);
    return p;
  }();
  return d;
}

std::string f(const char* name) { return (dir() / (std::string(name) + ".json")).string(); }

}  // namespace

TEST_CASE("fixture listing") {
  Run r = run({"fixture", "--list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cp2-euler") != std::string::npos);
  CHECK(run({"fixture", "no-such-thing"}).code == 3);
}

TEST_CASE("exit codes") {
  CHECK(run({"ic", "--space", f("cone-t2"), "--perversity", "zero"}).code == 0);
  CHECK(run({"check", "--space", f("s2"), "--sheaf", f("constant-s2"), "--perversity", "zero"}).code == 0);
  CHECK(run({"check", "--space", f("s2"), "--sheaf", f("hopf"), "--perversity", "zero"}).code == 2);
  CHECK(run({"obstruct", "--space", f("s2"), "--sheaf", f("hopf"), "--qbar", "0"}).code == 2);
  CHECK(run({"obstruct", "--space", f("s2"), "--sheaf", f("constant-s2"), "--qbar", "0"}).code == 0);
  CHECK(run({"is", "--space", f("hopf-x"), "--sheaf", f("hopf-x-model"), "--perversity", "lower-middle"}).code == 2);
  CHECK(run({"is", "--space", f("missing"), "--perversity", "zero"}).code == 3);
  CHECK(run({"is", "--space", f("cone-t2"), "--perversity", "2:5"}).code == 3);
  CHECK(run({"is", "--space", f("cone-t2")}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("reports") {
  Run r = run({"is", "--space", f("cone-t2"), "--perversity", "total", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "degree,dim\n0,0\n1,2\n2,1\n3,0\n");
  Run j = run({"obstruct", "--space", f("s2"), "--sheaf", f("hopf"), "--qbar", "0"});
  CHECK(j.out.find("\"verdict\": \"OBSTRUCTED\"") != std::string::npos);
  CHECK(j.out.find("\"r\": 2") != std::string::npos);
  fs::path out = dir() / "report.txt";
  CHECK(run({"ss", "--space", f("s2"), "--sheaf", f("hopf"), "--format", "ascii", "--out", out.string()}).code == 0);
  CHECK(fs::file_size(out) > 0);
}

TEST_CASE("fixed seeds give identical bytes") {
  std::vector<std::string> args{"is", "--space", f("cone-t2"), "--perversity", "lower-middle", "--seed", "7"};
  CHECK(run(args).out == run(args).out);
}
