#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "strata/cli.hpp"

using namespace strata;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("strata command") {
  const Run r = run({"strata", "--p", "5", "--r", "1", "--d", "2", "--alpha", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("periodic 3\n") != std::string::npos);
  CHECK(r.out.find("W_0 2\n") != std::string::npos);

  const Run csv = run({"strata", "--p", "5", "--d", "2", "--alpha", "1", "--format", "csv"});
  CHECK(csv.out.find("5,1,2,1,5,3,1,2,5,") != std::string::npos);

  const Run dot = run({"strata", "--p", "5", "--alpha", "1", "--format", "dot"});
  CHECK(dot.out.rfind("digraph", 0) == 0);
}

TEST_CASE("wreath command") {
  const Run r = run({"wreath", "--d", "2", "--max-n", "4", "--exact"});
  CHECK(r.code == 0);
  const std::string last = r.out.substr(r.out.rfind("n=4"));
  CHECK(last.find("n=4 ") == 0);
  CHECK(last.size() >= 11);
  CHECK(last.substr(last.size() - 11) == "8463/32768\n");

  CHECK(run({"wreath", "--d", "2", "--max-n", "40"}).code == 1);
  CHECK(run({"wreath", "--d", "2", "--max-n", "40", "--float"}).code == 0);
  CHECK(run({"wreath", "--d", "2", "--max-n", "3", "--format", "csv"}).out.find("3,39,128") != std::string::npos);
}

TEST_CASE("check command") {
  CHECK(run({"check", "--suite", "partition"}).code == 0);
  CHECK(run({"check", "--suite", "threshold"}).out.find("PASS") != std::string::npos);
  CHECK(run({"check", "--suite", "nonsense"}).code == 2);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"strata", "--p"}).code == 2);
  CHECK(run({"strata", "--p", "five"}).code == 2);
  CHECK(run({"strata", "--p", "6"}).code == 1);
  CHECK(run({"strata", "--p", "5", "--alpha", "7"}).code == 1);
  CHECK(run({"strata", "--p", "5", "--format", "png"}).code == 2);
  CHECK(run({"bounds", "--p", "5", "--theorem", "nonsense"}).code == 2);
  CHECK(run({"bounds", "--p", "5", "--theorem", "aaroncorollary", "--n", "3"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"strata", "--help"}).out.find("--alpha") != std::string::npos);
  const Run bad = run({"sweep"});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("other commands") {
  const Run info = run({"field-info", "--p", "3", "--r", "2"});
  CHECK(info.code == 0);
  CHECK(info.out.find("modulus_code 10") != std::string::npos);

  const Run avg = run({"average-quadratics", "--p", "5", "--m", "0", "--n", "1", "--mode", "brute_force"});
  CHECK(avg.out.find("mean_w_mn 2/5") != std::string::npos);

  const Run scan = run({"scan-threshold", "--log-base", "ten"});
  CHECK(scan.out.find("stable_threshold 134") != std::string::npos);

  const Run bounds = run({"bounds", "--p", "7", "--r", "3", "--d", "2", "--m", "1", "--n", "3", "--theorem", "genhead",
                          "--compare", "--format", "csv"});
  CHECK(bounds.code == 0);
  CHECK(bounds.out.find("EXTRAPOLATED") != std::string::npos);

  const Run all = run({"bounds", "--p", "101", "--r", "1000000000000000000000", "--n", "6", "--empirical", "1/10"});
  CHECK(all.code == 0);
  CHECK(all.out.find("strongest") != std::string::npos);

  const Run big_r = run({"bounds", "--p", "5", "--r", "129", "--d", "2", "--n", "3", "--theorem", "technical"});
  CHECK(big_r.out.find("[IN_FORCE]") != std::string::npos);
}

TEST_CASE("sweep output is independent of the worker count") {
  const Run one = run({"sweep", "--p", "101", "--r", "1", "--d", "2", "--workers", "1"});
  const Run eight = run({"sweep", "--p", "101", "--r", "1", "--d", "2", "--workers", "8"});
  CHECK(one.code == 0);
  CHECK(one.out == eight.out);
  CHECK(std::count(one.out.begin(), one.out.end(), '\n') == 103);

  const std::string path = "sweep_output_test.csv";
  CHECK(run({"sweep", "--p", "7", "--d", "3", "--output", path}).code == 0);
  std::ifstream file(path);
  std::stringstream content;
  content << file.rdbuf();
  CHECK(content.str() == run({"sweep", "--p", "7", "--d", "3"}).out);
  std::remove(path.c_str());
}
