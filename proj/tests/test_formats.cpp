#include <regex>
#include <sstream>

#include "doctest.h"
#include "strata/error.hpp"
#include "strata/formats.hpp"

using namespace strata;

namespace {

int count(const std::string& text, const std::regex& pattern) {
  return static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), pattern), std::sregex_iterator()));
}

}  // namespace

TEST_CASE("strata rows") {
  const FieldPtr f5 = make_field(5, 1);
  const StrataReport report = strata_report(unicritical_table(*f5, 2, 1));
  CHECK(emit_csv({strata_row(5, 1, 2, 1, report)}, Schema::strata) ==
        "p,r,d,alpha_code,q,periodic_count,tail_length,w0_num,w0_den,strata_json\n"
        "5,1,2,1,5,3,1,2,5,\"{\"\"0\"\":2}\"\n");
  CHECK(strata_json(strata_report(unicritical_table(*f5, 2, 0))) == "{\"0\":2,\"1\":1}");
  CHECK_THROWS_AS(emit_csv({{"1", "2"}}, Schema::strata), Error);
}

TEST_CASE("empty sweep emits the header only") {
  SweepResult empty;
  CHECK(sweep_csv(empty) == "p,r,d,alpha_code,q,periodic_count,tail_length,w0_num,w0_den,strata_json\n");
}

TEST_CASE("wreath rows") {
  const std::string csv = emit_csv({wreath_row(2, fix_exact(2, 0, FixMode::rational)),
                                    wreath_row(2, fix_exact(2, 4, FixMode::rational))},
                                   Schema::wreath);
  std::istringstream in(csv);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  CHECK(header == "d,n,fix_num,fix_den,fix_float,band_lower,band_upper,in_band");
  CHECK(first == "2,0,1,1,1,,,");
  const CsvRow row = parse_csv_line(second);
  REQUIRE(row.size() == 8);
  CHECK(row[2] == "8463");
  CHECK(row[3] == "32768");
  CHECK(std::stold(row[4]) == doctest::Approx(8463.0 / 32768));
  CHECK(row[7] == "true");
}

TEST_CASE("bounds rows") {
  BoundParams params;
  params.p = 7;
  params.r = BigInt(3);
  params.d = 2;
  params.n = 4;
  const std::string csv = emit_csv({bounds_row(eval_bound(Theorem::quadcor, params))}, Schema::bounds);
  CHECK(csv.rfind("theorem,p,r,d,m,n,log_base,lower,upper,empirical_num,empirical_den,in_force,label\n", 0) == 0);
  const CsvRow row = parse_csv_line(csv.substr(csv.find('\n') + 1, csv.size() - csv.find('\n') - 2));
  CHECK(row[0] == "quadcor");
  CHECK(row[4] == "");
  CHECK(row[6] == "natural");
  CHECK(row[7] == "");
  CHECK(row[11] == "false");
  CHECK(row[12] == "EXTRAPOLATED");
}

TEST_CASE("csv quoting round-trips") {
  const CsvRow fields{"plain", "with,comma", "with \"quote\"", "", "{\"a\":[1,2]}"};
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    const std::string csv = emit_csv({{fields[i], "", "", "", "", "", "", ""}}, Schema::wreath);
    const std::string body = csv.substr(csv.find('\n') + 1);
    line += body.substr(0, body.find(",,,,,,,\n"));
  }
  CHECK(parse_csv_line(line) == fields);
  CHECK_THROWS_AS(parse_csv_line("\"open"), Error);
}

TEST_CASE("sweep CSV round-trips") {
  for (const auto& [p, r, d] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{{5, 1, 2}, {3, 3, 2}, {2, 4, 3}}) {
    const SweepResult sweep =
        sweep_family(make_field(p, r), d, 5, AlphaFilter::all, 1, std::vector<WmnRequest>{{0, 2}, {1, 4}});
    CHECK(parse_sweep_csv(sweep_csv(sweep)) == sweep);
  }
  const SweepResult prim = sweep_family(make_field(2, 4), 2, 3, AlphaFilter::primitive_only);
  CHECK(parse_sweep_csv(sweep_csv(prim)) == prim);
  CHECK_THROWS_AS(parse_sweep_csv("a,b\n"), Error);
}

TEST_CASE("DOT output") {
  const FieldPtr f5 = make_field(5, 1);
  const FunctionTable t = unicritical_table(*f5, 2, 1);
  const std::string dot = emit_dot(t, tail_depths(t));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count(dot, std::regex(R"(\d+ -> \d+;)")) == 5);
  CHECK(count(dot, std::regex(R"(label=)")) == 5);
  CHECK(count(dot, std::regex(R"(doublecircle)")) == 3);
  CHECK(dot.find("  3 [label=\"3\", shape=square, tooltip=\"W_0\"]") != std::string::npos);
  CHECK(dot.find("  4 [label=\"4\", shape=square, tooltip=\"W_0\"]") != std::string::npos);

  const FieldPtr f3 = make_field(3, 1);
  const FunctionTable id = unicritical_table(*f3, 1, 0);
  const std::string loops = emit_dot(id, tail_depths(id));
  for (int x = 0; x < 3; ++x) CHECK(loops.find(std::to_string(x) + " -> " + std::to_string(x) + ";") != std::string::npos);
  CHECK(count(loops, std::regex("doublecircle")) == 3);

  const FunctionTable star(std::vector<std::uint32_t>(4, 1));
  const std::string s = emit_dot(star, tail_depths(star));
  CHECK(count(s, std::regex(R"(-> 1;)")) == 4);
  CHECK(count(s, std::regex("doublecircle")) == 1);

  const FunctionTable big(std::vector<std::uint32_t>(5001, 0));
  CHECK_THROWS_AS(emit_dot(big, tail_depths(big)), Error);
}
