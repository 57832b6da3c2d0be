#include "strata/formats.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "strata/error.hpp"

namespace strata {

namespace {

std::string escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::uint64_t to_u64(const std::string& text) {
  std::size_t used = 0;
  const std::uint64_t v = std::stoull(text, &used);
  if (used != text.size()) throw Error(ErrorCode::SchemaViolation, "not an integer: " + text);
  return v;
}

constexpr const char* kDotShapes[] = {"square", "triangle", "diamond", "star", "Mcircle",
                                      "pentagon", "hexagon", "octagon", "invtriangle", "house"};

}  // namespace

const std::vector<std::string>& schema_columns(Schema schema) {
  static const std::vector<std::string> strata = {"p",  "r",           "d",           "alpha_code", "q",
                                                  "periodic_count", "tail_length", "w0_num",
                                                  "w0_den",         "strata_json"};
  static const std::vector<std::string> wreath = {"d",        "n",          "fix_num",    "fix_den",
                                                  "fix_float", "band_lower", "band_upper", "in_band"};
  static const std::vector<std::string> bounds = {"theorem", "p",     "r",     "d",
                                                  "m",       "n",     "log_base", "lower",
                                                  "upper",   "empirical_num", "empirical_den", "in_force",
                                                  "label"};
  switch (schema) {
    case Schema::strata: return strata;
    case Schema::wreath: return wreath;
    case Schema::bounds: return bounds;
  }
  return strata;
}

std::string emit_csv(const std::vector<CsvRow>& rows, Schema schema) {
  const auto& columns = schema_columns(schema);
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const CsvRow& row : rows) {
    if (row.size() != columns.size()) {
      throw Error(ErrorCode::SchemaViolation, "row has " + std::to_string(row.size()) + " fields, schema has " +
                                                  std::to_string(columns.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += escape(row[i]);
    }
    out += '\n';
  }
  return out;
}

CsvRow parse_csv_line(std::string_view line) {
  CsvRow fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) throw Error(ErrorCode::SchemaViolation, "unterminated quote");
  fields.push_back(std::move(current));
  return fields;
}

std::string strata_json(const StrataReport& report) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [n, size] : report.strata) j[std::to_string(n)] = size;
  return j.dump();
}

CsvRow strata_row(std::uint64_t p, unsigned r, unsigned d, std::uint64_t alpha_code, const StrataReport& report) {
  const Rational w0 = report.q ? report.w(0) : Rational(0);
  return {std::to_string(p),
          std::to_string(r),
          std::to_string(d),
          std::to_string(alpha_code),
          std::to_string(report.q),
          std::to_string(report.periodic_count),
          std::to_string(report.tail_length),
          w0.get_num().get_str(),
          w0.get_den().get_str(),
          strata_json(report)};
}

std::string format_float(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", x);
  return buf;
}

CsvRow wreath_row(unsigned d, const FixEntry& fix) {
  CsvRow row{std::to_string(d), std::to_string(fix.n), "", "", format_float(fix.value), "", "", ""};
  if (fix.exact) {
    row[2] = fix.exact->get_num().get_str();
    row[3] = fix.exact->get_den().get_str();
  }
  if (fix.n >= 1) {
    const JuulBand band = juul_band(d, fix.n);
    row[5] = format_float(band.lower);
    row[6] = format_float(band.upper);
    row[7] = band.contains(fix) ? "true" : "false";
  }
  return row;
}

CsvRow bounds_row(const BoundReport& report) {
  const BoundParams& params = report.params;
  const auto opt = [](const auto& v) { return v ? std::to_string(*v) : std::string(); };
  CsvRow row{std::string(to_string(report.theorem)),
             opt(params.p),
             params.r ? params.r->get_str() : "",
             std::to_string(report.hypotheses.d),
             opt(params.m),
             opt(params.n),
             std::string(to_string(params.log_base)),
             report.lower_value ? format_float(*report.lower_value) : "",
             report.upper_value ? format_float(*report.upper_value) : "",
             "",
             "",
             report.in_force ? "true" : "false",
             report.label()};
  if (report.empirical_value) {
    row[9] = report.empirical_value->get_num().get_str();
    row[10] = report.empirical_value->get_den().get_str();
  }
  return row;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::vector<CsvRow> rows;
  rows.reserve(sweep.per_alpha.size() + 1);
  for (const auto& [alpha, report] : sweep.per_alpha) {
    rows.push_back(strata_row(sweep.p, sweep.r, sweep.d, alpha, report));
  }
  if (!sweep.per_alpha.empty()) {
    const SweepAggregate& agg = sweep.aggregate;
    nlohmann::ordered_json j;
    j["filter"] = std::string(to_string(sweep.filter));
    j["mean_w"] = nlohmann::ordered_json::array();
    for (const Rational& x : agg.mean_w) j["mean_w"].push_back(to_fraction_string(x));
    j["mean_image"] = nlohmann::ordered_json::array();
    for (const Rational& x : agg.mean_image) j["mean_image"].push_back(to_fraction_string(x));
    j["mean_wmn"] = nlohmann::ordered_json::array();
    for (const auto& [req, value] : agg.mean_wmn) {
      j["mean_wmn"].push_back({{"m", req.m}, {"n", req.n}, {"value", to_fraction_string(value)}});
    }
    const Rational w0 = agg.mean_w.empty() ? Rational(0) : agg.mean_w[0];
    const std::uint64_t q = sweep.per_alpha.front().second.q;
    rows.push_back({std::to_string(sweep.p), std::to_string(sweep.r), std::to_string(sweep.d), "AGG",
                    std::to_string(q), std::to_string(agg.count), std::to_string(sweep.n_max),
                    w0.get_num().get_str(), w0.get_den().get_str(), j.dump()});
  }
  return emit_csv(rows, Schema::strata);
}

SweepResult parse_sweep_csv(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string buffer(text);
    std::istringstream in(buffer);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) lines.push_back(line);
    }
  }
  const auto& columns = schema_columns(Schema::strata);
  if (lines.empty() || parse_csv_line(lines[0]) != columns) {
    throw Error(ErrorCode::SchemaViolation, "missing strata header");
  }
  SweepResult sweep;
  bool saw_aggregate = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const CsvRow row = parse_csv_line(lines[i]);
    if (row.size() != columns.size()) throw Error(ErrorCode::SchemaViolation, "wrong column count");
    sweep.p = to_u64(row[0]);
    sweep.r = static_cast<unsigned>(to_u64(row[1]));
    sweep.d = static_cast<unsigned>(to_u64(row[2]));
    try {
      if (row[3] == "AGG") {
        saw_aggregate = true;
        sweep.n_max = to_u64(row[6]);
        const auto j = nlohmann::json::parse(row[9]);
        sweep.filter = parse_alpha_filter(j.at("filter").get<std::string>());
        SweepAggregate& agg = sweep.aggregate;
        agg.count = to_u64(row[5]);
        for (const auto& x : j.at("mean_w")) agg.mean_w.push_back(parse_fraction(x.get<std::string>()));
        for (const auto& x : j.at("mean_image")) agg.mean_image.push_back(parse_fraction(x.get<std::string>()));
        for (const auto& x : j.at("mean_wmn")) {
          agg.mean_wmn.emplace_back(WmnRequest{x.at("m").get<std::uint64_t>(), x.at("n").get<std::uint64_t>()},
                                    parse_fraction(x.at("value").get<std::string>()));
        }
        continue;
      }
      StrataReport report;
      report.q = to_u64(row[4]);
      report.periodic_count = to_u64(row[5]);
      report.tail_length = to_u64(row[6]);
      const auto j = nlohmann::json::parse(row[9]);
      for (const auto& [key, value] : j.items()) report.strata[to_u64(key)] = value.get<std::uint64_t>();
      sweep.per_alpha.emplace_back(to_u64(row[3]), std::move(report));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::SchemaViolation, e.what());
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorCode::SchemaViolation, e.what());
    }
  }
  if (!sweep.per_alpha.empty() && !saw_aggregate) throw Error(ErrorCode::SchemaViolation, "missing AGG row");
  return sweep;
}

std::string emit_dot(const FunctionTable& t, const OrbitClassification& classification) {
  if (t.size() > 5000) throw Error(ErrorCode::CapacityExceeded, "DOT rendering is limited to 5000 nodes");
  std::ostringstream out;
  out << "digraph functional_graph {\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    out << "  " << x << " [label=\"" << x << "\", ";
    if (const auto n = classification.stratum(x)) {
      out << "shape=" << kDotShapes[*n % std::size(kDotShapes)] << ", tooltip=\"W_" << *n << "\"";
    } else {
      out << "shape=doublecircle, style=filled, fillcolor=\"gray85\", tooltip=\"periodic\"";
    }
    out << "];\n";
  }
  for (std::uint64_t x = 0; x < t.size(); ++x) out << "  " << x << " -> " << t[x] << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace strata
