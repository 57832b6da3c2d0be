#include "strata/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "strata/bounds.hpp"
#include "strata/dynamo.hpp"
#include "strata/error.hpp"
#include "strata/field.hpp"
#include "strata/formats.hpp"
#include "strata/suites.hpp"
#include "strata/unifam.hpp"
#include "strata/wreath.hpp"

namespace strata {

namespace {

enum class OutputFormat { text, csv, dot };

// Everything a command may read; filled by CLI11 before the command runs.
struct RunConfig {
  std::uint64_t p = 0;
  unsigned r = 1;
  std::string r_big = "1";
  unsigned d = 2;
  std::uint64_t alpha_code = 0;
  std::uint64_t m = 0;
  std::uint64_t n = 1;
  std::uint64_t n_max = 8;
  std::string filter = "all";
  std::string mode = "via_mu";
  std::string log_base = "natural";
  std::string theorem = "all";
  std::string inequality = "orderofgrowth";
  std::string suite = "all";
  std::string empirical;
  std::vector<std::string> wmn;
  long double epsilon = 0.5L;
  std::uint64_t window_high = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100'000;
  unsigned workers = 1;
  std::string output_path;
  std::string format = "text";
  bool exact = false;
  bool floating = false;
  bool monte_carlo = false;
  bool compare = false;
  std::string alpha_primitive;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Names and fractions typed on the command line are usage errors when malformed.
template <class Parse>
auto from_user(Parse parse) {
  try {
    return parse();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

OutputFormat parse_format(const std::string& text, std::initializer_list<OutputFormat> allowed) {
  OutputFormat f;
  if (text == "text") {
    f = OutputFormat::text;
  } else if (text == "csv") {
    f = OutputFormat::csv;
  } else if (text == "dot") {
    f = OutputFormat::dot;
  } else {
    throw UsageError("unknown format: " + text);
  }
  for (OutputFormat a : allowed) {
    if (a == f) return f;
  }
  throw UsageError("format " + text + " is not available for this command");
}

WmnRequest parse_wmn(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--wmn expects m:n, got " + text);
  try {
    return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("--wmn expects m:n, got " + text);
  }
}

// Writes to --output when given, otherwise to the command's stream.
void deliver(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::BadRange, "cannot open " + cfg.output_path);
  file << text;
}

std::string decimal(long double x, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

std::string decimal(const Rational& x) { return decimal(to_long_double(x)); }

void cmd_field_info(const RunConfig& cfg, std::ostream& out) {
  const FieldPtr field = make_field(cfg.p, cfg.r);
  std::ostringstream s;
  s << "p " << field->p() << "\nr " << field->r() << "\nq " << field->q() << "\nmodulus";
  for (std::uint64_t c : field->modulus()) s << ' ' << c;
  s << "  (coefficients from s^0)\nmodulus_code " << field->modulus_code() << "\ndescription "
    << field->description() << "\n";
  for (const auto& [degree, count] : count_by_degree(*field)) {
    s << "degree " << degree << ": " << count << " elements\n";
  }
  deliver(cfg, out, s.str());
}

void cmd_strata(const RunConfig& cfg, std::ostream& out) {
  const OutputFormat format = parse_format(cfg.format, {OutputFormat::text, OutputFormat::csv, OutputFormat::dot});
  const FieldPtr field = make_field(cfg.p, cfg.r);
  if (cfg.alpha_code >= field->q()) throw Error(ErrorCode::CodeOutOfRange, "alpha code " + std::to_string(cfg.alpha_code));
  const FunctionTable table = unicritical_table(*field, cfg.d, cfg.alpha_code);
  if (format == OutputFormat::dot) {
    deliver(cfg, out, emit_dot(table, tail_depths(table)));
    return;
  }
  const StrataReport report = strata_report(table);
  if (format == OutputFormat::csv) {
    deliver(cfg, out, emit_csv({strata_row(cfg.p, cfg.r, cfg.d, cfg.alpha_code, report)}, Schema::strata));
    return;
  }
  std::ostringstream s;
  s << "field p=" << field->p() << " r=" << field->r() << " modulus_code " << field->modulus_code() << "\nmap x^" << cfg.d << " + alpha, alpha code " << cfg.alpha_code
    << "\nq " << report.q << "\nperiodic " << report.periodic_count << "\ntail_length " << report.tail_length
    << "\n";
  for (const auto& [n, size] : report.strata) s << "W_" << n << " " << size << "\n";
  const Rational w0 = report.w(0);
  s << "w_0 " << to_fraction_string(w0) << "\nw_0 closed form " << to_fraction_string(w0_exact(field->q(), cfg.d))
    << "\n";
  deliver(cfg, out, s.str());
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const FieldPtr field = make_field(cfg.p, cfg.r);
  std::vector<WmnRequest> wmn;
  for (const std::string& text : cfg.wmn) wmn.push_back(parse_wmn(text));
  const SweepResult sweep =
      sweep_family(field, cfg.d, cfg.n_max, from_user([&] { return parse_alpha_filter(cfg.filter); }), cfg.workers, wmn);
  deliver(cfg, out, sweep_csv(sweep));
}

void cmd_average(const RunConfig& cfg, std::ostream& out) {
  const FieldPtr field = make_field(cfg.p, cfg.r);
  const AverageMode mode = from_user([&] { return parse_average_mode(cfg.mode); });
  const Rational value = average_quadratics(field, cfg.m, cfg.n, mode, cfg.workers);
  std::ostringstream s;
  s << "q " << field->q() << "\nm " << cfg.m << "\nn " << cfg.n << "\nmode " << to_string(mode) << "\nmean_w_mn "
    << to_fraction_string(value) << "\ndecimal " << decimal(value) << "\n";
  deliver(cfg, out, s.str());
}

void cmd_wreath(const RunConfig& cfg, std::ostream& out) {
  if (cfg.exact && cfg.floating) throw UsageError("--exact and --float are exclusive");
  const OutputFormat format = parse_format(cfg.format, {OutputFormat::text, OutputFormat::csv});
  const FixMode mode = cfg.floating ? FixMode::floating : FixMode::rational;
  const FixSequence seq = fix_sequence(cfg.d, static_cast<unsigned>(cfg.n_max), mode);
  if (format == OutputFormat::csv) {
    std::vector<CsvRow> rows;
    for (const FixEntry& fix : seq.values) rows.push_back(wreath_row(cfg.d, fix));
    deliver(cfg, out, emit_csv(rows, Schema::wreath));
    return;
  }
  std::ostringstream s;
  s << "d " << cfg.d << " mode " << (mode == FixMode::rational ? "exact" : "float") << "\n";
  for (const FixEntry& fix : seq.values) {
    s << "n=" << fix.n << " value=" << decimal(fix.value, 15);
    if (fix.n >= 1) s << " band=" << (juul_band(cfg.d, static_cast<unsigned>(fix.n)).contains(fix) ? "in" : "out");
    if (cfg.monte_carlo) {
      const McEstimate mc = fix_mc(cfg.d, fix.n, cfg.samples, cfg.seed, cfg.workers);
      s << " mc=" << decimal(mc.estimate, 8) << "+-" << decimal(mc.std_error, 3);
    }
    if (fix.exact) s << " fix=" << to_fraction_string(*fix.exact);
    s << "\n";
  }
  deliver(cfg, out, s.str());
}

// Measures the theorem's left-hand side on an actual field.
EmpiricalValue measure(Theorem theorem, const BoundParams& params, const RunConfig& cfg) {
  const EmpiricalKind kind = expected_kind(theorem);
  const unsigned r = static_cast<unsigned>(std::stoul(cfg.r_big));
  const FieldPtr field = make_field(cfg.p, r);
  const std::optional<std::uint64_t> m = params.m;
  const std::uint64_t n = *params.n;
  switch (kind) {
    case EmpiricalKind::quadratic_average_w_n:
      return {kind, m, n, average_quadratics(field, n, n + 1, AverageMode::via_mu, cfg.workers)};
    case EmpiricalKind::quadratic_average_w_mn:
      return {kind, m, n, average_quadratics(field, *m, n, AverageMode::via_mu, cfg.workers)};
    default: {
      const unsigned d = theorem == Theorem::quadcor ? 2 : cfg.d;
      if (cfg.alpha_code >= field->q()) throw Error(ErrorCode::CodeOutOfRange, "alpha code");
      const StrataReport report = strata_report(unicritical_table(*field, d, cfg.alpha_code));
      return empirical_from(report, kind, m, n);
    }
  }
}

std::string bounds_text(const BoundReport& report) {
  std::ostringstream s;
  s << to_string(report.theorem) << " [" << report.label() << "]\n";
  // Vacuous sides are clamped to [0, 1] here only; comparisons use the raw values.
  if (report.lower_value) {
    s << "  lower " << (*report.lower_value < 0 ? "0 (clamped, raw " + format_float(*report.lower_value) + ")"
                                                : format_float(*report.lower_value))
      << "\n";
  }
  if (report.upper_value) {
    s << "  upper " << (*report.upper_value > 1 ? "1 (clamped, raw " + format_float(*report.upper_value) + ")"
                                                : format_float(*report.upper_value))
      << "\n";
  }
  s << "  error term " << format_float(report.error_term) << (report.error_term_underflow ? " (underflow)" : "")
    << "\n  r threshold r > " << report.hypotheses.r_threshold << "\n";
  for (const auto& [flag, ok] : report.hypotheses.applicable) s << "  " << flag << " " << (ok ? "yes" : "no") << "\n";
  if (report.empirical_value) {
    s << "  empirical " << to_fraction_string(*report.empirical_value) << " = " << decimal(*report.empirical_value);
    if (report.satisfied) s << (*report.satisfied ? " (within the bounds)" : " (outside the bounds)");
    s << "\n";
  }
  return s.str();
}

void cmd_bounds(const RunConfig& cfg, std::ostream& out, const CLI::App& app) {
  const OutputFormat format = parse_format(cfg.format, {OutputFormat::text, OutputFormat::csv});
  if (cfg.compare && !cfg.empirical.empty()) throw UsageError("--compare and --empirical are exclusive");
  BoundParams params;
  params.p = cfg.p;
  try {
    params.r = BigInt(cfg.r_big);
  } catch (const std::invalid_argument&) {
    throw UsageError("--r must be a non-negative integer");
  }
  params.d = cfg.d;
  params.n = cfg.n;
  if (app.count("--m")) params.m = cfg.m;
  params.epsilon = cfg.epsilon;
  params.log_base = from_user([&] { return parse_log_base(cfg.log_base); });
  if (cfg.alpha_primitive == "yes") {
    params.alpha_primitive = true;
  } else if (cfg.alpha_primitive == "no") {
    params.alpha_primitive = false;
  }

  std::vector<Theorem> theorems;
  if (cfg.theorem == "all") {
    theorems.assign(std::begin(kAllTheorems), std::end(kAllTheorems));
  } else {
    theorems.push_back(from_user([&] { return parse_theorem(cfg.theorem); }));
  }

  std::vector<BoundReport> reports;
  for (Theorem theorem : theorems) {
    BoundParams own = params;
    if (cfg.theorem == "all" && !own.m && cfg.n >= 1) own.m = cfg.n - 1;
    if (!cfg.empirical.empty()) {
      EmpiricalValue empirical{expected_kind(theorem), own.m, cfg.n, from_user([&] { return parse_fraction(cfg.empirical); })};
      reports.push_back(compare_empirical(empirical, theorem, own));
    } else if (cfg.compare) {
      reports.push_back(compare_empirical(measure(theorem, own, cfg), theorem, own));
    } else {
      reports.push_back(eval_bound(theorem, own));
    }
  }

  if (format == OutputFormat::csv) {
    std::vector<CsvRow> rows;
    for (const BoundReport& report : reports) rows.push_back(bounds_row(report));
    deliver(cfg, out, emit_csv(rows, Schema::bounds));
    return;
  }
  std::string text;
  for (const BoundReport& report : reports) text += bounds_text(report);
  deliver(cfg, out, text);
}

void cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const Inequality inequality = from_user([&] { return parse_inequality(cfg.inequality); });
  const LogBase base = from_user([&] { return parse_log_base(cfg.log_base); });
  const ThresholdScan scan = threshold_scan(inequality, base, cfg.epsilon, cfg.d, cfg.window_high);
  std::ostringstream s;
  s << "inequality " << to_string(inequality) << "\nlog_base " << to_string(base) << "\nwindow [" << scan.window_low
    << ", " << scan.window_high << "]\nfirst_success " << scan.first_success << "\nstable_threshold "
    << scan.stable_threshold << "\n";
  deliver(cfg, out, s.str());
}

bool cmd_check(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> names;
  if (cfg.suite == "all") {
    names = suite_names();
  } else {
    const std::vector<std::string> known = suite_names();
    if (std::find(known.begin(), known.end(), cfg.suite) == known.end()) throw UsageError("unknown suite: " + cfg.suite);
    names.push_back(cfg.suite);
  }
  bool ok = true;
  std::ostringstream s;
  for (const std::string& name : names) {
    const SuiteResult result = run_suite(name, cfg.workers);
    ok = ok && result.passed;
    s << result.name << ": " << (result.passed ? "PASS" : "FAIL") << " (" << result.summary << ")\n";
    for (const std::string& failure : result.failures) s << "  " << failure << "\n";
  }
  deliver(cfg, out, s.str());
  return ok;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Iterated-image strata of polynomial maps over finite fields", "strata"};
  app.require_subcommand(1);

  const auto add_field = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "characteristic (prime)")->required();
    sub->add_option("--r", cfg.r, "extension degree")->check(CLI::PositiveNumber);
  };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--output", cfg.output_path, "write to a file instead of standard output");
  };

  CLI::App* field_info = app.add_subcommand("field-info", "field model, modulus and degree counts");
  add_field(field_info);
  add_common(field_info);

  CLI::App* strata = app.add_subcommand("strata", "strata of x^d + alpha");
  add_field(strata);
  strata->add_option("--d", cfg.d, "exponent")->check(CLI::PositiveNumber);
  strata->add_option("--alpha", cfg.alpha_code, "alpha by canonical code");
  strata->add_option("--format", cfg.format, "text, csv or dot");
  add_common(strata);

  CLI::App* sweep = app.add_subcommand("sweep", "strata for every alpha, CSV with an aggregate row");
  add_field(sweep);
  sweep->add_option("--d", cfg.d, "exponent")->check(CLI::PositiveNumber);
  sweep->add_option("--n-max", cfg.n_max, "largest n in the aggregate means");
  sweep->add_option("--filter", cfg.filter, "all or primitive_only");
  sweep->add_option("--wmn", cfg.wmn, "extra mean w_{m,n}, as m:n (repeatable)");
  add_common(sweep);

  CLI::App* average = app.add_subcommand("average-quadratics", "mean w_{m,n} over all quadratics");
  add_field(average);
  average->add_option("--m", cfg.m, "m");
  average->add_option("--n", cfg.n, "n");
  average->add_option("--mode", cfg.mode, "via_mu or brute_force");
  add_common(average);

  CLI::App* wreath = app.add_subcommand("wreath", "fixed-leaf proportions of iterated wreath products");
  wreath->add_option("--d", cfg.d, "branching degree")->check(CLI::Range(2u, 1u << 20));
  wreath->add_option("--max-n", cfg.n_max, "largest n")->required();
  wreath->add_flag("--exact", cfg.exact, "rational arithmetic (default)");
  wreath->add_flag("--float", cfg.floating, "long double with an error bound");
  wreath->add_option("--format", cfg.format, "text or csv");
  wreath->add_flag("--mc", cfg.monte_carlo, "add a Monte-Carlo estimate per row (text)");
  wreath->add_option("--samples", cfg.samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
  wreath->add_option("--seed", cfg.seed, "Monte-Carlo seed");
  add_common(wreath);

  CLI::App* bounds = app.add_subcommand("bounds", "evaluate the bounds and their hypotheses");
  bounds->add_option("--theorem", cfg.theorem, "statement name or all");
  bounds->add_option("--p", cfg.p, "characteristic")->required();
  bounds->add_option("--r", cfg.r_big, "extension degree (any size)");
  bounds->add_option("--d", cfg.d, "exponent");
  bounds->add_option("--m", cfg.m, "m for w_{m,n}");
  bounds->add_option("--n", cfg.n, "n");
  bounds->add_option("--epsilon", cfg.epsilon, "epsilon in (0, 2)");
  bounds->add_option("--log-base", cfg.log_base, "natural or ten");
  bounds->add_option("--alpha", cfg.alpha_code, "alpha code for --compare");
  bounds->add_option("--alpha-primitive", cfg.alpha_primitive, "yes or no")->check(CLI::IsMember({"yes", "no"}));
  bounds->add_flag("--compare", cfg.compare, "measure the left-hand side on F_{p^r}");
  bounds->add_option("--empirical", cfg.empirical, "left-hand side as num/den");
  bounds->add_option("--format", cfg.format, "text or csv");
  add_common(bounds);

  CLI::App* scan = app.add_subcommand("scan-threshold", "smallest n after which the inequality always holds");
  scan->add_option("--inequality", cfg.inequality, "orderofgrowth or strongest");
  scan->add_option("--log-base", cfg.log_base, "natural or ten");
  scan->add_option("--epsilon", cfg.epsilon, "epsilon in (0, 2)");
  scan->add_option("--d", cfg.d, "exponent");
  scan->add_option("--window-high", cfg.window_high, "last n scanned");
  add_common(scan);

  CLI::App* check = app.add_subcommand("check", "run an invariant suite");
  check->add_option("--suite", cfg.suite, "suite name or all");
  add_common(check);

  std::vector<const char*> argv{"strata"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (*field_info) {
      cmd_field_info(cfg, out);
    } else if (*strata) {
      cmd_strata(cfg, out);
    } else if (*sweep) {
      cmd_sweep(cfg, out);
    } else if (*average) {
      cmd_average(cfg, out);
    } else if (*wreath) {
      cmd_wreath(cfg, out);
    } else if (*bounds) {
      cmd_bounds(cfg, out, *bounds);
    } else if (*scan) {
      cmd_scan(cfg, out);
    } else if (*check) {
      if (!cmd_check(cfg, out)) return kExitDomainError;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace strata
