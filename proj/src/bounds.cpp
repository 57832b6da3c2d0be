#include "strata/bounds.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "strata/error.hpp"
#include "strata/field.hpp"

namespace strata {

namespace {

bool single_alpha_statement(Theorem t) {
  switch (t) {
    case Theorem::technical:
    case Theorem::quadcor:
    case Theorem::upperboundforw:
    case Theorem::upperboundforW:
    case Theorem::lowerboundforW:
    case Theorem::aaroncorollary:
    case Theorem::orderofgrowth:
      return true;
    default:
      return false;
  }
}

// Statements over all quadratics only need p > 3; the single-alpha ones need
// p > (d!)^2 and p = 1 mod d (quadcor is the d = 2 specialization with p > 3).
bool needs_dfact_condition(Theorem t) { return single_alpha_statement(t) && t != Theorem::quadcor; }

bool uses_fixed_degree_two(Theorem t) { return !needs_dfact_condition(t); }

struct RThreshold {
  bool base_is_d;         // 2 * d^k versus 2^k
  std::uint64_t offset;   // k = 2n + offset
  const char* text;
};

RThreshold r_threshold_for(Theorem t) {
  switch (t) {
    case Theorem::technical:
    case Theorem::upperboundforW:
    case Theorem::lowerboundforW:
    case Theorem::aaroncorollary:
      return {true, 0, "2*d^(2n)"};
    case Theorem::upperboundforw:
    case Theorem::orderofgrowth:
      return {true, 2, "2*d^(2n+2)"};
    case Theorem::quadcor:
    case Theorem::averageupperbound:
    case Theorem::strongest:
      return {false, 3, "2^(2n+3)"};
    case Theorem::genhead:
    case Theorem::averagelowerboundmn:
      return {false, 1, "2^(2n+1)"};
  }
  return {true, 0, ""};
}

bool r_exceeds(const BigInt& r, const RThreshold& rule, unsigned d, std::uint64_t n) {
  const std::uint64_t exponent = 2 * n + rule.offset;
  const unsigned base = rule.base_is_d ? d : 2;
  if (base < 2) return r > 2;
  // 2 * base^exponent has at least exponent * log2(base) + 1 bits.
  const long double min_bits = static_cast<long double>(exponent) * std::log2(static_cast<long double>(base)) + 1;
  if (min_bits > static_cast<long double>(mpz_sizeinbase(r.get_mpz_t(), 2)) + 2) return false;
  BigInt threshold;
  mpz_ui_pow_ui(threshold.get_mpz_t(), base, exponent);
  threshold *= 2;
  return r > threshold;
}

std::uint64_t need(const std::optional<std::uint64_t>& v, const char* name) {
  if (!v) throw Error(ErrorCode::MissingParam, name);
  return *v;
}

unsigned degree_for(Theorem t, const BoundParams& params) {
  if (uses_fixed_degree_two(t)) return 2;
  if (!params.d) throw Error(ErrorCode::MissingParam, "d");
  if (*params.d < 2) throw Error(ErrorCode::BadRange, "d must be at least 2");
  return *params.d;
}

bool needs_m(Theorem t) {
  switch (t) {
    case Theorem::upperboundforW:
    case Theorem::lowerboundforW:
    case Theorem::aaroncorollary:
    case Theorem::genhead:
    case Theorem::averagelowerboundmn:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string_view to_string(Theorem theorem) noexcept {
  switch (theorem) {
    case Theorem::technical: return "technical";
    case Theorem::quadcor: return "quadcor";
    case Theorem::upperboundforw: return "upperboundforw";
    case Theorem::upperboundforW: return "upperboundforW";
    case Theorem::lowerboundforW: return "lowerboundforW";
    case Theorem::aaroncorollary: return "aaroncorollary";
    case Theorem::orderofgrowth: return "orderofgrowth";
    case Theorem::averageupperbound: return "averageupperbound";
    case Theorem::strongest: return "strongest";
    case Theorem::genhead: return "genhead";
    case Theorem::averagelowerboundmn: return "averagelowerboundmn";
  }
  return "unknown";
}

Theorem parse_theorem(std::string_view text) {
  for (Theorem t : kAllTheorems) {
    if (to_string(t) == text) return t;
  }
  throw Error(ErrorCode::BadRange, "unknown theorem: " + std::string(text));
}

std::string_view to_string(LogBase base) noexcept { return base == LogBase::natural ? "natural" : "ten"; }

LogBase parse_log_base(std::string_view text) {
  if (text == "natural" || text == "e") return LogBase::natural;
  if (text == "ten" || text == "10") return LogBase::ten;
  throw Error(ErrorCode::BadRange, "unknown log base: " + std::string(text));
}

long double log_in(LogBase base, long double x) { return base == LogBase::natural ? std::log(x) : std::log10(x); }

std::string_view to_string(Inequality inequality) noexcept {
  return inequality == Inequality::orderofgrowth ? "orderofgrowth" : "strongest";
}

Inequality parse_inequality(std::string_view text) {
  if (text == "orderofgrowth") return Inequality::orderofgrowth;
  if (text == "strongest") return Inequality::strongest;
  throw Error(ErrorCode::BadRange, "unknown inequality: " + std::string(text));
}

bool Hypotheses::in_force() const {
  for (const auto& [name, value] : applicable) {
    if (!value) return false;
  }
  return true;
}

namespace {

// The scan walks a million points; hypothesis checks reuse it per (base, epsilon).
ThresholdScan cached_strongest_scan(LogBase base, long double epsilon) {
  static std::mutex mutex;
  static std::map<std::pair<LogBase, long double>, ThresholdScan> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(base, epsilon);
  if (const auto it = cache.find(key); it != cache.end()) return it->second;
  const ThresholdScan scan = threshold_scan(Inequality::strongest, base, epsilon);
  cache.emplace(key, scan);
  return scan;
}

}  // namespace

Hypotheses hypothesis_check(Theorem theorem, const BoundParams& params) {
  Hypotheses h;
  h.p = need(params.p, "p");
  if (!params.r) throw Error(ErrorCode::MissingParam, "r");
  h.r = *params.r;
  h.n = need(params.n, "n");
  h.d = degree_for(theorem, params);
  if (needs_m(theorem)) h.m = need(params.m, "m");

  h.p_prime = is_prime(h.p);
  h.p_gt_3 = h.p > 3;
  BigInt dfact;
  mpz_fac_ui(dfact.get_mpz_t(), h.d);
  h.p_gt_dfact_sq = BigInt(std::to_string(h.p)) > dfact * dfact;
  h.p_cong_1_mod_d = h.p % h.d == 1 % h.d;

  const RThreshold rule = r_threshold_for(theorem);
  h.r_threshold = rule.text;
  h.r_threshold_ok = r_exceeds(h.r, rule, h.d, h.n);
  h.alpha_primitive = params.alpha_primitive.value_or(true);

  const std::uint64_t n = h.n;
  const std::uint64_t m = h.m.value_or(0);
  switch (theorem) {
    case Theorem::technical:
    case Theorem::upperboundforw:
      h.range_ok = n >= 1;
      break;
    case Theorem::quadcor:
      h.range_ok = n > 2;
      break;
    case Theorem::upperboundforW:
    case Theorem::genhead:
      h.range_ok = 1 < m && m < n;
      break;
    case Theorem::lowerboundforW:
    case Theorem::aaroncorollary:
    case Theorem::averagelowerboundmn:
      h.range_ok = 5 < m && m < n;
      break;
    case Theorem::orderofgrowth:
    case Theorem::averageupperbound:
      h.range_ok = n > 133;
      break;
    case Theorem::strongest: {
      if (!params.epsilon) throw Error(ErrorCode::MissingParam, "epsilon");
      try {
        const ThresholdScan scan = cached_strongest_scan(params.log_base, *params.epsilon);
        h.range_ok = n + 1 > scan.stable_threshold;  // n > N_epsilon = stable - 1
      } catch (const Error&) {
        h.range_ok = false;
      }
      break;
    }
  }

  h.applicable.emplace_back("p_prime", h.p_prime);
  if (needs_dfact_condition(theorem)) {
    h.applicable.emplace_back("p_gt_dfact_sq", h.p_gt_dfact_sq);
    h.applicable.emplace_back("p_cong_1_mod_d", h.p_cong_1_mod_d);
  } else {
    h.applicable.emplace_back("p_gt_3", h.p_gt_3);
  }
  h.applicable.emplace_back("r_threshold_ok", h.r_threshold_ok);
  h.applicable.emplace_back("range_ok", h.range_ok);
  if (single_alpha_statement(theorem)) h.applicable.emplace_back("alpha_primitive", h.alpha_primitive);
  return h;
}

BoundReport eval_bound(Theorem theorem, const BoundParams& params) {
  BoundReport report;
  report.theorem = theorem;
  report.params = params;

  const std::uint64_t p = need(params.p, "p");
  if (!params.r) throw Error(ErrorCode::MissingParam, "r");
  const std::uint64_t n_int = need(params.n, "n");
  const unsigned d_int = degree_for(theorem, params);
  std::uint64_t m_int = 0;
  if (needs_m(theorem)) {
    m_int = need(params.m, "m");
    if (m_int >= n_int) throw Error(ErrorCode::BadRange, "needs m < n");
    if (m_int < 1) throw Error(ErrorCode::BadRange, "needs m >= 1");
  }
  if (n_int < 1 && theorem != Theorem::technical) throw Error(ErrorCode::BadRange, "needs n >= 1");
  if (theorem == Theorem::strongest) {
    if (!params.epsilon) throw Error(ErrorCode::MissingParam, "epsilon");
    if (!(*params.epsilon > 0 && *params.epsilon < 2)) throw Error(ErrorCode::BadRange, "epsilon in (0, 2)");
  }

  const auto L = [&](long double x) { return log_in(params.log_base, x); };
  const long double n = static_cast<long double>(n_int);
  const long double m = static_cast<long double>(m_int);
  const long double d = static_cast<long double>(d_int);

  // 1/p^(r/2) in log space; huge r underflows to zero.
  const long double r = static_cast<long double>(mpz_get_d(params.r->get_mpz_t()));
  const long double inv_sqrt_pr = std::exp(-(r / 2.0L) * std::log(static_cast<long double>(p)));
  report.error_term_underflow = inv_sqrt_pr == 0.0L && r > 0;

  switch (theorem) {
    case Theorem::technical:
      report.error_term = 8 * d * inv_sqrt_pr;
      report.lower_value = 2 / ((d - 1) * (n + 4 + L(n))) - report.error_term;
      report.upper_value = 2 / ((d - 1) * (n + 1)) + report.error_term;
      break;
    case Theorem::quadcor:
      report.error_term = 32 * inv_sqrt_pr;
      report.upper_value = 15 * (L(n) / (n * n)) + report.error_term;
      break;
    case Theorem::upperboundforw:
      report.error_term = 16 * d * inv_sqrt_pr;
      report.upper_value = (2 * L(n + 1) + 8) / ((d - 1) * (n + 1) * (n + 5 + L(n + 1))) + report.error_term;
      break;
    case Theorem::upperboundforW:
      report.error_term = 16 * d * inv_sqrt_pr;
      report.upper_value = (2 / (d - 1)) * (1 / m - 1 / n + 4 * L(n) / (m * n)) + report.error_term;
      break;
    case Theorem::lowerboundforW:
      report.error_term = 16 * d * inv_sqrt_pr;
      report.lower_value = (7 / (8 * (d - 1))) * (1 / m - 1 / n - 4 * L(m) / (m * n)) - report.error_term;
      break;
    case Theorem::aaroncorollary:
      report.error_term = 16 * d * inv_sqrt_pr;
      report.lower_value = (7 / (8 * (d - 1))) * (1 / m - 1 / n - 4 * L(m) / (m * n)) - report.error_term;
      report.upper_value = (2 / (d - 1)) * (1 / m - 1 / n + 4 * L(n) / (m * n)) + report.error_term;
      break;
    case Theorem::orderofgrowth:
      report.error_term = 16 * d * inv_sqrt_pr;
      report.upper_value = std::pow(n, -1.5L) + report.error_term;
      break;
    case Theorem::averageupperbound:
      report.error_term = 34 * inv_sqrt_pr;
      report.upper_value = std::pow(n, -1.5L) + report.error_term;
      break;
    case Theorem::strongest:
      report.error_term = 34 * inv_sqrt_pr;
      report.upper_value = std::pow(n, -(2 - *params.epsilon)) + report.error_term;
      break;
    case Theorem::genhead:
      report.upper_value = 2 * (1 / m - 1 / n) + 9 * (L(n) / (m * n));
      break;
    case Theorem::averagelowerboundmn:
      report.lower_value = (7.0L / 8) * (1 / m - 1 / n) - 4 * (L(m) / (m * n));
      break;
  }

  report.hypotheses = hypothesis_check(theorem, params);
  report.in_force = report.hypotheses.in_force();
  return report;
}

ThresholdScan threshold_scan(Inequality inequality, LogBase base, long double epsilon, unsigned d,
                             std::uint64_t window_high) {
  if (inequality == Inequality::orderofgrowth) epsilon = 0.5L;
  if (!(epsilon > 0 && epsilon < 2)) throw Error(ErrorCode::BadRange, "epsilon in (0, 2)");
  if (d < 2) throw Error(ErrorCode::BadRange, "d must be at least 2");
  const long double scale = inequality == Inequality::orderofgrowth ? d - 1.0L : 1.0L;
  const auto holds = [&](std::uint64_t n_int) {
    const long double n = static_cast<long double>(n_int);
    const long double lhs = (2 * log_in(base, n + 1) + 8) / (scale * (n + 1) * (n + 5 + log_in(base, n + 1)));
    return lhs < std::pow(n, -(2 - epsilon));
  };

  ThresholdScan scan;
  scan.window_high = window_high;
  std::optional<std::uint64_t> first;
  std::uint64_t last_failure = 0;
  for (std::uint64_t n = scan.window_low; n <= window_high; ++n) {
    if (holds(n)) {
      if (!first) first = n;
    } else {
      last_failure = n;
    }
  }
  if (!first || last_failure == window_high) {
    throw Error(ErrorCode::NoThresholdInWindow,
                std::string(to_string(inequality)) + " does not settle within [2, " + std::to_string(window_high) + "]");
  }
  scan.first_success = *first;
  scan.stable_threshold = last_failure == 0 ? scan.window_low : last_failure + 1;
  return scan;
}

std::string_view to_string(EmpiricalKind kind) noexcept {
  switch (kind) {
    case EmpiricalKind::image_proportion: return "image_proportion";
    case EmpiricalKind::w_n: return "w_n";
    case EmpiricalKind::w_mn: return "w_mn";
    case EmpiricalKind::quadratic_average_w_n: return "quadratic_average_w_n";
    case EmpiricalKind::quadratic_average_w_mn: return "quadratic_average_w_mn";
  }
  return "unknown";
}

EmpiricalKind expected_kind(Theorem theorem) noexcept {
  switch (theorem) {
    case Theorem::technical: return EmpiricalKind::image_proportion;
    case Theorem::quadcor:
    case Theorem::upperboundforw:
    case Theorem::orderofgrowth: return EmpiricalKind::w_n;
    case Theorem::upperboundforW:
    case Theorem::lowerboundforW:
    case Theorem::aaroncorollary: return EmpiricalKind::w_mn;
    case Theorem::averageupperbound:
    case Theorem::strongest: return EmpiricalKind::quadratic_average_w_n;
    case Theorem::genhead:
    case Theorem::averagelowerboundmn: return EmpiricalKind::quadratic_average_w_mn;
  }
  return EmpiricalKind::w_n;
}

EmpiricalValue empirical_from(const StrataReport& report, EmpiricalKind kind, std::optional<std::uint64_t> m,
                              std::uint64_t n) {
  EmpiricalValue out{kind, m, n, Rational(0)};
  switch (kind) {
    case EmpiricalKind::image_proportion:
      out.value = report.image_proportion(n);
      break;
    case EmpiricalKind::w_n:
      out.value = report.w(n);
      break;
    case EmpiricalKind::w_mn:
      if (!m) throw Error(ErrorCode::MissingParam, "m");
      out.value = report.w(*m, n);
      break;
    default:
      throw Error(ErrorCode::ShapeMismatch, "a single report has no quadratic average");
  }
  return out;
}

EmpiricalValue empirical_from(const SweepAggregate& aggregate, EmpiricalKind kind,
                              std::optional<std::uint64_t> m, std::uint64_t n) {
  EmpiricalValue out{kind, m, n, Rational(0)};
  const auto in_range = [&](const std::vector<Rational>& v) -> const Rational& {
    if (n >= v.size()) throw Error(ErrorCode::ShapeMismatch, "n beyond the sweep's n_max");
    return v[n];
  };
  switch (kind) {
    case EmpiricalKind::image_proportion:
      out.value = in_range(aggregate.mean_image);
      break;
    case EmpiricalKind::w_n:
      out.value = in_range(aggregate.mean_w);
      break;
    case EmpiricalKind::w_mn: {
      if (!m) throw Error(ErrorCode::MissingParam, "m");
      bool found = false;
      for (const auto& [req, value] : aggregate.mean_wmn) {
        if (req.m == *m && req.n == n) {
          out.value = value;
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::ShapeMismatch, "sweep did not aggregate the requested w_{m,n}");
      break;
    }
    default:
      throw Error(ErrorCode::ShapeMismatch, "a unicritical sweep is not a quadratic average");
  }
  return out;
}

BoundReport compare_empirical(const EmpiricalValue& empirical, Theorem theorem, const BoundParams& params) {
  if (empirical.kind != expected_kind(theorem)) {
    throw Error(ErrorCode::ShapeMismatch, std::string(to_string(empirical.kind)) + " is not the left side of " +
                                              std::string(to_string(theorem)));
  }
  if (params.n && *params.n != empirical.n) throw Error(ErrorCode::ShapeMismatch, "n differs");
  if (needs_m(theorem) && params.m != empirical.m) throw Error(ErrorCode::ShapeMismatch, "m differs");

  BoundReport report = eval_bound(theorem, params);
  report.empirical_value = empirical.value;
  const long double v = to_long_double(empirical.value);
  bool ok = true;
  if (report.lower_value) ok = ok && *report.lower_value < v;
  if (report.upper_value) ok = ok && v < *report.upper_value;
  report.satisfied = ok;
  return report;
}

}  // namespace strata
