#ifndef STRATA_BOUNDS_HPP
#define STRATA_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strata/dynamo.hpp"
#include "strata/rational.hpp"
#include "strata/unifam.hpp"

namespace strata {

enum class Theorem {
  technical,            // two-sided image-size band, error 8d/p^(r/2)
  quadcor,              // w_n for x^2 + alpha
  upperboundforw,       // w_n upper bound, general d
  upperboundforW,       // w_{m,n} upper bound
  lowerboundforW,       // w_{m,n} lower bound
  aaroncorollary,       // both w_{m,n} bounds
  orderofgrowth,        // w_n < n^(-3/2) + 16d/p^(r/2), n > 133
  averageupperbound,    // quadratic average of w_n
  strongest,            // quadratic average of w_n, exponent 2 - epsilon
  genhead,              // quadratic average of w_{m,n}, upper
  averagelowerboundmn,  // quadratic average of w_{m,n}, lower
};

inline constexpr Theorem kAllTheorems[] = {
    Theorem::technical,      Theorem::quadcor,         Theorem::upperboundforw, Theorem::upperboundforW,
    Theorem::lowerboundforW, Theorem::aaroncorollary,  Theorem::orderofgrowth,  Theorem::averageupperbound,
    Theorem::strongest,      Theorem::genhead,         Theorem::averagelowerboundmn};

std::string_view to_string(Theorem theorem) noexcept;
Theorem parse_theorem(std::string_view text);

enum class LogBase { natural, ten };
std::string_view to_string(LogBase base) noexcept;
LogBase parse_log_base(std::string_view text);

long double log_in(LogBase base, long double x);

/// Inputs for evaluating a statement. r is a big integer since the
/// hypotheses only hold for astronomically large extension degrees.
struct BoundParams {
  std::optional<std::uint64_t> p;
  std::optional<BigInt> r;
  std::optional<unsigned> d;
  std::optional<std::uint64_t> m;
  std::optional<std::uint64_t> n;
  std::optional<long double> epsilon;
  LogBase log_base = LogBase::natural;
  /// Whether F_p(alpha) = F_{p^r}; unknown counts as satisfied.
  std::optional<bool> alpha_primitive;
};

struct Hypotheses {
  std::uint64_t p = 0;
  BigInt r;
  unsigned d = 2;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> m;

  bool p_prime = false;
  bool p_gt_3 = false;
  bool p_gt_dfact_sq = false;
  bool p_cong_1_mod_d = false;
  bool r_threshold_ok = false;
  bool range_ok = false;
  bool alpha_primitive = true;

  std::string r_threshold;  // textual form, e.g. "2*d^(2n)"
  std::vector<std::pair<std::string, bool>> applicable;  // flags that theorem needs

  bool in_force() const;
};

struct BoundReport {
  Theorem theorem = Theorem::technical;
  BoundParams params;
  std::optional<long double> lower_value;
  std::optional<long double> upper_value;
  long double error_term = 0.0L;  // the c/p^(r/2) part already folded into the sides
  bool error_term_underflow = false;
  Hypotheses hypotheses;
  bool in_force = false;
  std::optional<Rational> empirical_value;
  std::optional<bool> satisfied;

  std::string label() const { return in_force ? "IN_FORCE" : "EXTRAPOLATED"; }
};

Hypotheses hypothesis_check(Theorem theorem, const BoundParams& params);

/// Throws MissingParam or BadRange (m >= n, epsilon outside (0, 2)).
BoundReport eval_bound(Theorem theorem, const BoundParams& params);

enum class Inequality { orderofgrowth, strongest };
std::string_view to_string(Inequality inequality) noexcept;
Inequality parse_inequality(std::string_view text);

struct ThresholdScan {
  std::uint64_t first_success = 0;
  std::uint64_t stable_threshold = 0;
  std::uint64_t window_low = 2;
  std::uint64_t window_high = 1'000'000;
};

/// (2 log(n+1) + 8) / ((d-1)(n+1)(n+5+log(n+1))) < n^-(2-epsilon), scanned over the window.
/// orderofgrowth fixes epsilon = 1/2. Throws NoThresholdInWindow.
ThresholdScan threshold_scan(Inequality inequality, LogBase base, long double epsilon = 0.5L, unsigned d = 2,
                             std::uint64_t window_high = 1'000'000);

/// What an empirical number measures; must match the theorem's left-hand side.
enum class EmpiricalKind { image_proportion, w_n, w_mn, quadratic_average_w_n, quadratic_average_w_mn };
std::string_view to_string(EmpiricalKind kind) noexcept;

struct EmpiricalValue {
  EmpiricalKind kind = EmpiricalKind::w_n;
  std::optional<std::uint64_t> m;
  std::uint64_t n = 0;
  Rational value;
};

EmpiricalKind expected_kind(Theorem theorem) noexcept;

EmpiricalValue empirical_from(const StrataReport& report, EmpiricalKind kind, std::optional<std::uint64_t> m,
                              std::uint64_t n);
EmpiricalValue empirical_from(const SweepAggregate& aggregate, EmpiricalKind kind,
                              std::optional<std::uint64_t> m, std::uint64_t n);

/// Evaluates the theorem and checks the empirical value against its sides.
/// Throws ShapeMismatch if the quantity is not the theorem's left-hand side.
BoundReport compare_empirical(const EmpiricalValue& empirical, Theorem theorem, const BoundParams& params);

}  // namespace strata

#endif  // STRATA_BOUNDS_HPP
