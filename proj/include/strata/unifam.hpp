#ifndef STRATA_UNIFAM_HPP
#define STRATA_UNIFAM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strata/dynamo.hpp"
#include "strata/field.hpp"
#include "strata/rational.hpp"

namespace strata {

/// f_{d,alpha}(x) = x^d + alpha.
struct UnicriticalParams {
  unsigned d = 2;
  FieldElement alpha;
};

/// a X^2 + b X + c with a != 0.
class QuadraticPoly {
 public:
  QuadraticPoly(FieldElement a, FieldElement b, FieldElement c);

  const FieldElement& a() const noexcept { return a_; }
  const FieldElement& b() const noexcept { return b_; }
  const FieldElement& c() const noexcept { return c_; }
  const FieldPtr& field() const noexcept { return a_.field(); }
  std::uint64_t operator()(std::uint64_t x) const;

 private:
  FieldElement a_, b_, c_;
};

enum class AlphaFilter { all, primitive_only };
std::string_view to_string(AlphaFilter filter) noexcept;
AlphaFilter parse_alpha_filter(std::string_view text);

/// x -> x^d over the whole field, in code order.
std::vector<std::uint32_t> power_map(const Field& field, unsigned d);

FunctionTable unicritical_table(const Field& field, unsigned d, std::uint64_t alpha_code);
FunctionTable unicritical_table(const UnicriticalParams& params);
FunctionTable quadratic_table(const QuadraticPoly& f);

/// (1 - 1/gcd(q-1, d)) (1 - 1/q), the alpha-independent value of w_0(F_q, x^d + alpha).
Rational w0_exact(std::uint64_t q, unsigned d);

/// delta with mu(f) = X^2 + delta; throws CharacteristicTwo when p = 2.
FieldElement mu_normalize(const QuadraticPoly& f);

struct ConjugacyCheck {
  bool ok = true;
  std::optional<std::uint64_t> counterexample;
  FieldElement delta;
  FieldElement conjugator_scale;   // a in X -> a X + b/2
  FieldElement conjugator_shift;   // b/2
};

/// Pointwise check that (aX + b/2) o f = (X^2 + delta) o (aX + b/2) on all of F_q.
ConjugacyCheck verify_conjugacy(const QuadraticPoly& f);

struct WmnRequest {
  std::uint64_t m = 0;
  std::uint64_t n = 1;
  friend bool operator==(const WmnRequest&, const WmnRequest&) = default;
};

struct SweepAggregate {
  std::uint64_t count = 0;
  std::vector<Rational> mean_w;        // index n = 0..n_max
  std::vector<Rational> mean_image;    // mean |f^n(S)|/q, n = 0..n_max
  std::vector<std::pair<WmnRequest, Rational>> mean_wmn;

  friend bool operator==(const SweepAggregate&, const SweepAggregate&) = default;
};

struct SweepResult {
  std::uint64_t p = 0;
  unsigned r = 0;
  unsigned d = 0;
  std::uint64_t n_max = 0;
  AlphaFilter filter = AlphaFilter::all;
  std::vector<std::pair<std::uint64_t, StrataReport>> per_alpha;  // sorted by alpha code
  SweepAggregate aggregate;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Exact means over the reports, merged in alpha order.
SweepAggregate aggregate_reports(const std::vector<std::pair<std::uint64_t, StrataReport>>& per_alpha,
                                 std::uint64_t n_max, const std::vector<WmnRequest>& wmn);

SweepResult sweep_family(const FieldPtr& field, unsigned d, std::uint64_t n_max, AlphaFilter filter,
                         unsigned workers = 1, const std::vector<WmnRequest>& wmn = {});

enum class AverageMode { via_mu, brute_force };
std::string_view to_string(AverageMode mode) noexcept;
AverageMode parse_average_mode(std::string_view text);

/// Mean of w_{m,n}(F_q, f) over every quadratic f = aX^2 + bX + c, a != 0.
/// brute_force is limited to q <= 64.
Rational average_quadratics(const FieldPtr& field, std::uint64_t m, std::uint64_t n, AverageMode mode,
                            unsigned workers = 1);

}  // namespace strata

#endif  // STRATA_UNIFAM_HPP
