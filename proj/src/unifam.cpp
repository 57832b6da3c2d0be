#include "strata/unifam.hpp"

#include <numeric>
#include <string>

#include "strata/error.hpp"
#include "strata/parallel.hpp"

namespace strata {

namespace {

void require_odd_characteristic(const Field& field) {
  if (field.p() == 2) throw Error(ErrorCode::CharacteristicTwo, "mu normalization needs odd p");
}

void require_table(const Field& field) {
  if (field.q() > table_limit() || field.q() > UINT32_MAX) {
    throw Error(ErrorCode::CapacityExceeded,
                "q = " + std::to_string(field.q()) + " exceeds table limit " + std::to_string(table_limit()));
  }
}

FunctionTable shifted_table(const Field& field, const std::vector<std::uint32_t>& powers,
                            std::uint64_t alpha) {
  std::vector<std::uint32_t> next(powers.size());
  for (std::size_t x = 0; x < powers.size(); ++x) {
    next[x] = static_cast<std::uint32_t>(field.add(powers[x], alpha));
  }
  return FunctionTable(std::move(next));
}

}  // namespace

QuadraticPoly::QuadraticPoly(FieldElement a, FieldElement b, FieldElement c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_.is_zero()) throw Error(ErrorCode::BadRange, "leading coefficient of a quadratic must be nonzero");
  // Arithmetic between the coefficients surfaces FieldMismatch early.
  (void)(a_ + b_ + c_);
}

std::uint64_t QuadraticPoly::operator()(std::uint64_t x) const {
  const Field& f = *field();
  return f.add(f.mul(f.add(f.mul(a_.code(), x), b_.code()), x), c_.code());
}

std::string_view to_string(AlphaFilter filter) noexcept {
  return filter == AlphaFilter::all ? "all" : "primitive_only";
}

AlphaFilter parse_alpha_filter(std::string_view text) {
  if (text == "all") return AlphaFilter::all;
  if (text == "primitive_only" || text == "primitive") return AlphaFilter::primitive_only;
  throw Error(ErrorCode::BadRange, "unknown filter: " + std::string(text));
}

std::string_view to_string(AverageMode mode) noexcept {
  return mode == AverageMode::via_mu ? "via_mu" : "brute_force";
}

AverageMode parse_average_mode(std::string_view text) {
  if (text == "via_mu") return AverageMode::via_mu;
  if (text == "brute_force") return AverageMode::brute_force;
  throw Error(ErrorCode::BadRange, "unknown mode: " + std::string(text));
}

std::vector<std::uint32_t> power_map(const Field& field, unsigned d) {
  require_table(field);
  std::vector<std::uint32_t> powers(field.q());
  for (std::uint64_t x = 0; x < field.q(); ++x) {
    powers[x] = static_cast<std::uint32_t>(field.pow(x, d));
  }
  return powers;
}

FunctionTable unicritical_table(const Field& field, unsigned d, std::uint64_t alpha_code) {
  if (d < 1) throw Error(ErrorCode::BadRange, "d must be at least 1");
  if (alpha_code >= field.q()) throw Error(ErrorCode::CodeOutOfRange, std::to_string(alpha_code));
  return shifted_table(field, power_map(field, d), alpha_code);
}

FunctionTable unicritical_table(const UnicriticalParams& params) {
  return unicritical_table(*params.alpha.field(), params.d, params.alpha.code());
}

FunctionTable quadratic_table(const QuadraticPoly& f) {
  return build_table(*f.field(), [&](std::uint64_t x) { return f(x); });
}

Rational w0_exact(std::uint64_t q, unsigned d) {
  if (q < 2) throw Error(ErrorCode::BadRange, "q must be a prime power");
  if (d < 1) throw Error(ErrorCode::BadRange, "d must be at least 1");
  const std::uint64_t g = std::gcd<std::uint64_t, std::uint64_t>(q - 1, d);
  return (Rational(1) - make_rational(1, g)) * (Rational(1) - make_rational(1, q));
}

FieldElement mu_normalize(const QuadraticPoly& f) {
  const FieldPtr& field = f.field();
  require_odd_characteristic(*field);
  const FieldElement two(field, field->from_int(2));
  const FieldElement four(field, field->from_int(4));
  const FieldElement& a = f.a();
  const FieldElement& b = f.b();
  const FieldElement& c = f.c();
  return -((b * b - four * a * c - two * b) / four);
}

ConjugacyCheck verify_conjugacy(const QuadraticPoly& f) {
  const FieldPtr& field = f.field();
  require_odd_characteristic(*field);
  const Field& F = *field;
  const FieldElement delta = mu_normalize(f);
  const FieldElement two(field, F.from_int(2));
  ConjugacyCheck check{.ok = true,
                       .counterexample = std::nullopt,
                       .delta = delta,
                       .conjugator_scale = f.a(),
                       .conjugator_shift = f.b() / two};
  const std::uint64_t scale = check.conjugator_scale.code();
  const std::uint64_t shift = check.conjugator_shift.code();
  auto conj = [&](std::uint64_t x) { return F.add(F.mul(scale, x), shift); };
  for (std::uint64_t x = 0; x < F.q(); ++x) {
    const std::uint64_t lhs = conj(f(x));
    const std::uint64_t y = conj(x);
    const std::uint64_t rhs = F.add(F.mul(y, y), delta.code());
    if (lhs != rhs) {
      check.ok = false;
      check.counterexample = x;
      break;
    }
  }
  return check;
}

SweepAggregate aggregate_reports(const std::vector<std::pair<std::uint64_t, StrataReport>>& per_alpha,
                                 std::uint64_t n_max, const std::vector<WmnRequest>& wmn) {
  SweepAggregate agg;
  agg.count = per_alpha.size();
  agg.mean_w.assign(n_max + 1, Rational(0));
  agg.mean_image.assign(n_max + 1, Rational(0));
  for (const WmnRequest& req : wmn) {
    if (req.m >= req.n) throw Error(ErrorCode::BadRange, "w_{m,n} needs m < n");
    agg.mean_wmn.emplace_back(req, Rational(0));
  }
  for (const auto& [alpha, report] : per_alpha) {
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      agg.mean_w[n] += report.w(n);
      agg.mean_image[n] += report.image_proportion(n);
    }
    for (auto& [req, sum] : agg.mean_wmn) sum += report.w(req.m, req.n);
  }
  if (agg.count) {
    const Rational count(static_cast<unsigned long>(agg.count));
    for (Rational& x : agg.mean_w) x /= count;
    for (Rational& x : agg.mean_image) x /= count;
    for (auto& [req, sum] : agg.mean_wmn) sum /= count;
  }
  return agg;
}

SweepResult sweep_family(const FieldPtr& field, unsigned d, std::uint64_t n_max, AlphaFilter filter,
                         unsigned workers, const std::vector<WmnRequest>& wmn) {
  if (d < 1) throw Error(ErrorCode::BadRange, "d must be at least 1");
  const Field& F = *field;
  require_table(F);
  const std::vector<std::uint32_t> powers = power_map(F, d);

  std::vector<std::uint64_t> alphas;
  for (std::uint64_t alpha = 0; alpha < F.q(); ++alpha) {
    if (filter == AlphaFilter::all || F.degree_over_prime(alpha) == F.r()) alphas.push_back(alpha);
  }

  SweepResult result;
  result.p = F.p();
  result.r = F.r();
  result.d = d;
  result.n_max = n_max;
  result.filter = filter;
  result.per_alpha.resize(alphas.size());
  parallel_for(alphas.size(), workers, [&](std::size_t i) {
    result.per_alpha[i] = {alphas[i], strata_report(shifted_table(F, powers, alphas[i]))};
  });
  result.aggregate = aggregate_reports(result.per_alpha, n_max, wmn);
  return result;
}

Rational average_quadratics(const FieldPtr& field, std::uint64_t m, std::uint64_t n, AverageMode mode,
                            unsigned workers) {
  const Field& F = *field;
  require_odd_characteristic(F);
  if (m >= n) throw Error(ErrorCode::BadRange, "w_{m,n} needs m < n");
  require_table(F);
  const std::uint64_t q = F.q();

  if (mode == AverageMode::via_mu) {
    const std::vector<std::uint32_t> squares = power_map(F, 2);
    std::vector<Rational> terms(q);
    parallel_for(q, workers, [&](std::size_t delta) {
      terms[delta] = strata_report(shifted_table(F, squares, delta)).w(m, n);
    });
    Rational sum = 0;
    for (const Rational& t : terms) sum += t;
    return sum / Rational(static_cast<unsigned long>(q));
  }

  if (q > 64) throw Error(ErrorCode::CapacityExceeded, "brute-force quadratic average needs q <= 64");
  // One slot per leading coefficient a != 0; (b, c) run in code order inside.
  std::vector<Rational> partial(q - 1);
  parallel_for(q - 1, workers, [&](std::size_t i) {
    const FieldElement a(field, i + 1);
    Rational sum = 0;
    for (std::uint64_t b = 0; b < q; ++b) {
      for (std::uint64_t c = 0; c < q; ++c) {
        const QuadraticPoly f(a, FieldElement(field, b), FieldElement(field, c));
        sum += strata_report(quadratic_table(f)).w(m, n);
      }
    }
    partial[i] = sum;
  });
  Rational sum = 0;
  for (const Rational& t : partial) sum += t;
  return sum / Rational(static_cast<unsigned long>(q * q * (q - 1)));
}

}  // namespace strata
