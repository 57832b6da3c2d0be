#include "strata/suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "strata/bounds.hpp"
#include "strata/dynamo.hpp"
#include "strata/error.hpp"
#include "strata/field.hpp"
#include "strata/parallel.hpp"
#include "strata/unifam.hpp"
#include "strata/wreath.hpp"

namespace strata {

namespace {

constexpr std::size_t kMaxRecordedFailures = 20;

struct PrimePower {
  std::uint64_t p;
  unsigned r;
};

std::vector<PrimePower> prime_power_list(std::uint64_t limit) {
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (!is_prime(p)) continue;
    std::uint64_t q = p;
    for (unsigned r = 1; q <= limit; ++r, q *= p) out.push_back({p, r});
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) {
    return std::pow(static_cast<long double>(a.p), a.r) < std::pow(static_cast<long double>(b.p), b.r);
  });
  return out;
}

std::string field_tag(const Field& f) { return "F_" + std::to_string(f.q()) + " (" + f.description() + ")"; }

// All cross-checks on one table; returns an empty string on success.
std::string check_table(const FunctionTable& t) {
  const std::uint64_t q = t.size();
  const ImageChain chain = iterated_images(t);
  const StrataReport report = strata_report(t);
  const OrbitClassification cls = tail_depths(t);
  const std::vector<std::uint32_t> periodic = periodic_set(t);

  std::uint64_t strata_total = 0;
  for (const auto& [n, size] : report.strata) {
    if (size == 0) return "empty stratum listed";
    strata_total += size;
  }
  if (report.periodic_count + strata_total != q) return "periodic + strata != q";
  if (chain.tail_length != report.tail_length) return "tail length disagrees";
  if (report.tail_length > q - report.periodic_count) return "tail length exceeds strictly preperiodic count";
  for (std::uint64_t k = 0; k <= chain.tail_length; ++k) {
    if (chain.sizes[k] != report.image_size(k)) return "image size disagrees at k=" + std::to_string(k);
    if (k > 0 && !chain.images[k].is_subset_of(chain.images[k - 1])) return "chain not nested";
  }
  if (chain.images.back().codes() != periodic) return "peeled periodic set != stabilized image";
  if (periodic.size() != report.periodic_count) return "periodic count disagrees";

  std::map<std::uint64_t, std::uint64_t> counted;
  for (std::uint64_t x = 0; x < q; ++x) {
    const auto n = cls.stratum(x);
    if (!n) {
      if (!chain.images.back().contains(x)) return "cycle point outside f^T(S): " + std::to_string(x);
      continue;
    }
    if (*n >= chain.tail_length) return "stratum beyond tail length: " + std::to_string(x);
    if (!chain.images[*n].contains(x) || chain.images[*n + 1].contains(x)) {
      return "longest-chain stratum disagrees with set iteration at " + std::to_string(x);
    }
    ++counted[*n];
  }
  if (counted != report.strata) return "stratum counts disagree";
  return {};
}

}  // namespace

void SuiteResult::fail(std::string message) {
  passed = false;
  if (failures.size() < kMaxRecordedFailures) failures.push_back(std::move(message));
}

std::vector<std::uint64_t> prime_powers_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (const PrimePower& pp : prime_power_list(limit)) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < pp.r; ++i) q *= pp.p;
    out.push_back(q);
  }
  return out;
}

SuiteResult field_suite(std::uint64_t max_q) {
  SuiteResult result;
  result.name = "field";
  std::mt19937_64 rng(12345);
  for (const PrimePower& pp : prime_power_list(max_q)) {
    const FieldPtr field = make_field(pp.p, pp.r);
    const Field& F = *field;
    const std::uint64_t q = F.q();
    if (!make_field(pp.p, pp.r)->same_as(F)) result.fail("make_field not deterministic for " + field_tag(F));

    std::map<unsigned, std::uint64_t> brute;
    for (std::uint64_t a = 0; a < q; ++a) {
      ++brute[F.degree_over_prime(a)];
      if (a == 0) continue;
      ++result.checks;
      if (F.pow(a, q - 1) != 1) result.fail("a^(q-1) != 1 in " + field_tag(F));
      if (F.mul(F.inv(a), a) != 1) result.fail("inv(a) * a != 1 in " + field_tag(F));
    }
    if (brute != count_by_degree(F)) result.fail("count_by_degree disagrees with brute force in " + field_tag(F));

    std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t a = pick(rng);
      const std::uint64_t b = pick(rng);
      ++result.checks;
      if (F.frobenius(F.add(a, b)) != F.add(F.frobenius(a), F.frobenius(b))) {
        result.fail("Frobenius not additive in " + field_tag(F));
      }
      if (F.frobenius(F.mul(a, b)) != F.mul(F.frobenius(a), F.frobenius(b))) {
        result.fail("Frobenius not multiplicative in " + field_tag(F));
      }
    }

    // A second model of the same field must give the same multiset of reports.
    if (pp.r > 1 && q <= 256) {
      FieldPtr other;
      std::vector<std::uint64_t> modulus(pp.r + 1, 0);
      modulus[pp.r] = 1;
      for (std::uint64_t lower = q; lower-- > 0 && !other;) {
        std::uint64_t rest = lower;
        for (unsigned i = 0; i < pp.r; ++i) {
          modulus[i] = rest % pp.p;
          rest /= pp.p;
        }
        try {
          other = Field::with_modulus(pp.p, modulus);
        } catch (const Error&) {
        }
      }
      for (unsigned d = 2; d <= 3; ++d) {
        std::vector<std::string> a_reports, b_reports;
        for (std::uint64_t alpha = 0; alpha < q; ++alpha) {
          const StrataReport ra = strata_report(unicritical_table(F, d, alpha));
          const StrataReport rb = strata_report(unicritical_table(*other, d, alpha));
          std::ostringstream sa, sb;
          sa << ra.periodic_count << ':' << ra.tail_length;
          sb << rb.periodic_count << ':' << rb.tail_length;
          for (const auto& [n, s] : ra.strata) sa << ',' << n << '=' << s;
          for (const auto& [n, s] : rb.strata) sb << ',' << n << '=' << s;
          a_reports.push_back(sa.str());
          b_reports.push_back(sb.str());
        }
        std::sort(a_reports.begin(), a_reports.end());
        std::sort(b_reports.begin(), b_reports.end());
        ++result.checks;
        if (a_reports != b_reports) result.fail("strata depend on the model of " + field_tag(F));
      }
    }
  }
  result.summary = std::to_string(result.checks) + " field checks";
  return result;
}

SuiteResult w0_suite(std::uint64_t max_q, unsigned max_d, unsigned workers) {
  SuiteResult result;
  result.name = "w0";
  const std::vector<PrimePower> fields = prime_power_list(max_q);
  std::vector<SuiteResult> partial(fields.size());
  parallel_for(fields.size(), workers, [&](std::size_t i) {
    const FieldPtr field = make_field(fields[i].p, fields[i].r);
    const Field& F = *field;
    SuiteResult& local = partial[i];
    for (unsigned d = 1; d <= max_d; ++d) {
      const Rational expected = w0_exact(F.q(), d);
      const std::vector<std::uint32_t> powers = power_map(F, d);
      for (std::uint64_t alpha = 0; alpha < F.q(); ++alpha) {
        std::vector<std::uint32_t> next(powers.size());
        for (std::size_t x = 0; x < powers.size(); ++x) next[x] = static_cast<std::uint32_t>(F.add(powers[x], alpha));
        const StrataReport report = strata_report(FunctionTable(std::move(next)));
        ++local.checks;
        if (report.w(0) != expected) {
          local.fail("w_0 mismatch in " + field_tag(F) + " d=" + std::to_string(d) +
                     " alpha=" + std::to_string(alpha) + ": got " + to_fraction_string(report.w(0)) +
                     ", expected " + to_fraction_string(expected));
        }
      }
    }
  });
  for (SuiteResult& p : partial) {
    result.checks += p.checks;
    for (std::string& f : p.failures) result.fail(std::move(f));
    if (!p.passed) result.passed = false;
  }
  result.summary = std::to_string(result.checks) + " (q, d, alpha) triples over " +
                   std::to_string(fields.size()) + " fields";
  return result;
}

SuiteResult partition_suite(std::uint64_t max_q, unsigned max_d, unsigned random_tables,
                            std::uint64_t random_max_q, std::uint64_t seed, unsigned workers) {
  SuiteResult result;
  result.name = "partition";
  const std::vector<PrimePower> fields = prime_power_list(max_q);
  std::vector<SuiteResult> partial(fields.size() + random_tables);
  parallel_for(fields.size(), workers, [&](std::size_t i) {
    const FieldPtr field = make_field(fields[i].p, fields[i].r);
    SuiteResult& local = partial[i];
    for (unsigned d = 1; d <= max_d; ++d) {
      for (std::uint64_t alpha = 0; alpha < field->q(); ++alpha) {
        ++local.checks;
        const std::string problem = check_table(unicritical_table(*field, d, alpha));
        if (!problem.empty()) {
          local.fail(field_tag(*field) + " d=" + std::to_string(d) + " alpha=" + std::to_string(alpha) + ": " +
                     problem);
        }
      }
    }
  });

  // Table i is drawn from its own stream so the set does not depend on workers.
  parallel_for(random_tables, workers, [&](std::size_t i) {
    std::mt19937_64 rng(splitmix64(seed ^ i));
    const std::uint64_t q = std::uniform_int_distribution<std::uint64_t>(1, random_max_q)(rng);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(q - 1));
    std::vector<std::uint32_t> next(q);
    for (auto& v : next) v = pick(rng);
    SuiteResult& local = partial[fields.size() + i];
    ++local.checks;
    const std::string problem = check_table(FunctionTable(std::move(next)));
    if (!problem.empty()) local.fail("random table #" + std::to_string(i) + " (q=" + std::to_string(q) + "): " + problem);
  });

  for (SuiteResult& p : partial) {
    result.checks += p.checks;
    for (std::string& f : p.failures) result.fail(std::move(f));
    if (!p.passed) result.passed = false;
  }
  result.summary = std::to_string(result.checks) + " tables (unicritical q <= " + std::to_string(max_q) +
                   ", d <= " + std::to_string(max_d) + "; " + std::to_string(random_tables) + " random)";
  return result;
}

SuiteResult mu_suite(const std::vector<std::uint64_t>& qs, unsigned workers) {
  SuiteResult result;
  result.name = "mu";
  for (std::uint64_t q : qs) {
    const PrimePower pp = [&] {
      for (const PrimePower& c : prime_power_list(q)) {
        std::uint64_t v = 1;
        for (unsigned i = 0; i < c.r; ++i) v *= c.p;
        if (v == q) return c;
      }
      throw Error(ErrorCode::BadRange, std::to_string(q) + " is not a prime power");
    }();
    const FieldPtr field = make_field(pp.p, pp.r);

    std::vector<StrataReport> unicritical(q);
    for (std::uint64_t delta = 0; delta < q; ++delta) unicritical[delta] = strata_report(unicritical_table(*field, 2, delta));

    std::vector<std::uint64_t> fiber(q, 0);
    for (std::uint64_t a = 1; a < q; ++a) {
      for (std::uint64_t b = 0; b < q; ++b) {
        for (std::uint64_t c = 0; c < q; ++c) {
          const QuadraticPoly f(FieldElement(field, a), FieldElement(field, b), FieldElement(field, c));
          const ConjugacyCheck check = verify_conjugacy(f);
          ++result.checks;
          if (!check.ok) {
            result.fail("conjugacy fails over F_" + std::to_string(q) + " at x=" +
                        std::to_string(*check.counterexample));
          }
          const std::uint64_t delta = mu_normalize(f).code();
          ++fiber[delta];
          if (strata_report(quadratic_table(f)) != unicritical[delta]) {
            result.fail("StrataReport(f) != StrataReport(mu(f)) over F_" + std::to_string(q));
          }
        }
      }
    }
    for (std::uint64_t delta = 0; delta < q; ++delta) {
      ++result.checks;
      if (fiber[delta] != q * (q - 1)) {
        result.fail("mu fiber over delta=" + std::to_string(delta) + " in F_" + std::to_string(q) + " has size " +
                    std::to_string(fiber[delta]));
      }
    }
    for (const auto& [m, n] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 1}, {0, 2}, {1, 3}}) {
      const Rational via_mu = average_quadratics(field, m, n, AverageMode::via_mu, workers);
      const Rational brute = average_quadratics(field, m, n, AverageMode::brute_force, workers);
      ++result.checks;
      if (via_mu != brute) {
        result.fail("average over F_" + std::to_string(q) + " (m,n)=(" + std::to_string(m) + "," +
                    std::to_string(n) + "): via_mu " + to_fraction_string(via_mu) + " != brute " +
                    to_fraction_string(brute));
      }
    }
  }
  result.summary = std::to_string(result.checks) + " mu checks";
  return result;
}

SuiteResult wreath_suite(bool with_monte_carlo, unsigned workers) {
  SuiteResult result;
  result.name = "wreath";
  const std::vector<std::pair<unsigned, unsigned>> cases = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}};
  for (const auto& [d, n] : cases) {
    const Rational recursion = *fix_exact(d, n, FixMode::rational).exact;
    const Rational oracle = fix_enumerate_oracle(d, n);
    ++result.checks;
    if (recursion != oracle) {
      result.fail("d=" + std::to_string(d) + " n=" + std::to_string(n) + ": recursion " +
                  to_fraction_string(recursion) + " != enumeration " + to_fraction_string(oracle));
    }
  }
  if (with_monte_carlo) {
    for (unsigned d = 2; d <= 4; ++d) {
      for (unsigned n = 1; n <= 8; ++n) {
        const FixEntry exact = fix_exact(d, n, FixMode::floating);
        const McEstimate mc = fix_mc(d, n, 1'000'000, 7 * d + n, workers);
        ++result.checks;
        if (std::abs(mc.estimate - static_cast<double>(exact.value)) > 4 * mc.std_error) {
          result.fail("Monte-Carlo d=" + std::to_string(d) + " n=" + std::to_string(n) + " off by more than 4 SE");
        }
      }
    }
  }
  result.summary = std::to_string(result.checks) + " wreath checks";
  return result;
}

SuiteResult band_suite(long double max_error_bound) {
  SuiteResult result;
  result.name = "band";
  for (unsigned d = 2; d <= 6; ++d) {
    const FixSequence seq = fix_sequence(d, 30, FixMode::floating);
    for (unsigned n = 1; n <= 30; ++n) {
      const FixEntry& fix = seq.values[n];
      const JuulBand band = juul_band(d, n);
      ++result.checks;
      if (!(fix.error_bound < max_error_bound && band.error_bound < max_error_bound)) {
        result.fail("error bound too loose at d=" + std::to_string(d) + " n=" + std::to_string(n));
      }
      if (!band.contains(fix)) {
        result.fail("fix_n outside the band at d=" + std::to_string(d) + " n=" + std::to_string(n));
      }
      if (n < 30) {
        const FixEntry& next = seq.values[n + 1];
        if (!(next.value + next.error_bound < fix.value - fix.error_bound)) {
          result.fail("fix_n not strictly decreasing at d=" + std::to_string(d) + " n=" + std::to_string(n));
        }
      }
    }
  }
  result.summary = std::to_string(result.checks) + " (d, n) pairs";
  return result;
}

SuiteResult threshold_suite() {
  SuiteResult result;
  result.name = "threshold";
  const ThresholdScan ten = threshold_scan(Inequality::orderofgrowth, LogBase::ten);
  const ThresholdScan natural = threshold_scan(Inequality::orderofgrowth, LogBase::natural);
  result.checks = 2;
  if (ten.stable_threshold != 134) result.fail("base-ten stable threshold " + std::to_string(ten.stable_threshold));
  if (natural.stable_threshold < 300 || natural.stable_threshold > 450) {
    result.fail("natural-log stable threshold " + std::to_string(natural.stable_threshold));
  }
  result.summary = "stable threshold: base ten " + std::to_string(ten.stable_threshold) + " (first success " +
                   std::to_string(ten.first_success) + "), natural " + std::to_string(natural.stable_threshold) +
                   " (first success " + std::to_string(natural.first_success) + "), window [2, 1000000]";
  return result;
}

SuiteResult honesty_suite() {
  SuiteResult result;
  result.name = "honesty";
  const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13, 101, 65537, 2147483647ULL,
                                             2305843009213693951ULL, 18446744073709551557ULL};
  for (std::uint64_t p : primes) {
    // Every r with p^r <= 2^64.
    unsigned max_r = 0;
    for (long double q = 1; q * p <= 18446744073709551616.0L; q *= p) ++max_r;
    for (unsigned r = 1; r <= max_r; ++r) {
      for (unsigned d = 2; d <= 8; ++d) {
        for (std::uint64_t n : {5, 6, 7, 8, 10, 12, 20, 134, 1000}) {
          for (Theorem theorem : kAllTheorems) {
            BoundParams params;
            params.p = p;
            params.r = BigInt(r);
            params.d = d;
            params.n = n;
            params.m = n - 1;
            params.epsilon = 0.5L;
            const Hypotheses h = hypothesis_check(theorem, params);
            const EmpiricalValue empirical{expected_kind(theorem), params.m, n, Rational(1, 2)};
            const BoundReport report = compare_empirical(empirical, theorem, params);
            ++result.checks;
            if (h.r_threshold_ok) {
              result.fail(std::string(to_string(theorem)) + ": r threshold met at p=" + std::to_string(p) +
                          " r=" + std::to_string(r));
            }
            if (report.label() != "EXTRAPOLATED") {
              result.fail(std::string(to_string(theorem)) + ": desk-scale row not labeled EXTRAPOLATED");
            }
          }
        }
      }
    }
  }
  result.summary = std::to_string(result.checks) + " desk-scale parameter sets";
  return result;
}

std::vector<std::string> suite_names() {
  return {"field", "w0", "partition", "mu", "wreath", "band", "threshold", "honesty"};
}

SuiteResult run_suite(std::string_view name, unsigned workers) {
  if (name == "field") return field_suite();
  if (name == "w0") return w0_suite(729, 6, workers);
  if (name == "partition") return partition_suite(1024, 4, 200, 65536, 20240611, workers);
  if (name == "mu") return mu_suite({5, 7, 9}, workers);
  if (name == "wreath") return wreath_suite(true, workers);
  if (name == "band") return band_suite();
  if (name == "threshold") return threshold_suite();
  if (name == "honesty") return honesty_suite();
  throw Error(ErrorCode::BadRange, "unknown suite: " + std::string(name));
}

std::vector<ExploratoryRow> exploratory_report(const std::vector<std::uint64_t>& primes, std::uint64_t n_max,
                                               unsigned workers) {
  std::vector<ExploratoryRow> rows;
  const FixSequence fix = fix_sequence(2, static_cast<unsigned>(n_max), FixMode::floating);
  for (std::uint64_t p : primes) {
    const FieldPtr field = make_field(p, 1);
    const std::vector<std::uint32_t> squares = power_map(*field, 2);
    // Integer image-size totals per chunk of alphas, summed in chunk order.
    constexpr std::uint64_t kChunk = 256;
    const std::uint64_t chunks = (p + kChunk - 1) / kChunk;
    std::vector<std::vector<std::uint64_t>> totals(chunks, std::vector<std::uint64_t>(n_max + 1, 0));
    parallel_for(chunks, workers, [&](std::size_t c) {
      std::vector<std::uint32_t> next(p);
      for (std::uint64_t alpha = c * kChunk; alpha < std::min(p, (c + 1) * kChunk); ++alpha) {
        for (std::uint64_t x = 0; x < p; ++x) {
          const std::uint64_t v = squares[x] + alpha;
          next[x] = static_cast<std::uint32_t>(v >= p ? v - p : v);
        }
        const StrataReport report = strata_report(FunctionTable(next));
        for (std::uint64_t n = 0; n <= n_max; ++n) totals[c][n] += report.image_size(n);
      }
    });
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      unsigned __int128 sum = 0;
      for (const auto& t : totals) sum += t[n];
      ExploratoryRow row;
      row.p = p;
      row.n = n;
      row.mean_image = static_cast<long double>(sum) / (static_cast<long double>(p) * static_cast<long double>(p));
      row.fix = fix.values[n].value;
      row.relative_gap = std::abs(row.mean_image - row.fix) / row.fix;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace strata
