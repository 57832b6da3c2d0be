#ifndef STRATA_SUITES_HPP
#define STRATA_SUITES_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace strata {

/// Outcome of one invariant suite. `failures` lists the first few violations.
struct SuiteResult {
  std::string name;
  bool passed = true;
  std::uint64_t checks = 0;
  std::string summary;
  std::vector<std::string> failures;

  void fail(std::string message);
};

std::vector<std::uint64_t> prime_powers_up_to(std::uint64_t limit);

/// Lagrange, inverses, Frobenius additivity/multiplicativity, degree counts
/// against brute force, model independence of strata.
SuiteResult field_suite(std::uint64_t max_q = 4096);
/// Brute-force w_0 against the closed form for every q <= max_q, d <= max_d, alpha.
SuiteResult w0_suite(std::uint64_t max_q = 729, unsigned max_d = 6, unsigned workers = 1);
/// Partition of the strictly preperiodic points and agreement of the three
/// strata algorithms, on unicritical tables and seeded random tables.
SuiteResult partition_suite(std::uint64_t max_q = 1024, unsigned max_d = 4, unsigned random_tables = 200,
                            std::uint64_t random_max_q = 65536, std::uint64_t seed = 20240611,
                            unsigned workers = 1);
/// Fiber sizes, conjugacy invariance and exact averaging for the given q.
SuiteResult mu_suite(const std::vector<std::uint64_t>& qs = {5, 7, 9}, unsigned workers = 1);
/// Recursion against exhaustive enumeration, plus Monte-Carlo agreement.
SuiteResult wreath_suite(bool with_monte_carlo = true, unsigned workers = 1);
/// Strict band containment and monotone decrease, d in [2,6], n in [1,30].
SuiteResult band_suite(long double max_error_bound = 1e-12L);
/// Stable thresholds for the order-of-growth inequality under both log bases.
SuiteResult threshold_suite();
/// Desk-scale parameters never put a theorem in force.
SuiteResult honesty_suite();

std::vector<std::string> suite_names();
SuiteResult run_suite(std::string_view name, unsigned workers = 1);

/// One row of the large-prime comparison between mean image proportions and fix_n.
struct ExploratoryRow {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  long double mean_image = 0;
  long double fix = 0;
  long double relative_gap = 0;
};

std::vector<ExploratoryRow> exploratory_report(const std::vector<std::uint64_t>& primes, std::uint64_t n_max,
                                               unsigned workers);

}  // namespace strata

#endif  // STRATA_SUITES_HPP
