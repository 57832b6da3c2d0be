#ifndef STRATA_FORMATS_HPP
#define STRATA_FORMATS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "strata/bounds.hpp"
#include "strata/dynamo.hpp"
#include "strata/unifam.hpp"
#include "strata/wreath.hpp"

namespace strata {

enum class Schema { strata, wreath, bounds };

/// Column names, in emission order.
const std::vector<std::string>& schema_columns(Schema schema);

using CsvRow = std::vector<std::string>;

/// Header line, then one line per row; '\n' line endings; fields holding a
/// comma, quote or newline are double-quoted with inner quotes doubled.
/// Throws SchemaViolation when a row has the wrong number of columns.
std::string emit_csv(const std::vector<CsvRow>& rows, Schema schema);

/// Splits one CSV record, undoing the quoting above.
CsvRow parse_csv_line(std::string_view line);

/// {"0":k0,"1":k1,...} in stratum order.
std::string strata_json(const StrataReport& report);

CsvRow strata_row(std::uint64_t p, unsigned r, unsigned d, std::uint64_t alpha_code, const StrataReport& report);
CsvRow wreath_row(unsigned d, const FixEntry& fix);
CsvRow bounds_row(const BoundReport& report);

/// One strata row per alpha plus a trailing row whose alpha_code column is AGG.
std::string sweep_csv(const SweepResult& sweep);
/// Inverse of sweep_csv for non-empty sweeps.
SweepResult parse_sweep_csv(std::string_view text);

/// Fixed-format long double, 21 significant digits.
std::string format_float(long double x);

/// Graphviz digraph: node per element, edge x -> f(x); periodic points are
/// double circles, W_n points get a shape keyed by n (square, triangle,
/// diamond, star, ...). Throws CapacityExceeded above 5000 nodes.
std::string emit_dot(const FunctionTable& t, const OrbitClassification& classification);

}  // namespace strata

#endif  // STRATA_FORMATS_HPP
