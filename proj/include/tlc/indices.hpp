#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tlc/corpus.hpp"
#include "tlc/diagnostics.hpp"
#include "tlc/proximity.hpp"
#include "tlc/series.hpp"

namespace tlc {

/// Members of the diversity-index family. variety and gini_simpson name the
/// same quantity, as do simpson and herfindahl.
enum class IndexKind { rao_stirling, variety, gini_simpson, simpson, herfindahl };

[[nodiscard]] std::string_view index_name(IndexKind kind) noexcept;
/// Accepts the canonical names plus "rao" for rao_stirling.
[[nodiscard]] IndexKind parse_index_kind(std::string_view name);

struct IndexValue {
    IndexKind kind;
    double value;
};

/// Concentration: sum of p_i squared.
double simpson(const YearlyDistribution& dist);
inline double herfindahl(const YearlyDistribution& dist) { return simpson(dist); }

/// Variety: 1 - simpson, i.e. the sum of p_i p_j over i != j.
double gini_simpson(const YearlyDistribution& dist);
inline double variety(const YearlyDistribution& dist) { return gini_simpson(dist); }

/// What to do when a code of the distribution is not in the disparity matrix.
struct MissingCodePolicy {
    /// Empty: throw. Otherwise the disparity between an unknown code and any
    /// other code (zero with itself) and a warning is recorded.
    std::optional<double> substitute;
};

/// Rao-Stirling diversity: sum over ordered pairs of p_i p_j d_ij. The
/// matrix is assumed valid (see validate_matrix).
double rao_stirling(const YearlyDistribution& dist, const DisparityMatrix& disparity,
                    const MissingCodePolicy& policy = {}, Diagnostics* diag = nullptr);

/// Dispatches on `kind`; `disparity` is required only for rao_stirling.
IndexValue compute_index(IndexKind kind, const YearlyDistribution& dist,
                         const DisparityMatrix* disparity = nullptr,
                         const MissingCodePolicy& policy = {}, Diagnostics* diag = nullptr);

/// One series per requested kind (in enum order), named after the kind, with
/// missing values for years between distributions. The matrix is validated
/// once up front when rao_stirling is requested.
std::vector<AnnualSeries> index_series(const std::vector<YearlyDistribution>& dists,
                                       const DisparityMatrix* disparity,
                                       const std::set<IndexKind>& kinds,
                                       const MissingCodePolicy& policy = {},
                                       Diagnostics* diag = nullptr);

}  // namespace tlc
