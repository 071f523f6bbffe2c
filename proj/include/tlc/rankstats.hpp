#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tlc/series.hpp"

namespace tlc {

struct CorrelationResult {
    double rho = 0.0;
    std::size_t n = 0;
    double p_value = 1.0;
    /// "**" for p < 0.01, "*" for p < 0.05, otherwise empty (two-tailed).
    std::string stars;
};

/// Ranks starting at 1; tied values share the average of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Two-tailed p-value of a correlation via t = rho sqrt((n-2)/(1-rho^2)), n-2 df.
double correlation_p_value(double rho, std::size_t n);

std::string significance_stars(double p_value);

/// Spearman's rho on paired values (n >= 3, neither side constant).
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

/// Spearman's rho over the years present in both series (pairwise deletion).
CorrelationResult spearman(const AnnualSeries& x, const AnnualSeries& y);

struct CorrelationCell {
    std::optional<CorrelationResult> result;
    /// Why `result` is empty.
    std::string reason;
};

struct CorrelationMatrix {
    std::vector<std::string> names;
    /// Row-major, names.size() squared; symmetric with a unit diagonal.
    std::vector<CorrelationCell> cells;

    [[nodiscard]] const CorrelationCell& at(std::size_t i, std::size_t j) const {
        return cells[i * names.size() + j];
    }
};

/// Pairwise Spearman correlations. With `include_year`, a series "year"
/// holding the year itself is prepended, spanning all years of the inputs.
/// Pair failures become empty cells carrying the error message.
CorrelationMatrix correlation_matrix(const std::vector<AnnualSeries>& series, bool include_year);

}  // namespace tlc
