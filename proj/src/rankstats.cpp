#include "tlc/rankstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "compensated_sum.hpp"
#include "tlc/diagnostics.hpp"

namespace tlc {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        // Positions i..j (0-based) share ranks i+1..j+1.
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

double correlation_p_value(double rho, std::size_t n) {
    if (n < 3) {
        throw Error("p-value needs at least 3 observations");
    }
    if (std::abs(rho) >= 1.0) {
        return 0.0;
    }
    const double df = static_cast<double>(n - 2);
    const double t = rho * std::sqrt(df / (1.0 - rho * rho));
    const boost::math::students_t dist(df);
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))), 0.0, 1.0);
}

std::string significance_stars(double p_value) {
    if (p_value < 0.01) return "**";
    if (p_value < 0.05) return "*";
    return "";
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error("spearman: series lengths differ");
    }
    const std::size_t n = x.size();
    if (n < 3) {
        throw Error("spearman: fewer than 3 paired observations (" + std::to_string(n) + ")");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    // Average ranks always have mean (n + 1) / 2.
    const double mean = (static_cast<double>(n) + 1.0) / 2.0;
    detail::CompensatedSum sxy;
    detail::CompensatedSum sxx;
    detail::CompensatedSum syy;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy.add(dx * dy);
        sxx.add(dx * dx);
        syy.add(dy * dy);
    }
    if (sxx.value() == 0.0 || syy.value() == 0.0) {
        throw Error("spearman: undefined correlation (constant series)");
    }
    CorrelationResult r;
    r.n = n;
    r.rho = std::clamp(sxy.value() / std::sqrt(sxx.value() * syy.value()), -1.0, 1.0);
    r.p_value = correlation_p_value(r.rho, n);
    r.stars = significance_stars(r.p_value);
    return r;
}

CorrelationResult spearman(const AnnualSeries& x, const AnnualSeries& y) {
    std::vector<double> xs;
    std::vector<double> ys;
    if (!x.empty() && !y.empty()) {
        const int lo = std::max(x.first_year(), y.first_year());
        const int hi = std::min(x.last_year(), y.last_year());
        for (int year = lo; year <= hi; ++year) {
            auto a = x.at(year);
            auto b = y.at(year);
            if (a && b) {
                xs.push_back(*a);
                ys.push_back(*b);
            }
        }
    }
    if (xs.size() < 3) {
        throw Error("spearman: '" + x.name() + "' and '" + y.name() + "' share fewer than 3 years");
    }
    return spearman(std::span<const double>(xs), std::span<const double>(ys));
}

CorrelationMatrix correlation_matrix(const std::vector<AnnualSeries>& series, bool include_year) {
    std::vector<AnnualSeries> all;
    if (include_year) {
        int lo = 0;
        int hi = -1;
        for (const auto& s : series) {
            if (s.empty()) {
                continue;
            }
            if (hi < lo) {
                lo = s.first_year();
                hi = s.last_year();
            } else {
                lo = std::min(lo, s.first_year());
                hi = std::max(hi, s.last_year());
            }
        }
        std::vector<double> years;
        for (int y = lo; y <= hi; ++y) {
            years.push_back(static_cast<double>(y));
        }
        all.push_back(AnnualSeries::from_values("year", lo, years));
    }
    all.insert(all.end(), series.begin(), series.end());
    if (all.size() < 2) {
        throw Error("correlation matrix needs at least 2 series");
    }

    CorrelationMatrix m;
    const std::size_t k = all.size();
    for (const auto& s : all) {
        m.names.push_back(s.name());
    }
    m.cells.resize(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        m.cells[i * k + i].result = CorrelationResult{1.0, all[i].present_count(), 0.0, ""};
        for (std::size_t j = i + 1; j < k; ++j) {
            CorrelationCell cell;
            try {
                cell.result = spearman(all[i], all[j]);
            } catch (const Error& e) {
                cell.reason = e.what();
            }
            m.cells[i * k + j] = cell;
            m.cells[j * k + i] = cell;
        }
    }
    return m;
}

}  // namespace tlc
