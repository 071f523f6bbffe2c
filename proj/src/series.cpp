#include "tlc/series.hpp"

#include <algorithm>
#include <cmath>

#include "tlc/diagnostics.hpp"

namespace tlc {

AnnualSeries::AnnualSeries(std::string name, const std::vector<SeriesPoint>& points)
    : name_(std::move(name)) {
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].year <= points[i - 1].year) {
            throw Error("series '" + name_ + "': years not strictly increasing at " +
                        std::to_string(points[i].year));
        }
    }
    auto first = std::find_if(points.begin(), points.end(),
                              [](const SeriesPoint& p) { return p.value.has_value(); });
    auto last = std::find_if(points.rbegin(), points.rend(),
                             [](const SeriesPoint& p) { return p.value.has_value(); });
    if (first == points.end()) {
        return;
    }
    first_year_ = first->year;
    values_.assign(static_cast<std::size_t>(last->year - first->year + 1), std::nullopt);
    for (auto it = first; it != last.base(); ++it) {
        if (!it->value) {
            continue;
        }
        if (!std::isfinite(*it->value)) {
            throw Error("series '" + name_ + "': non-finite value at " +
                        std::to_string(it->year));
        }
        values_[static_cast<std::size_t>(it->year - first_year_)] = it->value;
    }
}

AnnualSeries AnnualSeries::from_values(std::string name, int first_year,
                                       const std::vector<double>& values) {
    std::vector<SeriesPoint> points;
    points.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        points.push_back({first_year + static_cast<int>(i), values[i]});
    }
    return AnnualSeries(std::move(name), points);
}

std::size_t AnnualSeries::present_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); }));
}

std::optional<double> AnnualSeries::at(int year) const noexcept {
    if (values_.empty() || year < first_year_ || year > last_year()) {
        return std::nullopt;
    }
    return values_[static_cast<std::size_t>(year - first_year_)];
}

std::vector<SeriesPoint> AnnualSeries::points() const {
    std::vector<SeriesPoint> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out.push_back({first_year_ + static_cast<int>(i), values_[i]});
    }
    return out;
}

std::vector<AnnualSeries> AnnualSeries::contiguous_runs() const {
    std::vector<AnnualSeries> runs;
    std::size_t i = 0;
    while (i < values_.size()) {
        if (!values_[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        std::vector<double> run;
        while (j < values_.size() && values_[j]) {
            run.push_back(*values_[j]);
            ++j;
        }
        runs.push_back(from_values(name_, first_year_ + static_cast<int>(i), run));
        i = j;
    }
    return runs;
}

std::vector<double> AnnualSeries::dense_values() const {
    std::vector<double> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!values_[i]) {
            throw Error("series '" + name_ + "' has a missing value at " +
                        std::to_string(first_year_ + static_cast<int>(i)));
        }
        out.push_back(*values_[i]);
    }
    return out;
}

}  // namespace tlc
