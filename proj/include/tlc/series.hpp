#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tlc {

/// One year of an annual series; an empty value marks the year as missing.
struct SeriesPoint {
    int year = 0;
    std::optional<double> value;

    friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

/// Year-indexed series stored in canonical form: years form one gap-free
/// range, interior years without data are explicit missing values, and the
/// range starts and ends on present values. Absent and missing are therefore
/// the same thing, which keeps CSV round-trips exact.
class AnnualSeries {
public:
    AnnualSeries() = default;
    explicit AnnualSeries(std::string name) : name_(std::move(name)) {}

    /// Years must be strictly increasing; values must be finite.
    AnnualSeries(std::string name, const std::vector<SeriesPoint>& points);

    /// Contiguous values starting at `first_year`.
    static AnnualSeries from_values(std::string name, int first_year,
                                    const std::vector<double>& values);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    void rename(std::string name) { name_ = std::move(name); }

    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    /// Number of years spanned, including missing ones.
    [[nodiscard]] std::size_t span() const noexcept { return values_.size(); }
    [[nodiscard]] std::size_t present_count() const noexcept;

    [[nodiscard]] int first_year() const noexcept { return first_year_; }
    [[nodiscard]] int last_year() const noexcept {
        return first_year_ + static_cast<int>(values_.size()) - 1;
    }

    [[nodiscard]] std::optional<double> at(int year) const noexcept;
    [[nodiscard]] std::vector<SeriesPoint> points() const;

    /// Maximal runs of consecutive present years, in order.
    [[nodiscard]] std::vector<AnnualSeries> contiguous_runs() const;

    /// Values of a series that has no missing years.
    [[nodiscard]] std::vector<double> dense_values() const;

    friend bool operator==(const AnnualSeries&, const AnnualSeries&) = default;

private:
    std::string name_;
    int first_year_ = 0;
    std::vector<std::optional<double>> values_;
};

}  // namespace tlc
