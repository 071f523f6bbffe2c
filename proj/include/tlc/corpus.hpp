#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlc/series.hpp"

namespace tlc {

/// Inclusive range of calendar years.
struct YearRange {
    int first = 0;
    int last = 0;

    [[nodiscard]] bool contains(int year) const noexcept { return year >= first && year <= last; }
    [[nodiscard]] bool overlaps(const YearRange& other) const noexcept {
        return first <= other.last && other.first <= last;
    }
    friend bool operator==(const YearRange&, const YearRange&) = default;
};

/// One patent. The string sets are kept sorted and deduplicated.
struct PatentRecord {
    std::string id;
    int year = 0;
    std::vector<std::string> classes;
    std::vector<std::string> inventors;
    std::vector<std::string> assignees;

    /// Sorts and deduplicates the sets, then checks the record invariants.
    static PatentRecord make(std::string id, int year, std::vector<std::string> classes,
                             std::vector<std::string> inventors = {},
                             std::vector<std::string> assignees = {});

    friend bool operator==(const PatentRecord&, const PatentRecord&) = default;
};

class Corpus {
public:
    Corpus() = default;
    /// Rejects duplicate ids.
    explicit Corpus(std::vector<PatentRecord> records);

    [[nodiscard]] const std::vector<PatentRecord>& records() const noexcept { return records_; }
    [[nodiscard]] bool empty() const noexcept { return records_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
    /// Throws on an empty corpus.
    [[nodiscard]] YearRange year_range() const;

    /// Free-form provenance (e.g. the seed of a synthetic corpus). Not serialized.
    std::map<std::string, std::string> metadata;

    friend bool operator==(const Corpus& a, const Corpus& b) { return a.records_ == b.records_; }

private:
    std::vector<PatentRecord> records_;
    YearRange range_;
};

/// Proportions p_i of classification codes in one year.
class YearlyDistribution {
public:
    /// Proportions from whole counts; zero counts are dropped.
    static YearlyDistribution from_counts(int year, const std::map<std::string, std::size_t>& counts);

    /// Proportions given directly. Must be positive and sum to 1 within 1e-9.
    static YearlyDistribution from_proportions(int year, std::vector<std::pair<std::string, double>> proportions);

    [[nodiscard]] int year() const noexcept { return year_; }
    /// Sorted by code.
    [[nodiscard]] const std::vector<std::pair<std::string, double>>& proportions() const noexcept {
        return proportions_;
    }
    [[nodiscard]] std::size_t assignment_count() const noexcept { return assignment_count_; }
    [[nodiscard]] std::size_t support() const noexcept { return proportions_.size(); }

private:
    int year_ = 0;
    std::vector<std::pair<std::string, double>> proportions_;
    std::size_t assignment_count_ = 0;
};

/// One distribution per year with at least one patent, ascending by year.
/// A patent with k codes contributes one assignment to each of them.
std::vector<YearlyDistribution> build_distributions(const Corpus& corpus,
                                                    std::optional<YearRange> window = std::nullopt);

struct EntityCounts {
    AnnualSeries patents;
    AnnualSeries inventors;
    AnnualSeries assignees;
};

/// Per-year patent count and distinct inventor/assignee counts.
EntityCounts entity_counts(const Corpus& corpus);

}  // namespace tlc
