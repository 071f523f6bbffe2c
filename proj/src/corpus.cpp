#include "tlc/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "compensated_sum.hpp"
#include "tlc/diagnostics.hpp"

namespace tlc {

namespace {

void normalize_set(std::vector<std::string>& values, const std::string& id, const char* field) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (!values.empty() && values.front().empty()) {
        throw Error("patent '" + id + "': empty string in " + field);
    }
}

}  // namespace

PatentRecord PatentRecord::make(std::string id, int year, std::vector<std::string> classes,
                                std::vector<std::string> inventors,
                                std::vector<std::string> assignees) {
    if (id.empty()) {
        throw Error("patent id is empty");
    }
    normalize_set(classes, id, "classes");
    normalize_set(inventors, id, "inventors");
    normalize_set(assignees, id, "assignees");
    if (classes.empty()) {
        throw Error("patent '" + id + "' has no classification codes");
    }
    return PatentRecord{std::move(id), year, std::move(classes), std::move(inventors),
                        std::move(assignees)};
}

Corpus::Corpus(std::vector<PatentRecord> records) : records_(std::move(records)) {
    std::unordered_set<std::string> seen;
    seen.reserve(records_.size());
    for (const auto& r : records_) {
        if (!seen.insert(r.id).second) {
            throw Error("duplicate patent id '" + r.id + "'");
        }
    }
    if (!records_.empty()) {
        auto [lo, hi] = std::minmax_element(
            records_.begin(), records_.end(),
            [](const PatentRecord& a, const PatentRecord& b) { return a.year < b.year; });
        range_ = {lo->year, hi->year};
    }
}

YearRange Corpus::year_range() const {
    if (records_.empty()) {
        throw Error("empty corpus");
    }
    return range_;
}

YearlyDistribution YearlyDistribution::from_counts(int year,
                                                   const std::map<std::string, std::size_t>& counts) {
    YearlyDistribution d;
    d.year_ = year;
    for (const auto& [code, n] : counts) {
        d.assignment_count_ += n;
    }
    if (d.assignment_count_ == 0) {
        throw Error("distribution for " + std::to_string(year) + " has no assignments");
    }
    const auto total = static_cast<double>(d.assignment_count_);
    for (const auto& [code, n] : counts) {
        if (n > 0) {
            d.proportions_.emplace_back(code, static_cast<double>(n) / total);
        }
    }
    return d;
}

YearlyDistribution YearlyDistribution::from_proportions(
    int year, std::vector<std::pair<std::string, double>> proportions) {
    std::sort(proportions.begin(), proportions.end());
    detail::CompensatedSum sum;
    for (std::size_t i = 0; i < proportions.size(); ++i) {
        const auto& [code, p] = proportions[i];
        if (i > 0 && proportions[i - 1].first == code) {
            throw Error("duplicate code '" + code + "' in distribution");
        }
        if (!(p > 0.0) || p > 1.0) {
            throw Error("proportion for '" + code + "' outside (0, 1]");
        }
        sum.add(p);
    }
    if (proportions.empty() || std::abs(sum.value() - 1.0) > 1e-9) {
        throw Error("proportions for " + std::to_string(year) + " do not sum to 1");
    }
    YearlyDistribution d;
    d.year_ = year;
    d.proportions_ = std::move(proportions);
    return d;
}

std::vector<YearlyDistribution> build_distributions(const Corpus& corpus,
                                                    std::optional<YearRange> window) {
    const YearRange range = corpus.year_range();
    if (window && !window->overlaps(range)) {
        throw Error("window outside corpus years");
    }
    std::map<int, std::map<std::string, std::size_t>> by_year;
    for (const auto& r : corpus.records()) {
        if (window && !window->contains(r.year)) {
            continue;
        }
        auto& counts = by_year[r.year];
        for (const auto& code : r.classes) {
            ++counts[code];
        }
    }
    std::vector<YearlyDistribution> out;
    out.reserve(by_year.size());
    for (const auto& [year, counts] : by_year) {
        out.push_back(YearlyDistribution::from_counts(year, counts));
    }
    return out;
}

EntityCounts entity_counts(const Corpus& corpus) {
    const YearRange range = corpus.year_range();
    struct YearSets {
        std::size_t patents = 0;
        std::set<std::string> inventors;
        std::set<std::string> assignees;
    };
    std::map<int, YearSets> by_year;
    for (const auto& r : corpus.records()) {
        auto& s = by_year[r.year];
        ++s.patents;
        s.inventors.insert(r.inventors.begin(), r.inventors.end());
        s.assignees.insert(r.assignees.begin(), r.assignees.end());
    }
    std::vector<SeriesPoint> patents, inventors, assignees;
    for (int y = range.first; y <= range.last; ++y) {
        auto it = by_year.find(y);
        if (it == by_year.end()) {
            continue;
        }
        patents.push_back({y, static_cast<double>(it->second.patents)});
        inventors.push_back({y, static_cast<double>(it->second.inventors.size())});
        assignees.push_back({y, static_cast<double>(it->second.assignees.size())});
    }
    return {AnnualSeries("patents", patents), AnnualSeries("inventors", inventors),
            AnnualSeries("assignees", assignees)};
}

}  // namespace tlc
