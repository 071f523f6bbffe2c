#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "tlc/corpus.hpp"

namespace tlc::testing {

inline std::string code_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "c%05zu", i);
    return buf;
}

inline std::vector<std::string> code_names(std::size_t k) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(code_name(i));
    return out;
}

/// Distribution whose i-th code (sorted order) has proportion p[i].
inline YearlyDistribution make_dist(const std::vector<double>& p, int year = 2000) {
    std::vector<std::pair<std::string, double>> props;
    for (std::size_t i = 0; i < p.size(); ++i) props.emplace_back(code_name(i), p[i]);
    return YearlyDistribution::from_proportions(year, std::move(props));
}

}  // namespace tlc::testing
