#include "tlc/indices.hpp"

#include <map>
#include <sstream>

#include "compensated_sum.hpp"

namespace tlc {

std::string_view index_name(IndexKind kind) noexcept {
    switch (kind) {
        case IndexKind::rao_stirling: return "rao_stirling";
        case IndexKind::variety: return "variety";
        case IndexKind::gini_simpson: return "gini_simpson";
        case IndexKind::simpson: return "simpson";
        case IndexKind::herfindahl: return "herfindahl";
    }
    return "unknown";
}

IndexKind parse_index_kind(std::string_view name) {
    if (name == "rao_stirling" || name == "rao") return IndexKind::rao_stirling;
    if (name == "variety") return IndexKind::variety;
    if (name == "gini_simpson") return IndexKind::gini_simpson;
    if (name == "simpson") return IndexKind::simpson;
    if (name == "herfindahl") return IndexKind::herfindahl;
    throw Error("unknown index kind '" + std::string(name) +
                "' (expected rao_stirling, variety, gini_simpson, simpson, herfindahl)");
}

double simpson(const YearlyDistribution& dist) {
    detail::CompensatedSum sum;
    for (const auto& [code, p] : dist.proportions()) {
        sum.add(p * p);
    }
    return sum.value();
}

double gini_simpson(const YearlyDistribution& dist) { return 1.0 - simpson(dist); }

double rao_stirling(const YearlyDistribution& dist, const DisparityMatrix& disparity,
                    const MissingCodePolicy& policy, Diagnostics* diag) {
    const auto& props = dist.proportions();
    std::vector<std::optional<std::size_t>> rows;
    rows.reserve(props.size());
    for (const auto& [code, p] : props) {
        auto idx = disparity.index_of(code);
        if (!idx) {
            if (!policy.substitute) {
                throw Error("code '" + code + "' absent from disparity matrix");
            }
            std::ostringstream msg;
            msg << "code '" << code << "' absent from disparity matrix in " << dist.year()
                << "; substituted d = " << *policy.substitute;
            warn(diag, msg.str());
        }
        rows.push_back(idx);
    }

    auto d = [&](std::size_t a, std::size_t b) {
        if (a == b) {
            return 0.0;
        }
        if (!rows[a] || !rows[b]) {
            return *policy.substitute;
        }
        return disparity(*rows[a], *rows[b]);
    };

    detail::CompensatedSum outer;
    for (std::size_t i = 0; i < props.size(); ++i) {
        detail::CompensatedSum inner;
        for (std::size_t j = 0; j < props.size(); ++j) {
            inner.add(props[j].second * d(i, j));
        }
        outer.add(props[i].second * inner.value());
    }
    return outer.value();
}

IndexValue compute_index(IndexKind kind, const YearlyDistribution& dist,
                         const DisparityMatrix* disparity, const MissingCodePolicy& policy,
                         Diagnostics* diag) {
    switch (kind) {
        case IndexKind::rao_stirling:
            if (disparity == nullptr) {
                throw Error("rao_stirling requires a disparity matrix");
            }
            return {kind, rao_stirling(dist, *disparity, policy, diag)};
        case IndexKind::variety:
        case IndexKind::gini_simpson:
            return {kind, gini_simpson(dist)};
        case IndexKind::simpson:
        case IndexKind::herfindahl:
            return {kind, simpson(dist)};
    }
    throw Error("unknown index kind");
}

std::vector<AnnualSeries> index_series(const std::vector<YearlyDistribution>& dists,
                                       const DisparityMatrix* disparity,
                                       const std::set<IndexKind>& kinds,
                                       const MissingCodePolicy& policy, Diagnostics* diag) {
    if (kinds.contains(IndexKind::rao_stirling)) {
        if (disparity == nullptr) {
            throw Error("rao_stirling requested without a disparity matrix");
        }
        auto violations = validate_matrix(*disparity);
        if (!violations.empty()) {
            throw Error("invalid disparity matrix: " + violations.front().message);
        }
    }
    std::vector<AnnualSeries> out;
    for (IndexKind kind : kinds) {
        std::vector<SeriesPoint> points;
        points.reserve(dists.size());
        for (const auto& dist : dists) {
            points.push_back({dist.year(), compute_index(kind, dist, disparity, policy, diag).value});
        }
        out.emplace_back(std::string(index_name(kind)), points);
    }
    return out;
}

}  // namespace tlc
