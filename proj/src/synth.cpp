#include "tlc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "tlc/diagnostics.hpp"

namespace tlc {

namespace {

// std::*_distribution output is implementation-defined; these are not.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

    /// Unbiased integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t r = engine_();
        while (r >= limit) {
            r = engine_();
        }
        return r % bound;
    }

private:
    std::mt19937_64 engine_;
};

std::string make_id(char prefix, std::size_t n, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, n);
    return buf;
}

double target_gini(const SynthSpec& spec, int t) {
    return spec.baseline_gini +
           spec.amplitude * std::sin(2.0 * std::numbers::pi * t / spec.period_years);
}

}  // namespace

void validate(const SynthSpec& spec) {
    if (!(spec.period_years >= 2.0)) {
        throw Error("synth: period must be at least 2 years");
    }
    if (spec.years < 2.0 * spec.period_years) {
        throw Error("synth: years must cover at least two full periods");
    }
    if (spec.patents_per_year < 1 || spec.class_pool < 2 || !(spec.growth > 0.0) ||
        !(spec.inventors_per_patent > 0.0) || !(spec.assignees_per_patent > 0.0)) {
        throw Error("synth: counts, growth and per-patent ratios must be positive (class pool >= 2)");
    }
    if (!(spec.amplitude >= 0.0 && spec.amplitude < 1.0) ||
        !(spec.inventor_amplitude >= 0.0 && spec.inventor_amplitude < 1.0)) {
        throw Error("synth: amplitudes must lie in [0, 1)");
    }
    const double max_gini = 1.0 - 1.0 / spec.class_pool;
    if (spec.baseline_gini - spec.amplitude < 0.0 || spec.baseline_gini + spec.amplitude > max_gini) {
        throw Error("synth: baseline +/- amplitude must stay within [0, 1 - 1/class_pool]");
    }
}

double dominant_weight_for_simpson(double simpson, int classes) {
    const double k = classes;
    if (classes < 2 || simpson < 1.0 / k - 1e-15 || simpson > 1.0) {
        throw Error("synth: Simpson target outside [1/k, 1]");
    }
    // With u = (1 - w) / k the dominant class has w + u and the others u, so
    // simpson = 1 - 2 m u + m k u^2 with m = k - 1. Take the root with u <= 1/k.
    const double m = k - 1.0;
    const double disc = std::max(0.0, m * m - m * k * (1.0 - simpson));
    const double u = (m - std::sqrt(disc)) / (m * k);
    return std::clamp(1.0 - k * u, 0.0, 1.0);
}

Corpus generate(const SynthSpec& spec) {
    validate(spec);
    PortableRng rng(spec.seed);
    const auto pool = static_cast<std::uint64_t>(spec.class_pool);

    std::vector<std::string> codes;
    for (int c = 0; c < spec.class_pool; ++c) {
        codes.push_back(make_id('K', static_cast<std::size_t>(c), 3));
    }

    std::vector<PatentRecord> records;
    std::size_t next_patent = 1;
    std::size_t inventor_pool = 0;
    std::vector<std::size_t> scratch;

    for (int t = 0; t < spec.years; ++t) {
        const int year = spec.start_year + t;
        const auto patents = static_cast<std::size_t>(
            std::max(1.0, std::round(spec.patents_per_year * std::pow(spec.growth, t))));
        const double w = dominant_weight_for_simpson(1.0 - target_gini(spec, t), spec.class_pool);

        const double swing = 1.0 + spec.inventor_amplitude *
                                       std::sin(2.0 * std::numbers::pi *
                                                (t - spec.inventor_lag_years) / spec.period_years);
        const auto distinct_inventors = static_cast<std::size_t>(
            std::max(1.0, std::round(spec.inventors_per_patent * static_cast<double>(patents) * swing)));
        inventor_pool = std::max(inventor_pool, 2 * distinct_inventors);
        const auto assignee_pool = static_cast<std::uint64_t>(
            std::max(1.0, std::round(spec.assignees_per_patent * static_cast<double>(patents))));

        // Draw this year's distinct inventors from the (growing) pool.
        scratch.resize(inventor_pool);
        for (std::size_t i = 0; i < inventor_pool; ++i) {
            scratch[i] = i;
        }
        for (std::size_t i = 0; i < distinct_inventors; ++i) {
            const auto j = i + rng.below(inventor_pool - i);
            std::swap(scratch[i], scratch[j]);
        }
        std::vector<std::vector<std::string>> inventors(patents);
        for (std::size_t i = 0; i < distinct_inventors; ++i) {
            inventors[i % patents].push_back(make_id('I', scratch[i], 7));
        }
        for (auto& set : inventors) {
            if (set.empty()) {
                set.push_back(make_id('I', scratch[rng.below(distinct_inventors)], 7));
            }
        }

        for (std::size_t p = 0; p < patents; ++p) {
            const std::size_t cls = rng.uniform() < w ? 0 : rng.below(pool);
            std::vector<std::string> assignee{make_id('A', rng.below(assignee_pool), 6)};
            records.push_back(PatentRecord::make(make_id('P', next_patent++, 8), year, {codes[cls]},
                                                 std::move(inventors[p]), std::move(assignee)));
        }
    }
    Corpus corpus(std::move(records));
    corpus.metadata["generator"] = "synth/mt19937_64";
    corpus.metadata["seed"] = std::to_string(spec.seed);
    return corpus;
}

AnnualSeries ground_truth(const SynthSpec& spec) {
    validate(spec);
    std::vector<double> values;
    for (int t = 0; t < spec.years; ++t) {
        values.push_back(target_gini(spec, t));
    }
    return AnnualSeries::from_values("gini_simpson_target", spec.start_year, values);
}

}  // namespace tlc
