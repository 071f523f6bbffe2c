#pragma once

#include <cstdint>

#include "tlc/corpus.hpp"
#include "tlc/series.hpp"

namespace tlc {

/// Parameters of a synthetic corpus whose yearly Gini-Simpson index follows
/// baseline + amplitude * sin(2 pi t / period) for t = 0 .. years-1.
struct SynthSpec {
    int years = 30;
    double period_years = 10.0;
    int start_year = 1975;
    /// Patents in the first year; year t has round(patents_per_year * growth^t).
    int patents_per_year = 200;
    double growth = 1.05;
    int class_pool = 20;
    double baseline_gini = 0.6;
    double amplitude = 0.15;
    /// Distinct inventors per patent, before the oscillation is applied.
    double inventors_per_patent = 2.0;
    /// Relative swing of the distinct-inventor count.
    double inventor_amplitude = 0.3;
    /// Positive: the inventor oscillation trails the variety oscillation.
    int inventor_lag_years = 0;
    /// Assignee pool size relative to the year's patent count.
    double assignees_per_patent = 0.5;
    std::uint64_t seed = 1;
};

/// Throws when the spec cannot be realized (e.g. fewer than two cycles,
/// or a target index outside [0, 1 - 1/class_pool]).
void validate(const SynthSpec& spec);

/// Probability mass w on the dominant class for a mixture "w on one class,
/// 1 - w spread uniformly over all `classes`" whose sum of squared
/// proportions equals `simpson`, which must lie in [1/classes, 1].
double dominant_weight_for_simpson(double simpson, int classes);

/// Deterministic for a fixed spec (mt19937_64 with portable transforms).
/// Every patent carries exactly one class code, so measured proportions are
/// unbiased draws from the target mixture.
Corpus generate(const SynthSpec& spec);

/// Noise-free target Gini-Simpson curve, named "gini_simpson_target".
AnnualSeries ground_truth(const SynthSpec& spec);

}  // namespace tlc
