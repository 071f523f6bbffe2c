#pragma once

#include <cstddef>
#include <vector>

#include "tlc/series.hpp"

namespace tlc {

/// First differences x(t) - x(t-1) over consecutive present years. Gaps
/// break runs, so each run loses its first year. Needs >= 2 adjacent points.
AnnualSeries detrend_diff(const AnnualSeries& x);

/// Centered moving average over an odd window. Years where the full window
/// does not fit inside a contiguous run are dropped; window 1 is identity.
AnnualSeries moving_average(const AnnualSeries& x, int window = 5);

struct PeriodogramOrdinate {
    double frequency;
    double intensity;
};

/// Raw periodogram of a mean-removed series at Fourier frequencies k/n,
/// k = 1 .. n/2. Intensities sum to the sum of squared deviations.
struct Periodogram {
    std::size_t n = 0;
    std::vector<PeriodogramOrdinate> ordinates;
    bool mean_removed = true;
    /// First year of the observations actually used.
    int first_year = 0;
    /// True when an odd-length run lost its earliest observation.
    bool dropped_first = false;
};

/// Periodogram of a contiguous series (leading/trailing gaps are not possible
/// in AnnualSeries; interior missing years are an error). Needs >= 4 points.
Periodogram periodogram(const AnnualSeries& x);

/// Same computation on plain values; `values.size()` must be even and >= 4.
Periodogram periodogram(const std::vector<double>& values);

struct CycleEstimate {
    double dominant_frequency = 0.0;
    double cycle_count = 0.0;
    double period_years = 0.0;
    std::size_t n = 0;
    /// Set when another ordinate lies within 1e-9 (relative) of the peak,
    /// including the all-zero periodogram.
    bool degenerate = false;
};

/// Peak of the periodogram among frequencies above `exclude_below`. Near
/// ties resolve to the lowest frequency.
CycleEstimate dominant_cycle(const Periodogram& p, double exclude_below = 0.0);

}  // namespace tlc
