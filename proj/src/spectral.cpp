#include "tlc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "compensated_sum.hpp"
#include "tlc/diagnostics.hpp"

namespace tlc {

AnnualSeries detrend_diff(const AnnualSeries& x) {
    std::vector<SeriesPoint> out;
    for (int year = x.first_year() + 1; !x.empty() && year <= x.last_year(); ++year) {
        auto cur = x.at(year);
        auto prev = x.at(year - 1);
        if (cur && prev) {
            out.push_back({year, *cur - *prev});
        }
    }
    if (out.empty()) {
        throw Error("detrend_diff: series '" + x.name() + "' has fewer than 2 consecutive points");
    }
    return AnnualSeries(x.name(), out);
}

AnnualSeries moving_average(const AnnualSeries& x, int window) {
    if (window < 1 || window % 2 == 0) {
        throw Error("moving average window must be odd and positive, got " + std::to_string(window));
    }
    const int half = window / 2;
    std::vector<SeriesPoint> out;
    for (const auto& run : x.contiguous_runs()) {
        const auto values = run.dense_values();
        const auto n = static_cast<int>(values.size());
        for (int c = half; c + half < n; ++c) {
            detail::CompensatedSum sum;
            double lo = values[static_cast<std::size_t>(c - half)];
            double hi = lo;
            for (int k = c - half; k <= c + half; ++k) {
                const double v = values[static_cast<std::size_t>(k)];
                sum.add(v);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            // The exact mean lies in [lo, hi]; rounding must not push it out.
            out.push_back({run.first_year() + c, std::clamp(sum.value() / window, lo, hi)});
        }
    }
    return AnnualSeries(x.name(), out);
}

Periodogram periodogram(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 4 || n % 2 != 0) {
        throw Error("periodogram needs an even number (>= 4) of observations, got " + std::to_string(n));
    }
    detail::CompensatedSum total;
    for (double v : values) {
        total.add(v);
    }
    const double mean = total.value() / static_cast<double>(n);
    std::vector<double> centered(n);
    std::transform(values.begin(), values.end(), centered.begin(),
                   [mean](double v) { return v - mean; });

    Periodogram p;
    p.n = n;
    const std::size_t half = n / 2;
    const double dn = static_cast<double>(n);
    for (std::size_t k = 1; k <= half; ++k) {
        detail::CompensatedSum cos_sum;
        detail::CompensatedSum sin_sum;
        for (std::size_t t = 0; t < n; ++t) {
            // Reduce k*t modulo n so the angle stays in [0, 2*pi).
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>((k * t) % n) / dn;
            cos_sum.add(centered[t] * std::cos(angle));
            sin_sum.add(centered[t] * std::sin(angle));
        }
        double intensity = 0.0;
        if (k < half) {
            const double a = 2.0 / dn * cos_sum.value();
            const double b = 2.0 / dn * sin_sum.value();
            intensity = dn / 2.0 * (a * a + b * b);
        } else {
            // Nyquist: the cosine coefficient is (1/n) sum x_t (-1)^t, no sine term.
            const double a = cos_sum.value() / dn;
            intensity = dn * a * a;
        }
        p.ordinates.push_back({static_cast<double>(k) / dn, intensity});
    }
    return p;
}

Periodogram periodogram(const AnnualSeries& x) {
    const auto runs = x.contiguous_runs();
    if (runs.size() > 1) {
        throw Error("periodogram: series '" + x.name() +
                    "' has missing years; select a contiguous run first");
    }
    if (runs.empty() || runs.front().span() < 4) {
        throw Error("periodogram: series '" + x.name() + "' needs at least 4 contiguous points");
    }
    auto values = runs.front().dense_values();
    int first_year = runs.front().first_year();
    bool dropped = false;
    if (values.size() % 2 != 0) {
        values.erase(values.begin());
        ++first_year;
        dropped = true;
    }
    Periodogram p = periodogram(values);
    p.first_year = first_year;
    p.dropped_first = dropped;
    return p;
}

CycleEstimate dominant_cycle(const Periodogram& p, double exclude_below) {
    std::vector<PeriodogramOrdinate> eligible;
    std::copy_if(p.ordinates.begin(), p.ordinates.end(), std::back_inserter(eligible),
                 [exclude_below](const PeriodogramOrdinate& o) { return o.frequency > exclude_below; });
    if (eligible.empty()) {
        throw Error("dominant_cycle: no ordinates above frequency " + std::to_string(exclude_below));
    }
    double top = 0.0;
    for (const auto& o : eligible) {
        top = std::max(top, o.intensity);
    }
    const double threshold = top * (1.0 - 1e-9);
    std::size_t near_top = 0;
    const PeriodogramOrdinate* best = nullptr;
    for (const auto& o : eligible) {
        if (o.intensity >= threshold) {
            ++near_top;
            if (best == nullptr) {
                best = &o;
            }
        }
    }
    CycleEstimate est;
    est.n = p.n;
    est.dominant_frequency = best->frequency;
    est.cycle_count = best->frequency * static_cast<double>(p.n);
    est.period_years = 1.0 / best->frequency;
    est.degenerate = near_top > 1 || top == 0.0;
    return est;
}

}  // namespace tlc
