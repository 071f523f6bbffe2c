// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tlc/corpus.hpp"
#include "tlc/diagnostics.hpp"
#include "tlc/indices.hpp"
#include "tlc/io.hpp"
#include "tlc/proximity.hpp"
#include "tlc/rankstats.hpp"
#include "tlc/spectral.hpp"
#include "tlc/synth.hpp"

namespace fs = std::filesystem;
using tlc::testing::make_dist;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > budget_s) {
        o.ok = false;
        o.detail = "runtime over budget";
    }
    failures += o.ok ? 0 : 1;
    std::printf("%s  %d  %-28s %7.3fs / %4.0fs  %s\n", o.ok ? "PASS" : "FAIL", id, name, secs, budget_s,
                o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::size_t random_k(std::mt19937_64& rng) { return std::uniform_int_distribution<std::size_t>(2, 200)(rng); }

Outcome decomposition() {
    Outcome o;
    std::mt19937_64 rng(101);
    double worst_sum = 0.0, worst_rao = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto k = random_k(rng);
        const auto dist = make_dist(tlc::oracle::random_simplex(rng, k));
        const double s = tlc::simpson(dist);
        const double g = tlc::gini_simpson(dist);
        const auto unit = tlc::uniform_disparity(tlc::testing::code_names(k), 1.0);
        const double r = tlc::rao_stirling(dist, unit);
        worst_sum = std::max(worst_sum, std::abs(s + g - 1.0));
        worst_rao = std::max(worst_rao, std::abs(r - g));
    }
    o.require(worst_sum <= 1e-12, fmt("|S + G - 1| reached %.3g", worst_sum));
    o.require(worst_rao <= 1e-12, fmt("|rao(d=1) - G| reached %.3g", worst_rao));
    o.detail = o.ok ? fmt("1000 cases; max |S+G-1| = %.2g, max |rao-G| = %.2g", worst_sum, worst_rao) : o.detail;
    return o;
}

Outcome attenuation() {
    Outcome o;
    std::mt19937_64 rng(103);
    double worst_excess = -1.0;
    double min_rao = 1.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto k = random_k(rng);
        const auto p = tlc::oracle::random_simplex(rng, k);
        // Mix dense random matrices with sparse ones carrying many zeros.
        auto d = tlc::oracle::random_disparity(rng, k);
        if (trial % 3 == 0) {
            for (auto& v : d) v = v < 0.5 ? 0.0 : v;
        }
        tlc::DisparityMatrix m(tlc::testing::code_names(k), d);
        o.require(tlc::validate_matrix(m).empty(), "generated matrix invalid");
        const auto dist = make_dist(p);
        const double r = tlc::rao_stirling(dist, m);
        const double g = tlc::gini_simpson(dist);
        worst_excess = std::max(worst_excess, r - g);
        min_rao = std::min(min_rao, r);
        o.require(r >= 0.0, fmt("rao = %.17g < 0", r));
        o.require(r <= g, fmt("rao %.17g > gini %.17g", r, g));
    }
    if (o.ok) o.detail = fmt("1000 cases; max (rao - G) = %.3g, min rao = %.3g", worst_excess, min_rao);
    return o;
}

Outcome spectral() {
    Outcome o;
    for (int k = 1; k <= 14; ++k) {
        std::vector<double> x(30);
        for (int t = 0; t < 30; ++t) x[t] = std::sin(2.0 * std::numbers::pi * k * t / 30.0);
        const auto p = tlc::periodogram(x);
        std::size_t peak = 0;
        for (std::size_t i = 1; i < p.ordinates.size(); ++i) {
            if (p.ordinates[i].intensity > p.ordinates[peak].intensity) peak = i;
        }
        o.require(p.ordinates[peak].frequency == k / 30.0, fmt("k = %g: peak at %g", k, p.ordinates[peak].frequency));
        const auto c = tlc::dominant_cycle(p);
        o.require(std::abs(c.cycle_count - k) <= 1e-12 && !c.degenerate,
                  fmt("k = %g: dominant_cycle reports %.17g cycles", k, c.cycle_count));
        if (k == 3) o.require(c.dominant_frequency == 0.1 && c.cycle_count == 3.0, "anchor 0.1 -> 3 cycles");
        if (k == 9) o.require(c.dominant_frequency == 0.3 && c.cycle_count == 9.0, "anchor 0.3 -> 9 cycles");
    }
    std::mt19937_64 rng(107);
    std::normal_distribution<double> g(5.0, 3.0);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 * std::uniform_int_distribution<std::size_t>(2, 200)(rng);
        std::vector<double> x(n);
        for (auto& v : x) v = g(rng);
        const auto p = tlc::periodogram(x);
        long double mean = 0.0L, ss = 0.0L, total = 0.0L;
        for (double v : x) mean += v;
        mean /= n;
        for (double v : x) ss += (v - mean) * (v - mean);
        for (const auto& od : p.ordinates) total += od.intensity;
        worst = std::max(worst, static_cast<double>(std::abs(total - ss) / ss));
    }
    o.require(worst <= 1e-6, fmt("Parseval relative error %.3g", worst));
    if (o.ok) o.detail = fmt("k = 1..14 exact; Parseval max rel err %.2g over 500 series", worst);
    return o;
}

tlc::SynthSpec cycle_spec(std::uint64_t seed) {
    tlc::SynthSpec s;
    s.years = 30;
    s.period_years = 10.0;
    s.patents_per_year = 200;
    s.amplitude = 0.1;
    s.seed = seed;
    return s;
}

Outcome cycle_recovery() {
    Outcome o;
    const int seeds = 40;
    int hits = 0;
    std::string misses;
    for (int seed = 1; seed <= seeds; ++seed) {
        const auto spec = cycle_spec(static_cast<std::uint64_t>(seed));
        std::stringstream csv;
        tlc::io::write_patents(csv, tlc::generate(spec));
        const auto corpus = tlc::io::parse_patents(csv);
        const auto gini = tlc::index_series(tlc::build_distributions(corpus), nullptr,
                                            {tlc::IndexKind::gini_simpson})
                              .front();
        const auto c = tlc::dominant_cycle(tlc::periodogram(tlc::detrend_diff(gini)));
        if (std::abs(c.dominant_frequency - 0.1) <= 1.0 / 30.0 + 1e-12) {
            ++hits;
        } else {
            misses += " seed " + std::to_string(seed) + "->" + tlc::io::format_double(c.dominant_frequency);
        }
    }
    const double rate = static_cast<double>(hits) / seeds;
    o.require(rate >= 0.95, fmt("success %.3f < 0.95;", rate) + misses);
    if (o.ok) o.detail = fmt("%g/%g seeds within 1/30 of 0.1", hits, seeds);
    return o;
}

std::map<int, double> as_map(const tlc::AnnualSeries& s) {
    std::map<int, double> m;
    for (const auto& p : s.points()) {
        if (p.value) m[p.year] = *p.value;
    }
    return m;
}

// Level scan on corpora with a flat patent count, plus a first-differenced
// scan on corpora with the default exponential growth; both must hit.
Outcome lag_recovery() {
    Outcome o;
    std::string summary;
    for (const bool growing : {false, true}) {
        for (int lag : {-3, 0, 3}) {
            int hits = 0;
            for (std::uint64_t seed = 1; seed <= 20; ++seed) {
                auto spec = cycle_spec(seed);
                spec.inventor_lag_years = lag;
                if (!growing) spec.growth = 1.0;
                const auto corpus = tlc::generate(spec);
                auto variety = tlc::index_series(tlc::build_distributions(corpus), nullptr,
                                                 {tlc::IndexKind::gini_simpson})
                                   .front();
                auto inventors = tlc::moving_average(tlc::entity_counts(corpus).inventors, 5);
                if (growing) {
                    variety = tlc::detrend_diff(variety);
                    inventors = tlc::detrend_diff(inventors);
                }
                hits += tlc::oracle::best_lag(as_map(variety), as_map(inventors), 4) == lag ? 1 : 0;
            }
            const std::string tag = growing ? "diff" : "level";
            o.require(hits >= 18, tag + fmt(" lag %+g recovered in %g/20 seeds", lag, hits));
            summary += tag + fmt(" %+g: %g/20  ", lag, hits);
        }
    }
    if (o.ok) o.detail = summary;
    return o;
}

Outcome rank_oracle() {
    Outcome o;
    std::mt19937_64 rng(109);
    std::uniform_int_distribution<int> len(3, 80);
    std::uniform_int_distribution<int> small(0, 9);
    std::normal_distribution<double> g;
    double worst_tied = 0.0, worst_classical = 0.0;
    int compared = 0;
    while (compared < 1000) {
        const int n = len(rng);
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = small(rng);
            y[i] = small(rng);
        }
        tlc::CorrelationResult r;
        try {
            r = tlc::spearman(std::span<const double>(x), std::span<const double>(y));
        } catch (const tlc::Error&) {
            continue;
        }
        ++compared;
        worst_tied = std::max(worst_tied, std::abs(r.rho - tlc::oracle::spearman_rank_then_pearson(x, y)));

        std::vector<double> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = g(rng);
            b[i] = g(rng);
        }
        const double rho = tlc::spearman(std::span<const double>(a), std::span<const double>(b)).rho;
        worst_classical = std::max(worst_classical, std::abs(rho - tlc::oracle::spearman_classical(a, b)));

        std::vector<double> ea(a), ca(a), la(a);
        for (auto& v : ea) v = std::exp(v);
        for (auto& v : ca) v = v * v * v + v;
        for (auto& v : la) v = 2.5 * v - 4.0;
        for (const auto* t : {&ea, &ca, &la}) {
            o.require(tlc::spearman(std::span<const double>(*t), std::span<const double>(b)).rho == rho,
                      "monotone transform changed rho");
        }
    }
    o.require(worst_tied <= 1e-9, fmt("tied oracle gap %.3g", worst_tied));
    o.require(worst_classical <= 1e-12, fmt("classical formula gap %.3g", worst_classical));
    if (o.ok) o.detail = fmt("1000 cases; max gap tied %.2g, classical %.2g", worst_tied, worst_classical);
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool run_cli(const std::string& args) {
    const std::string cmd = std::string(TLC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
}

Outcome round_trip() {
    Outcome o;
    std::mt19937_64 rng(113);
    std::uniform_int_distribution<int> small(0, 6);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::bernoulli_distribution present(0.8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<tlc::PatentRecord> records;
        for (int i = 0; i < 30; ++i) {
            std::vector<std::string> cls, inv, asg;
            for (int k = 0; k <= small(rng); ++k) cls.push_back("H0" + std::to_string(small(rng)));
            for (int k = 0; k < small(rng); ++k) inv.push_back("inv" + std::to_string(small(rng)));
            for (int k = 0; k < small(rng) / 2; ++k) asg.push_back("asg" + std::to_string(small(rng)));
            records.push_back(tlc::PatentRecord::make("US" + std::to_string(trial * 100 + i), 1970 + small(rng) * 3,
                                                      cls, inv, asg));
        }
        const tlc::Corpus corpus(records);
        std::stringstream pc;
        tlc::io::write_patents(pc, corpus);
        o.require(tlc::io::parse_patents(pc) == corpus, "corpus round-trip mismatch");

        const auto k = static_cast<std::size_t>(2 + small(rng) * 5);
        tlc::DisparityMatrix m(tlc::testing::code_names(k), tlc::oracle::random_disparity(rng, k));
        std::stringstream mc;
        tlc::io::write_matrix(mc, m);
        o.require(tlc::io::parse_matrix(mc) == m, "matrix round-trip mismatch");
        const auto built = tlc::build_disparity_from_cooccurrence(corpus);
        std::stringstream bc;
        tlc::io::write_matrix(bc, built);
        o.require(tlc::io::parse_matrix(bc) == built, "built matrix round-trip mismatch");

        std::vector<tlc::AnnualSeries> series;
        for (int s = 0; s < 3; ++s) {
            std::vector<tlc::SeriesPoint> pts;
            for (int y = 1960 + s; y < 2000 - s * trial % 5; ++y) {
                pts.push_back({y, present(rng) ? std::optional<double>(u(rng) / (1 + small(rng))) : std::nullopt});
            }
            series.emplace_back("series_" + std::to_string(s), pts);
        }
        std::stringstream sc;
        tlc::io::write_series(sc, series);
        o.require(tlc::io::parse_series(sc) == series, "series round-trip mismatch");
    }

    const auto dir = fs::temp_directory_path() / ("tlc_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string d = dir.string() + "/";
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const char* run : {"a", "b"}) {
        const std::string r = d + run;
        o.require(run_cli("synth --seed 42 --inventor-lag 3 -o " + r + "_p.csv --truth " + r + "_t.csv"), "synth failed");
        o.require(run_cli("disparity-build --patents " + r + "_p.csv -o " + r + "_m.csv"), "disparity-build failed");
        o.require(run_cli("diversity --patents " + r + "_p.csv --matrix " + r + "_m.csv --kinds rao,gini_simpson -o " +
                          r + "_d.csv"),
                  "diversity failed");
        o.require(run_cli("spectrum --series " + r + "_d.csv --column gini_simpson --detrend -o " + r +
                          "_pg.csv --summary " + r + "_s.txt"),
                  "spectrum failed");
        o.require(run_cli("counts --patents " + r + "_p.csv -o " + r + "_c.csv"), "counts failed");
        o.require(run_cli("ma --series " + r + "_c.csv --column inventors -o " + r + "_ma.csv"), "ma failed");
        o.require(run_cli("correlate " + r + "_d.csv " + r + "_ma.csv --include-year -o " + r + "_cor.csv --detail " +
                          r + "_det.csv"),
                  "correlate failed");
        o.require(run_cli("pipeline --patents " + r + "_p.csv --matrix " + r + "_m.csv --out-dir " + r + "_pipe"),
                  "pipeline failed");
    }
    int compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        const auto name = entry.path().lexically_relative(dir).string();
        if (!entry.is_regular_file() || !name.starts_with("a_")) continue;
        const auto twin = dir / ("b_" + name.substr(2));
        o.require(fs::exists(twin) && slurp(entry.path()) == slurp(twin), "CLI output differs: " + name);
        ++compared;
    }
    o.require(compared >= 15, fmt("only %g CLI outputs compared", compared));
    fs::remove_all(dir);
    if (o.ok) o.detail = fmt("100 randomized round-trips each; %g CLI outputs byte-identical", compared);
    return o;
}

}  // namespace

int main() {
    criterion(1, "decomposition identity", 5, decomposition);
    criterion(2, "attenuation inequality", 5, attenuation);
    criterion(3, "spectral fidelity", 2, spectral);
    criterion(4, "end-to-end cycle recovery", 30, cycle_recovery);
    criterion(5, "lag recovery", 30, lag_recovery);
    criterion(6, "rank-statistics oracle", 5, rank_oracle);
    criterion(7, "round-trip and determinism", 10, round_trip);
    std::printf("%s: %d of 7 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
