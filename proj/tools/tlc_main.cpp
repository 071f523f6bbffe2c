// tlc: command-line front end for diversity indices, spectral cycle
// detection, and rank correlations over patent classification data.
//
// Exit codes: 0 success, 1 usage error, 2 data error. Errors are reported as
// one line on stderr: "error[usage]: ..." or "error[data]: ...".

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tlc/corpus.hpp"
#include "tlc/indices.hpp"
#include "tlc/io.hpp"
#include "tlc/proximity.hpp"
#include "tlc/rankstats.hpp"
#include "tlc/spectral.hpp"
#include "tlc/synth.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string one_line(std::string text) {
    std::replace_if(text.begin(), text.end(), [](char c) { return c == '\n' || c == '\r'; }, ' ');
    return text;
}

void report_warnings(const tlc::Diagnostics& diag) {
    for (const auto& w : diag.warnings) {
        std::cerr << "warning: " << one_line(w) << '\n';
    }
}

/// Writes through `fn` to `path`, or to stdout for "-".
template <typename Fn>
void emit(const std::string& path, Fn&& fn) {
    if (path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw tlc::Error("cannot write '" + path + "'");
    }
    fn(out);
    if (!out) {
        throw tlc::Error("write failed for '" + path + "'");
    }
}

std::optional<std::size_t> truncation_of(int digits) {
    if (digits <= 0) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(digits);
}

std::set<tlc::IndexKind> parse_kinds(const std::vector<std::string>& names) {
    std::set<tlc::IndexKind> kinds;
    for (const auto& name : names) {
        try {
            kinds.insert(tlc::parse_index_kind(name));
        } catch (const tlc::Error& e) {
            throw UsageError(e.what());
        }
    }
    if (kinds.empty()) {
        throw UsageError("no index kinds requested");
    }
    return kinds;
}

const tlc::AnnualSeries& select_column(const std::vector<tlc::AnnualSeries>& series,
                                       const std::string& column) {
    if (column.empty() && series.size() == 1) {
        return series.front();
    }
    for (const auto& s : series) {
        if (s.name() == column) {
            return s;
        }
    }
    std::string available;
    for (const auto& s : series) {
        available += (available.empty() ? "" : ", ") + s.name();
    }
    throw tlc::Error((column.empty() ? std::string("no --column given") : "column '" + column + "' not found") +
                     "; available columns: " + available);
}

/// Longest run of consecutive present years; the latest wins ties.
tlc::AnnualSeries longest_run(const tlc::AnnualSeries& s, tlc::Diagnostics& diag) {
    auto runs = s.contiguous_runs();
    if (runs.empty()) {
        throw tlc::Error("series '" + s.name() + "' has no values");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        if (runs[i].span() >= runs[best].span()) {
            best = i;
        }
    }
    if (runs.size() > 1) {
        diag.warn("series '" + s.name() + "' has missing years; using " +
                  std::to_string(runs[best].first_year()) + "-" + std::to_string(runs[best].last_year()));
    }
    return runs[best];
}

// ---------------------------------------------------------------- commands

struct MatrixOptions {
    std::string path;
    bool cosine = false;
    std::optional<double> missing_disparity;
};

std::optional<tlc::DisparityMatrix> load_matrix(const MatrixOptions& opt) {
    if (opt.path.empty()) {
        return std::nullopt;
    }
    return tlc::io::read_matrix(opt.path, opt.cosine ? tlc::io::MatrixValues::cosine
                                                     : tlc::io::MatrixValues::disparity);
}

struct DiversityOptions {
    std::string patents;
    MatrixOptions matrix;
    std::vector<std::string> kinds{"gini_simpson", "simpson"};
    int truncate = 0;
    std::optional<int> first_year;
    std::optional<int> last_year;
    std::string output = "-";
};

int run_diversity(const DiversityOptions& opt) {
    const auto kinds = parse_kinds(opt.kinds);
    if (kinds.contains(tlc::IndexKind::rao_stirling) && opt.matrix.path.empty()) {
        throw UsageError("rao_stirling requires --matrix");
    }
    const auto corpus = tlc::io::read_patents(opt.patents, truncation_of(opt.truncate));
    const auto matrix = load_matrix(opt.matrix);
    std::optional<tlc::YearRange> window;
    if (opt.first_year || opt.last_year) {
        const auto range = corpus.year_range();
        window = tlc::YearRange{opt.first_year.value_or(range.first), opt.last_year.value_or(range.last)};
    }
    tlc::Diagnostics diag;
    const auto series = tlc::index_series(tlc::build_distributions(corpus, window),
                                          matrix ? &*matrix : nullptr, kinds,
                                          {opt.matrix.missing_disparity}, &diag);
    report_warnings(diag);
    emit(opt.output, [&](std::ostream& out) { tlc::io::write_series(out, series); });
    return 0;
}

struct DisparityBuildOptions {
    std::string patents;
    int truncate = 0;
    std::string output = "-";
};

int run_disparity_build(const DisparityBuildOptions& opt) {
    const auto corpus = tlc::io::read_patents(opt.patents, truncation_of(opt.truncate));
    tlc::Diagnostics diag;
    const auto m = tlc::build_disparity_from_cooccurrence(corpus, &diag);
    report_warnings(diag);
    emit(opt.output, [&](std::ostream& out) { tlc::io::write_matrix(out, m); });
    return 0;
}

struct SpectrumOptions {
    std::string series;
    std::string column;
    bool detrend = false;
    double exclude_below = 0.0;
    std::string output = "-";
    std::string summary;
};

int run_spectrum(const SpectrumOptions& opt) {
    const auto all = tlc::io::read_series(opt.series);
    tlc::AnnualSeries x = select_column(all, opt.column);
    if (opt.detrend) {
        x = tlc::detrend_diff(x);
    }
    const auto p = tlc::periodogram(x);
    const auto cycle = tlc::dominant_cycle(p, opt.exclude_below);
    const std::string line = tlc::io::format_cycle_summary(p, cycle);
    emit(opt.output, [&](std::ostream& out) { tlc::io::write_periodogram(out, p); });
    if (!opt.summary.empty()) {
        emit(opt.summary, [&](std::ostream& out) { out << line << '\n'; });
    }
    (opt.output == "-" ? std::cerr : std::cout) << line << '\n';
    return 0;
}

struct CountsOptions {
    std::string patents;
    std::string output = "-";
};

int run_counts(const CountsOptions& opt) {
    const auto corpus = tlc::io::read_patents(opt.patents);
    const auto counts = tlc::entity_counts(corpus);
    emit(opt.output, [&](std::ostream& out) {
        tlc::io::write_series(out, {counts.patents, counts.inventors, counts.assignees});
    });
    return 0;
}

struct MaOptions {
    std::string series;
    std::string column;
    int window = 5;
    std::string output = "-";
};

int run_ma(const MaOptions& opt) {
    if (opt.window < 1 || opt.window % 2 == 0) {
        throw UsageError("--window must be odd and positive, got " + std::to_string(opt.window));
    }
    const auto all = tlc::io::read_series(opt.series);
    auto ma = tlc::moving_average(select_column(all, opt.column), opt.window);
    ma.rename(ma.name() + "_ma" + std::to_string(opt.window));
    emit(opt.output, [&](std::ostream& out) { tlc::io::write_series(out, {ma}); });
    return 0;
}

struct CorrelateOptions {
    std::vector<std::string> files;
    bool include_year = false;
    std::string output = "-";
    std::string detail;
};

int run_correlate(const CorrelateOptions& opt) {
    std::vector<tlc::AnnualSeries> series;
    std::set<std::string> names;
    for (const auto& f : opt.files) {
        for (auto& s : tlc::io::read_series(f)) {
            if (!names.insert(s.name()).second) {
                throw tlc::Error("series name '" + s.name() + "' appears in more than one column");
            }
            series.push_back(std::move(s));
        }
    }
    if (series.size() + (opt.include_year ? 1 : 0) < 2) {
        throw tlc::Error("correlate needs at least 2 columns");
    }
    const auto m = tlc::correlation_matrix(series, opt.include_year);
    for (std::size_t i = 0; i < m.names.size(); ++i) {
        for (std::size_t j = i + 1; j < m.names.size(); ++j) {
            if (!m.at(i, j).result) {
                std::cerr << "warning: cell (" << m.names[i] << ", " << m.names[j]
                          << ") empty: " << one_line(m.at(i, j).reason) << '\n';
            }
        }
    }
    emit(opt.output, [&](std::ostream& out) { tlc::io::write_correlation_table(out, m); });
    if (!opt.detail.empty()) {
        emit(opt.detail, [&](std::ostream& out) { tlc::io::write_correlation_detail(out, m); });
    }
    return 0;
}

struct SynthOptions {
    tlc::SynthSpec spec;
    std::string output = "-";
    std::string truth;
};

int run_synth(const SynthOptions& opt) {
    try {
        tlc::validate(opt.spec);
    } catch (const tlc::Error& e) {
        throw UsageError(e.what());
    }
    const auto corpus = tlc::generate(opt.spec);
    emit(opt.output, [&](std::ostream& out) { tlc::io::write_patents(out, corpus); });
    if (!opt.truth.empty()) {
        emit(opt.truth, [&](std::ostream& out) {
            tlc::io::write_series(out, {tlc::ground_truth(opt.spec)});
        });
    }
    return 0;
}

struct PipelineOptions {
    std::string patents;
    MatrixOptions matrix;
    int truncate = 0;
    std::string index;
    int window = 5;
    double exclude_below = 0.0;
    std::string out_dir;
};

int run_pipeline(const PipelineOptions& opt) {
    if (opt.window < 1 || opt.window % 2 == 0) {
        throw UsageError("--window must be odd and positive, got " + std::to_string(opt.window));
    }
    const std::string index_name =
        !opt.index.empty() ? opt.index : (opt.matrix.path.empty() ? "gini_simpson" : "rao_stirling");
    tlc::IndexKind index{};
    try {
        index = tlc::parse_index_kind(index_name);
    } catch (const tlc::Error& e) {
        throw UsageError(e.what());
    }
    if (index == tlc::IndexKind::rao_stirling && opt.matrix.path.empty()) {
        throw UsageError("rao_stirling requires --matrix");
    }

    const auto corpus = tlc::io::read_patents(opt.patents, truncation_of(opt.truncate));
    const auto matrix = load_matrix(opt.matrix);
    std::set<tlc::IndexKind> kinds{tlc::IndexKind::gini_simpson, tlc::IndexKind::simpson, index};
    if (matrix) {
        kinds.insert(tlc::IndexKind::rao_stirling);
    }
    tlc::Diagnostics diag;
    const auto diversity = tlc::index_series(tlc::build_distributions(corpus), matrix ? &*matrix : nullptr,
                                             kinds, {opt.matrix.missing_disparity}, &diag);
    const auto& chosen = *std::find_if(diversity.begin(), diversity.end(), [&](const auto& s) {
        return s.name() == tlc::index_name(index);
    });
    const auto run = longest_run(chosen, diag);
    const auto detrended = tlc::detrend_diff(run);
    const auto raw_p = tlc::periodogram(run);
    const auto det_p = tlc::periodogram(detrended);
    const auto raw_c = tlc::dominant_cycle(raw_p, opt.exclude_below);
    const auto det_c = tlc::dominant_cycle(det_p, opt.exclude_below);

    const auto counts = tlc::entity_counts(corpus);
    auto inventors_ma = tlc::moving_average(counts.inventors, opt.window);
    inventors_ma.rename("inventors_ma" + std::to_string(opt.window));

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    auto file = [&](const char* name) { return (dir / name).string(); };
    emit(file("diversity.csv"), [&](std::ostream& out) { tlc::io::write_series(out, diversity); });
    emit(file("detrended.csv"), [&](std::ostream& out) { tlc::io::write_series(out, {detrended}); });
    emit(file("periodogram.csv"), [&](std::ostream& out) { tlc::io::write_periodogram(out, raw_p); });
    emit(file("periodogram_detrended.csv"),
         [&](std::ostream& out) { tlc::io::write_periodogram(out, det_p); });
    emit(file("counts.csv"), [&](std::ostream& out) {
        tlc::io::write_series(out, {counts.patents, counts.inventors, counts.assignees, inventors_ma});
    });
    const std::string raw_line = "raw " + tlc::io::format_cycle_summary(raw_p, raw_c);
    const std::string det_line = "detrended " + tlc::io::format_cycle_summary(det_p, det_c);
    emit(file("summary.txt"), [&](std::ostream& out) {
        out << "index=" << index_name << '\n' << raw_line << '\n' << det_line << '\n';
    });
    report_warnings(diag);
    std::cout << det_line << '\n';
    return 0;
}

void add_matrix_options(CLI::App* cmd, MatrixOptions& opt) {
    cmd->add_option("--matrix", opt.path, "Disparity matrix CSV")->check(CLI::ExistingFile);
    cmd->add_flag("--cosine", opt.cosine, "Matrix cells are cosine similarities (d = 1 - s)");
    cmd->add_option("--missing-disparity", opt.missing_disparity,
                    "Disparity substituted for codes absent from the matrix (default: error)")
        ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diversity indices and technology life-cycle analysis for patent classifications", "tlc"};
    app.require_subcommand(1);

    DiversityOptions diversity;
    auto* c_div = app.add_subcommand("diversity", "Yearly diversity indices of a patent corpus");
    c_div->add_option("--patents", diversity.patents, "Patent CSV")->required()->check(CLI::ExistingFile);
    add_matrix_options(c_div, diversity.matrix);
    c_div->add_option("--kinds", diversity.kinds,
                      "Indices: rao_stirling (rao), variety, gini_simpson, simpson, herfindahl")
        ->delimiter(',')
        ->capture_default_str();
    c_div->add_option("--truncate", diversity.truncate, "Truncate codes to N characters (0 = off)")
        ->check(CLI::NonNegativeNumber);
    c_div->add_option("--first-year", diversity.first_year, "First year of the window");
    c_div->add_option("--last-year", diversity.last_year, "Last year of the window");
    c_div->add_option("-o,--output", diversity.output, "Series CSV output ('-' = stdout)");

    DisparityBuildOptions dbuild;
    auto* c_dis = app.add_subcommand("disparity-build", "Disparity matrix from co-classification profiles");
    c_dis->add_option("--patents", dbuild.patents, "Patent CSV")->required()->check(CLI::ExistingFile);
    c_dis->add_option("--truncate", dbuild.truncate, "Truncate codes to N characters (0 = off)")
        ->check(CLI::NonNegativeNumber);
    c_dis->add_option("-o,--output", dbuild.output, "Matrix CSV output ('-' = stdout)");

    SpectrumOptions spectrum;
    auto* c_spec = app.add_subcommand("spectrum", "Periodogram and dominant cycle of one series column");
    c_spec->add_option("--series", spectrum.series, "Series CSV")->required()->check(CLI::ExistingFile);
    c_spec->add_option("--column", spectrum.column, "Column to analyse (optional for one-column files)");
    c_spec->add_flag("--detrend", spectrum.detrend, "Take first differences before the periodogram");
    c_spec->add_option("--exclude-below", spectrum.exclude_below,
                       "Ignore frequencies at or below this value when picking the peak");
    c_spec->add_option("-o,--output", spectrum.output, "Periodogram CSV output ('-' = stdout)");
    c_spec->add_option("--summary", spectrum.summary, "Also write the summary line to this file");

    CountsOptions counts;
    auto* c_cnt = app.add_subcommand("counts", "Yearly numbers of patents, inventors and assignees");
    c_cnt->add_option("--patents", counts.patents, "Patent CSV")->required()->check(CLI::ExistingFile);
    c_cnt->add_option("-o,--output", counts.output, "Series CSV output ('-' = stdout)");

    MaOptions ma;
    auto* c_ma = app.add_subcommand("ma", "Centered moving average of one series column");
    c_ma->add_option("--series", ma.series, "Series CSV")->required()->check(CLI::ExistingFile);
    c_ma->add_option("--column", ma.column, "Column to smooth (optional for one-column files)");
    c_ma->add_option("--window", ma.window, "Odd window length")->capture_default_str();
    c_ma->add_option("-o,--output", ma.output, "Series CSV output ('-' = stdout)");

    CorrelateOptions correlate;
    auto* c_cor = app.add_subcommand("correlate", "Spearman correlation matrix across series columns");
    c_cor->add_option("files", correlate.files, "Series CSV files")->required()->check(CLI::ExistingFile);
    c_cor->add_flag("--include-year", correlate.include_year, "Prepend the year itself as a series");
    c_cor->add_option("-o,--output", correlate.output, "Formatted table output ('-' = stdout)");
    c_cor->add_option("--detail", correlate.detail, "Full-precision long-format output");

    SynthOptions synth;
    auto* c_syn = app.add_subcommand("synth", "Generate a synthetic corpus with a known variety cycle");
    auto& s = synth.spec;
    c_syn->add_option("--years", s.years, "Number of years")->capture_default_str();
    c_syn->add_option("--period", s.period_years, "Cycle period in years")->capture_default_str();
    c_syn->add_option("--start-year", s.start_year, "First calendar year")->capture_default_str();
    c_syn->add_option("--patents-per-year", s.patents_per_year, "Patents in the first year")
        ->capture_default_str();
    c_syn->add_option("--growth", s.growth, "Yearly growth factor of the patent count")->capture_default_str();
    c_syn->add_option("--classes", s.class_pool, "Number of classification codes")->capture_default_str();
    c_syn->add_option("--baseline", s.baseline_gini, "Mean Gini-Simpson value")->capture_default_str();
    c_syn->add_option("--amplitude", s.amplitude, "Gini-Simpson oscillation amplitude")->capture_default_str();
    c_syn->add_option("--inventors-per-patent", s.inventors_per_patent, "Distinct inventors per patent")
        ->capture_default_str();
    c_syn->add_option("--inventor-amplitude", s.inventor_amplitude, "Relative inventor-count oscillation")
        ->capture_default_str();
    c_syn->add_option("--inventor-lag", s.inventor_lag_years, "Years the inventor cycle trails variety")
        ->capture_default_str();
    c_syn->add_option("--assignees-per-patent", s.assignees_per_patent, "Assignee pool per patent")
        ->capture_default_str();
    c_syn->add_option("--seed", s.seed, "Random seed")->capture_default_str();
    c_syn->add_option("-o,--output", synth.output, "Patent CSV output ('-' = stdout)");
    c_syn->add_option("--truth", synth.truth, "Write the target Gini-Simpson series here");

    PipelineOptions pipeline;
    auto* c_pip = app.add_subcommand("pipeline", "Diversity, detrending and spectra in one run");
    c_pip->add_option("--patents", pipeline.patents, "Patent CSV")->required()->check(CLI::ExistingFile);
    add_matrix_options(c_pip, pipeline.matrix);
    c_pip->add_option("--truncate", pipeline.truncate, "Truncate codes to N characters (0 = off)")
        ->check(CLI::NonNegativeNumber);
    c_pip->add_option("--index", pipeline.index,
                      "Index to analyse (default: rao_stirling with --matrix, else gini_simpson)");
    c_pip->add_option("--window", pipeline.window, "Moving-average window for inventors")
        ->capture_default_str();
    c_pip->add_option("--exclude-below", pipeline.exclude_below, "Ignore frequencies at or below this");
    c_pip->add_option("--out-dir", pipeline.out_dir, "Directory for all outputs")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[usage]: " << one_line(e.what()) << '\n';
        return kExitUsage;
    }

    try {
        if (c_div->parsed()) return run_diversity(diversity);
        if (c_dis->parsed()) return run_disparity_build(dbuild);
        if (c_spec->parsed()) return run_spectrum(spectrum);
        if (c_cnt->parsed()) return run_counts(counts);
        if (c_ma->parsed()) return run_ma(ma);
        if (c_cor->parsed()) return run_correlate(correlate);
        if (c_syn->parsed()) return run_synth(synth);
        if (c_pip->parsed()) return run_pipeline(pipeline);
    } catch (const UsageError& e) {
        std::cerr << "error[usage]: " << one_line(e.what()) << '\n';
        return kExitUsage;
    } catch (const tlc::Error& e) {
        std::cerr << "error[data]: " << one_line(e.what()) << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error[data]: " << one_line(e.what()) << '\n';
        return kExitData;
    }
    return kExitUsage;
}
