#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlc/corpus.hpp"
#include "tlc/proximity.hpp"
#include "tlc/rankstats.hpp"
#include "tlc/series.hpp"
#include "tlc/spectral.hpp"

namespace tlc::io {

// Patent CSV
// ----------
// Header naming the columns patent_id, year, classes, inventors, assignees
// (any order, extra columns ignored). Multi-valued cells use ';'. Codes are
// optionally truncated to their first N characters, then deduplicated.
//
//   patent_id,year,classes,inventors,assignees
//   US123,1990,H01L;C01B,smith;jones,acme

Corpus parse_patents(std::istream& in, std::optional<std::size_t> class_truncation = std::nullopt);
Corpus read_patents(const std::filesystem::path& path,
                    std::optional<std::size_t> class_truncation = std::nullopt);
/// Values containing ',', ';' or line breaks are rejected rather than quoted.
void write_patents(std::ostream& out, const Corpus& corpus);

// Matrix CSV
// ----------
// First row and first column hold the codes in the same order; the top-left
// cell is ignored.
//
//   ,A,B
//   A,0,0.4
//   B,0.4,0

enum class MatrixValues {
    disparity,
    /// Cells hold cosine similarities s; loaded as d = 1 - s.
    cosine,
};

/// Throws with the first 10 violations if the loaded matrix is invalid.
DisparityMatrix parse_matrix(std::istream& in, MatrixValues mode = MatrixValues::disparity);
DisparityMatrix read_matrix(const std::filesystem::path& path,
                            MatrixValues mode = MatrixValues::disparity);
void write_matrix(std::ostream& out, const DisparityMatrix& m);

// Series CSV
// ----------
// Column "year" then one column per series; an empty cell is a missing value.

std::vector<AnnualSeries> parse_series(std::istream& in);
std::vector<AnnualSeries> read_series(const std::filesystem::path& path);
void write_series(std::ostream& out, const std::vector<AnnualSeries>& series);

// Periodogram CSV: k,frequency,intensity.

void write_periodogram(std::ostream& out, const Periodogram& p);
/// n is recovered as twice the last k; first_year is not stored.
Periodogram parse_periodogram(std::istream& in);

/// Single key=value line: dominant frequency, cycle count, period, n, first
/// year used, whether the earliest observation was dropped, degeneracy.
std::string format_cycle_summary(const Periodogram& p, const CycleEstimate& c);

// Correlation tables
// ------------------
// The table is laid out like a published Spearman matrix: diagonal "1",
// significant cells to three decimals without the leading zero plus stars
// (".835**", "-.518**", "1.000**"), others to two decimals ("0.33").

std::string format_correlation_cell(const CorrelationCell& cell, bool diagonal);
void write_correlation_table(std::ostream& out, const CorrelationMatrix& m);
/// Long format with full precision: row,column,rho,n,p_value,stars,reason.
void write_correlation_detail(std::ostream& out, const CorrelationMatrix& m);

/// Shortest text that parses back to the same double.
std::string format_double(double value);
/// Locale-independent, whole-string parse; throws on anything else.
double parse_double(std::string_view text);
int parse_int(std::string_view text);

}  // namespace tlc::io
