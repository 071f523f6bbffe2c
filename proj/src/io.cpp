#include "tlc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "tlc/diagnostics.hpp"

namespace tlc::io {

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Reads lines, strips a UTF-8 BOM and trailing CR, skips blank lines, and
/// keeps 1-based line numbers for error messages.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (number_ == 1 && line.starts_with("\xEF\xBB\xBF")) {
                line.erase(0, 3);
            }
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!line.empty()) {
                return true;
            }
        }
        return false;
    }

    [[nodiscard]] std::size_t number() const noexcept { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

[[noreturn]] void fail_at(std::size_t line, const std::string& message) {
    throw Error("line " + std::to_string(line) + ": " + message);
}

[[noreturn]] void fail_at(std::size_t line, std::size_t column, const std::string& name,
                          const std::string& message) {
    throw Error("line " + std::to_string(line) + ", column " + std::to_string(column) + " (" +
                name + "): " + message);
}

std::vector<std::string> split_multi(const std::string& cell) {
    std::vector<std::string> out;
    if (cell.empty()) {
        return out;
    }
    for (auto& token : split(cell, ';')) {
        if (!token.empty()) {
            out.push_back(std::move(token));
        }
    }
    return out;
}

void check_plain(std::string_view value, std::string_view what) {
    if (value.find_first_of(",;\r\n") != std::string_view::npos) {
        throw Error("cannot write " + std::string(what) + " '" + std::string(value) +
                    "': contains ',', ';' or a line break");
    }
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    return in;
}

void write_joined(std::ostream& out, const std::vector<std::string>& values, std::string_view what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        check_plain(values[i], what);
        if (i > 0) {
            out << ';';
        }
        out << values[i];
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) {
        throw Error("cannot format number");
    }
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw Error("not a finite decimal number: '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text) {
    int value = 0;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw Error("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

// ---------------------------------------------------------------- patents

Corpus parse_patents(std::istream& in, std::optional<std::size_t> class_truncation) {
    if (class_truncation && *class_truncation == 0) {
        throw Error("class truncation must be positive");
    }
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        throw Error("empty patent file (header row required)");
    }
    const auto header = split(line, ',');
    const std::vector<std::string> required{"patent_id", "year", "classes", "inventors", "assignees"};
    std::vector<std::size_t> col;
    for (const auto& name : required) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            fail_at(reader.number(), "missing column '" + name + "' in header");
        }
        col.push_back(static_cast<std::size_t>(it - header.begin()));
    }

    std::vector<PatentRecord> records;
    std::map<std::string, std::size_t> first_line;
    while (reader.next(line)) {
        const std::size_t ln = reader.number();
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            fail_at(ln, "expected " + std::to_string(header.size()) + " fields, found " +
                            std::to_string(cells.size()));
        }
        const std::string& id = cells[col[0]];
        if (id.empty()) {
            fail_at(ln, col[0] + 1, "patent_id", "empty patent id");
        }
        auto [it, inserted] = first_line.emplace(id, ln);
        if (!inserted) {
            fail_at(ln, "duplicate patent_id '" + id + "' (lines " + std::to_string(it->second) +
                            " and " + std::to_string(ln) + ")");
        }
        int year = 0;
        try {
            year = parse_int(cells[col[1]]);
        } catch (const Error&) {
            fail_at(ln, col[1] + 1, "year", "unparseable year '" + cells[col[1]] + "'");
        }
        auto classes = split_multi(cells[col[2]]);
        if (class_truncation) {
            for (auto& c : classes) {
                if (c.size() > *class_truncation) {
                    c.resize(*class_truncation);
                }
            }
        }
        if (classes.empty()) {
            fail_at(ln, col[2] + 1, "classes", "no classification codes");
        }
        records.push_back(PatentRecord::make(id, year, std::move(classes), split_multi(cells[col[3]]),
                                             split_multi(cells[col[4]])));
    }
    return Corpus(std::move(records));
}

Corpus read_patents(const std::filesystem::path& path, std::optional<std::size_t> class_truncation) {
    auto in = open(path);
    try {
        return parse_patents(in, class_truncation);
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

void write_patents(std::ostream& out, const Corpus& corpus) {
    out << "patent_id,year,classes,inventors,assignees\n";
    for (const auto& r : corpus.records()) {
        check_plain(r.id, "patent id");
        out << r.id << ',' << r.year << ',';
        write_joined(out, r.classes, "class code");
        out << ',';
        write_joined(out, r.inventors, "inventor id");
        out << ',';
        write_joined(out, r.assignees, "assignee id");
        out << '\n';
    }
}

// ---------------------------------------------------------------- matrices

DisparityMatrix parse_matrix(std::istream& in, MatrixValues mode) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        throw Error("empty matrix file");
    }
    auto header = split(line, ',');
    std::vector<std::string> codes(header.begin() + 1, header.end());
    const std::size_t n = codes.size();
    if (n == 0) {
        fail_at(reader.number(), "matrix header lists no codes");
    }
    std::vector<double> values;
    values.reserve(n * n);
    std::size_t row = 0;
    while (reader.next(line)) {
        const std::size_t ln = reader.number();
        const auto cells = split(line, ',');
        if (row >= n) {
            fail_at(ln, "more rows than codes in the header");
        }
        if (cells.size() != n + 1) {
            fail_at(ln, "expected " + std::to_string(n + 1) + " fields, found " +
                            std::to_string(cells.size()));
        }
        if (cells[0] != codes[row]) {
            fail_at(ln, 1, "code", "row code '" + cells[0] + "' does not match column code '" +
                                       codes[row] + "'");
        }
        for (std::size_t j = 0; j < n; ++j) {
            double v = 0.0;
            try {
                v = parse_double(cells[j + 1]);
            } catch (const Error& e) {
                fail_at(ln, j + 2, codes[j], e.what());
            }
            values.push_back(mode == MatrixValues::cosine ? 1.0 - v : v);
        }
        ++row;
    }
    if (row != n) {
        throw Error("matrix has " + std::to_string(row) + " rows for " + std::to_string(n) + " codes");
    }
    DisparityMatrix m(std::move(codes), std::move(values));
    const auto violations = validate_matrix(m);
    if (!violations.empty()) {
        std::string msg = "invalid disparity matrix (" + std::to_string(violations.size()) + " violations): ";
        for (std::size_t i = 0; i < std::min<std::size_t>(10, violations.size()); ++i) {
            msg += (i > 0 ? "; " : "") + violations[i].message;
        }
        throw Error(msg);
    }
    return m;
}

DisparityMatrix read_matrix(const std::filesystem::path& path, MatrixValues mode) {
    auto in = open(path);
    try {
        return parse_matrix(in, mode);
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

void write_matrix(std::ostream& out, const DisparityMatrix& m) {
    for (const auto& code : m.codes()) {
        check_plain(code, "class code");
        out << ',' << code;
    }
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.codes()[i];
        for (std::size_t j = 0; j < m.size(); ++j) {
            out << ',' << format_double(m(i, j));
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------- series

std::vector<AnnualSeries> parse_series(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        throw Error("empty series file (header row required)");
    }
    const auto header = split(line, ',');
    if (header.front() != "year") {
        fail_at(reader.number(), "first column must be 'year'");
    }
    for (std::size_t i = 1; i < header.size(); ++i) {
        if (header[i].empty()) {
            fail_at(reader.number(), i + 1, "header", "empty series name");
        }
        if (std::find(header.begin() + 1, header.begin() + static_cast<std::ptrdiff_t>(i), header[i]) !=
            header.begin() + static_cast<std::ptrdiff_t>(i)) {
            fail_at(reader.number(), i + 1, header[i], "duplicate series name");
        }
    }
    const std::size_t k = header.size() - 1;
    std::vector<std::vector<SeriesPoint>> points(k);
    std::optional<int> previous;
    while (reader.next(line)) {
        const std::size_t ln = reader.number();
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            fail_at(ln, "expected " + std::to_string(header.size()) + " fields, found " +
                            std::to_string(cells.size()));
        }
        int year = 0;
        try {
            year = parse_int(cells[0]);
        } catch (const Error&) {
            fail_at(ln, 1, "year", "unparseable year '" + cells[0] + "'");
        }
        if (previous && year == *previous) {
            fail_at(ln, 1, "year", "duplicate year " + std::to_string(year));
        }
        if (previous && year < *previous) {
            fail_at(ln, 1, "year", "years not increasing (" + std::to_string(year) + " after " +
                                       std::to_string(*previous) + ")");
        }
        previous = year;
        for (std::size_t i = 0; i < k; ++i) {
            const std::string& cell = cells[i + 1];
            if (cell.empty()) {
                continue;
            }
            try {
                points[i].push_back({year, parse_double(cell)});
            } catch (const Error& e) {
                fail_at(ln, i + 2, header[i + 1], e.what());
            }
        }
    }
    std::vector<AnnualSeries> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.emplace_back(header[i + 1], points[i]);
    }
    return out;
}

std::vector<AnnualSeries> read_series(const std::filesystem::path& path) {
    auto in = open(path);
    try {
        return parse_series(in);
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

void write_series(std::ostream& out, const std::vector<AnnualSeries>& series) {
    out << "year";
    for (const auto& s : series) {
        check_plain(s.name(), "series name");
        if (s.name().empty() || s.name() == "year") {
            throw Error("invalid series name '" + s.name() + "'");
        }
        out << ',' << s.name();
    }
    out << '\n';
    std::optional<int> lo;
    std::optional<int> hi;
    for (const auto& s : series) {
        if (!s.empty()) {
            lo = lo ? std::min(*lo, s.first_year()) : s.first_year();
            hi = hi ? std::max(*hi, s.last_year()) : s.last_year();
        }
    }
    for (int year = lo.value_or(0); lo && year <= *hi; ++year) {
        const bool spanned = std::any_of(series.begin(), series.end(), [year](const AnnualSeries& s) {
            return !s.empty() && year >= s.first_year() && year <= s.last_year();
        });
        if (!spanned) {
            continue;
        }
        out << year;
        for (const auto& s : series) {
            out << ',';
            if (auto v = s.at(year)) {
                out << format_double(*v);
            }
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------- periodograms

void write_periodogram(std::ostream& out, const Periodogram& p) {
    out << "k,frequency,intensity\n";
    for (std::size_t k = 0; k < p.ordinates.size(); ++k) {
        out << (k + 1) << ',' << format_double(p.ordinates[k].frequency) << ','
            << format_double(p.ordinates[k].intensity) << '\n';
    }
}

Periodogram parse_periodogram(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line) || line != "k,frequency,intensity") {
        throw Error("periodogram file must start with 'k,frequency,intensity'");
    }
    Periodogram p;
    while (reader.next(line)) {
        const auto cells = split(line, ',');
        if (cells.size() != 3) {
            fail_at(reader.number(), "expected 3 fields");
        }
        int k = 0;
        PeriodogramOrdinate o{};
        try {
            k = parse_int(cells[0]);
            o = {parse_double(cells[1]), parse_double(cells[2])};
        } catch (const Error& e) {
            fail_at(reader.number(), e.what());
        }
        if (k != static_cast<int>(p.ordinates.size()) + 1) {
            fail_at(reader.number(), "k must count up from 1");
        }
        p.ordinates.push_back(o);
    }
    p.n = 2 * p.ordinates.size();
    return p;
}

std::string format_cycle_summary(const Periodogram& p, const CycleEstimate& c) {
    std::ostringstream s;
    s << "dominant_frequency=" << format_double(c.dominant_frequency)
      << " cycles=" << format_double(c.cycle_count) << " period_years=" << format_double(c.period_years)
      << " n=" << p.n << " first_year=" << p.first_year
      << " dropped_first=" << (p.dropped_first ? "true" : "false")
      << " degenerate=" << (c.degenerate ? "true" : "false");
    return s.str();
}

// ---------------------------------------------------------------- correlations

std::string format_correlation_cell(const CorrelationCell& cell, bool diagonal) {
    if (!cell.result) {
        return "";
    }
    if (diagonal) {
        return "1";
    }
    const CorrelationResult& r = *cell.result;
    const int digits = r.stars.empty() ? 2 : 3;
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, r.rho, std::chars_format::fixed, digits);
    std::string text(buf, ptr);
    if (text.find_first_not_of("-0.") == std::string::npos) {
        text = text.substr(text.front() == '-' ? 1 : 0);
    }
    if (!r.stars.empty()) {
        const bool negative = text.front() == '-';
        const std::size_t digit = negative ? 1 : 0;
        if (text.compare(digit, 2, "0.") == 0) {
            text.erase(digit, 1);
        }
    }
    return text + r.stars;
}

void write_correlation_table(std::ostream& out, const CorrelationMatrix& m) {
    const std::size_t k = m.names.size();
    for (const auto& name : m.names) {
        check_plain(name, "series name");
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t i = 0; i < k; ++i) {
        out << m.names[i];
        for (std::size_t j = 0; j < k; ++j) {
            out << ',' << format_correlation_cell(m.at(i, j), i == j);
        }
        out << '\n';
    }
}

void write_correlation_detail(std::ostream& out, const CorrelationMatrix& m) {
    out << "row,column,rho,n,p_value,stars,reason\n";
    const std::size_t k = m.names.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const auto& cell = m.at(i, j);
            out << m.names[i] << ',' << m.names[j] << ',';
            if (cell.result) {
                out << format_double(cell.result->rho) << ',' << cell.result->n << ','
                    << format_double(cell.result->p_value) << ',' << cell.result->stars << ',';
            } else {
                std::string reason = cell.reason;
                std::replace_if(reason.begin(), reason.end(),
                                [](char c) { return c == ',' || c == '\n' || c == '\r'; }, ' ');
                out << ",,,," << reason;
            }
            out << '\n';
        }
    }
}

}  // namespace tlc::io
