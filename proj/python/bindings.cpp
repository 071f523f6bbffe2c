#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "tlc/corpus.hpp"
#include "tlc/diagnostics.hpp"
#include "tlc/indices.hpp"
#include "tlc/io.hpp"
#include "tlc/proximity.hpp"
#include "tlc/rankstats.hpp"
#include "tlc/spectral.hpp"
#include "tlc/synth.hpp"

namespace py = pybind11;

namespace {

using YearMap = std::map<int, double>;

tlc::AnnualSeries to_series(const YearMap& values, const std::string& name = "x") {
    std::vector<tlc::SeriesPoint> pts;
    for (const auto& [year, v] : values) pts.push_back({year, v});
    return tlc::AnnualSeries(name, pts);
}

YearMap to_map(const tlc::AnnualSeries& s) {
    YearMap out;
    for (const auto& p : s.points()) {
        if (p.value) out[p.year] = *p.value;
    }
    return out;
}

tlc::DisparityMatrix to_matrix(std::vector<std::string> codes, const std::vector<std::vector<double>>& rows) {
    std::vector<double> flat;
    for (const auto& r : rows) {
        if (r.size() != codes.size()) throw tlc::Error("disparity matrix is not square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return tlc::DisparityMatrix(std::move(codes), std::move(flat));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Diversity indices, periodograms and rank correlations for patent classification data";
    py::register_exception<tlc::Error>(m, "Error", PyExc_ValueError);

    py::class_<tlc::PatentRecord>(m, "PatentRecord")
        .def(py::init(&tlc::PatentRecord::make), py::arg("id"), py::arg("year"), py::arg("classes"),
             py::arg("inventors") = std::vector<std::string>{}, py::arg("assignees") = std::vector<std::string>{})
        .def_readonly("id", &tlc::PatentRecord::id)
        .def_readonly("year", &tlc::PatentRecord::year)
        .def_readonly("classes", &tlc::PatentRecord::classes)
        .def_readonly("inventors", &tlc::PatentRecord::inventors)
        .def_readonly("assignees", &tlc::PatentRecord::assignees);

    py::class_<tlc::Corpus>(m, "Corpus")
        .def(py::init<std::vector<tlc::PatentRecord>>(), py::arg("records"))
        .def_property_readonly("records", &tlc::Corpus::records)
        .def("__len__", &tlc::Corpus::size)
        .def("__eq__", [](const tlc::Corpus& a, const tlc::Corpus& b) { return a == b; })
        .def("to_csv", [](const tlc::Corpus& c) {
            std::ostringstream out;
            tlc::io::write_patents(out, c);
            return out.str();
        });

    py::class_<tlc::YearlyDistribution>(m, "YearlyDistribution")
        .def_static("from_proportions", &tlc::YearlyDistribution::from_proportions, py::arg("year"),
                    py::arg("proportions"))
        .def_property_readonly("year", &tlc::YearlyDistribution::year)
        .def_property_readonly("proportions", &tlc::YearlyDistribution::proportions)
        .def_property_readonly("assignment_count", &tlc::YearlyDistribution::assignment_count);

    py::class_<tlc::DisparityMatrix>(m, "DisparityMatrix")
        .def(py::init(&to_matrix), py::arg("codes"), py::arg("rows"))
        .def_property_readonly("codes", &tlc::DisparityMatrix::codes)
        .def("__call__", [](const tlc::DisparityMatrix& d, std::size_t i, std::size_t j) { return d(i, j); })
        .def("violations", [](const tlc::DisparityMatrix& d) {
            std::vector<std::string> out;
            for (const auto& v : tlc::validate_matrix(d)) out.push_back(v.message);
            return out;
        });

    m.def("parse_patents", [](const std::string& text, std::optional<std::size_t> truncate) {
        std::istringstream in(text);
        return tlc::io::parse_patents(in, truncate);
    }, py::arg("text"), py::arg("truncate") = py::none());
    m.def("read_patents", &tlc::io::read_patents, py::arg("path"), py::arg("truncate") = py::none());
    m.def("build_distributions", [](const tlc::Corpus& c) { return tlc::build_distributions(c); });
    m.def("build_disparity", [](const tlc::Corpus& c) { return tlc::build_disparity_from_cooccurrence(c); });
    m.def("entity_counts", [](const tlc::Corpus& c) {
        const auto e = tlc::entity_counts(c);
        return std::map<std::string, YearMap>{
            {"patents", to_map(e.patents)}, {"inventors", to_map(e.inventors)}, {"assignees", to_map(e.assignees)}};
    });

    m.def("simpson", &tlc::simpson);
    m.def("gini_simpson", &tlc::gini_simpson);
    m.def("rao_stirling", [](const tlc::YearlyDistribution& d, const tlc::DisparityMatrix& mat,
                             std::optional<double> missing) {
        return tlc::rao_stirling(d, mat, tlc::MissingCodePolicy{missing});
    }, py::arg("dist"), py::arg("matrix"), py::arg("missing_disparity") = py::none());
    m.def("index_series", [](const tlc::Corpus& c, const std::string& kind, const tlc::DisparityMatrix* mat) {
        const auto s = tlc::index_series(tlc::build_distributions(c), mat, {tlc::parse_index_kind(kind)});
        return to_map(s.front());
    }, py::arg("corpus"), py::arg("kind") = "gini_simpson", py::arg("matrix") = nullptr);

    m.def("detrend_diff", [](const YearMap& x) { return to_map(tlc::detrend_diff(to_series(x))); });
    m.def("moving_average", [](const YearMap& x, int window) {
        return to_map(tlc::moving_average(to_series(x), window));
    }, py::arg("series"), py::arg("window") = 5);
    m.def("periodogram", [](const std::vector<double>& x) {
        std::vector<std::pair<double, double>> out;
        for (const auto& o : tlc::periodogram(x).ordinates) out.emplace_back(o.frequency, o.intensity);
        return out;
    });
    auto cycle_dict = [](const tlc::Periodogram& p, double exclude_below) {
        const auto c = tlc::dominant_cycle(p, exclude_below);
        py::dict d;
        d["frequency"] = c.dominant_frequency;
        d["cycles"] = c.cycle_count;
        d["period_years"] = c.period_years;
        d["n"] = c.n;
        d["degenerate"] = c.degenerate;
        d["dropped_first"] = p.dropped_first;
        return d;
    };
    m.def("dominant_cycle", [cycle_dict](const std::vector<double>& x, double exclude_below) {
        return cycle_dict(tlc::periodogram(x), exclude_below);
    }, py::arg("values"), py::arg("exclude_below") = 0.0);
    m.def("dominant_cycle", [cycle_dict](const YearMap& x, double exclude_below) {
        return cycle_dict(tlc::periodogram(to_series(x)), exclude_below);
    }, py::arg("series"), py::arg("exclude_below") = 0.0, "Odd-length series drop their earliest year.");

    m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto r = tlc::spearman(std::span<const double>(x), std::span<const double>(y));
        return py::make_tuple(r.rho, r.p_value, r.stars);
    });

    m.def("synth", [](int years, double period, int patents_per_year, double amplitude, int inventor_lag,
                      std::uint64_t seed) {
        tlc::SynthSpec s;
        s.years = years;
        s.period_years = period;
        s.patents_per_year = patents_per_year;
        s.amplitude = amplitude;
        s.inventor_lag_years = inventor_lag;
        s.seed = seed;
        return tlc::generate(s);
    }, py::arg("years") = 30, py::arg("period") = 10.0, py::arg("patents_per_year") = 200,
       py::arg("amplitude") = 0.15, py::arg("inventor_lag") = 0, py::arg("seed") = 1);
}
