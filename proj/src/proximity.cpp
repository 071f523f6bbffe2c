#include "tlc/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tlc {

namespace {

double clamp_similarity(double raw, Diagnostics* diag, const std::string& what) {
    if (raw > 1.0 + 1e-9 || raw < -1e-9) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "cosine " << what << " = " << raw << " clamped to [0, 1]";
        warn(diag, msg.str());
    }
    return std::clamp(raw, 0.0, 1.0);
}

using SparseRow = std::vector<std::pair<std::size_t, double>>;

double sparse_dot(const SparseRow& a, const SparseRow& b) {
    double dot = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            dot += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return dot;
}

}  // namespace

double cosine(const ClassVector& u, const ClassVector& v, Diagnostics* diag) {
    double dot = 0.0;
    double nu = 0.0;
    double nv = 0.0;
    for (const auto* vec : {&u, &v}) {
        for (const auto& [dim, w] : vec->weights) {
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw Error("class vector '" + vec->code + "' has a negative or non-finite weight");
            }
        }
    }
    for (const auto& [dim, w] : u.weights) {
        nu += w * w;
        auto it = v.weights.find(dim);
        if (it != v.weights.end()) {
            dot += w * it->second;
        }
    }
    for (const auto& [dim, w] : v.weights) {
        nv += w * w;
    }
    if (nu == 0.0 || nv == 0.0) {
        throw Error("cosine of an all-zero class vector ('" + (nu == 0.0 ? u.code : v.code) + "')");
    }
    return clamp_similarity(dot / std::sqrt(nu * nv), diag, u.code + "/" + v.code);
}

DisparityMatrix::DisparityMatrix(std::vector<std::string> codes, std::vector<double> values)
    : codes_(std::move(codes)), values_(std::move(values)) {
    if (values_.size() != codes_.size() * codes_.size()) {
        throw Error("disparity matrix is not square");
    }
    index_.reserve(codes_.size());
    for (std::size_t i = 0; i < codes_.size(); ++i) {
        if (!index_.emplace(codes_[i], i).second) {
            throw Error("duplicate code '" + codes_[i] + "' in disparity matrix");
        }
    }
}

std::optional<std::size_t> DisparityMatrix::index_of(const std::string& code) const {
    auto it = index_.find(code);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

DisparityMatrix uniform_disparity(std::vector<std::string> codes, double off_diagonal) {
    const std::size_t n = codes.size();
    std::vector<double> values(n * n, off_diagonal);
    for (std::size_t i = 0; i < n; ++i) {
        values[i * n + i] = 0.0;
    }
    return DisparityMatrix(std::move(codes), std::move(values));
}

DisparityMatrix build_disparity_from_cooccurrence(const Corpus& corpus, Diagnostics* diag) {
    if (corpus.empty()) {
        throw Error("empty corpus");
    }
    std::vector<std::string> codes;
    for (const auto& r : corpus.records()) {
        codes.insert(codes.end(), r.classes.begin(), r.classes.end());
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    if (codes.size() < 2) {
        throw Error("degenerate code set");
    }
    const std::size_t n = codes.size();

    // Integer co-occurrence counts; patent order cannot affect them.
    std::vector<std::map<std::size_t, double>> counts(n);
    std::vector<std::size_t> idx;
    for (const auto& r : corpus.records()) {
        idx.clear();
        for (const auto& c : r.classes) {
            idx.push_back(static_cast<std::size_t>(
                std::lower_bound(codes.begin(), codes.end(), c) - codes.begin()));
        }
        for (std::size_t a : idx) {
            for (std::size_t b : idx) {
                counts[a][b] += 1.0;
            }
        }
    }
    std::vector<SparseRow> rows(n);
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].assign(counts[i].begin(), counts[i].end());
        norms[i] = sparse_dot(rows[i], rows[i]);
    }

    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double raw = sparse_dot(rows[i], rows[j]) / std::sqrt(norms[i] * norms[j]);
            const double d = 1.0 - clamp_similarity(raw, diag, codes[i] + "/" + codes[j]);
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    return DisparityMatrix(std::move(codes), std::move(values));
}

std::vector<MatrixViolation> validate_matrix(const DisparityMatrix& m) {
    std::vector<MatrixViolation> out;
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m(i, i) != 0.0) {
            out.push_back({MatrixViolation::Kind::nonzero_diagonal, i, i,
                           "nonzero diagonal at " + std::to_string(i) + " (" + m.codes()[i] + ")"});
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double d = m(i, j);
            if (!(d >= 0.0 && d <= 1.0)) {
                out.push_back({MatrixViolation::Kind::out_of_range, i, j,
                               "out of range at (" + std::to_string(i) + ", " + std::to_string(j) + ")"});
            }
            if (j > i && m(i, j) != m(j, i)) {
                out.push_back({MatrixViolation::Kind::asymmetry, i, j,
                               "asymmetry at (" + std::to_string(i) + ", " + std::to_string(j) + ")"});
            }
        }
    }
    return out;
}

}  // namespace tlc
