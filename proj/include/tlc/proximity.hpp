#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tlc/corpus.hpp"
#include "tlc/diagnostics.hpp"

namespace tlc {

/// Profile of a classification code over arbitrary dimensions.
struct ClassVector {
    std::string code;
    std::map<std::string, double> weights;
};

/// Cosine similarity over the union of dimensions (absent = 0), clamped to
/// [0, 1]. Both vectors need a positive weight; weights must be nonnegative.
double cosine(const ClassVector& u, const ClassVector& v, Diagnostics* diag = nullptr);

/// Dense square matrix of disparities d_ij between classification codes.
/// Holds whatever values it is given; use validate_matrix() to check the
/// symmetric / zero-diagonal / [0, 1] invariants.
class DisparityMatrix {
public:
    DisparityMatrix() = default;
    /// `values` is row-major, codes.size() squared. Codes must be unique.
    DisparityMatrix(std::vector<std::string> codes, std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return codes_.size(); }
    [[nodiscard]] const std::vector<std::string>& codes() const noexcept { return codes_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
        return values_[i * codes_.size() + j];
    }
    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& code) const;

    friend bool operator==(const DisparityMatrix& a, const DisparityMatrix& b) {
        return a.codes_ == b.codes_ && a.values_ == b.values_;
    }

private:
    std::vector<std::string> codes_;
    std::vector<double> values_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Matrix with d_ij = `off_diagonal` for i != j and zero diagonal.
DisparityMatrix uniform_disparity(std::vector<std::string> codes, double off_diagonal = 1.0);

/// Disparity 1 - cosine between co-classification profiles: the profile of a
/// code counts, for every code (itself included), the patents carrying both.
/// Codes are ordered lexicographically; the diagonal is exactly zero.
DisparityMatrix build_disparity_from_cooccurrence(const Corpus& corpus, Diagnostics* diag = nullptr);

struct MatrixViolation {
    enum class Kind { nonzero_diagonal, asymmetry, out_of_range };
    Kind kind;
    std::size_t i;
    std::size_t j;
    std::string message;
};

/// Exact symmetry, exact zero diagonal, entries in [0, 1]. Empty when valid.
std::vector<MatrixViolation> validate_matrix(const DisparityMatrix& m);

}  // namespace tlc
