#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "tlc/proximity.hpp"

using tlc::ClassVector;
using tlc::Corpus;
using tlc::PatentRecord;

TEST_CASE("cosine examples") {
    ClassVector u{"u", {{"a", 2.0}, {"b", 3.0}}};
    CHECK(tlc::cosine(u, u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tlc::cosine(ClassVector{"u", {{"a", 1}}}, ClassVector{"v", {{"b", 1}}}) == 0.0);
    // 1 / (sqrt 2 * sqrt 2)
    CHECK(tlc::cosine(ClassVector{"u", {{"a", 1}, {"b", 1}}}, ClassVector{"v", {{"a", 1}, {"c", 1}}}) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(tlc::cosine(ClassVector{"z", {{"a", 0.0}}}, u), tlc::Error);
    CHECK_THROWS_AS(tlc::cosine(ClassVector{"n", {{"a", -1.0}}}, u), tlc::Error);
}

TEST_CASE("property: cosine symmetry, self-similarity, scale invariance") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> w(0.0, 10.0);
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    std::uniform_int_distribution<int> dim(0, 12);
    for (int trial = 0; trial < 500; ++trial) {
        ClassVector u{"u", {}}, v{"v", {}};
        for (int i = 0; i < 6; ++i) {
            u.weights["d" + std::to_string(dim(rng))] = w(rng);
            v.weights["d" + std::to_string(dim(rng))] = w(rng);
        }
        u.weights["d0"] += 1.0;
        v.weights["d1"] += 1.0;
        const double c = tlc::cosine(u, v);
        CHECK(c == tlc::cosine(v, u));
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        CHECK(std::abs(tlc::cosine(u, u) - 1.0) <= 1e-12);
        ClassVector scaled = u;
        const double s = scale(rng);
        for (auto& [k, x] : scaled.weights) x *= s;
        CHECK(std::abs(tlc::cosine(scaled, v) - c) <= 1e-12);
    }
}

TEST_CASE("co-occurrence disparity: identical and orthogonal profiles") {
    SUBCASE("codes always together") {
        Corpus c({PatentRecord::make("p1", 2000, {"A", "B"}), PatentRecord::make("p2", 2001, {"A", "B"}),
                  PatentRecord::make("p3", 2001, {"C"})});
        auto m = tlc::build_disparity_from_cooccurrence(c);
        CHECK(m.codes() == std::vector<std::string>{"A", "B", "C"});
        CHECK(m(0, 1) == 0.0);
        CHECK(m(0, 2) == 1.0);
        CHECK(m(1, 2) == 1.0);
    }
    SUBCASE("disjoint codes") {
        Corpus c({PatentRecord::make("p1", 2000, {"A"}), PatentRecord::make("p2", 2000, {"B"})});
        auto m = tlc::build_disparity_from_cooccurrence(c);
        CHECK(m(0, 1) == 1.0);
        CHECK(m(0, 0) == 0.0);
    }
    SUBCASE("degenerate") {
        CHECK_THROWS_WITH(tlc::build_disparity_from_cooccurrence(Corpus({PatentRecord::make("p", 2000, {"A"})})),
                          "degenerate code set");
        CHECK_THROWS_AS(tlc::build_disparity_from_cooccurrence(Corpus{}), tlc::Error);
    }
}

TEST_CASE("co-occurrence disparity matches a hand-enumerated oracle") {
    // P1 {A,B}, P2 {A}, P3 {B,C}, P4 {A,C}
    Corpus c({PatentRecord::make("P1", 2000, {"A", "B"}), PatentRecord::make("P2", 2000, {"A"}),
              PatentRecord::make("P3", 2001, {"B", "C"}), PatentRecord::make("P4", 2001, {"A", "C"})});
    // Patents carrying both row and column code, enumerated by hand.
    const double counts[3][3] = {
        {3, 1, 1},  // A: P1 P2 P4 | P1 | P4
        {1, 2, 1},  // B: P1 | P1 P3 | P3
        {1, 1, 2},  // C: P4 | P3 | P3 P4
    };
    auto cos = [&](int i, int j) {
        double dot = 0, ni = 0, nj = 0;
        for (int k = 0; k < 3; ++k) {
            dot += counts[i][k] * counts[j][k];
            ni += counts[i][k] * counts[i][k];
            nj += counts[j][k] * counts[j][k];
        }
        return dot / std::sqrt(ni * nj);
    };
    auto m = tlc::build_disparity_from_cooccurrence(c);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double expected = i == j ? 0.0 : 1.0 - cos(i, j);
            CHECK(m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) ==
                  doctest::Approx(expected).epsilon(1e-14));
        }
    }
    // 1 - 6 / sqrt(66)
    CHECK(m(0, 1) == doctest::Approx(0.2614511).epsilon(1e-6));
}

TEST_CASE("validate_matrix") {
    CHECK(tlc::validate_matrix(tlc::uniform_disparity({"A", "B", "C"}, 0.3)).empty());

    tlc::DisparityMatrix diag({"A", "B"}, {0.1, 0.5, 0.5, 0.0});
    auto v = tlc::validate_matrix(diag);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == tlc::MatrixViolation::Kind::nonzero_diagonal);
    CHECK(v[0].message.starts_with("nonzero diagonal at 0"));

    tlc::DisparityMatrix asym({"A", "B"}, {0.0, 0.5, 0.6, 0.0});
    v = tlc::validate_matrix(asym);
    REQUIRE(v.size() == 1);
    CHECK(v[0].message == "asymmetry at (0, 1)");

    tlc::DisparityMatrix range({"A", "B"}, {0.0, 1.5, 1.5, 0.0});
    v = tlc::validate_matrix(range);
    CHECK(v.size() == 2);
    CHECK(v[0].kind == tlc::MatrixViolation::Kind::out_of_range);

    CHECK_THROWS_AS(tlc::DisparityMatrix({"A", "A"}, {0, 0, 0, 0}), tlc::Error);
    CHECK_THROWS_AS(tlc::DisparityMatrix({"A", "B"}, {0, 0, 0}), tlc::Error);
}

TEST_CASE("property: built matrices are valid and order independent") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> code(0, 14);
    std::uniform_int_distribution<int> ncls(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<PatentRecord> records;
        for (int i = 0; i < 30 + trial; ++i) {
            std::vector<std::string> cls;
            for (int k = ncls(rng); k > 0; --k) cls.push_back("K" + std::to_string(code(rng)));
            records.push_back(PatentRecord::make("P" + std::to_string(i), 2000, cls));
        }
        Corpus c(records);
        tlc::Diagnostics diag;
        auto m = tlc::build_disparity_from_cooccurrence(c, &diag);
        CHECK(tlc::validate_matrix(m).empty());
        CHECK(diag.warnings.empty());
        std::shuffle(records.begin(), records.end(), rng);
        CHECK(tlc::build_disparity_from_cooccurrence(Corpus(records)) == m);
    }
}
