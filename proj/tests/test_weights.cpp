#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "hotgrid/errors.hpp"
#include "hotgrid/grid.hpp"
#include "hotgrid/weights.hpp"

using namespace hotgrid;

namespace {

GridSpec unit_grid(std::int64_t rows, std::int64_t cols) {
    return make_grid(0.0, 0.0, static_cast<double>(cols), static_cast<double>(rows), 1.0);
}

std::map<std::int64_t, std::int64_t> degree_histogram(const WeightsMatrix& w) {
    std::map<std::int64_t, std::int64_t> h;
    for (std::int64_t i = 0; i < w.n; ++i) ++h[w.degree(i)];
    return h;
}

}  // namespace

TEST_CASE("queen contiguity on a 3x3 grid") {
    const GridSpec g = unit_grid(3, 3);
    const WeightsMatrix w = queen_weights(g);
    REQUIRE(w.n == 9);
    CHECK(w.standardization == WeightsKind::Binary);
    CHECK(!w.self_included);

    // cell ids are row-major; center cell 4 touches everything else
    CHECK(w.degree(4) == 8);
    const auto center = w.row_neighbors(4);
    const std::set<std::int64_t> got(center.begin(), center.end());
    CHECK(got == std::set<std::int64_t>{0, 1, 2, 3, 5, 6, 7, 8});

    CHECK(w.degree(0) == 3);  // corner
    CHECK(w.degree(1) == 5);  // edge
    for (std::int64_t i = 0; i < w.n; ++i)
        for (double wt : w.row_weights(i)) CHECK(wt == 1.0);
}

TEST_CASE("rook contiguity on a 3x3 grid drops diagonals") {
    const GridSpec g = unit_grid(3, 3);
    const WeightsMatrix w = rook_weights(g);
    CHECK(w.degree(4) == 4);
    CHECK(w.degree(0) == 2);
    CHECK(w.degree(1) == 3);
    const auto center = w.row_neighbors(4);
    const std::set<std::int64_t> got(center.begin(), center.end());
    CHECK(got == std::set<std::int64_t>{1, 3, 5, 7});
}

TEST_CASE("degree histograms for larger grids") {
    // queen on an R x C grid with R,C >= 3: 4 corners of degree 3,
    // 2(R-2)+2(C-2) edge cells of degree 5, the rest interior with degree 8.
    for (auto [rows, cols] : {std::pair<std::int64_t, std::int64_t>{3, 3}, {4, 7}, {10, 10}}) {
        const GridSpec g = unit_grid(rows, cols);
        const auto h = degree_histogram(queen_weights(g));
        const std::int64_t edges = 2 * (rows - 2) + 2 * (cols - 2);
        const std::int64_t interior = (rows - 2) * (cols - 2);
        CHECK(h.at(3) == 4);
        if (edges > 0) CHECK(h.at(5) == edges);
        if (interior > 0) CHECK(h.at(8) == interior);

        const auto hr = degree_histogram(rook_weights(g));
        CHECK(hr.at(2) == 4);
        if (edges > 0) CHECK(hr.at(3) == edges);
        if (interior > 0) CHECK(hr.at(4) == interior);
    }
}

TEST_CASE("contiguity weights are symmetric") {
    const GridSpec g = unit_grid(13, 20);
    for (const WeightsMatrix& w : {queen_weights(g), rook_weights(g)}) {
        for (std::int64_t i = 0; i < w.n; ++i) {
            for (std::int64_t j : w.row_neighbors(i)) {
                const auto back = w.row_neighbors(j);
                CHECK(std::find(back.begin(), back.end(), i) != back.end());
            }
        }
    }
}

TEST_CASE("single-cell grid has only an isolate") {
    const GridSpec g = unit_grid(1, 1);
    const WeightsMatrix w = queen_weights(g);
    REQUIRE(w.n == 1);
    CHECK(w.degree(0) == 0);
    CHECK(w.is_isolate(0));
    CHECK(w.isolate_count() == 1);

    const WeightsMatrix r = row_standardize(w);
    CHECK(r.degree(0) == 0);
    CHECK(r.is_isolate(0));
}

TEST_CASE("1xN strip under rook weights") {
    const GridSpec g = unit_grid(1, 5);
    const WeightsMatrix w = rook_weights(g);
    CHECK(w.degree(0) == 1);
    CHECK(w.degree(2) == 2);
    CHECK(w.isolate_count() == 0);
}

TEST_CASE("row standardization sums rows to one and is idempotent") {
    const GridSpec g = unit_grid(4, 6);
    const WeightsMatrix w = queen_weights(g);
    const WeightsMatrix r = row_standardize(w);
    CHECK(r.standardization == WeightsKind::RowStandardized);
    for (std::int64_t i = 0; i < r.n; ++i) {
        CHECK(r.row_sum(i) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.degree(i) == w.degree(i));
    }

    const WeightsMatrix rr = row_standardize(r);
    for (std::size_t k = 0; k < r.weights.size(); ++k)
        CHECK(std::abs(rr.weights[k] - r.weights[k]) <= 1e-12);
}

TEST_CASE("self inclusion adds the diagonal exactly once") {
    const GridSpec g = unit_grid(3, 4);
    const WeightsMatrix w = queen_weights(g);
    const WeightsMatrix s = include_self(w);
    CHECK(s.self_included);
    for (std::int64_t i = 0; i < s.n; ++i) {
        CHECK(s.degree(i) == w.degree(i) + 1);
        CHECK(s.row_sum(i) == doctest::Approx(static_cast<double>(w.degree(i) + 1)));
        const auto nb = s.row_neighbors(i);
        CHECK(std::find(nb.begin(), nb.end(), i) != nb.end());
        CHECK(std::is_sorted(nb.begin(), nb.end()));
    }
    CHECK_THROWS_AS(include_self(s), ValidationError);
}

TEST_CASE("isolate detection with a self loop") {
    const GridSpec g = unit_grid(1, 1);
    const WeightsMatrix s = include_self(queen_weights(g));
    CHECK(s.degree(0) == 1);
    CHECK(s.is_isolate(0));
    CHECK(s.isolate_count() == 1);
}

TEST_CASE("2x2 rook grid: every cell has exactly two neighbors") {
    const GridSpec g = unit_grid(2, 2);
    const WeightsMatrix w = rook_weights(g);
    for (std::int64_t i = 0; i < 4; ++i) CHECK(w.degree(i) == 2);
    const auto c0 = w.row_neighbors(0);
    CHECK(std::set<std::int64_t>(c0.begin(), c0.end()) == std::set<std::int64_t>{1, 2});
}
