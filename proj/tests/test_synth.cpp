#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "hotgrid/errors.hpp"
#include "hotgrid/grid.hpp"
#include "hotgrid/synth.hpp"

using namespace hotgrid;

namespace {

Scenario base_scenario(std::int64_t rows, std::int64_t cols, std::uint64_t seed) {
    Scenario s;
    s.grid = make_grid(0.0, 0.0, static_cast<double>(cols) * 100.0,
                       static_cast<double>(rows) * 100.0, 100.0);
    s.baseline_intensity = 2.0;
    s.seed = seed;
    return s;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = mean(a), mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST_CASE("intensity fields layer blob amplitudes onto the baseline") {
    Scenario s = base_scenario(5, 5, 1);
    s.blobs.push_back(Blob{2, 2, 1, 3.0, BlobTarget::Both});
    s.blobs.push_back(Blob{0, 0, 0, 0.5, BlobTarget::X});
    s.blobs.push_back(Blob{4, 4, 0, 1.5, BlobTarget::Y});

    const auto [lx, ly] = intensity_fields(s);
    // center 3x3 patch lifted by the shared blob
    CHECK(lx[12] == doctest::Approx(8.0));  // 2 * (1 + 3)
    CHECK(ly[12] == doctest::Approx(8.0));
    CHECK(lx[6] == doctest::Approx(8.0));
    // corner blob hits only x
    CHECK(lx[0] == doctest::Approx(3.0));  // 2 * (1 + 0.5)
    CHECK(ly[0] == doctest::Approx(2.0));
    // opposite corner hits only y
    CHECK(lx[24] == doctest::Approx(2.0));
    CHECK(ly[24] == doctest::Approx(5.0));
    // untouched edge cell
    CHECK(lx[2] == doctest::Approx(2.0));
    CHECK(ly[2] == doctest::Approx(2.0));
}

TEST_CASE("zero baseline produces all-zero counts") {
    Scenario s = base_scenario(4, 4, 3);
    s.baseline_intensity = 0.0;
    const auto [cx, cy] = gen_counts(s);
    CHECK(cx.name == "crash_count");
    CHECK(cy.name == "highg_count");
    for (double v : cx.values) CHECK(v == 0.0);
    for (double v : cy.values) CHECK(v == 0.0);
}

TEST_CASE("blob cells draw from the boosted mean") {
    // center blob of amplitude 10 on baseline 2: lambda = 22 inside,
    // 2 outside. 500 replicates of the center cell put the sample mean
    // within 3 standard errors.
    int reps = 500;
    double sum_center = 0.0, sum_corner = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        Scenario s = base_scenario(5, 5, 10000 + static_cast<std::uint64_t>(rep));
        s.blobs.push_back(Blob{2, 2, 1, 10.0, BlobTarget::Both});
        const auto [cx, cy] = gen_counts(s);
        sum_center += cx.values[12];
        sum_corner += cx.values[0];
    }
    const double se_center = std::sqrt(22.0 / reps);
    const double se_corner = std::sqrt(2.0 / reps);
    CHECK(std::abs(sum_center / reps - 22.0) <= 3.0 * se_center);
    CHECK(std::abs(sum_corner / reps - 2.0) <= 3.0 * se_corner);
}

TEST_CASE("identical scenarios reproduce identical data") {
    Scenario s = base_scenario(6, 6, 77);
    s.blobs.push_back(Blob{1, 1, 1, 4.0, BlobTarget::Both});
    s.coupling = 0.5;
    s.pois.push_back(PoiSpec{"bar", 30});

    const auto [ax, ay] = gen_counts(s);
    const auto [bx, by] = gen_counts(s);
    CHECK(ax.values == bx.values);
    CHECK(ay.values == by.values);

    const auto p1 = gen_pois(s);
    const auto p2 = gen_pois(s);
    REQUIRE(p1.size() == p2.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        CHECK(p1[i].x == p2[i].x);
        CHECK(p1[i].y == p2[i].y);
        CHECK(p1[i].kind == p2[i].kind);
    }

    Scenario s2 = s;
    s2.seed = 78;
    const auto [ox, oy] = gen_counts(s2);
    CHECK(ax.values != ox.values);
}

TEST_CASE("positive coupling correlates the two count fields") {
    Scenario s = base_scenario(20, 20, 5);
    s.baseline_intensity = 6.0;
    s.coupling = 1.0;
    const auto [cx, cy] = gen_counts(s);
    CHECK(pearson(cx.values, cy.values) > 0.5);

    Scenario ind = s;
    ind.coupling = 0.0;
    const auto [ix, iy] = gen_counts(ind);
    CHECK(std::abs(pearson(ix.values, iy.values)) < 0.3);

    Scenario neg = s;
    neg.coupling = -1.0;
    const auto [nx, ny] = gen_counts(neg);
    CHECK(pearson(nx.values, ny.values) < -0.3);
}

TEST_CASE("scattered points re-aggregate to the exact counts") {
    Scenario s = base_scenario(8, 8, 21);
    s.blobs.push_back(Blob{3, 3, 2, 6.0, BlobTarget::Both});
    const auto [cx, cy] = gen_counts(s);

    const std::vector<EventPoint> pts = counts_to_points(cx, s.grid, 99);
    const Aggregation agg = aggregate_points(pts, s.grid, "crash_count");
    CHECK(agg.dropped == 0);
    CHECK(agg.counts.values == cx.values);

    double total = 0.0;
    for (double v : cx.values) total += v;
    CHECK(static_cast<double>(pts.size()) == total);
}

TEST_CASE("counts_to_points rejects fractional counts") {
    const GridSpec g = make_grid(0.0, 0.0, 200.0, 100.0, 100.0);
    CHECK_THROWS_AS(counts_to_points(CellVariable{"x", {1.5, 2.0}}, g, 1), ValidationError);
    CHECK_THROWS_AS(counts_to_points(CellVariable{"x", {-1.0, 2.0}}, g, 1), ValidationError);
}

TEST_CASE("generated POIs stay inside the extent and follow their spec") {
    Scenario s = base_scenario(5, 5, 9);
    s.pois.push_back(PoiSpec{"bar", 40});
    s.pois.push_back(PoiSpec{"school", 10});
    const auto pts = gen_pois(s);
    REQUIRE(pts.size() == 50);
    std::int64_t bars = 0, schools = 0;
    for (const EventPoint& p : pts) {
        CHECK(p.x >= s.grid.origin_x);
        CHECK(p.x < s.grid.origin_x + 500.0);
        CHECK(p.y >= s.grid.origin_y);
        CHECK(p.y < s.grid.origin_y + 500.0);
        if (p.kind == "bar") ++bars;
        if (p.kind == "school") ++schools;
    }
    CHECK(bars == 40);
    CHECK(schools == 10);
}

TEST_CASE("x-only and y-only blobs create discordant cells") {
    // an x blob and a disjoint y blob should give the bivariate comparison
    // something to find: crash-rich cells with ordinary highg and vice versa
    Scenario s = base_scenario(10, 10, 31);
    s.blobs.push_back(Blob{2, 2, 1, 8.0, BlobTarget::X});
    s.blobs.push_back(Blob{7, 7, 1, 8.0, BlobTarget::Y});
    const auto [cx, cy] = gen_counts(s);

    // inside the x blob, crash counts dominate highg counts on average
    double x_in = 0.0, y_in = 0.0, x_out = 0.0, y_out = 0.0;
    for (std::int64_t r = 1; r <= 3; ++r)
        for (std::int64_t c = 1; c <= 3; ++c) {
            x_in += cx.values[static_cast<std::size_t>(r * 10 + c)];
            y_in += cy.values[static_cast<std::size_t>(r * 10 + c)];
        }
    for (std::int64_t r = 6; r <= 8; ++r)
        for (std::int64_t c = 6; c <= 8; ++c) {
            x_out += cx.values[static_cast<std::size_t>(r * 10 + c)];
            y_out += cy.values[static_cast<std::size_t>(r * 10 + c)];
        }
    CHECK(x_in > 3.0 * y_in);
    CHECK(y_out > 3.0 * x_out);
}

TEST_CASE("scenario validation rejects bad knobs") {
    Scenario s = base_scenario(3, 3, 1);
    s.coupling = 1.5;
    CHECK_THROWS_AS(validate(s), ValidationError);
    s.coupling = 0.0;
    s.baseline_intensity = -1.0;
    CHECK_THROWS_AS(validate(s), ValidationError);
    s.baseline_intensity = 2.0;
    s.blobs.push_back(Blob{9, 0, 1, 1.0, BlobTarget::Both});  // row off the grid
    CHECK_THROWS_AS(validate(s), ValidationError);
    s.blobs.clear();
    s.blobs.push_back(Blob{1, 1, -1, 1.0, BlobTarget::Both});
    CHECK_THROWS_AS(validate(s), ValidationError);
    s.blobs.clear();
    s.blobs.push_back(Blob{1, 1, 1, -2.0, BlobTarget::Both});
    CHECK_THROWS_AS(validate(s), ValidationError);
    s.blobs.clear();
    s.pois.push_back(PoiSpec{"", 5});
    CHECK_THROWS_AS(validate(s), ValidationError);
}

TEST_CASE("scenario JSON round-trips") {
    Scenario s = base_scenario(12, 9, 123);
    s.baseline_intensity = 1.25;
    s.coupling = -0.4;
    s.blobs.push_back(Blob{3, 4, 2, 5.5, BlobTarget::Both});
    s.blobs.push_back(Blob{8, 2, 1, 2.0, BlobTarget::X});
    s.blobs.push_back(Blob{1, 7, 0, 9.0, BlobTarget::Y});
    s.pois.push_back(PoiSpec{"bar", 25});
    s.pois.push_back(PoiSpec{"school", 4});

    const Scenario r = scenario_from_json(scenario_to_json(s));
    CHECK(r.grid.n_rows == s.grid.n_rows);
    CHECK(r.grid.n_cols == s.grid.n_cols);
    CHECK(r.grid.cell_size == s.grid.cell_size);
    CHECK(r.baseline_intensity == s.baseline_intensity);
    CHECK(r.coupling == s.coupling);
    CHECK(r.seed == s.seed);
    REQUIRE(r.blobs.size() == 3);
    CHECK(r.blobs[0].amplitude == 5.5);
    CHECK(r.blobs[1].target == BlobTarget::X);
    CHECK(r.blobs[2].target == BlobTarget::Y);
    REQUIRE(r.pois.size() == 2);
    CHECK(r.pois[0].kind == "bar");
    CHECK(r.pois[1].count == 4);

    // the round-tripped scenario generates identical data
    const auto [ax, ay] = gen_counts(s);
    const auto [bx, by] = gen_counts(r);
    CHECK(ax.values == bx.values);
    CHECK(ay.values == by.values);
}

TEST_CASE("scenario JSON rejects malformed input") {
    CHECK_THROWS_AS(scenario_from_json("{not json"), ValidationError);
    CHECK_THROWS_AS(scenario_from_json(R"({"grid": {}})"), ValidationError);
}
