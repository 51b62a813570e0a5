#include <doctest.h>

#include <cmath>

#include "hotgrid/errors.hpp"
#include "hotgrid/grid.hpp"
#include "hotgrid/rng.hpp"

using namespace hotgrid;

TEST_CASE("make_grid dimensions") {
    SUBCASE("exact division") {
        const GridSpec g = make_grid(0, 0, 1200, 800, 400);
        CHECK(g.n_rows == 2);
        CHECK(g.n_cols == 3);
        CHECK(g.cell_count() == 6);
    }
    SUBCASE("ceiling cover") {
        const GridSpec g = make_grid(0, 0, 1000, 1000, 400);
        CHECK(g.n_rows == 3);
        CHECK(g.n_cols == 3);
    }
    SUBCASE("single cell") {
        const GridSpec g = make_grid(0, 0, 100, 100, 400);
        CHECK(g.n_rows == 1);
        CHECK(g.n_cols == 1);
    }
    SUBCASE("rejects degenerate input") {
        CHECK_THROWS_AS(make_grid(0, 0, 0, 100, 400), ValidationError);
        CHECK_THROWS_AS(make_grid(0, 0, 100, 100, 0), ValidationError);
        CHECK_THROWS_AS(make_grid(5, 5, 4, 10, 1), ValidationError);
    }
}

TEST_CASE("locate half-open membership") {
    const GridSpec g = make_grid(0, 0, 1200, 1200, 400);
    CHECK(locate({0, 0, ""}, g) == 0);
    CHECK(locate({400, 0, ""}, g) == 1);  // boundary belongs to the right cell
    CHECK(locate({0, 400, ""}, g) == 3);
    CHECK_FALSE(locate({-1, 50, ""}, g).has_value());
    CHECK_FALSE(locate({1200, 50, ""}, g).has_value());  // outer max edge is exclusive
    const double nan = std::nan("");
    CHECK_FALSE(locate({nan, 50, ""}, g).has_value());
}

TEST_CASE("aggregate_points conservation") {
    const GridSpec g = make_grid(0, 0, 1200, 1200, 400);
    SUBCASE("five points in one cell") {
        std::vector<EventPoint> pts(5, EventPoint{450, 450, ""});
        const Aggregation a = aggregate_points(pts, g, "n");
        CHECK(a.counts.values[4] == 5.0);
        CHECK(a.in_extent == 5);
        CHECK(a.dropped == 0);
        double sum = 0;
        for (double v : a.counts.values) sum += v;
        CHECK(sum == 5.0);
    }
    SUBCASE("empty list") {
        const Aggregation a = aggregate_points({}, g, "n");
        for (double v : a.counts.values) CHECK(v == 0.0);
    }
    SUBCASE("1000 random points, independent recount") {
        auto rng = substream(9, RngRole::PointJitter, 0);
        std::vector<EventPoint> pts;
        for (int i = 0; i < 1000; ++i)
            pts.push_back({uniform01(rng) * 1400 - 100, uniform01(rng) * 1400 - 100, ""});
        const Aggregation a = aggregate_points(pts, g, "n");

        // scalar membership loop, no shared code with locate
        std::int64_t inside = 0;
        for (const EventPoint& p : pts)
            if (p.x >= 0 && p.x < 1200 && p.y >= 0 && p.y < 1200) ++inside;
        double sum = 0;
        for (double v : a.counts.values) sum += v;
        CHECK(static_cast<std::int64_t>(sum) == inside);
        CHECK(a.in_extent == inside);
        CHECK(a.dropped == 1000 - inside);
    }
}

TEST_CASE("cell rings") {
    SUBCASE("unit grid ring") {
        const GridSpec g = make_grid(0, 0, 400, 400, 400);
        const CellRing r = cell_ring(g, 0);
        CHECK(r[0] == std::array<double, 2>{0, 0});
        CHECK(r[1] == std::array<double, 2>{400, 0});
        CHECK(r[2] == std::array<double, 2>{400, 400});
        CHECK(r[3] == std::array<double, 2>{0, 400});
        CHECK(r[4] == r[0]);
    }
    SUBCASE("row offset") {
        const GridSpec g = make_grid(0, 0, 1200, 1200, 400);
        const CellRing r = cell_ring(g, g.cell_id(1, 0));
        CHECK(r[0] == std::array<double, 2>{0, 400});
    }
    SUBCASE("areas and locate consistency") {
        const GridSpec g = make_grid(0, 0, 1200, 1200, 400);
        const auto rings = grid_polygons(g);
        REQUIRE(rings.size() == 9);
        for (std::size_t i = 0; i < rings.size(); ++i) {
            const CellRing& r = rings[i];
            double area = 0;  // shoelace
            for (int k = 0; k < 4; ++k)
                area += r[k][0] * r[k + 1][1] - r[k + 1][0] * r[k][1];
            area /= 2;
            CHECK(area == doctest::Approx(160000.0));  // CCW => positive
            const EventPoint mid{(r[0][0] + r[2][0]) / 2, (r[0][1] + r[2][1]) / 2, ""};
            CHECK(locate(mid, g) == static_cast<std::int64_t>(i));
        }
    }
}

TEST_CASE("boundary points land in exactly one cell") {
    const GridSpec g = make_grid(0, 0, 800, 800, 400);
    // every interior lattice point sits on shared edges of up to 4 cells
    for (double x : {0.0, 400.0}) {
        for (double y : {0.0, 400.0}) {
            const auto id = locate({x, y, ""}, g);
            REQUIRE(id.has_value());
            const CellRing r = cell_ring(g, *id);
            CHECK(x >= r[0][0]);
            CHECK(x < r[2][0]);
            CHECK(y >= r[0][1]);
            CHECK(y < r[2][1]);
        }
    }
}
