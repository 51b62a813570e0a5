#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "hotgrid/config.hpp"
#include "hotgrid/csv.hpp"
#include "hotgrid/errors.hpp"
#include "hotgrid/grid.hpp"
#include "hotgrid/weights.hpp"

using namespace hotgrid;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hotgrid_io_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("format_double round-trips exactly and spells NaN as nan") {
    for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-17, 123456789.123456789,
                     std::numeric_limits<double>::max()}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("checksums are stable and content-sensitive") {
    const char* msg = "hello";
    CHECK(fnv1a64(msg, 5) == 0xa430d84680aabd0bULL);
    CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ULL);

    TempDir tmp;
    write_text_file(tmp.file("a.txt"), "spatial");
    write_text_file(tmp.file("b.txt"), "spatial");
    write_text_file(tmp.file("c.txt"), "spatiaL");
    CHECK(file_checksum(tmp.file("a.txt")) == file_checksum(tmp.file("b.txt")));
    CHECK(file_checksum(tmp.file("a.txt")) != file_checksum(tmp.file("c.txt")));
    CHECK(file_checksum(tmp.file("a.txt")).size() == 16);
}

TEST_CASE("point files round-trip in both column layouts") {
    TempDir tmp;
    const std::vector<EventPoint> pts{
        {1.5, 2.5, "bar"}, {100.25, 0.125, "school"}, {3.0, 4.0, "bar"}};

    write_points(tmp.file("k.csv"), pts, true);
    const auto back = read_points(tmp.file("k.csv"));
    REQUIRE(back.size() == 3);
    CHECK(back[0].x == 1.5);
    CHECK(back[1].kind == "school");

    write_points(tmp.file("plain.csv"), pts, false);
    const auto plain = read_points(tmp.file("plain.csv"));
    REQUIRE(plain.size() == 3);
    CHECK(plain[2].y == 4.0);
    CHECK(plain[2].kind.empty());
}

TEST_CASE("point files accept any header order and reject extras") {
    TempDir tmp;
    write_text_file(tmp.file("yx.csv"), "y,x\n2.0,1.0\n");
    const auto pts = read_points(tmp.file("yx.csv"));
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x == 1.0);
    CHECK(pts[0].y == 2.0);

    write_text_file(tmp.file("extra.csv"), "x,y,z\n1,2,3\n");
    CHECK_THROWS_AS(read_points(tmp.file("extra.csv")), ParseError);
    write_text_file(tmp.file("nohdr.csv"), "1,2\n3,4\n");
    CHECK_THROWS_AS(read_points(tmp.file("nohdr.csv")), ParseError);
}

TEST_CASE("parse failures carry the file name and line number") {
    TempDir tmp;
    write_text_file(tmp.file("bad.csv"), "x,y\n1.0,2.0\nnotanumber,3.0\n");
    try {
        read_points(tmp.file("bad.csv"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string what = e.what();
        CHECK(what.find("bad.csv") != std::string::npos);
        CHECK(what.find(":3:") != std::string::npos);
    }
    CHECK_THROWS_AS(read_points(tmp.file("missing.csv")), ValidationError);
}

TEST_CASE("counts tables round-trip with multiple variables") {
    TempDir tmp;
    const GridSpec g = make_grid(0.0, 0.0, 300.0, 200.0, 100.0);
    const CellVariable crash{"crash_count", {1, 0, 4, 2, 0, 9}};
    const CellVariable highg{"highg_count", {0, 0, 1, 1, 3, 2}};
    write_counts(tmp.file("counts.csv"), g, {crash, highg});

    const CountsTable t = read_counts(tmp.file("counts.csv"));
    CHECK(t.n_rows_grid == 2);
    CHECK(t.n_cols_grid == 3);
    REQUIRE(t.variables.size() == 2);
    CHECK(t.variables[0].name == "crash_count");
    CHECK(t.variables[0].values == crash.values);
    CHECK(t.variables[1].values == highg.values);
}

TEST_CASE("counts reader rejects out-of-order cell ids") {
    TempDir tmp;
    write_text_file(tmp.file("counts.csv"),
                    "cell_id,row,col,crash_count\n0,0,0,1\n2,0,2,1\n");
    CHECK_THROWS_AS(read_counts(tmp.file("counts.csv")), ParseError);
}

TEST_CASE("weights round-trip and re-derive their tags") {
    TempDir tmp;
    const GridSpec g = make_grid(0.0, 0.0, 400.0, 300.0, 100.0);

    const WeightsMatrix q = queen_weights(g);
    write_weights_csv(tmp.file("w.csv"), q);
    const WeightsMatrix back = read_weights_csv(tmp.file("w.csv"), q.n);
    CHECK(back.offsets == q.offsets);
    CHECK(back.neighbors == q.neighbors);
    CHECK(back.weights == q.weights);
    CHECK(back.standardization == WeightsKind::Binary);
    CHECK(!back.self_included);

    const WeightsMatrix s = include_self(q);
    write_weights_csv(tmp.file("ws.csv"), s);
    const WeightsMatrix sback = read_weights_csv(tmp.file("ws.csv"), s.n);
    CHECK(sback.self_included);
    CHECK(sback.standardization == WeightsKind::Binary);

    const WeightsMatrix r = row_standardize(q);
    write_weights_csv(tmp.file("wr.csv"), r);
    const WeightsMatrix rback = read_weights_csv(tmp.file("wr.csv"), r.n);
    CHECK(rback.standardization == WeightsKind::RowStandardized);
    for (std::size_t k = 0; k < r.weights.size(); ++k)
        CHECK(rback.weights[k] == r.weights[k]);
}

TEST_CASE("weights reader rejects duplicates and bad indices") {
    TempDir tmp;
    write_text_file(tmp.file("dup.csv"), "i,j,w\n0,1,1\n0,1,1\n1,0,1\n");
    CHECK_THROWS_AS(read_weights_csv(tmp.file("dup.csv"), 2), ValidationError);
    write_text_file(tmp.file("oob.csv"), "i,j,w\n0,5,1\n");
    CHECK_THROWS_AS(read_weights_csv(tmp.file("oob.csv"), 2), ParseError);
}

TEST_CASE("local statistic tables round-trip including NaN p-values") {
    TempDir tmp;
    std::vector<LocalStatRow> rows(3);
    rows[0] = {0, 1.25, 2.5, 0.004, false, false};
    rows[1] = {1, -0.5, 0.75, std::numeric_limits<double>::quiet_NaN(), true, false};
    rows[2] = {2, 0.0, 0.0, std::numeric_limits<double>::quiet_NaN(), false, true};
    write_local_csv(tmp.file("gi.csv"), rows);

    const auto back = read_local_csv(tmp.file("gi.csv"));
    REQUIRE(back.size() == 3);
    CHECK(back[0].statistic == 1.25);
    CHECK(back[0].pseudo_p == 0.004);
    CHECK(!back[0].isolate);
    CHECK(back[1].isolate);
    CHECK(std::isnan(back[1].pseudo_p));
    CHECK(back[2].degenerate);
    CHECK(!back[2].isolate);
}

TEST_CASE("config JSON round-trips every field") {
    PipelineConfig c;
    c.crash_points = "crash.csv";
    c.highg_points = "hg.csv";
    c.poi_points = "pois.csv";
    c.min_x = -10.5;
    c.min_y = 3.25;
    c.max_x = 1000.0;
    c.max_y = 2000.0;
    c.cell_size = 250.0;
    c.weights = "rook";
    c.permutations = 499;
    c.seed = 987654321;
    c.lisa_alpha = 0.01;
    c.group_a = "HL";
    c.group_b = "LL";
    c.out_dir = "results";
    c.threads = 3;

    const PipelineConfig r = config_from_json(config_to_json(c));
    CHECK(r.crash_points == c.crash_points);
    CHECK(r.highg_points == c.highg_points);
    CHECK(r.poi_points == c.poi_points);
    CHECK(r.min_x == c.min_x);
    CHECK(r.max_y == c.max_y);
    CHECK(r.cell_size == c.cell_size);
    CHECK(r.weights == "rook");
    CHECK(r.permutations == 499);
    CHECK(r.seed == c.seed);
    CHECK(r.lisa_alpha == 0.01);
    CHECK(r.group_a == "HL");
    CHECK(r.group_b == "LL");
    CHECK(r.out_dir == "results");
    CHECK(r.threads == 3);
}

TEST_CASE("config validation catches bad values") {
    PipelineConfig c;
    c.crash_points = "a.csv";
    c.highg_points = "b.csv";
    c.poi_points = "c.csv";

    PipelineConfig bad = c;
    bad.weights = "hexagon";
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = c;
    bad.permutations = 0;
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = c;
    bad.lisa_alpha = 1.0;
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = c;
    bad.group_a = "XX";
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = c;
    bad.group_b = bad.group_a;
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = c;
    bad.cell_size = 0.0;
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = c;
    bad.crash_points.clear();
    CHECK_THROWS_AS(validate(bad), ValidationError);
}

TEST_CASE("grid JSON round-trips") {
    const GridSpec g = make_grid(-500.0, 250.0, 1500.0, 2250.0, 400.0);
    const GridSpec r = grid_from_json(grid_to_json(g));
    CHECK(r.origin_x == g.origin_x);
    CHECK(r.origin_y == g.origin_y);
    CHECK(r.cell_size == g.cell_size);
    CHECK(r.n_rows == g.n_rows);
    CHECK(r.n_cols == g.n_cols);
}
