#include "hotgrid/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hotgrid/errors.hpp"

namespace hotgrid {

std::string format_double(double v) {
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string bytes = ss.str();
    const std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
    std::array<char, 17> buf{};
    for (int i = 0; i < 16; ++i)
        buf[static_cast<std::size_t>(i)] = "0123456789abcdef"[(h >> (60 - 4 * i)) & 0xF];
    return std::string(buf.data(), 16);
}

namespace {

class CsvReader {
public:
    explicit CsvReader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw ValidationError("cannot open " + path);
    }

    bool next(std::vector<std::string>& fields) {
        std::string line;
        if (!std::getline(in_, line)) return false;
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        fields.clear();
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        return true;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_, line_, what); }

    std::int64_t line() const { return line_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ifstream in_;
    std::int64_t line_ = 0;
};

double parse_double(const CsvReader& r, const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        r.fail("expected a number, got '" + s + "'");
    return v;
}

std::int64_t parse_int(const CsvReader& r, const std::string& s) {
    std::int64_t v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        r.fail("expected an integer, got '" + s + "'");
    return v;
}

void expect_header(CsvReader& r, const std::vector<std::string>& want) {
    std::vector<std::string> fields;
    if (!r.next(fields)) r.fail("missing header row");
    if (fields != want) {
        std::string msg = "expected header ";
        for (std::size_t i = 0; i < want.size(); ++i) msg += (i ? "," : "") + want[i];
        r.fail(msg);
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    return out;
}

const char* flag_name(const LocalStatRow& r) {
    if (r.isolate) return "isolate";
    if (r.degenerate) return "degenerate";
    return "ok";
}

}  // namespace

std::vector<EventPoint> read_points(const std::string& path) {
    CsvReader r(path);
    std::vector<std::string> fields;
    if (!r.next(fields)) r.fail("missing header row");

    int ix = -1, iy = -1, ikind = -1;
    for (std::size_t c = 0; c < fields.size(); ++c) {
        const auto col = static_cast<int>(c);
        if (fields[c] == "x" && ix < 0)
            ix = col;
        else if (fields[c] == "y" && iy < 0)
            iy = col;
        else if (fields[c] == "kind" && ikind < 0)
            ikind = col;
        else
            r.fail("unexpected column '" + fields[c] + "' (want x,y and optional kind)");
    }
    if (ix < 0 || iy < 0) r.fail("point file needs both x and y columns");
    const std::size_t ncols = fields.size();

    std::vector<EventPoint> out;
    while (r.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // trailing newline
        if (fields.size() != ncols) r.fail("wrong number of fields");
        EventPoint p;
        p.x = parse_double(r, fields[static_cast<std::size_t>(ix)]);
        p.y = parse_double(r, fields[static_cast<std::size_t>(iy)]);
        if (ikind >= 0) {
            p.kind = fields[static_cast<std::size_t>(ikind)];
            if (p.kind.empty()) r.fail("empty kind");
        }
        out.push_back(std::move(p));
    }
    return out;
}

void write_points(const std::string& path, const std::vector<EventPoint>& points, bool with_kind) {
    auto out = open_out(path);
    out << (with_kind ? "kind,x,y\n" : "x,y\n");
    for (const EventPoint& p : points) {
        if (with_kind) out << p.kind << ',';
        out << format_double(p.x) << ',' << format_double(p.y) << '\n';
    }
}

CountsTable read_counts(const std::string& path) {
    CsvReader r(path);
    std::vector<std::string> fields;
    if (!r.next(fields)) r.fail("missing header row");
    if (fields.size() < 4 || fields[0] != "cell_id" || fields[1] != "row" || fields[2] != "col")
        r.fail("expected header cell_id,row,col,<variables...>");

    CountsTable t;
    for (std::size_t c = 3; c < fields.size(); ++c) {
        if (fields[c].empty()) r.fail("empty variable name in header");
        t.variables.push_back({fields[c], {}});
    }
    std::int64_t expect_id = 0;
    while (r.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != t.variables.size() + 3) r.fail("wrong number of fields");
        const std::int64_t id = parse_int(r, fields[0]);
        if (id != expect_id) r.fail("cell ids must be contiguous from 0");
        ++expect_id;
        const std::int64_t row = parse_int(r, fields[1]);
        const std::int64_t col = parse_int(r, fields[2]);
        if (row < 0 || col < 0) r.fail("negative row or col");
        t.n_rows_grid = std::max(t.n_rows_grid, row + 1);
        t.n_cols_grid = std::max(t.n_cols_grid, col + 1);
        for (std::size_t c = 0; c < t.variables.size(); ++c)
            t.variables[c].values.push_back(parse_double(r, fields[c + 3]));
    }
    if (expect_id == 0) r.fail("no data rows");
    return t;
}

void write_counts(const std::string& path, const GridSpec& g,
                  const std::vector<CellVariable>& variables) {
    for (const CellVariable& v : variables)
        if (static_cast<std::int64_t>(v.values.size()) != g.cell_count())
            throw ValidationError("write_counts: variable " + v.name + " does not match grid");
    auto out = open_out(path);
    out << "cell_id,row,col";
    for (const CellVariable& v : variables) out << ',' << v.name;
    out << '\n';
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        out << i << ',' << g.row_of(i) << ',' << g.col_of(i);
        for (const CellVariable& v : variables)
            out << ',' << format_double(v.values[static_cast<std::size_t>(i)]);
        out << '\n';
    }
}

WeightsMatrix read_weights_csv(const std::string& path, std::int64_t n) {
    CsvReader r(path);
    expect_header(r, {"i", "j", "w"});
    struct Triplet {
        std::int64_t i, j;
        double w;
    };
    std::vector<Triplet> trips;
    std::vector<std::string> fields;
    bool any_self = false, all_unit = true;
    while (r.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != 3) r.fail("wrong number of fields");
        Triplet t{parse_int(r, fields[0]), parse_int(r, fields[1]), parse_double(r, fields[2])};
        if (t.i < 0 || t.i >= n || t.j < 0 || t.j >= n) r.fail("index out of range");
        if (!(t.w > 0.0)) r.fail("weights must be positive");
        any_self |= t.i == t.j;
        all_unit &= t.w == 1.0;
        trips.push_back(t);
    }
    std::sort(trips.begin(), trips.end(), [](const Triplet& a, const Triplet& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (std::size_t k = 1; k < trips.size(); ++k)
        if (trips[k].i == trips[k - 1].i && trips[k].j == trips[k - 1].j)
            throw ValidationError(path + ": duplicate weight entry");

    WeightsMatrix w;
    w.n = n;
    w.self_included = any_self;
    w.standardization = all_unit ? WeightsKind::Binary : WeightsKind::RowStandardized;
    w.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const Triplet& t : trips) ++w.offsets[static_cast<std::size_t>(t.i) + 1];
    for (std::size_t i = 1; i < w.offsets.size(); ++i) w.offsets[i] += w.offsets[i - 1];
    w.neighbors.reserve(trips.size());
    w.weights.reserve(trips.size());
    for (const Triplet& t : trips) {
        w.neighbors.push_back(t.j);
        w.weights.push_back(t.w);
    }
    return w;
}

void write_weights_csv(const std::string& path, const WeightsMatrix& w) {
    auto out = open_out(path);
    out << "i,j,w\n";
    for (std::int64_t i = 0; i < w.n; ++i) {
        const auto nb = w.row_neighbors(i);
        const auto wt = w.row_weights(i);
        for (std::size_t k = 0; k < nb.size(); ++k)
            out << i << ',' << nb[k] << ',' << format_double(wt[k]) << '\n';
    }
}

void write_global_csv(const std::string& path, const std::vector<GlobalStatResult>& results) {
    auto out = open_out(path);
    out << "name,statistic,expected,pseudo_p,permutations,seed\n";
    for (const GlobalStatResult& g : results) {
        out << g.name << ',' << format_double(g.statistic) << ','
            << format_double(g.expected_under_null) << ',' << format_double(g.pseudo_p) << ','
            << g.n_permutations << ',' << g.seed << '\n';
    }
}

void write_local_csv(const std::string& path, const std::vector<LocalStatRow>& rows) {
    auto out = open_out(path);
    out << "cell_id,statistic,lag,pseudo_p,flag\n";
    for (const LocalStatRow& r : rows) {
        out << r.cell_id << ',' << format_double(r.statistic) << ',' << format_double(r.lag) << ','
            << format_double(r.pseudo_p) << ',' << flag_name(r) << '\n';
    }
}

std::vector<LocalStatRow> read_local_csv(const std::string& path) {
    CsvReader r(path);
    expect_header(r, {"cell_id", "statistic", "lag", "pseudo_p", "flag"});
    std::vector<LocalStatRow> rows;
    std::vector<std::string> fields;
    while (r.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != 5) r.fail("wrong number of fields");
        LocalStatRow row;
        row.cell_id = parse_int(r, fields[0]);
        if (row.cell_id != static_cast<std::int64_t>(rows.size()))
            r.fail("cell ids must be contiguous from 0");
        row.statistic = parse_double(r, fields[1]);
        row.lag = parse_double(r, fields[2]);
        row.pseudo_p = parse_double(r, fields[3]);
        if (fields[4] == "isolate")
            row.isolate = true;
        else if (fields[4] == "degenerate")
            row.degenerate = true;
        else if (fields[4] != "ok")
            r.fail("unknown flag '" + fields[4] + "'");
        rows.push_back(row);
    }
    return rows;
}

void write_cells_csv(const std::string& path, const GridSpec& g, const CellsTable& t) {
    const auto n = static_cast<std::size_t>(g.cell_count());
    if (t.crash_count.size() != n || t.highg_count.size() != n || t.gi.size() != n ||
        t.bv.size() != n || t.hotspot.size() != n || t.lisa.size() != n)
        throw ValidationError("write_cells_csv: column lengths do not match grid");
    auto out = open_out(path);
    out << "cell_id,row,col,crash_count,highg_count,gi_star,gi_p,hotspot_class,"
           "bv_moran,bv_lag,bv_p,lisa_quadrant\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto id = static_cast<std::int64_t>(i);
        out << id << ',' << g.row_of(id) << ',' << g.col_of(id) << ','
            << format_double(t.crash_count[i]) << ',' << format_double(t.highg_count[i]) << ','
            << format_double(t.gi[i].statistic) << ',' << format_double(t.gi[i].pseudo_p) << ','
            << to_string(t.hotspot[i]) << ',' << format_double(t.bv[i].statistic) << ','
            << format_double(t.bv[i].lag) << ',' << format_double(t.bv[i].pseudo_p) << ','
            << to_string(t.lisa[i]) << '\n';
    }
}

CellsTable read_cells_csv(const std::string& path) {
    CsvReader r(path);
    expect_header(r, {"cell_id", "row", "col", "crash_count", "highg_count", "gi_star", "gi_p",
                      "hotspot_class", "bv_moran", "bv_lag", "bv_p", "lisa_quadrant"});
    CellsTable t;
    std::vector<std::string> fields;
    while (r.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != 12) r.fail("wrong number of fields");
        const std::int64_t id = parse_int(r, fields[0]);
        if (id != static_cast<std::int64_t>(t.cell_id.size()))
            r.fail("cell ids must be contiguous from 0");
        t.cell_id.push_back(id);
        t.row.push_back(parse_int(r, fields[1]));
        t.col.push_back(parse_int(r, fields[2]));
        t.crash_count.push_back(parse_double(r, fields[3]));
        t.highg_count.push_back(parse_double(r, fields[4]));
        LocalStatRow gi;
        gi.cell_id = id;
        gi.statistic = parse_double(r, fields[5]);
        gi.pseudo_p = parse_double(r, fields[6]);
        t.gi.push_back(gi);
        try {
            t.hotspot.push_back([&] {
                const std::string& s = fields[7];
                for (int c = 0; c < 8; ++c) {
                    const auto cls = static_cast<HotspotClass>(c);
                    if (s == to_string(cls)) return cls;
                }
                throw ValidationError("unknown hotspot class: " + s);
            }());
            LocalStatRow bv;
            bv.cell_id = id;
            bv.statistic = parse_double(r, fields[8]);
            bv.lag = parse_double(r, fields[9]);
            bv.pseudo_p = parse_double(r, fields[10]);
            t.bv.push_back(bv);
            t.lisa.push_back(lisa_quadrant_from_string(fields[11]));
        } catch (const ValidationError& e) {
            r.fail(e.what());
        }
    }
    return t;
}

void write_lisa_groups_csv(const std::string& path, const std::vector<LisaQuadrant>& quadrants) {
    std::array<std::int64_t, 6> counts{};
    for (LisaQuadrant q : quadrants) ++counts[static_cast<std::size_t>(q)];
    auto out = open_out(path);
    out << "lisa_quadrant,cell_count\n";
    for (int c = 0; c < 6; ++c)
        out << to_string(static_cast<LisaQuadrant>(c)) << ',' << counts[static_cast<std::size_t>(c)]
            << '\n';
}

void write_mw_csv(const std::string& path, const std::vector<MWResult>& results) {
    auto out = open_out(path);
    out << "poi_type,u_statistic,p_value,mean_group_a,mean_group_b,significant\n";
    for (const MWResult& m : results) {
        out << m.poi_type << ',' << format_double(m.u_statistic) << ',' << format_double(m.p_value)
            << ',' << format_double(m.mean_group_a) << ',' << format_double(m.mean_group_b) << ','
            << (m.significant ? "true" : "false") << '\n';
    }
}

}  // namespace hotgrid
