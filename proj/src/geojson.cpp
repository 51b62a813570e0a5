#include "hotgrid/geojson.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hotgrid/errors.hpp"

namespace hotgrid {

namespace {

std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    return format_double(v);
}

void append_json_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

class LayerWriter {
public:
    LayerWriter(const std::string& path, const GridSpec& g)
        : out_(path, std::ios::binary), grid_(g) {
        if (!out_) throw ValidationError("cannot open " + path + " for writing");
        buf_.reserve(1 << 20);
        const double maxx = g.origin_x + static_cast<double>(g.n_cols) * g.cell_size;
        const double maxy = g.origin_y + static_cast<double>(g.n_rows) * g.cell_size;
        buf_ += "{\"type\":\"FeatureCollection\",\"bbox\":[";
        buf_ += format_double(g.origin_x) + "," + format_double(g.origin_y) + "," +
                format_double(maxx) + "," + format_double(maxy);
        buf_ += "],\"features\":[\n";
    }

    void begin_feature(std::int64_t cell_id) {
        if (any_) buf_ += ",\n";
        any_ = true;
        buf_ += "{\"type\":\"Feature\",\"id\":" + std::to_string(cell_id) +
                ",\"geometry\":{\"type\":\"Polygon\",\"coordinates\":[[";
        const CellRing ring = cell_ring(grid_, cell_id);
        for (std::size_t k = 0; k < ring.size(); ++k) {
            if (k) buf_ += ',';
            buf_ += '[' + format_double(ring[k][0]) + ',' + format_double(ring[k][1]) + ']';
        }
        buf_ += "]]},\"properties\":{";
        first_prop_ = true;
    }

    void prop(const char* key, double v) { prop_raw(key, json_number(v)); }
    void prop(const char* key, std::int64_t v) { prop_raw(key, std::to_string(v)); }
    void prop(const char* key, const std::string& v) {
        std::string quoted;
        append_json_string(quoted, v);
        prop_raw(key, quoted);
    }

    void end_feature() {
        buf_ += "}}";
        if (buf_.size() > (1 << 20)) flush();
    }

    ~LayerWriter() {
        buf_ += "\n]}\n";
        flush();
    }

private:
    void prop_raw(const char* key, const std::string& value) {
        if (!first_prop_) buf_ += ',';
        first_prop_ = false;
        buf_ += '"';
        buf_ += key;
        buf_ += "\":";
        buf_ += value;
    }

    void flush() {
        out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
        buf_.clear();
    }

    std::ofstream out_;
    GridSpec grid_;
    std::string buf_;
    bool any_ = false;
    bool first_prop_ = true;
};

void check_table(const GridSpec& g, const CellsTable& t) {
    const auto n = static_cast<std::size_t>(g.cell_count());
    if (t.crash_count.size() != n || t.highg_count.size() != n || t.gi.size() != n ||
        t.bv.size() != n || t.hotspot.size() != n || t.lisa.size() != n)
        throw ValidationError("geojson: table does not match grid");
}

void full_props(LayerWriter& w, const GridSpec& g, const CellsTable& t, std::int64_t i) {
    const auto k = static_cast<std::size_t>(i);
    w.prop("cell_id", i);
    w.prop("row", g.row_of(i));
    w.prop("col", g.col_of(i));
    w.prop("crash_count", t.crash_count[k]);
    w.prop("highg_count", t.highg_count[k]);
    w.prop("gi_star", t.gi[k].statistic);
    w.prop("gi_p", t.gi[k].pseudo_p);
    w.prop("hotspot_class", std::string(to_string(t.hotspot[k])));
    w.prop("bv_moran", t.bv[k].statistic);
    w.prop("bv_lag", t.bv[k].lag);
    w.prop("bv_p", t.bv[k].pseudo_p);
    w.prop("lisa_quadrant", std::string(to_string(t.lisa[k])));
}

}  // namespace

void write_counts_geojson(const std::string& path, const GridSpec& g,
                          const CellVariable& crash, const CellVariable& highg) {
    const auto n = static_cast<std::size_t>(g.cell_count());
    if (crash.values.size() != n || highg.values.size() != n)
        throw ValidationError("geojson: counts do not match grid");
    LayerWriter w(path, g);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        w.begin_feature(i);
        w.prop("cell_id", i);
        w.prop("row", g.row_of(i));
        w.prop("col", g.col_of(i));
        w.prop("crash_count", crash.values[static_cast<std::size_t>(i)]);
        w.prop("highg_count", highg.values[static_cast<std::size_t>(i)]);
        w.end_feature();
    }
}

void write_hotspot_geojson(const std::string& path, const GridSpec& g, const CellsTable& t) {
    check_table(g, t);
    LayerWriter w(path, g);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        w.begin_feature(i);
        full_props(w, g, t, i);
        w.end_feature();
    }
}

void write_lisa_geojson(const std::string& path, const GridSpec& g, const CellsTable& t) {
    check_table(g, t);
    LayerWriter w(path, g);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        w.begin_feature(i);
        full_props(w, g, t, i);
        w.prop("lisa_label", std::string(lisa_label(t.lisa[static_cast<std::size_t>(i)])));
        w.end_feature();
    }
}

}  // namespace hotgrid
