#include "hotgrid/synth.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hotgrid/errors.hpp"
#include "hotgrid/rng.hpp"

namespace hotgrid {

void validate(const Scenario& s) {
    if (s.grid.n_rows < 1 || s.grid.n_cols < 1 || !(s.grid.cell_size > 0.0))
        throw ValidationError("scenario: invalid grid");
    if (!(s.baseline_intensity >= 0.0))
        throw ValidationError("scenario: baseline_intensity must be >= 0");
    if (!(s.coupling >= -1.0 && s.coupling <= 1.0))
        throw ValidationError("scenario: coupling must be in [-1, 1]");
    for (const Blob& b : s.blobs) {
        if (b.row < 0 || b.row >= s.grid.n_rows || b.col < 0 || b.col >= s.grid.n_cols)
            throw ValidationError("scenario: blob center outside grid");
        if (b.radius < 0) throw ValidationError("scenario: blob radius must be >= 0");
        if (!(b.amplitude >= 0.0)) throw ValidationError("scenario: blob amplitude must be >= 0");
    }
    for (const PoiSpec& p : s.pois) {
        if (p.kind.empty()) throw ValidationError("scenario: POI kind must be non-empty");
        if (p.count < 0) throw ValidationError("scenario: POI count must be >= 0");
    }
}

std::pair<std::vector<double>, std::vector<double>> intensity_fields(const Scenario& s) {
    validate(s);
    const auto n = static_cast<std::size_t>(s.grid.cell_count());
    std::vector<double> mult_x(n, 1.0), mult_y(n, 1.0);
    for (const Blob& b : s.blobs) {
        const std::int64_t r0 = std::max<std::int64_t>(0, b.row - b.radius);
        const std::int64_t r1 = std::min(s.grid.n_rows - 1, b.row + b.radius);
        const std::int64_t c0 = std::max<std::int64_t>(0, b.col - b.radius);
        const std::int64_t c1 = std::min(s.grid.n_cols - 1, b.col + b.radius);
        for (std::int64_t r = r0; r <= r1; ++r) {
            for (std::int64_t c = c0; c <= c1; ++c) {
                const auto i = static_cast<std::size_t>(s.grid.cell_id(r, c));
                if (b.target != BlobTarget::Y) mult_x[i] += b.amplitude;
                if (b.target != BlobTarget::X) mult_y[i] += b.amplitude;
            }
        }
    }
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = s.baseline_intensity * mult_x[i];
        ly[i] = s.baseline_intensity * mult_y[i];
    }
    return {std::move(lx), std::move(ly)};
}

std::pair<CellVariable, CellVariable> gen_counts(const Scenario& s) {
    const auto [lx, ly] = intensity_fields(s);
    const std::size_t n = lx.size();
    CellVariable x{"crash_count", std::vector<double>(n)};
    CellVariable y{"highg_count", std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = substream(s.seed, RngRole::SynthCounts, static_cast<std::uint64_t>(i));
        if (s.coupling >= 0.0) {
            const double shared = s.coupling * std::min(lx[i], ly[i]);
            const std::int64_t common = sample_poisson(rng, shared);
            x.values[i] = static_cast<double>(common + sample_poisson(rng, lx[i] - shared));
            y.values[i] = static_cast<double>(common + sample_poisson(rng, ly[i] - shared));
        } else {
            const double u = uniform01(rng);
            const bool antithetic = uniform01(rng) < -s.coupling;
            const double v = antithetic ? 1.0 - u : uniform01(rng);
            x.values[i] = static_cast<double>(poisson_quantile(lx[i], u));
            y.values[i] = static_cast<double>(poisson_quantile(ly[i], v));
        }
    }
    return {std::move(x), std::move(y)};
}

std::vector<EventPoint> counts_to_points(const CellVariable& counts, const GridSpec& g,
                                         std::uint64_t seed) {
    if (static_cast<std::int64_t>(counts.values.size()) != g.cell_count())
        throw ValidationError("counts_to_points: counts do not match grid");
    std::vector<EventPoint> out;
    for (std::size_t i = 0; i < counts.values.size(); ++i) {
        const double c = counts.values[i];
        if (!(c >= 0.0) || c != std::floor(c))
            throw ValidationError("counts_to_points: counts must be non-negative integers");
        if (c == 0.0) continue;
        const auto id = static_cast<std::int64_t>(i);
        const double x0 = g.origin_x + static_cast<double>(g.col_of(id)) * g.cell_size;
        const double y0 = g.origin_y + static_cast<double>(g.row_of(id)) * g.cell_size;
        auto rng = substream(seed, RngRole::PointJitter, static_cast<std::uint64_t>(i));
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(c); ++k) {
            EventPoint p;
            p.x = x0 + uniform01(rng) * g.cell_size;
            p.y = y0 + uniform01(rng) * g.cell_size;
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::vector<EventPoint> gen_pois(const Scenario& s) {
    validate(s);
    const double width = static_cast<double>(s.grid.n_cols) * s.grid.cell_size;
    const double height = static_cast<double>(s.grid.n_rows) * s.grid.cell_size;
    std::vector<EventPoint> out;
    for (std::size_t k = 0; k < s.pois.size(); ++k) {
        auto rng = substream(s.seed, RngRole::SynthPoi, static_cast<std::uint64_t>(k));
        for (std::int64_t j = 0; j < s.pois[k].count; ++j) {
            EventPoint p;
            p.x = s.grid.origin_x + uniform01(rng) * width;
            p.y = s.grid.origin_y + uniform01(rng) * height;
            p.kind = s.pois[k].kind;
            out.push_back(std::move(p));
        }
    }
    return out;
}

namespace {

const char* target_name(BlobTarget t) {
    switch (t) {
        case BlobTarget::Both: return "both";
        case BlobTarget::X: return "x";
        case BlobTarget::Y: return "y";
    }
    return "both";
}

BlobTarget target_from(const std::string& s) {
    if (s == "both") return BlobTarget::Both;
    if (s == "x") return BlobTarget::X;
    if (s == "y") return BlobTarget::Y;
    throw ValidationError("scenario: blob target must be one of both/x/y, got " + s);
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("scenario: invalid JSON: ") + e.what());
    }
    Scenario s;
    try {
        const auto& g = j.at("grid");
        s.grid.origin_x = g.at("origin_x").get<double>();
        s.grid.origin_y = g.at("origin_y").get<double>();
        s.grid.cell_size = g.at("cell_size").get<double>();
        s.grid.n_rows = g.at("n_rows").get<std::int64_t>();
        s.grid.n_cols = g.at("n_cols").get<std::int64_t>();
        s.baseline_intensity = j.at("baseline_intensity").get<double>();
        s.coupling = j.value("coupling", 0.0);
        s.seed = j.value("seed", std::uint64_t{42});
        for (const auto& bj : j.value("blobs", nlohmann::json::array())) {
            Blob b;
            b.row = bj.at("row").get<std::int64_t>();
            b.col = bj.at("col").get<std::int64_t>();
            b.radius = bj.at("radius").get<std::int64_t>();
            b.amplitude = bj.at("amplitude").get<double>();
            b.target = target_from(bj.value("target", "both"));
            s.blobs.push_back(b);
        }
        for (const auto& pj : j.value("pois", nlohmann::json::array())) {
            PoiSpec p;
            p.kind = pj.at("kind").get<std::string>();
            p.count = pj.at("count").get<std::int64_t>();
            s.pois.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("scenario: bad field: ") + e.what());
    }
    validate(s);
    return s;
}

std::string scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    j["grid"] = {{"origin_x", s.grid.origin_x},
                 {"origin_y", s.grid.origin_y},
                 {"cell_size", s.grid.cell_size},
                 {"n_rows", s.grid.n_rows},
                 {"n_cols", s.grid.n_cols}};
    j["baseline_intensity"] = s.baseline_intensity;
    j["coupling"] = s.coupling;
    j["seed"] = s.seed;
    auto blobs = nlohmann::json::array();
    for (const Blob& b : s.blobs)
        blobs.push_back({{"row", b.row},
                         {"col", b.col},
                         {"radius", b.radius},
                         {"amplitude", b.amplitude},
                         {"target", target_name(b.target)}});
    j["blobs"] = std::move(blobs);
    auto pois = nlohmann::json::array();
    for (const PoiSpec& p : s.pois) pois.push_back({{"kind", p.kind}, {"count", p.count}});
    j["pois"] = std::move(pois);
    return j.dump(2) + "\n";
}

}  // namespace hotgrid
