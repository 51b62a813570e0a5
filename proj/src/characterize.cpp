#include "hotgrid/characterize.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hotgrid/errors.hpp"
#include "hotgrid/mann_whitney.hpp"

namespace hotgrid {

const std::vector<double>& PoiFeatureMatrix::column(const std::string& type) const {
    const auto it = std::lower_bound(types.begin(), types.end(), type);
    if (it == types.end() || *it != type)
        throw ValidationError("unknown POI type: " + type);
    return columns[static_cast<std::size_t>(it - types.begin())];
}

PoiFeatureMatrix count_pois(const std::vector<EventPoint>& pois, const GridSpec& g) {
    PoiFeatureMatrix out;
    out.n_cells = g.cell_count();

    std::map<std::string, std::vector<double>> acc;
    for (const EventPoint& p : pois) {
        if (p.kind.empty()) throw ValidationError("POI with empty kind");
        const auto cell = locate(p, g);
        if (!cell) {
            ++out.dropped;
            continue;
        }
        auto [it, inserted] = acc.try_emplace(p.kind);
        if (inserted) it->second.assign(static_cast<std::size_t>(out.n_cells), 0.0);
        it->second[static_cast<std::size_t>(*cell)] += 1.0;
    }
    for (auto& [type, col] : acc) {
        out.types.push_back(type);
        out.columns.push_back(std::move(col));
    }
    return out;
}

std::vector<MWResult> compare_groups(const PoiFeatureMatrix& features,
                                     const std::vector<LisaQuadrant>& quadrants,
                                     LisaQuadrant group_a, LisaQuadrant group_b, double alpha,
                                     int threads) {
    if (static_cast<std::int64_t>(quadrants.size()) != features.n_cells)
        throw ValidationError("compare_groups: quadrant list does not match feature matrix");
    if (group_a == group_b) throw ValidationError("compare_groups: groups must differ");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("compare_groups: alpha must be in (0,1)");

    std::vector<std::size_t> cells_a, cells_b;
    for (std::size_t i = 0; i < quadrants.size(); ++i) {
        if (quadrants[i] == group_a) cells_a.push_back(i);
        if (quadrants[i] == group_b) cells_b.push_back(i);
    }
    if (cells_a.empty())
        throw DegenerateInputError(std::string("compare_groups: no cells in group ") + to_string(group_a));
    if (cells_b.empty())
        throw DegenerateInputError(std::string("compare_groups: no cells in group ") + to_string(group_b));

    const auto n_types = static_cast<std::int64_t>(features.types.size());
    std::vector<MWResult> out(static_cast<std::size_t>(n_types));
#ifdef _OPENMP
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
#else
    (void)threads;
#endif
    for (std::int64_t t = 0; t < n_types; ++t) {
        const auto& col = features.columns[static_cast<std::size_t>(t)];
        std::vector<double> a, b;
        a.reserve(cells_a.size());
        b.reserve(cells_b.size());
        double sum_a = 0.0, sum_b = 0.0;
        for (std::size_t i : cells_a) {
            a.push_back(col[i]);
            sum_a += col[i];
        }
        for (std::size_t i : cells_b) {
            b.push_back(col[i]);
            sum_b += col[i];
        }
        const MWTest test = mann_whitney(a, b);
        MWResult& r = out[static_cast<std::size_t>(t)];
        r.poi_type = features.types[static_cast<std::size_t>(t)];
        r.u_statistic = test.u;
        r.p_value = test.p;
        r.mean_group_a = sum_a / static_cast<double>(a.size());
        r.mean_group_b = sum_b / static_cast<double>(b.size());
        r.significant = test.p < alpha;
        r.exact = test.exact;
        r.n_a = static_cast<std::int64_t>(a.size());
        r.n_b = static_cast<std::int64_t>(b.size());
    }

    std::sort(out.begin(), out.end(), [](const MWResult& l, const MWResult& r) {
        if (l.p_value != r.p_value) return l.p_value < r.p_value;
        return l.poi_type < r.poi_type;
    });
    return out;
}

}  // namespace hotgrid
