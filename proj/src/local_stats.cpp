#include "hotgrid/local_stats.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hotgrid/errors.hpp"
#include "hotgrid/global_stats.hpp"
#include "hotgrid/rng.hpp"

namespace hotgrid {

namespace {

int resolve_threads(int threads) {
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

// Scratch for the conditional draws: identity pool over [0, n-1) plus the swap
// trail needed to restore it after each partial Fisher-Yates pass.
struct DrawScratch {
    std::vector<std::uint32_t> pool;
    std::vector<std::uint32_t> trail;

    explicit DrawScratch(std::int64_t n, std::int64_t max_degree) {
        pool.resize(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
        for (std::size_t k = 0; k < pool.size(); ++k) pool[k] = static_cast<std::uint32_t>(k);
        trail.resize(static_cast<std::size_t>(max_degree));
    }
};

// One replicate: draw m distinct indices from [0, n) \ {focal} and accumulate
// sum_k wt[k] * values[draw_k]. The pool is restored before returning.
inline double draw_weighted_sum(DrawScratch& s, std::mt19937_64& rng, const double* values,
                                std::uint32_t focal, const double* wt, std::int64_t m) {
    const auto pool_size = static_cast<std::uint64_t>(s.pool.size());
    double acc = 0.0;
    for (std::int64_t k = 0; k < m; ++k) {
        const auto j = static_cast<std::uint64_t>(k) +
                       uniform_below(rng, pool_size - static_cast<std::uint64_t>(k));
        std::swap(s.pool[static_cast<std::size_t>(k)], s.pool[j]);
        s.trail[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(j);
        std::uint32_t idx = s.pool[static_cast<std::size_t>(k)];
        idx += (idx >= focal);
        acc += wt[k] * values[idx];
    }
    for (std::int64_t k = m - 1; k >= 0; --k)
        std::swap(s.pool[static_cast<std::size_t>(k)], s.pool[s.trail[static_cast<std::size_t>(k)]]);
    return acc;
}

double pseudo_p(std::int64_t exceed, int permutations) {
    return static_cast<double>(1 + exceed) / static_cast<double>(1 + permutations);
}

}  // namespace

std::vector<LocalStatRow> getis_ord_gstar(const CellVariable& x, const WeightsMatrix& w,
                                          int permutations, std::uint64_t seed, int threads) {
    if (static_cast<std::int64_t>(x.values.size()) != w.n)
        throw ValidationError("gi_star: variable length does not match weights (" + x.name + ")");
    if (!w.self_included || w.standardization != WeightsKind::Binary)
        throw ValidationError("gi_star: weights must be binary and self-included");
    if (permutations < 1) throw ValidationError("gi_star: permutations must be >= 1");

    const std::int64_t n = w.n;
    std::vector<LocalStatRow> rows(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)].cell_id = i;

    if (n < 2) {
        // A single cell's neighborhood is the whole dataset.
        for (auto& r : rows) r.degenerate = true;
        return rows;
    }

    double mean = 0.0;
    for (double v : x.values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    if (var == 0.0) throw DegenerateInputError("gi_star: zero variance (" + x.name + ")");
    const double sd = std::sqrt(var);

    std::int64_t max_degree = 0;
    for (std::int64_t i = 0; i < n; ++i) max_degree = std::max(max_degree, w.degree(i));

    const double* xv = x.values.data();
    const int nt = resolve_threads(threads);
#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
#endif
    {
        DrawScratch scratch(n, max_degree);
        std::vector<double> unit_wt(static_cast<std::size_t>(max_degree), 1.0);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 0; i < n; ++i) {
            LocalStatRow& row = rows[static_cast<std::size_t>(i)];
            const auto wi = static_cast<double>(w.degree(i));
            if (w.is_isolate(i)) {
                row.isolate = true;
                row.statistic = (xv[i] - mean) / sd;
                row.lag = xv[i];
                continue;
            }
            if (w.degree(i) == n) {
                row.degenerate = true;
                continue;
            }

            double obs_sum = 0.0;
            for (std::int64_t j : w.row_neighbors(i)) obs_sum += xv[j];
            const double den =
                sd * std::sqrt((static_cast<double>(n) * wi - wi * wi) / (static_cast<double>(n) - 1.0));
            row.statistic = (obs_sum - mean * wi) / den;
            row.lag = obs_sum / wi;

            const std::int64_t m = w.degree(i) - 1;  // entries drawn per replicate (self stays put)
            const bool high_side = row.statistic >= 0.0;
            auto rng = substream(seed, RngRole::LocalPerm, static_cast<std::uint64_t>(i));
            std::int64_t exceed = 0;
            for (int r = 0; r < permutations; ++r) {
                const double rep_sum = xv[i] + draw_weighted_sum(scratch, rng, xv,
                                                                static_cast<std::uint32_t>(i),
                                                                unit_wt.data(), m);
                if (high_side ? rep_sum >= obs_sum : rep_sum <= obs_sum) ++exceed;
            }
            row.pseudo_p = pseudo_p(exceed, permutations);
        }
    }
    (void)nt;
    return rows;
}

namespace {

// Shared core of the Moran-family local statistics: statistic_i = scale_i * lag_i
// with lag over `lagged` z-values and the conditional draw pool excluding the
// focal cell's own entry.
std::vector<LocalStatRow> local_moran_family(const std::vector<double>& scale,
                                             const std::vector<double>& lagged,
                                             const WeightsMatrix& w, int permutations,
                                             std::uint64_t seed, int threads) {
    const std::int64_t n = w.n;
    std::vector<LocalStatRow> rows(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)].cell_id = i;

    std::int64_t max_degree = 0;
    for (std::int64_t i = 0; i < n; ++i) max_degree = std::max(max_degree, w.degree(i));

    const double* zl = lagged.data();
    const int nt = resolve_threads(threads);
#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
#endif
    {
        DrawScratch scratch(n, max_degree);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 0; i < n; ++i) {
            LocalStatRow& row = rows[static_cast<std::size_t>(i)];
            if (w.is_isolate(i)) {
                row.isolate = true;
                continue;
            }
            auto nb = w.row_neighbors(i);
            auto wt = w.row_weights(i);
            double lag = 0.0;
            for (std::size_t k = 0; k < nb.size(); ++k) lag += wt[k] * zl[nb[k]];
            row.lag = lag;
            row.statistic = scale[static_cast<std::size_t>(i)] * lag;

            const std::int64_t m = w.degree(i);
            const bool high_side = row.statistic >= 0.0;
            auto rng = substream(seed, RngRole::LocalPerm, static_cast<std::uint64_t>(i));
            std::int64_t exceed = 0;
            for (int r = 0; r < permutations; ++r) {
                const double rep_lag = draw_weighted_sum(scratch, rng, zl,
                                                         static_cast<std::uint32_t>(i), wt.data(), m);
                const double rep_stat = scale[static_cast<std::size_t>(i)] * rep_lag;
                if (high_side ? rep_stat >= row.statistic : rep_stat <= row.statistic) ++exceed;
            }
            row.pseudo_p = pseudo_p(exceed, permutations);
        }
    }
    (void)nt;
    return rows;
}

void check_moran_inputs(const CellVariable& x, const WeightsMatrix& w, int permutations,
                        const char* op) {
    if (static_cast<std::int64_t>(x.values.size()) != w.n)
        throw ValidationError(std::string(op) + ": variable length does not match weights (" + x.name + ")");
    if (w.standardization != WeightsKind::RowStandardized)
        throw ValidationError(std::string(op) + ": weights must be row-standardized");
    if (w.self_included) throw ValidationError(std::string(op) + ": weights must not include self");
    if (permutations < 1) throw ValidationError(std::string(op) + ": permutations must be >= 1");
}

}  // namespace

std::vector<LocalStatRow> local_moran(const CellVariable& x, const WeightsMatrix& w,
                                      int permutations, std::uint64_t seed, int threads) {
    check_moran_inputs(x, w, permutations, "local_moran");
    const auto z = standardize(x);
    return local_moran_family(z, z, w, permutations, seed, threads);
}

std::vector<LocalStatRow> bivariate_local_moran(const CellVariable& x, const CellVariable& y,
                                                const WeightsMatrix& w, int permutations,
                                                std::uint64_t seed, int threads) {
    check_moran_inputs(x, w, permutations, "bivariate_local_moran");
    if (x.values.size() != y.values.size())
        throw ValidationError("bivariate_local_moran: variable lengths differ");
    const auto zx = standardize(x);
    const auto zy = standardize(y);
    return local_moran_family(zx, zy, w, permutations, seed, threads);
}

std::vector<HotspotClass> classify_hotspots(const std::vector<LocalStatRow>& rows) {
    std::vector<HotspotClass> out(rows.size(), HotspotClass::NotSignificant);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const LocalStatRow& r = rows[i];
        if (r.isolate || r.degenerate || !r.has_p()) {
            out[i] = HotspotClass::NotApplicable;
            continue;
        }
        if (r.statistic > 0.0) {
            if (r.pseudo_p < 0.01)
                out[i] = HotspotClass::Hot99;
            else if (r.pseudo_p < 0.05)
                out[i] = HotspotClass::Hot95;
            else if (r.pseudo_p < 0.10)
                out[i] = HotspotClass::Hot90;
        } else if (r.statistic < 0.0) {
            if (r.pseudo_p < 0.01)
                out[i] = HotspotClass::Cold99;
            else if (r.pseudo_p < 0.05)
                out[i] = HotspotClass::Cold95;
            else if (r.pseudo_p < 0.10)
                out[i] = HotspotClass::Cold90;
        }
    }
    return out;
}

std::vector<LisaQuadrant> classify_lisa(const std::vector<LocalStatRow>& rows, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("classify_lisa: alpha must be in (0,1)");
    std::vector<LisaQuadrant> out(rows.size(), LisaQuadrant::NotSignificant);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const LocalStatRow& r = rows[i];
        if (r.isolate || !r.has_p()) {
            out[i] = LisaQuadrant::NotApplicable;
            continue;
        }
        if (r.pseudo_p >= alpha) continue;
        // statistic = zx_i * lag; recover zx_i's sign from the pair
        const double zx = r.lag == 0.0 ? 0.0 : r.statistic / r.lag;
        if (zx == 0.0 || r.lag == 0.0) continue;  // undefined on the axes
        if (zx > 0.0)
            out[i] = r.lag > 0.0 ? LisaQuadrant::HH : LisaQuadrant::HL;
        else
            out[i] = r.lag > 0.0 ? LisaQuadrant::LH : LisaQuadrant::LL;
    }
    return out;
}

const char* to_string(HotspotClass c) {
    switch (c) {
        case HotspotClass::Hot99: return "Hot99";
        case HotspotClass::Hot95: return "Hot95";
        case HotspotClass::Hot90: return "Hot90";
        case HotspotClass::NotSignificant: return "NotSignificant";
        case HotspotClass::Cold90: return "Cold90";
        case HotspotClass::Cold95: return "Cold95";
        case HotspotClass::Cold99: return "Cold99";
        case HotspotClass::NotApplicable: return "NotApplicable";
    }
    return "NotApplicable";
}

const char* to_string(LisaQuadrant q) {
    switch (q) {
        case LisaQuadrant::HH: return "HH";
        case LisaQuadrant::HL: return "HL";
        case LisaQuadrant::LH: return "LH";
        case LisaQuadrant::LL: return "LL";
        case LisaQuadrant::NotSignificant: return "NotSignificant";
        case LisaQuadrant::NotApplicable: return "NotApplicable";
    }
    return "NotApplicable";
}

const char* lisa_label(LisaQuadrant q) {
    switch (q) {
        case LisaQuadrant::HH: return "HH (High Crash-High HighG)";
        case LisaQuadrant::HL: return "HL (High Crash-Low HighG)";
        case LisaQuadrant::LH: return "LH (Low Crash-High HighG)";
        case LisaQuadrant::LL: return "LL (Low Crash-Low HighG)";
        case LisaQuadrant::NotSignificant: return "Not Significant (LISA)";
        case LisaQuadrant::NotApplicable: return "Not Applicable (isolate)";
    }
    return "Not Applicable (isolate)";
}

LisaQuadrant lisa_quadrant_from_string(const std::string& s) {
    if (s == "HH") return LisaQuadrant::HH;
    if (s == "HL") return LisaQuadrant::HL;
    if (s == "LH") return LisaQuadrant::LH;
    if (s == "LL") return LisaQuadrant::LL;
    if (s == "NotSignificant") return LisaQuadrant::NotSignificant;
    if (s == "NotApplicable") return LisaQuadrant::NotApplicable;
    throw ValidationError("unknown LISA quadrant: " + s);
}

}  // namespace hotgrid
