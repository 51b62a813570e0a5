#include "hotgrid/reference.hpp"

#include <cmath>
#include <cstdint>

#include "hotgrid/errors.hpp"

namespace hotgrid::ref {

namespace {

constexpr std::int64_t kMaxCells = 400;
constexpr std::size_t kMaxExact = 12;

void check_size(std::span<const double> x, const WeightsMatrix& w) {
    if (w.n > kMaxCells) throw ValidationError("reference: size limit exceeded (n <= 400)");
    if (static_cast<std::int64_t>(x.size()) != w.n)
        throw ValidationError("reference: variable length does not match weights");
}

std::vector<std::vector<double>> dense(const WeightsMatrix& w) {
    std::vector<std::vector<double>> m(static_cast<std::size_t>(w.n),
                                       std::vector<double>(static_cast<std::size_t>(w.n), 0.0));
    for (std::int64_t i = 0; i < w.n; ++i) {
        auto nb = w.row_neighbors(i);
        auto wt = w.row_weights(i);
        for (std::size_t k = 0; k < nb.size(); ++k)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(nb[k])] = wt[k];
    }
    return m;
}

std::vector<double> zscores(std::span<const double> x) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    if (var == 0.0) throw DegenerateInputError("reference: zero variance");
    const double sd = std::sqrt(var);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = (x[i] - mean) / sd;
    return z;
}

}  // namespace

double global_moran(std::span<const double> x, const WeightsMatrix& w_rowstd) {
    check_size(x, w_rowstd);
    const auto wm = dense(w_rowstd);
    const auto z = zscores(x);
    const std::size_t n = x.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) num += wm[i][j] * z[i] * z[j];
        den += z[i] * z[i];
    }
    return num / den;
}

double global_bivariate_moran(std::span<const double> x, std::span<const double> y,
                              const WeightsMatrix& w_rowstd) {
    check_size(x, w_rowstd);
    if (x.size() != y.size()) throw ValidationError("reference: variable lengths differ");
    const auto wm = dense(w_rowstd);
    const auto zx = zscores(x);
    const auto zy = zscores(y);
    const std::size_t n = x.size();
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) num += wm[i][j] * zx[i] * zy[j];
    return num / static_cast<double>(n);
}

std::vector<double> gi_star(std::span<const double> x, const WeightsMatrix& w_self_binary) {
    check_size(x, w_self_binary);
    const auto wm = dense(w_self_binary);
    const auto n = static_cast<double>(x.size());

    double mean = 0.0, sumsq = 0.0;
    for (double v : x) {
        mean += v;
        sumsq += v * v;
    }
    mean /= n;
    const double s = std::sqrt(sumsq / n - mean * mean);
    if (s == 0.0) throw DegenerateInputError("reference: zero variance");

    std::vector<double> g(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double wsum = 0.0, wx = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            wsum += wm[i][j];
            wx += wm[i][j] * x[j];
        }
        const double den = s * std::sqrt((n * wsum - wsum * wsum) / (n - 1.0));
        g[i] = den == 0.0 ? 0.0 : (wx - mean * wsum) / den;
    }
    return g;
}

std::vector<double> local_moran(std::span<const double> x, const WeightsMatrix& w_rowstd) {
    check_size(x, w_rowstd);
    const auto wm = dense(w_rowstd);
    const auto z = zscores(x);
    std::vector<double> li(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lag = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lag += wm[i][j] * z[j];
        li[i] = z[i] * lag;
    }
    return li;
}

std::vector<double> bivariate_local_moran(std::span<const double> x, std::span<const double> y,
                                          const WeightsMatrix& w_rowstd) {
    check_size(x, w_rowstd);
    if (x.size() != y.size()) throw ValidationError("reference: variable lengths differ");
    const auto wm = dense(w_rowstd);
    const auto zx = zscores(x);
    const auto zy = zscores(y);
    std::vector<double> li(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lag = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lag += wm[i][j] * zy[j];
        li[i] = zx[i] * lag;
    }
    return li;
}

double mann_whitney_u_stat(std::span<const double> a, std::span<const double> b) {
    double u = 0.0;
    for (double av : a)
        for (double bv : b) {
            if (av > bv)
                u += 1.0;
            else if (av == bv)
                u += 0.5;
        }
    return u;
}

double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b) {
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    if (na == 0 || nb == 0) throw ValidationError("reference: empty sample");
    if (n > kMaxExact) throw ValidationError("reference: exact enumeration limited to n_a + n_b <= 12");

    std::vector<double> pool(a.begin(), a.end());
    pool.insert(pool.end(), b.begin(), b.end());

    const double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
    const double observed = std::abs(mann_whitney_u_stat(a, b) - mu);

    // Walk every size-na subset of the pool via a recursive chooser.
    std::vector<double> ga, gb;
    ga.reserve(na);
    gb.reserve(nb);
    std::uint64_t extreme = 0, total = 0;
    auto recurse = [&](auto&& self, std::size_t idx) -> void {
        if (ga.size() == na) {
            for (std::size_t k = idx; k < n; ++k) gb.push_back(pool[k]);
            const double u = mann_whitney_u_stat(ga, gb);
            if (std::abs(u - mu) >= observed) ++extreme;
            ++total;
            gb.resize(gb.size() - (n - idx));
            return;
        }
        if (n - idx < na - ga.size()) return;
        ga.push_back(pool[idx]);
        self(self, idx + 1);
        ga.pop_back();
        gb.push_back(pool[idx]);
        self(self, idx + 1);
        gb.pop_back();
    };
    recurse(recurse, 0);
    return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace hotgrid::ref
