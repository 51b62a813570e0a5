#include "hotgrid/mann_whitney.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hotgrid/errors.hpp"

namespace hotgrid {

namespace {

struct RankedU {
    double u = 0.0;
    double tie_sum = 0.0;  // sum over tie groups of t^3 - t
};

RankedU ranked_u(std::span<const double> a, std::span<const double> b) {
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<std::pair<double, bool>> pooled;  // (value, is_group_a)
    pooled.reserve(n);
    for (double v : a) pooled.emplace_back(v, true);
    for (double v : b) pooled.emplace_back(v, false);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });

    RankedU out;
    double rank_a = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && pooled[j].first == pooled[i].first) ++j;
        const auto t = static_cast<double>(j - i);
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second) rank_a += midrank;
        if (t > 1.0) out.tie_sum += t * t * t - t;
        i = j;
    }
    out.u = rank_a - static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;
    return out;
}

// All C(n, na) assignments by bitmask; counts are exact since every partial U
// is a multiple of 0.5.
double exact_two_sided_p(std::span<const double> a, std::span<const double> b, double u_obs) {
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    const int n = na + nb;
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
    const double dev = std::abs(u_obs - mu);

    std::int64_t total = 0, at_least = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != na) continue;
        ++total;
        double u = 0.0;
        for (int p = 0; p < n; ++p) {
            if (!(mask & (1u << p))) continue;
            for (int q = 0; q < n; ++q) {
                if (mask & (1u << q)) continue;
                if (pooled[p] > pooled[q])
                    u += 1.0;
                else if (pooled[p] == pooled[q])
                    u += 0.5;
            }
        }
        if (std::abs(u - mu) >= dev) ++at_least;
    }
    return static_cast<double>(at_least) / static_cast<double>(total);
}

}  // namespace

double mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw DegenerateInputError("mann_whitney: empty sample");
    return ranked_u(a, b).u;
}

MWTest mann_whitney(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw DegenerateInputError("mann_whitney: empty sample");
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    const double n = na + nb;
    const RankedU r = ranked_u(a, b);

    MWTest out;
    out.u = r.u;
    if (a.size() + b.size() <= static_cast<std::size_t>(kMWExactLimit)) {
        out.exact = true;
        out.p = exact_two_sided_p(a, b, r.u);
        return out;
    }

    const double mu = na * nb / 2.0;
    const double var = na * nb / 12.0 * ((n + 1.0) - r.tie_sum / (n * (n - 1.0)));
    if (var <= 0.0) {
        out.p = 1.0;  // every pooled value identical
        return out;
    }
    const double z = std::max(0.0, (std::abs(r.u - mu) - 0.5) / std::sqrt(var));
    out.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return out;
}

}  // namespace hotgrid
