#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sweepdec {

// threshold decay ansatz: p_th(N) = p_sus [1 - (1 - p_th(1)/p_sus) N^-gamma]
inline double sustainable_model(double N, double p_sus, double gamma, double p_th1) {
    return p_sus * (1.0 - (1.0 - p_th1 / p_sus) * std::pow(N, -gamma));
}

struct CrossingEstimate {
    double p_th = 0;
    double spread = 0;                   // max - min over adjacent-size pairs
    std::vector<double> pair_estimates;  // one per adjacent pair of sizes
};

// Curves: one (L, points) entry per lattice size, points = (p, p_L) on a shared
// grid sorted by p. The threshold is where adjacent-size curves intersect.
inline std::optional<CrossingEstimate> find_crossing(
    const std::vector<std::pair<int, std::vector<std::array<double, 2>>>>& curves) {
    if (curves.size() < 2) throw std::invalid_argument("find_crossing: need at least two sizes");
    for (auto& c : curves)
        if (c.second.size() < 4)
            throw std::invalid_argument("find_crossing: need at least four points per curve");
    std::vector<std::pair<int, std::vector<std::array<double, 2>>>> sorted(curves);
    std::sort(sorted.begin(), sorted.end());
    CrossingEstimate est;
    for (size_t i = 0; i + 1 < sorted.size(); ++i) {
        const auto& a = sorted[i].second;
        const auto& b = sorted[i + 1].second;
        if (a.size() != b.size()) throw std::invalid_argument("find_crossing: grids differ");
        std::vector<double> zeros;
        for (size_t j = 0; j + 1 < a.size(); ++j) {
            double d0 = b[j][1] - a[j][1];
            double d1 = b[j + 1][1] - a[j + 1][1];
            if (d0 == 0 && d1 == 0) continue;
            if ((d0 <= 0 && d1 > 0) || (d0 >= 0 && d1 < 0) || (d0 < 0 && d1 >= 0) ||
                (d0 > 0 && d1 <= 0)) {
                if ((d0 <= 0) == (d1 <= 0)) continue;
                double t = d0 / (d0 - d1);
                zeros.push_back(a[j][0] + t * (a[j + 1][0] - a[j][0]));
            }
        }
        if (zeros.empty()) return std::nullopt;  // no crossing in range
        std::sort(zeros.begin(), zeros.end());
        est.pair_estimates.push_back(zeros[zeros.size() / 2]);
    }
    std::vector<double> ests(est.pair_estimates);
    std::sort(ests.begin(), ests.end());
    est.p_th = ests.size() % 2 ? ests[ests.size() / 2]
                               : 0.5 * (ests[ests.size() / 2 - 1] + ests[ests.size() / 2]);
    est.spread = ests.back() - ests.front();
    return est;
}

struct ThresholdFit {
    double p_sus = 0;
    double gamma = 0;
    double p_th1 = 0;
    double sse = 0;
    bool converged = false;
    bool gamma_identifiable = true;
};

// Least squares over (p_sus, gamma) with p_th(1) pinned to the N=1 measurement.
// Deterministic: coarse grid, then five rounds of local grid refinement.
inline ThresholdFit fit_sustainable(const std::vector<std::array<double, 2>>& points) {
    if (points.size() < 4)
        throw std::invalid_argument("fit_sustainable: need at least four (N, p_th) points");
    double p_th1 = -1;
    double min_pth = 1e9, max_pth = -1e9;
    for (auto& pt : points) {
        if (pt[0] == 1) p_th1 = pt[1];
        min_pth = std::min(min_pth, pt[1]);
        max_pth = std::max(max_pth, pt[1]);
    }
    if (p_th1 < 0) throw std::invalid_argument("fit_sustainable: no N=1 measurement");

    ThresholdFit fit;
    fit.p_th1 = p_th1;
    if (max_pth - min_pth < 1e-12 * std::max(1.0, max_pth)) {
        // constant data: the sustainable level is that constant, gamma means nothing
        fit.p_sus = min_pth;
        fit.gamma = 0;
        fit.converged = true;
        fit.gamma_identifiable = false;
        return fit;
    }

    auto sse_of = [&](double ps, double g) {
        double s = 0;
        for (auto& pt : points) {
            double m = sustainable_model(pt[0], ps, g, p_th1);
            s += (m - pt[1]) * (m - pt[1]);
        }
        return s;
    };
    double lo_ps = 0.2 * min_pth, hi_ps = 1.2 * min_pth;
    double lo_g = 0.05, hi_g = 3.5;
    double best_ps = min_pth, best_g = 1.0, best = 1e300;
    for (int round = 0; round < 6; ++round) {
        const int n = 80;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                double ps = lo_ps + (hi_ps - lo_ps) * i / n;
                double g = lo_g + (hi_g - lo_g) * j / n;
                if (ps <= 0) continue;
                double s = sse_of(ps, g);
                if (s < best) {
                    best = s;
                    best_ps = ps;
                    best_g = g;
                }
            }
        double span_ps = (hi_ps - lo_ps) / n * 4, span_g = (hi_g - lo_g) / n * 4;
        lo_ps = best_ps - span_ps;
        hi_ps = best_ps + span_ps;
        lo_g = std::max(0.01, best_g - span_g);
        hi_g = best_g + span_g;
    }
    fit.p_sus = best_ps;
    fit.gamma = best_g;
    fit.sse = best;
    fit.converged = best < 1e6;
    fit.gamma_identifiable = best_g > 0.02 && best_g < 3.45;
    return fit;
}

}  // namespace sweepdec
