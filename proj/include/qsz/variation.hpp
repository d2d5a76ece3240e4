#pragma once

#include "qsz/zygmund.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace qsz {

/// Convex increasing gauge: Phi_q(t) = t (ln 1/t)^{-q} for 0 < t <= 1/e,
/// Phi_q(0) = 0, and the tangent line beyond t_star = 1/e. The tangent keeps
/// the extension convex and increasing; the gauge only matters for small t.
struct Gauge {
    double q = 0.5;

    static constexpr double t_star = 0.36787944117144233; // exp(-1)

    double operator()(double t) const {
        if (t <= 0) return 0;
        if (t <= t_star) return t / std::pow(std::log(1.0 / t), q);
        // value exp(-1) and slope 1+q at the junction
        return t_star + (1.0 + q) * (t - t_star);
    }
};

/// Single-partition Phi-sum: sum_j Phi(|f(x_j) - f(x_{j-1})|). Any monotone
/// gauge callable is accepted; callers pass a Gauge or a custom function.
double phi_variation(const std::function<double(double)>& gauge,
                     const std::function<double(double)>& f,
                     const std::vector<double>& partition);

struct VariationRow {
    int m = 0;
    BigRat S;              // exact absolute-increment sum, level-2m partition of [0,1]
    std::vector<double> V; // Phi_q-sums, one per requested gauge exponent
};

/// S_m and V_m per m = 1..m_max over the level-2m uniform partitions.
/// m_max <= 6 unless slow mode; hard cap 8.
std::vector<VariationRow> quadic_variation_series(const ZygmundG& zg, const std::vector<double>& qs,
                                                  int m_max, bool slow = false);

/// Exact integral of v_m^* over [0,1] (depends only on the m odd digits).
/// m <= 6 unless slow mode; hard cap 8.
BigRat max_weight_integral(const Gamma& gamma, int m, bool slow = false);

struct LogPowerFit {
    double C = 0, p = 0, residual = 0;
};

/// Least squares of log(Sigma) against log log(N+1): Sigma ~ C log^p(N+1).
LogPowerFit log_power_fit(const std::vector<std::pair<double, double>>& series);

} // namespace qsz
