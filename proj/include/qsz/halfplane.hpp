#pragma once

#include "qsz/measure.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace qsz {

using Complex = std::complex<double>;

/// Herglotz-type analytic data built from the measure: f' with Re f' > 0 on
/// the upper half-plane, f'', the antiderivative f normalized by f(i) = i,
/// and the reflection extension F below the real axis.
///
/// The measure is replaced by its exact piecewise-constant density on the
/// window [-T, T], T = 4^density_depth; cells sit at level 2*depth-1 (unit
/// cells when gamma = 0, where the density is globally constant). Every cell
/// integral is closed-form, so apart from double rounding the only error is
/// the discarded tail |t| > T, for which explicit bounds are reported.
class HerglotzMap {
  public:
    HerglotzMap(RieszMeasure meas, int density_depth, double density_scale = 1.0);

    const RieszMeasure& measure() const { return meas_; }
    int density_depth() const { return depth_; }
    double window() const { return static_cast<double>(T_); }

    /// (1/(pi i)) int [1/(t-z) - t/(1+t^2)] dmu, Im z > 0. The regularizer
    /// only shifts f' by an imaginary constant, which is fixed to 0.
    Complex f_prime(Complex z) const;

    /// (1/(pi i)) int (t-z)^{-2} dmu, Im z > 0.
    Complex f_second(Complex z) const;

    /// Re f'(z) = (Im z / pi) int |t-z|^{-2} dmu via arctan antiderivatives.
    double re_f_prime(Complex z) const;

    struct KernelRatio {
        double numerator_abs = 0; // |int (t-z)^{-2} dmu|
        double denominator = 0;   // int |t-z|^{-2} dmu
        double ratio = 0;
        double tail_bound = 0; // bound on the discarded part of either integral
    };
    KernelRatio kernel_ratio(Complex z) const;

    /// 2 Im z |f''(z)| / Re f'(z); equals 2 * kernel_ratio by construction.
    double reduced_ratio(Complex z) const;

    /// f on the closed upper half-plane, f(i) = i, per-cell log antiderivatives.
    Complex f_upper(Complex z) const;

    /// F(z) = f(z) above, f(conj z) + (z - conj z) f'(conj z) below.
    Complex extend_F(Complex z) const;

    struct TraceResult {
        double lhs = 0;      // Re(F(b+iy) - F(a+iy))
        BigRat mu;           // exact mu([a,b])
        double residual = 0; // |lhs - mu|
        double height = 0;   // evaluation height y = 4^{-2 depth}
    };
    /// Boundary trace vs. the measure; requires |a|, |b| <= T/4 and a < b.
    TraceResult trace_consistency(const QuadicRational& a, const QuadicRational& b) const;

    /// Tail bounds from mu([-t,t]) <= 4t (integer cells carry unit mass).
    double tail_bound_kernel(Complex z) const; // for f'' and int |t-z|^{-2}
    double tail_bound_f_prime(Complex z) const;

  private:
    RieszMeasure meas_;
    int depth_;
    double scale_;
    long long T_;              // window half-width 4^depth
    int cell_level_;           // 2*depth-1, or 0 for gamma = 0
    long long cells_per_unit_; // 4^cell_level
    std::vector<double> weights_; // exact integer weights over one unit period
    double weight_den_;           // q^depth (1 for gamma = 0)

    mutable std::optional<Complex> cached_logi_;  // sum W * d[(t-i)log(t-i) - t]
    mutable std::optional<double> cached_reghalf_; // sum W * d[log(1+t^2)/2]

    void require_upper(Complex z) const;
    void ensure_f_cache() const;
};

struct LipschitzRow {
    BigRat slope;
    BigRat fzbar_sq; // |f_zbar|^2, exact
    double abs_fzbar = 0;
    double ratio = 0; // |f_zbar| / Re f_z
};

struct LipschitzReport {
    BigRat L;
    BigRat re_fz;     // (L^2+1)/2, exact, slope-independent
    BigRat k_sq;      // k(L)^2 = ((L^2-1)^2 + L^2) / (L^2+1)^2, exact
    double k = 0;
    double max_ratio = 0;
    bool ok = false; // all ratios <= k and k < 1
    std::vector<LipschitzRow> rows;
};

/// Wirtinger data of f(z) = Re z + i L^2 Im z + i g(Re z) for |g'| <= L:
/// checks |f_zbar| <= k(L) Re f_z with k(L) < 1. Rejects |slope| > L.
LipschitzReport lipschitz_delta_check(const BigRat& L, const std::vector<BigRat>& slopes);

} // namespace qsz
