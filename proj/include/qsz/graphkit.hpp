#pragma once

#include "qsz/zygmund.hpp"

#include <cstdint>
#include <vector>

namespace qsz {

/// The graph curve Gamma(t) = u(t) + i v(t) with u' = mu and v = v_scale * g,
/// sampled on the level-`depth` 4-adic grid of [t_lo, t_hi]. Samples are
/// exact values of the true curve (g equals its partial sums on every grid
/// point); coordinates are kept as exact rationals and converted to double
/// once, so audit ratios carry only a few ulps of rounding.
struct GraphCurve {
    RieszMeasure meas;
    ZygmundG zg;
    BigRat v_scale;
    int depth = 4;
    QuadicRational t_lo, t_hi;

    std::vector<BigRat> u_exact, v_exact;
    std::vector<double> t, u, v;

    std::size_t size() const { return t.size(); }
    QuadicRational point(std::size_t i) const {
        return {t_lo.num_at_level(depth) + static_cast<long long>(i), depth};
    }
    /// Exact squared distance ratio |Gamma(x)-Gamma(a)|^2 / |Gamma(x)-Gamma(b)|^2.
    BigRat ratio_sq_exact(std::size_t x, std::size_t a, std::size_t b) const;
};

/// depth <= 6 (resource guard); window endpoints must be 4-adic with
/// level <= depth.
GraphCurve build_graph(const RieszMeasure& meas, const ZygmundG& zg, const BigRat& v_scale,
                       int depth, const QuadicRational& t_lo = QuadicRational(-1),
                       const QuadicRational& t_hi = QuadicRational(2));

struct WeakQsAudit {
    double H_hat = 0;
    std::size_t triples = 0;
    std::size_t wx = 0, wa = 0, wb = 0; // witness indices
};
/// max |Gamma(x)-Gamma(a)| / |Gamma(x)-Gamma(b)| over triples with
/// |x-a| <= |x-b|; exhaustive coarse triples plus seeded random fine ones.
/// For a fixed seed the random stream is nested across budgets.
WeakQsAudit weak_qs_constant(const GraphCurve& curve, std::size_t triple_budget, std::uint64_t seed);

struct EtaBin {
    double t_lo = 0, t_hi = 0;
    double eta_raw = 0;      // max ratio among samples in the bin
    double eta_monotone = 0; // prefix max across bins
    std::size_t count = 0;
};
struct EtaAudit {
    std::vector<EtaBin> bins;
    double s_hat = 0;
    std::size_t raw_violations = 0; // bins where the raw curve decreases
    std::size_t triples = 0;
};
/// Binned empirical modulus eta(t) over [4^-6, 4^6] (log bins) and
/// s_hat = min{s : ratio <= t + s over all samples with t <= 1/s}.
EtaAudit eta_modulus(const GraphCurve& curve, int bins_per_quad, std::size_t triple_budget,
                     std::uint64_t seed);

struct AhlforsAudit {
    double K_hat = 1;
    std::size_t pairs = 0;
};
/// Ahlfors condition: diameter proxy (farthest sampled point from either
/// endpoint) against endpoint distance.
AhlforsAudit ahlfors_constant(const GraphCurve& curve, std::size_t pair_budget, std::uint64_t seed);

struct AffineAudit {
    double K_total = 0; // sup |Gamma - Gamma_ab| / (u(b) - u(a))
    double K_u = 0;     // horizontal part
    double K_v = 0;     // vertical part
    std::size_t cells = 0;
};
AffineAudit affine_deviation_audit(const GraphCurve& curve, std::size_t cell_budget,
                                   std::uint64_t seed);

} // namespace qsz
