#include "qsz/graphkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace qsz {

BigRat GraphCurve::ratio_sq_exact(std::size_t x, std::size_t a, std::size_t b) const {
    BigRat dua = u_exact[x] - u_exact[a], dva = v_exact[x] - v_exact[a];
    BigRat dub = u_exact[x] - u_exact[b], dvb = v_exact[x] - v_exact[b];
    BigRat den = dub * dub + dvb * dvb;
    if (den == 0) throw std::invalid_argument("ratio_sq_exact: coincident points");
    return (dua * dua + dva * dva) / den;
}

GraphCurve build_graph(const RieszMeasure& meas, const ZygmundG& zg, const BigRat& v_scale,
                       int depth, const QuadicRational& t_lo, const QuadicRational& t_hi) {
    if (depth < 1 || depth > 6) throw std::invalid_argument("build_graph: depth must be in [1,6]");
    if (t_lo.level > depth || t_hi.level > depth)
        throw std::invalid_argument("build_graph: window endpoints finer than the sample grid");
    if (!(t_lo < t_hi)) throw std::invalid_argument("build_graph: empty window");

    GraphCurve c;
    c.meas = meas;
    c.zg = zg;
    c.v_scale = v_scale;
    c.depth = depth;
    c.t_lo = t_lo;
    c.t_hi = t_hi;

    BigInt lo = t_lo.num_at_level(depth), hi = t_hi.num_at_level(depth);
    auto n = static_cast<std::size_t>(static_cast<long long>(hi - lo)) + 1;
    c.u_exact.reserve(n);
    c.v_exact.reserve(n);

    // u by prefix sums of cell masses, anchored at u(0) = 0
    BigRat acc = 0;
    std::vector<BigRat> prefix(n);
    prefix[0] = 0;
    for (std::size_t i = 1; i < n; ++i) {
        acc += meas.mu_cell(depth, lo + static_cast<long long>(i - 1));
        prefix[i] = acc;
    }
    QuadicRational zero(0);
    BigRat u0 = 0; // prefix value at t = 0, so that u(0) = 0
    if (t_lo > zero) {
        u0 = -meas.mu_ab(zero, t_lo); // window right of 0
    } else if (t_hi < zero) {
        u0 = prefix[n - 1] + meas.mu_ab(t_hi, zero); // window left of 0
    } else {
        auto zero_idx = (zero - t_lo).num_at_level(depth).convert_to<long long>();
        u0 = prefix[static_cast<std::size_t>(zero_idx)];
    }

    for (std::size_t i = 0; i < n; ++i) {
        QuadicRational ti(lo + static_cast<long long>(i), depth);
        c.u_exact.push_back(prefix[i] - u0);
        c.v_exact.push_back(v_scale * zg.eval(ti));
        c.t.push_back(ti.to_double());
    }
    c.u.reserve(n);
    c.v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.u.push_back(to_double(c.u_exact[i]));
        c.v.push_back(to_double(c.v_exact[i]));
    }
    // strict monotonicity of the real part (mu > 0 on every cell)
    for (std::size_t i = 1; i < n; ++i)
        if (!(c.u_exact[i] > c.u_exact[i - 1]))
            throw std::logic_error("build_graph: real part failed to increase");
    return c;
}

namespace {

inline double dist(const GraphCurve& c, std::size_t i, std::size_t j) {
    return std::hypot(c.u[i] - c.u[j], c.v[i] - c.v[j]);
}

// log-stratified random index offset in [1, n): a random dyadic scale, then a
// uniform offset within it
inline long long strat_offset(std::mt19937_64& rng, std::size_t n) {
    int maxbit = 1;
    while ((1LL << (maxbit + 1)) < static_cast<long long>(n)) ++maxbit;
    int b = static_cast<int>(rng() % static_cast<std::uint64_t>(maxbit + 1));
    long long base = 1LL << b;
    return base + static_cast<long long>(rng() % static_cast<std::uint64_t>(base));
}

struct Triple {
    std::size_t x, a, b; // oriented: |t_x - t_a| <= |t_x - t_b|
};

// exhaustive coarse triples on a ~33-point subgrid, then seeded random
// stratified ones; the stream is nested across budgets for a fixed seed.
template <class Fn>
std::size_t for_triples(const GraphCurve& c, std::size_t budget, std::uint64_t seed, Fn&& fn) {
    const std::size_t n = c.size();
    std::size_t produced = 0;
    const std::size_t stride = std::max<std::size_t>(1, (n - 1) / 32);
    std::vector<std::size_t> coarse;
    for (std::size_t i = 0; i < n; i += stride) coarse.push_back(i);
    for (std::size_t x : coarse)
        for (std::size_t a : coarse) {
            if (a == x) continue;
            for (std::size_t b : coarse) {
                if (b == x || b == a) continue;
                if (std::abs(c.t[x] - c.t[a]) <= std::abs(c.t[x] - c.t[b])) {
                    fn(Triple{x, a, b});
                    ++produced;
                }
            }
        }
    std::mt19937_64 rng(seed);
    while (produced < budget) {
        std::size_t x = static_cast<std::size_t>(rng() % n);
        long long oa = strat_offset(rng, n), ob = strat_offset(rng, n);
        if (rng() & 1) oa = -oa;
        if (rng() & 1) ob = -ob;
        long long a = static_cast<long long>(x) + oa, b = static_cast<long long>(x) + ob;
        if (a < 0 || b < 0 || a >= static_cast<long long>(n) || b >= static_cast<long long>(n))
            continue;
        if (a == b || a == static_cast<long long>(x) || b == static_cast<long long>(x)) continue;
        Triple tr{x, static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
        if (std::abs(c.t[tr.x] - c.t[tr.a]) > std::abs(c.t[tr.x] - c.t[tr.b])) std::swap(tr.a, tr.b);
        fn(tr);
        ++produced;
    }
    return produced;
}

} // namespace

WeakQsAudit weak_qs_constant(const GraphCurve& curve, std::size_t triple_budget,
                             std::uint64_t seed) {
    WeakQsAudit audit;
    audit.triples = for_triples(curve, triple_budget, seed, [&](const Triple& tr) {
        double den = dist(curve, tr.x, tr.b);
        if (den == 0) return;
        double r = dist(curve, tr.x, tr.a) / den;
        if (r > audit.H_hat) {
            audit.H_hat = r;
            audit.wx = tr.x;
            audit.wa = tr.a;
            audit.wb = tr.b;
        }
    });
    return audit;
}

EtaAudit eta_modulus(const GraphCurve& curve, int bins_per_quad, std::size_t triple_budget,
                     std::uint64_t seed) {
    if (bins_per_quad < 1) throw std::invalid_argument("eta_modulus: bins_per_quad must be >= 1");
    EtaAudit audit;
    const int quads = 12; // t from 4^-6 to 4^6
    const int nbins = quads * bins_per_quad;
    audit.bins.resize(static_cast<std::size_t>(nbins));
    const double lo_exp = -6.0;
    const double step = 12.0 / nbins;
    for (int i = 0; i < nbins; ++i) {
        audit.bins[static_cast<std::size_t>(i)].t_lo = std::pow(4.0, lo_exp + step * i);
        audit.bins[static_cast<std::size_t>(i)].t_hi = std::pow(4.0, lo_exp + step * (i + 1));
    }
    std::vector<std::pair<double, double>> samples; // (t, ratio)
    samples.reserve(triple_budget);
    audit.triples = for_triples(curve, triple_budget, seed, [&](const Triple& tr) {
        double den = dist(curve, tr.x, tr.b);
        double tden = std::abs(curve.t[tr.x] - curve.t[tr.b]);
        if (den == 0 || tden == 0) return;
        double t = std::abs(curve.t[tr.x] - curve.t[tr.a]) / tden;
        double r = dist(curve, tr.x, tr.a) / den;
        samples.emplace_back(t, r);
        if (t <= 0) return;
        double pos = (std::log(t) / std::log(4.0) - lo_exp) / step;
        auto b = static_cast<long long>(std::floor(pos));
        if (b < 0 || b >= nbins) return;
        auto& bin = audit.bins[static_cast<std::size_t>(b)];
        bin.eta_raw = std::max(bin.eta_raw, r);
        ++bin.count;
    });
    // monotone envelope and raw violations
    double run = 0;
    double prev_raw = -1;
    for (auto& bin : audit.bins) {
        if (bin.count) {
            if (prev_raw >= 0 && bin.eta_raw < prev_raw) ++audit.raw_violations;
            prev_raw = bin.eta_raw;
            run = std::max(run, bin.eta_raw);
        }
        bin.eta_monotone = run;
    }
    // s_hat: feasible(s) iff max over samples with t <= 1/s of (r - t) <= s
    std::sort(samples.begin(), samples.end());
    std::vector<double> prefix_excess(samples.size());
    double ex = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        ex = std::max(ex, samples[i].second - samples[i].first);
        prefix_excess[i] = ex;
    }
    auto feasible = [&](double s) {
        if (samples.empty()) return true;
        double cap = s == 0 ? std::numeric_limits<double>::infinity() : 1.0 / s;
        auto it = std::upper_bound(samples.begin(), samples.end(), std::make_pair(cap, std::numeric_limits<double>::infinity()));
        if (it == samples.begin()) return true;
        std::size_t k = static_cast<std::size_t>(it - samples.begin()) - 1;
        return prefix_excess[k] <= s;
    };
    if (feasible(0)) {
        audit.s_hat = 0;
    } else {
        // feasibility is monotone in s: bisect the crossing
        double lo = 0, hi = 4096;
        while (!feasible(hi)) hi *= 2;
        for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            (feasible(mid) ? hi : lo) = mid;
        }
        audit.s_hat = hi;
    }
    return audit;
}

AhlforsAudit ahlfors_constant(const GraphCurve& curve, std::size_t pair_budget,
                              std::uint64_t seed) {
    AhlforsAudit audit;
    const std::size_t n = curve.size();
    auto consider = [&](std::size_t i, std::size_t j) {
        if (i >= j) return;
        double base = dist(curve, i, j);
        if (base == 0) return;
        double far = 0;
        for (std::size_t w = i; w <= j; ++w)
            far = std::max(far, std::max(dist(curve, w, i), dist(curve, w, j)));
        audit.K_hat = std::max(audit.K_hat, far / base);
        ++audit.pairs;
    };
    const std::size_t stride = std::max<std::size_t>(1, (n - 1) / 24);
    for (std::size_t i = 0; i < n; i += stride)
        for (std::size_t j = i + stride; j < n; j += stride) consider(i, j);
    std::mt19937_64 rng(seed);
    while (audit.pairs < pair_budget) {
        std::size_t i = static_cast<std::size_t>(rng() % n);
        long long off = strat_offset(rng, n);
        long long j = static_cast<long long>(i) + off;
        if (j >= static_cast<long long>(n)) continue;
        consider(i, static_cast<std::size_t>(j));
    }
    return audit;
}

AffineAudit affine_deviation_audit(const GraphCurve& curve, std::size_t cell_budget,
                                   std::uint64_t seed) {
    AffineAudit audit;
    const std::size_t n = curve.size();
    auto consider = [&](std::size_t i, std::size_t j) {
        if (i >= j) return;
        double du = curve.u[j] - curve.u[i];
        if (!(du > 0)) return;
        double dt = curve.t[j] - curve.t[i];
        double worst_u = 0, worst_v = 0, worst = 0;
        for (std::size_t w = i; w <= j; ++w) {
            // cross-product form: exact zero when the points are collinear
            double lam_num = curve.t[w] - curve.t[i];
            double eu = ((curve.u[w] - curve.u[i]) * dt - lam_num * (curve.u[j] - curve.u[i])) / dt;
            double ev = ((curve.v[w] - curve.v[i]) * dt - lam_num * (curve.v[j] - curve.v[i])) / dt;
            worst_u = std::max(worst_u, std::abs(eu));
            worst_v = std::max(worst_v, std::abs(ev));
            worst = std::max(worst, std::hypot(eu, ev));
        }
        audit.K_total = std::max(audit.K_total, worst / du);
        audit.K_u = std::max(audit.K_u, worst_u / du);
        audit.K_v = std::max(audit.K_v, worst_v / du);
        ++audit.cells;
    };
    const std::size_t stride = std::max<std::size_t>(1, (n - 1) / 16);
    for (std::size_t i = 0; i < n; i += stride)
        for (std::size_t j = i + stride; j < n; j += stride) consider(i, j);
    std::mt19937_64 rng(seed);
    while (audit.cells < cell_budget) {
        std::size_t i = static_cast<std::size_t>(rng() % n);
        long long off = strat_offset(rng, n);
        long long j = static_cast<long long>(i) + off;
        if (j >= static_cast<long long>(n)) continue;
        consider(i, static_cast<std::size_t>(j));
    }
    return audit;
}

} // namespace qsz
