#pragma once

#include "qsz/measure.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace qsz {

/// g(x) = sum_{n>=1} R_{2n}(x) v_n(x). On every 4-adic grid point the series
/// terminates (R_{2n} vanishes on all grids of level <= 2n-1), so evaluation
/// there is exact; anywhere else only a rigorous enclosure is offered.
struct ZygmundG {
    Gamma gamma;
    int tail_depth = 6;

    ZygmundG() = default;
    explicit ZygmundG(Gamma g, int tail = 6) : gamma(g), tail_depth(tail) {}

    /// Partial sum g_m(x), exact. Rejects x finer than the level-2m grid,
    /// where g_m would differ from g.
    BigRat eval_exact(const QuadicRational& x, int m) const;

    /// Full g(x) for a 4-adic x (equals g_m with 2m >= level).
    BigRat eval(const QuadicRational& x) const;

    struct Enclosure {
        BigRat lo, hi;
        BigRat mid() const { return (lo + hi) / 2; }
        BigRat width() const { return hi - lo; }
    };

    /// Rigorous enclosure of g at the exact 4-adic value of the double x:
    /// g_m(x) +/- sum_{n>m} 4^{-2n}(1+gamma)^n with m = tail_depth.
    Enclosure eval_enclosure(double x) const;

    /// Exact geometric tail sum_{n>m} 4^{-2n} (1+gamma)^n.
    BigRat tail_bound(int m) const;
};

struct SecondDiffSample {
    QuadicRational x, h; // requires h > 0
};

struct SeminormEstimate {
    BigRat sup_ratio;
    QuadicRational witness_x, witness_h;
    std::size_t used = 0, skipped = 0;
};

/// sup over samples of |f(x+h) - 2f(x) + f(x-h)| / mu([x-h, x+h]): an
/// empirical lower bound for the Lambda_mu seminorm. Samples with zero
/// measure are skipped (cannot happen for RieszMeasure).
SeminormEstimate second_difference_ratio(const std::function<BigRat(const QuadicRational&)>& f,
                                         const RieszMeasure& meas,
                                         const std::vector<SecondDiffSample>& samples);

/// Classical variant: denominator 2h, double-precision f.
struct ClassicalEstimate {
    double sup_ratio = 0;
    double witness_x = 0, witness_h = 0;
};
ClassicalEstimate classical_seminorm_estimate(const std::function<double(double)>& f,
                                              const std::vector<std::pair<double, double>>& samples);

/// sup over `grid` of |f - f_ab| where f_ab is the affine interpolant through
/// (a, f(a)) and (b, f(b)). Exact.
BigRat affine_deviation(const std::function<BigRat(const QuadicRational&)>& f,
                        const QuadicRational& a, const QuadicRational& b,
                        const std::vector<QuadicRational>& grid);

/// The spec'd sampling scheme: exhaustive level-k pairs (x, h = 4^{-k'}) for
/// k, k' <= exhaustive_depth, then seeded pseudo-random pairs at random_level.
/// All points stay inside [0,1].
std::vector<SecondDiffSample> make_seminorm_samples(int exhaustive_depth, std::size_t total_budget,
                                                    std::uint64_t seed, int random_level = 8);

/// Built-in closed-form test functions with their expected class membership.
struct Exemplar {
    enum class Kind { Identity, XLogX, Weierstrass, CubeRoot, SqrtPlus, Exp };
    Kind kind = Kind::Identity;

    double operator()(double x) const;
    const char* name() const;

    /// member of the classical Zygmund class
    bool classical_zygmund() const {
        return kind == Kind::Identity || kind == Kind::XLogX || kind == Kind::Weierstrass;
    }
    /// graph t + i f(t) admits the measure-controlled vertical part
    bool qs_graph_class() const {
        return kind == Kind::Identity || kind == Kind::XLogX || kind == Kind::Weierstrass;
    }
};

} // namespace qsz
