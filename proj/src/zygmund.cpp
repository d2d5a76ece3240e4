#include "qsz/zygmund.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qsz {

namespace {

// g_M(x) at a level-L grid point, M = floor(L/2): all terms beyond M vanish
// there (R_{2n} is 4^{1-2n}-periodic). Horner over the scaled integers
//   acc = sum_n R_{2n}(x) 4^L * W_n * q^{M-n},  g = acc / (4^L q^M).
BigRat eval_g_on_grid(const QuadicRational& xn, const Gamma& gamma) {
    const int L = xn.level;
    const int M = L / 2;
    if (M == 0) return BigRat(0);
    const BigInt S = xn.num;
    BigInt acc = 0, W = 1, qM = 1;
    for (int n = 1; n <= M; ++n) {
        int d_odd = static_cast<int>(floor_mod(floor_div(S, pow4(L - (2 * n - 1))), 4));
        W *= gamma.q + gamma.p * kDigitSign[d_odd];
        // R_{2n}(x) * 4^L via the piecewise-linear profile over one period
        BigInt c = pow4(L - 2 * n);
        BigInt y = floor_mod(S, 4 * c);
        BigInt r = 0;
        if (y >= c && y < 2 * c) r = y - c;
        else if (y >= 2 * c && y < 3 * c) r = 3 * c - y;
        acc = acc * gamma.q + r * W;
        qM *= gamma.q;
    }
    return BigRat(acc, qM * pow4(L));
}

} // namespace

BigRat ZygmundG::eval_exact(const QuadicRational& x, int m) const {
    if (m < 1) throw std::invalid_argument("eval_exact: m must be >= 1");
    QuadicRational xn = x.normalized();
    if (xn.level > 2 * m)
        throw std::invalid_argument("eval_exact: x lies deeper than the level-2m grid; raise m");
    return eval_g_on_grid(xn, gamma);
}

BigRat ZygmundG::eval(const QuadicRational& x) const {
    QuadicRational xn = x.normalized();
    return eval_g_on_grid(xn, gamma);
}

BigRat ZygmundG::tail_bound(int m) const {
    // sum_{n>m} r^n with r = (1+gamma)/16 < 1
    BigRat r(gamma.q + gamma.p, 16LL * gamma.q);
    BigRat rm = 1;
    for (int n = 0; n <= m; ++n) rm *= r;
    return rm / (1 - r);
}

ZygmundG::Enclosure ZygmundG::eval_enclosure(double x) const {
    QuadicRational xq = QuadicRational::from_double(x);
    int m = tail_depth;
    if (xq.level > 2 * m) {
        // the exact argument is deeper than the partial sum's grid: evaluate
        // g_m exactly there anyway (terms n <= m, all exact)
        BigRat total = 0;
        for (int n = 1; n <= m; ++n) {
            BigRat r = antideriv_R(2 * n, xq);
            if (r == 0) continue;
            total += r * weight_v(n, gamma, xq);
        }
        BigRat t = tail_bound(m);
        return {total - t, total + t};
    }
    BigRat mid = eval_exact(xq, m);
    BigRat t = tail_bound(m);
    return {mid - t, mid + t};
}

SeminormEstimate second_difference_ratio(const std::function<BigRat(const QuadicRational&)>& f,
                                         const RieszMeasure& meas,
                                         const std::vector<SecondDiffSample>& samples) {
    SeminormEstimate est;
    est.sup_ratio = 0;
    for (const auto& s : samples) {
        if (!(s.h > QuadicRational(0))) throw std::invalid_argument("second_difference_ratio: h <= 0");
        BigRat mu = meas.mu_ab(s.x - s.h, s.x + s.h);
        if (mu == 0) {
            ++est.skipped;
            continue;
        }
        BigRat d2 = f(s.x + s.h) - 2 * f(s.x) + f(s.x - s.h);
        if (d2 < 0) d2 = -d2;
        BigRat ratio = d2 / mu;
        if (ratio > est.sup_ratio) {
            est.sup_ratio = ratio;
            est.witness_x = s.x;
            est.witness_h = s.h;
        }
        ++est.used;
    }
    return est;
}

ClassicalEstimate classical_seminorm_estimate(const std::function<double(double)>& f,
                                              const std::vector<std::pair<double, double>>& samples) {
    ClassicalEstimate est;
    for (auto [x, h] : samples) {
        if (!(h > 0)) throw std::invalid_argument("classical_seminorm_estimate: h <= 0");
        double ratio = std::abs(f(x + h) - 2 * f(x) + f(x - h)) / (2 * h);
        if (ratio > est.sup_ratio) {
            est.sup_ratio = ratio;
            est.witness_x = x;
            est.witness_h = h;
        }
    }
    return est;
}

BigRat affine_deviation(const std::function<BigRat(const QuadicRational&)>& f,
                        const QuadicRational& a, const QuadicRational& b,
                        const std::vector<QuadicRational>& grid) {
    if (!(a < b)) throw std::invalid_argument("affine_deviation: requires a < b");
    BigRat fa = f(a), fb = f(b);
    BigRat ba = b.value() - a.value();
    BigRat worst = 0;
    for (const auto& x : grid) {
        if (x < a || x > b) throw std::invalid_argument("affine_deviation: grid point outside [a,b]");
        BigRat interp = ((b.value() - x.value()) * fa + (x.value() - a.value()) * fb) / ba;
        BigRat d = f(x) - interp;
        if (d < 0) d = -d;
        if (d > worst) worst = d;
    }
    return worst;
}

std::vector<SecondDiffSample> make_seminorm_samples(int exhaustive_depth, std::size_t total_budget,
                                                    std::uint64_t seed, int random_level) {
    std::vector<SecondDiffSample> out;
    // (a) exhaustive small-scale pairs inside [0,1]
    for (int k = 1; k <= exhaustive_depth; ++k) {
        long long cells = 1LL << (2 * k);
        for (int kp = 1; kp <= exhaustive_depth; ++kp) {
            QuadicRational h(1, kp);
            long long step = 1; // x on the level-k grid
            for (long long j = 1; j < cells; j += step) {
                QuadicRational x(j, k);
                if (x - h >= QuadicRational(0) && x + h <= QuadicRational(1))
                    out.push_back({x, h});
            }
        }
        if (out.size() > total_budget) break;
    }
    // (b) seeded pseudo-random pairs on a finer grid
    std::mt19937_64 rng(seed);
    long long fine = 1LL << (2 * random_level);
    while (out.size() < total_budget) {
        long long j = 1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(fine - 1));
        int kp = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(random_level));
        QuadicRational x(j, random_level), h(1, kp);
        if (x - h >= QuadicRational(0) && x + h <= QuadicRational(1))
            out.push_back({x, h});
    }
    return out;
}

double Exemplar::operator()(double x) const {
    switch (kind) {
        case Kind::Identity: return x;
        case Kind::XLogX: return x > 0 ? x * std::log(x) : 0.0;
        case Kind::Weierstrass: {
            // lambda = 2; truncated once the term weight falls below 2^-52
            double tot = 0;
            for (int n = 0; n <= 52; ++n)
                tot += std::ldexp(std::cos(std::ldexp(M_PI * x, n)), -n);
            return tot;
        }
        case Kind::CubeRoot: return std::cbrt(x);
        case Kind::SqrtPlus: return x > 0 ? std::sqrt(x) : 0.0;
        case Kind::Exp: return std::exp(x);
    }
    return 0;
}

const char* Exemplar::name() const {
    switch (kind) {
        case Kind::Identity: return "identity";
        case Kind::XLogX: return "xlogx";
        case Kind::Weierstrass: return "weierstrass";
        case Kind::CubeRoot: return "cuberoot";
        case Kind::SqrtPlus: return "sqrtplus";
        case Kind::Exp: return "exp";
    }
    return "?";
}

} // namespace qsz
