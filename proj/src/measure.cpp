#include "qsz/measure.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace qsz {

BigInt RieszMeasure::cell_weight(int level, const BigInt& j) const {
    QuadicInterval cell(level, j);
    int K = (level + 1) / 2;
    BigInt w = 1;
    for (int k = 1; k <= K; ++k)
        w *= gamma.q + gamma.p * kDigitSign[cell.digit(2 * k - 1)];
    return w;
}

BigRat RieszMeasure::mu_cell(int level, const BigInt& j) const {
    int K = (level + 1) / 2;
    BigInt qK = 1;
    for (int k = 0; k < K; ++k) qK *= gamma.q;
    return BigRat(cell_weight(level, j), qK * pow4(level));
}

BigRat RieszMeasure::mu_ab(const QuadicRational& a, const QuadicRational& b) const {
    if (a > b) throw std::invalid_argument("mu_ab: requires a <= b");
    int L = std::max(a.level, b.level);
    BigInt A = a.num_at_level(L), B = b.num_at_level(L);
    BigRat total = 0;
    while (A < B) {
        // largest aligned cell starting at A that fits in [A, B)
        int up = 0;
        while (up < L && A % pow4(up + 1) == 0 && A + pow4(up + 1) <= B) ++up;
        total += mu_cell(L - up, A / pow4(up));
        A += pow4(up);
    }
    return total;
}

BigRat RieszMeasure::mu_symmetric_normalized(const QuadicRational& t) const {
    if (t < QuadicRational(0)) throw std::invalid_argument("mu_symmetric: t must be >= 0");
    BigRat total = mu_ab(-t, t);
    BigRat unit = mu_ab(QuadicRational(-1), QuadicRational(1));
    return total / unit;
}

namespace {

struct PairScanResult {
    BigRat ratio; // max mu(I)/mu(J)
    std::size_t x = 1, h = 1;
    bool flip = false;
};

// Scan all adjacent equal-length pairs over a prefix-sum table. I is the
// integer type of the scaled masses; products of two prefix values must fit
// the wide type W.
template <class I, class W>
PairScanResult scan_pairs(const std::vector<I>& P) {
    const std::size_t n = P.size();
    I best_num = 1, best_den = 1;
    PairScanResult r;
    for (std::size_t h = 1; 2 * h < n; ++h) {
        for (std::size_t x = h; x + h < n; ++x) {
            I left = P[x] - P[x - h];
            I right = P[x + h] - P[x];
            if (W(left) * W(best_den) > W(best_num) * W(right)) {
                best_num = left;
                best_den = right;
                r.x = x; r.h = h; r.flip = false;
            }
            if (W(right) * W(best_den) > W(best_num) * W(left)) {
                best_num = right;
                best_den = left;
                r.x = x; r.h = h; r.flip = true;
            }
        }
    }
    r.ratio = BigRat(BigInt(best_num), BigInt(best_den));
    return r;
}

} // namespace

DoublingAudit doubling_audit(const RieszMeasure& meas, int depth, const QuadicRational& window_lo,
                             const QuadicRational& window_hi) {
    if (depth < 1) throw std::invalid_argument("doubling_audit: depth must be >= 1");
    if (window_lo >= window_hi) throw std::invalid_argument("doubling_audit: empty window");
    if (window_lo.level > depth || window_hi.level > depth)
        throw std::invalid_argument("doubling_audit: window endpoints finer than depth grid");

    BigInt a = window_lo.num_at_level(depth), b = window_hi.num_at_level(depth);
    auto ncells = static_cast<std::size_t>(static_cast<long long>(b - a));
    if (ncells * ncells / 4 > 400'000'000ULL)
        throw std::invalid_argument("doubling_audit: pair budget exceeded; reduce depth or window");

    std::vector<BigInt> prefix(ncells + 1);
    prefix[0] = 0;
    for (std::size_t i = 0; i < ncells; ++i)
        prefix[i + 1] = prefix[i] + meas.cell_weight(depth, a + static_cast<long long>(i));

    const BigInt i64_cap = BigInt(1) << 62;
    PairScanResult r;
    if (prefix.back() < i64_cap) {
        std::vector<std::int64_t> p64(prefix.size());
        for (std::size_t i = 0; i < prefix.size(); ++i)
            p64[i] = prefix[i].convert_to<std::int64_t>();
        r = scan_pairs<std::int64_t, __int128>(p64);
    } else {
        r = scan_pairs<BigInt, BigInt>(prefix);
    }

    DoublingAudit out;
    out.delta_hat = r.ratio - 1;
    auto grid_point = [&](std::size_t i) {
        return QuadicRational(a + static_cast<long long>(i), depth);
    };
    QuadicRational xm = grid_point(r.x - r.h), x0 = grid_point(r.x), xp = grid_point(r.x + r.h);
    if (!r.flip) {
        out.i_lo = xm; out.i_hi = x0;
        out.j_lo = x0; out.j_hi = xp;
    } else {
        out.i_lo = x0; out.i_hi = xp;
        out.j_lo = xm; out.j_hi = x0;
    }
    return out;
}

GrowthReport growth_envelope_check(const RieszMeasure& meas, double gamma_prime,
                                   const std::vector<QuadicRational>& t_grid) {
    if (gamma_prime <= 0 || gamma_prime >= 1)
        throw std::invalid_argument("growth_envelope_check: gamma_prime must be in (0,1)");
    GrowthReport rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    for (const auto& t : t_grid) {
        if (!(t > QuadicRational(0))) continue;
        double td = t.to_double();
        double mu_hat = to_double(meas.mu_symmetric_normalized(t));
        double lower = (1 - gamma_prime) * td * std::pow(std::min(td, 1 / td), gamma_prime);
        double upper = (1 + gamma_prime) * td * std::pow(std::max(td, 1 / td), gamma_prime);
        double slack = std::min(mu_hat - lower, upper - mu_hat);
        rep.rows.push_back({t, mu_hat, lower, upper, slack});
        if (slack < rep.min_slack) {
            rep.min_slack = slack;
            rep.worst_t = t;
        }
        if (slack < 0) rep.ok = false;
    }
    return rep;
}

} // namespace qsz
