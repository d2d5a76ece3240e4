#include "qsz/quadic.hpp"

#include <cmath>

namespace qsz {

QuadicRational QuadicRational::from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite input");
    if (x == 0.0) return {0, 0};
    int e = 0;
    double mant = std::frexp(x, &e); // x = mant * 2^e, |mant| in [0.5, 1)
    auto m = static_cast<long long>(std::ldexp(mant, 53)); // exact 53-bit integer
    e -= 53;                                               // x = m * 2^e
    BigInt num = m;
    if (e >= 0) {
        num <<= e;
        return QuadicRational(num, 0).normalized();
    }
    int level = (-e + 1) / 2;
    num <<= (2 * level + e); // 2*level + e in {0,1}
    return QuadicRational(num, level).normalized();
}

std::optional<QuadicRational> QuadicRational::from_fraction(const BigRat& r) {
    BigInt den = boost::multiprecision::denominator(r);
    int twos = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    if (den != 1) return std::nullopt;
    int level = (twos + 1) / 2;
    BigInt num = boost::multiprecision::numerator(r) << (2 * level - twos);
    return QuadicRational(num, level).normalized();
}

int rho(int n, const QuadicRational& x) {
    if (n < 1) throw std::invalid_argument("rho: n must be >= 1");
    int lvl = std::max(x.level, n);
    BigInt j = floor_div(x.num_at_level(lvl), pow4(lvl - n));
    return kDigitSign[static_cast<int>(floor_mod(j, 4))];
}

int rho_on_cell(int n, const QuadicInterval& cell) {
    if (n < 1) throw std::invalid_argument("rho_on_cell: n must be >= 1");
    if (cell.level < n) throw std::invalid_argument("rho_on_cell: cell coarser than level n");
    return kDigitSign[cell.digit(n)];
}

BigRat antideriv_R(int n, const QuadicRational& x) {
    if (n < 1) throw std::invalid_argument("antideriv_R: n must be >= 1");
    int lvl = std::max(x.level, n);
    BigInt s = x.num_at_level(lvl);
    BigInt c = pow4(lvl - n);            // 4^{-n} at scale 4^{-lvl}
    BigInt y = floor_mod(s, 4 * c);      // position within one period
    BigInt scaled;                       // R_n(x) * 4^lvl
    if (y < c) scaled = 0;
    else if (y < 2 * c) scaled = y - c;
    else if (y < 3 * c) scaled = 3 * c - y;
    else scaled = 0;
    return BigRat(scaled, pow4(lvl));
}

BigRat weight_v(int m, const Gamma& gamma, const QuadicRational& x) {
    if (m < 1) throw std::invalid_argument("weight_v: m must be >= 1");
    BigInt w = 1;
    for (int k = 1; k <= m; ++k)
        w *= gamma.q + gamma.p * rho(2 * k - 1, x);
    BigInt qm = 1;
    for (int k = 0; k < m; ++k) qm *= gamma.q;
    return BigRat(w, qm);
}

BigRat max_weight(int m, const Gamma& gamma, const QuadicRational& x) {
    if (m < 1) throw std::invalid_argument("max_weight: m must be >= 1");
    // invariant: after step k, w = v_k q^k and best = max(v_1..v_k) q^k
    BigInt w = 1, best = 0, qm = 1;
    for (int k = 1; k <= m; ++k) {
        w *= gamma.q + gamma.p * rho(2 * k - 1, x);
        best *= gamma.q;
        if (w > best) best = w;
        qm *= gamma.q;
    }
    return BigRat(best, qm);
}

} // namespace qsz
