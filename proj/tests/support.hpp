#pragma once

// Shared helpers for the unit and acceptance suites: independent brute-force
// oracles (kept free of the library's closed-form code paths) and the
// exhaustive Rademacher-system property checks.

#include "qsz/measure.hpp"
#include "qsz/zygmund.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qsz::testing {

// ---- independent oracles ----------------------------------------------

// mu(I) = int_I v_n dx by direct summation of v_n over level-(2n-1) subcells,
// with 2n-1 >= I.level. Uses only rho/weight_v point evaluation.
inline BigRat oracle_mu(const Gamma& gamma, const QuadicInterval& I) {
    int n = (I.level + 2) / 2; // 2n-1 >= level
    int lvl = 2 * n - 1;
    BigInt lo = I.index * pow4(lvl - I.level);
    BigRat total = 0;
    BigRat cell_len(1, pow4(lvl));
    for (BigInt j = lo; j < lo + pow4(lvl - I.level); ++j) {
        QuadicRational rep(j, lvl); // v_n is constant on the subcell
        total += weight_v(n, gamma, rep) * cell_len;
    }
    return total;
}

// sum of |g(j 4^{-2m}) - g((j-1) 4^{-2m})| by direct point evaluation
inline BigRat oracle_variation_sum(const ZygmundG& zg, int m) {
    long long N = 1LL << (4 * m);
    BigRat total = 0;
    BigRat prev = zg.eval_exact(QuadicRational(0), m);
    for (long long j = 1; j <= N; ++j) {
        BigRat cur = zg.eval_exact(QuadicRational(j, 2 * m), m);
        BigRat d = cur - prev;
        if (d < 0) d = -d;
        total += d;
        prev = cur;
    }
    return total;
}

// int_0^1 v_m^* dx by direct enumeration of level-(2m-1) cells
inline BigRat oracle_max_weight_integral(const Gamma& gamma, int m) {
    int lvl = 2 * m - 1;
    long long N = 1LL << (2 * lvl);
    BigRat total = 0;
    BigRat cell_len(1, pow4(lvl));
    for (long long j = 0; j < N; ++j)
        total += max_weight(m, gamma, QuadicRational(j, lvl)) * cell_len;
    return total;
}

// ---- Rademacher property suite -----------------------------------------

// Exhaustive checks of the structural properties of {rho_n} over [0,1) up to
// index depth `nmax`. Returns a list of failures (empty = all hold).
inline std::vector<std::string> rho_property_failures(int nmax, const Gamma& gamma) {
    std::vector<std::string> bad;
    auto fail = [&](const std::string& s) { bad.push_back(s); };

    // (i) rho_n constant on I_{m,j} for m >= n
    for (int n = 1; n <= nmax; ++n)
        for (int m = n; m <= nmax; ++m)
            for (long long j = 0; j < (1LL << (2 * m)); ++j) {
                QuadicInterval cell(m, j);
                int v = rho_on_cell(n, cell);
                QuadicRational probes[3] = {cell.left(),
                                            cell.left() + QuadicRational(1, m + 1),
                                            cell.left() + QuadicRational(3, m + 1)};
                for (const auto& x : probes)
                    if (rho(n, x) != v) fail("(i) n=" + std::to_string(n) + " m=" + std::to_string(m));
            }

    // (ii) zero mean of rho_n over I_{m,j} for m < n
    for (int n = 1; n <= nmax; ++n)
        for (int m = 0; m < n; ++m)
            for (long long j = 0; j < (1LL << (2 * m)); ++j) {
                long long sum = 0;
                long long lo = j * (1LL << (2 * (n - m)));
                for (long long jj = lo; jj < lo + (1LL << (2 * (n - m))); ++jj)
                    sum += rho_on_cell(n, QuadicInterval(n, jj));
                if (sum != 0) fail("(ii) n=" + std::to_string(n) + " m=" + std::to_string(m));
            }

    // (iii) discontinuities of rho_n are exactly the level-n grid points with 4 - j
    for (int n = 1; n <= nmax; ++n)
        for (long long j = 0; j <= (1LL << (2 * n)); ++j) {
            QuadicRational x(j, n);
            QuadicRational eps(1, nmax + 1);
            bool jump = rho(n, x - eps) != rho(n, x);
            if (jump != (j % 4 != 0)) fail("(iii) n=" + std::to_string(n) + " j=" + std::to_string(j));
        }

    // (iv) near a discontinuity of rho_n, rho_m vanishes for m > n
    for (int n = 1; n <= nmax; ++n)
        for (int m = n + 1; m <= nmax; ++m)
            for (long long j = 1; j < (1LL << (2 * n)); ++j) {
                if (j % 4 == 0) continue;
                QuadicRational x(j, n);
                QuadicRational h(1, m), d(1, m + 1);
                QuadicRational ys[4] = {x - h + d, x - d, x, x + h - d};
                for (const auto& y : ys)
                    if (rho(m, y) != 0) fail("(iv) n=" + std::to_string(n) + " m=" + std::to_string(m));
            }

    // (v) periodicity and bound of R_n
    for (int n = 1; n <= nmax; ++n) {
        QuadicRational period(4, n);
        BigRat sup = 0;
        for (long long j = 0; j <= (1LL << (2 * nmax)); ++j) {
            QuadicRational x(j, nmax);
            if (antideriv_R(n, x + period) != antideriv_R(n, x))
                fail("(v) periodicity n=" + std::to_string(n));
            BigRat r = antideriv_R(n, x);
            if (r < 0) r = -r;
            if (r > sup) sup = r;
        }
        if (sup != BigRat(1, pow4(n))) fail("(v) sup n=" + std::to_string(n));
    }

    // (vi) R_n rho_m continuous for m < n: equal one-sided limits at grid points
    for (int n = 1; n <= nmax; ++n)
        for (int m = 1; m < n; ++m)
            for (long long j = 0; j <= (1LL << (2 * n)); ++j) {
                QuadicRational x(j, n), eps(1, nmax + 2);
                BigRat left = antideriv_R(n, x) * rho(m, x - eps);
                BigRat right = antideriv_R(n, x) * rho(m, x);
                if (left != right) fail("(vi) n=" + std::to_string(n) + " m=" + std::to_string(m));
            }

    // (vii)/(viii) for Psi a product of (1 + gamma rho_k), k in S, n not in S:
    // int_0^1 Psi = 4 int_{rho_n = 1} Psi and int_0^1 rho_n Psi = 0
    for (int n = 1; n <= nmax; ++n) {
        std::vector<int> others;
        for (int k = 1; k <= nmax; ++k)
            if (k != n) others.push_back(k);
        for (unsigned mask = 0; mask < (1u << others.size()); ++mask) {
            BigRat whole = 0, on_plus = 0, signed_sum = 0;
            BigRat cell_len(1, pow4(nmax));
            for (long long j = 0; j < (1LL << (2 * nmax)); ++j) {
                QuadicInterval cell(nmax, j);
                BigRat psi = 1;
                for (std::size_t idx = 0; idx < others.size(); ++idx)
                    if (mask & (1u << idx))
                        psi *= 1 + gamma.value() * rho_on_cell(others[idx], cell);
                int rn = rho_on_cell(n, cell);
                whole += psi * cell_len;
                if (rn == 1) on_plus += psi * cell_len;
                signed_sum += rn * psi * cell_len;
            }
            if (whole != 4 * on_plus) fail("(vii) n=" + std::to_string(n) + " mask=" + std::to_string(mask));
            if (signed_sum != 0) fail("(viii) n=" + std::to_string(n) + " mask=" + std::to_string(mask));
        }
    }
    return bad;
}

} // namespace qsz::testing
