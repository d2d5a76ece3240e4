#include "qsz/halfplane.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

using namespace qsz;

namespace {

// adaptive Simpson oracle for the per-cell closed forms
template <class F>
auto simpson(F&& f, double a, double b) -> decltype(f(0.0)) {
    return (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2) + f(b));
}
template <class F>
auto adaptive(F&& f, double a, double b, int depth) -> decltype(f(0.0)) {
    auto whole = simpson(f, a, b);
    auto left = simpson(f, a, (a + b) / 2);
    auto right = simpson(f, (a + b) / 2, b);
    if (depth <= 0 || std::abs(left + right - whole) < 1e-14) return left + right;
    return adaptive(f, a, (a + b) / 2, depth - 1) + adaptive(f, (a + b) / 2, b, depth - 1);
}

} // namespace

TEST_CASE("Lebesgue case matches the arctan closed form") {
    HerglotzMap h(RieszMeasure{Gamma(0, 1)}, 6);
    double T = h.window();
    CHECK(T == 4096);
    double re = h.re_f_prime(Complex(0, 1));
    CHECK(re == doctest::Approx(2 * std::atan(T) / M_PI).epsilon(1e-12));
    CHECK(std::abs(re - 1.0) < 1e-3);
    // f' agrees with the arctan route on its real part
    CHECK(h.f_prime(Complex(0, 1)).real() == doctest::Approx(re).epsilon(1e-12));
}

TEST_CASE("Lebesgue real part is translation invariant up to the tail") {
    HerglotzMap h(RieszMeasure{Gamma(0, 1)}, 6);
    double base = h.re_f_prime(Complex(0, 1));
    for (double x : {-2.0, -1.0, 1.0, 2.0}) {
        double v = h.re_f_prime(Complex(x, 1));
        CHECK(std::abs(v - base) < 1e-3);
    }
}

TEST_CASE("Lebesgue f'' telescopes to the exact window value") {
    HerglotzMap h(RieszMeasure{Gamma(0, 1)}, 6);
    double T = h.window();
    Complex f2 = h.f_second(Complex(0, 1));
    CHECK(std::abs(f2) == doctest::Approx(2 * T / (M_PI * (T * T + 1))).epsilon(1e-10));
    CHECK(std::abs(f2) <= 2 / (M_PI * T) + 1e-9);
    // finite imaginary structure at the symmetric point
    CHECK(std::isfinite(f2.imag()));
}

TEST_CASE("density scaling is linear") {
    HerglotzMap h1(RieszMeasure{Gamma(1, 4)}, 3);
    HerglotzMap h2(RieszMeasure{Gamma(1, 4)}, 3, 2.0);
    Complex z(0.3, 0.7);
    CHECK(std::abs(h2.f_second(z) - 2.0 * h1.f_second(z)) < 1e-15);
    CHECK(h2.re_f_prime(z) == doctest::Approx(2 * h1.re_f_prime(z)).epsilon(1e-15));
}

TEST_CASE("closed-form cell integrals match adaptive quadrature") {
    std::mt19937_64 rng(4242);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
    };
    for (int trial = 0; trial < 100; ++trial) {
        double t0 = uni(-8, 8), len = uni(0.01, 0.5);
        double t1 = t0 + len;
        Complex z(uni(-2, 2), uni(0.3, 2));
        double x = z.real(), y = z.imag();

        Complex lg = (Complex(t1, 0) - z) * std::log(Complex(t1, 0) - z) - t1 -
                     ((Complex(t0, 0) - z) * std::log(Complex(t0, 0) - z) - t0);
        Complex lg_q = adaptive([&](double t) { return std::log(Complex(t, 0) - z); }, t0, t1, 24);
        CHECK(std::abs(lg - lg_q) <= 1e-10 * std::max(1.0, std::abs(lg)));

        Complex inv = 1.0 / (Complex(t0, 0) - z) - 1.0 / (Complex(t1, 0) - z);
        Complex inv_q =
            adaptive([&](double t) { return 1.0 / ((Complex(t, 0) - z) * (Complex(t, 0) - z)); },
                     t0, t1, 24);
        CHECK(std::abs(inv - inv_q) <= 1e-10 * std::max(1.0, std::abs(inv)));

        double at = (std::atan((t1 - x) / y) - std::atan((t0 - x) / y)) / y;
        double at_q =
            adaptive([&](double t) { return 1.0 / ((t - x) * (t - x) + y * y); }, t0, t1, 24);
        CHECK(std::abs(at - at_q) <= 1e-10 * std::max(1.0, std::abs(at)));
    }
}

TEST_CASE("positivity of Re f' across the audit grid") {
    for (Gamma g : {Gamma(0, 1), Gamma(1, 10), Gamma(1, 4), Gamma(1, 2)}) {
        HerglotzMap h(RieszMeasure{g}, 3);
        for (double x = -2; x <= 2; x += 0.5)
            for (double y : {1.0 / 64, 0.25, 1.0, 4.0}) CHECK(h.re_f_prime(Complex(x, y)) > 0);
    }
}

TEST_CASE("kernel ratio: small for Lebesgue, monotone in gamma at z = i") {
    HerglotzMap lebesgue(RieszMeasure{Gamma(0, 1)}, 6);
    auto kr = lebesgue.kernel_ratio(Complex(0, 1));
    CHECK(kr.ratio <= 1e-3);
    CHECK(kr.ratio >= 0);
    CHECK(kr.numerator_abs <= kr.tail_bound); // the whole numerator is tail here

    double prev = kr.ratio;
    for (Gamma g : {Gamma(1, 10), Gamma(1, 4), Gamma(1, 2)}) {
        HerglotzMap h(RieszMeasure{g}, 4);
        double r = h.kernel_ratio(Complex(0, 1)).ratio;
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("kernel ratio stays below 1 on the grid for gamma <= 1/2") {
    for (Gamma g : {Gamma(1, 10), Gamma(1, 2)}) {
        HerglotzMap h(RieszMeasure{g}, 3);
        for (double x = -2; x <= 2; x += 0.25)
            for (double y : {1.0 / 64, 1.0 / 16, 0.25, 1.0, 4.0})
                CHECK(h.kernel_ratio(Complex(x, y)).ratio < 1);
    }
}

TEST_CASE("reduced ratio: the shared-cell identity and the small-gamma sweep") {
    HerglotzMap h(RieszMeasure{Gamma(1, 10)}, 3);
    double worst = 0;
    for (double x = -2; x <= 2; x += 0.125)
        for (double y : {1.0 / 64, 1.0 / 16, 0.25, 1.0, 4.0}) {
            Complex z(x, y);
            double red = h.reduced_ratio(z);
            worst = std::max(worst, red);
            auto kr = h.kernel_ratio(z);
            CHECK(red == doctest::Approx(2 * kr.ratio).epsilon(1e-12));
            // the identity against the independently assembled routes
            double direct = 2 * y * std::abs(h.f_second(z)) / h.re_f_prime(z);
            CHECK(red == doctest::Approx(direct).epsilon(1e-12));
        }
    CHECK(worst < 1);
}

TEST_CASE("reduced ratio shrinks with gamma on a matched grid") {
    HerglotzMap small(RieszMeasure{Gamma(1, 10)}, 3);
    HerglotzMap large(RieszMeasure{Gamma(1, 2)}, 3);
    double worst_small = 0, worst_large = 0;
    for (double x = -2; x <= 2; x += 0.25)
        for (double y : {1.0 / 64, 0.25, 1.0}) {
            worst_small = std::max(worst_small, small.reduced_ratio(Complex(x, y)));
            worst_large = std::max(worst_large, large.reduced_ratio(Complex(x, y)));
        }
    CHECK(worst_small < worst_large);
}

TEST_CASE("tail-bound soundness under window doubling") {
    for (Gamma g : {Gamma(0, 1), Gamma(1, 2)}) {
        HerglotzMap coarse(RieszMeasure{g}, 2);
        HerglotzMap fine(RieszMeasure{g}, 3);
        Complex z(0, 1);
        CHECK(std::abs(fine.f_second(z) - coarse.f_second(z)) <=
              coarse.tail_bound_kernel(z) / M_PI);
        CHECK(std::abs(fine.f_prime(z) - coarse.f_prime(z)) <= coarse.tail_bound_f_prime(z));
    }
}

TEST_CASE("extension basics") {
    HerglotzMap h(RieszMeasure{Gamma(1, 10)}, 3);
    CHECK(h.extend_F(Complex(0, 1)) == Complex(0, 1)); // F(i) = i exactly

    // continuity across the real axis
    for (double x = -2; x <= 2; x += 0.5) {
        Complex above = h.extend_F(Complex(x, 1e-3));
        Complex below = h.extend_F(Complex(x, -1e-3));
        CHECK(std::abs(above - below) < 1e-2 * (1 + std::abs(x)));
    }
}

TEST_CASE("Wirtinger derivatives of the reflection") {
    HerglotzMap h(RieszMeasure{Gamma(1, 4)}, 3);
    Complex z(0, -0.25);
    double step = 1e-5 * std::max(1.0, std::abs(z));
    Complex fx = (h.extend_F(z + step) - h.extend_F(z - step)) / (2 * step);
    Complex fy = (h.extend_F(z + Complex(0, step)) - h.extend_F(z - Complex(0, step))) / (2 * step);
    Complex Fz = (fx - Complex(0, 1) * fy) / 2.0;
    Complex Fzb = (fx + Complex(0, 1) * fy) / 2.0;
    Complex zb = std::conj(z);
    Complex expect_Fzb = (z - zb) * h.f_second(zb);
    Complex expect_Fz = h.f_prime(zb);
    CHECK(std::abs(Fzb - expect_Fzb) <= 1e-4 * std::abs(expect_Fzb));
    CHECK(std::abs(Fz - expect_Fz) <= 1e-4 * std::abs(expect_Fz));
}

TEST_CASE("boundary trace against the exact measure") {
    HerglotzMap leb(RieszMeasure{Gamma(0, 1)}, 3);
    auto r1 = leb.trace_consistency(QuadicRational(0), QuadicRational(1, 0));
    CHECK(r1.residual < 1e-2);
    CHECK(r1.mu == 1);

    HerglotzMap h(RieszMeasure{Gamma(1, 2)}, 3);
    auto r2 = h.trace_consistency(QuadicRational(0), QuadicRational(1, 1));
    CHECK(r2.mu == BigRat(1, 4));
    CHECK(r2.residual < 1e-2);

    // residual subadditivity across a split point
    auto rac = h.trace_consistency(QuadicRational(0), QuadicRational(2, 1));
    auto rab = h.trace_consistency(QuadicRational(0), QuadicRational(1, 1));
    auto rbc = h.trace_consistency(QuadicRational(1, 1), QuadicRational(2, 1));
    CHECK(rac.residual <= rab.residual + rbc.residual + 1e-12);

    CHECK_THROWS_AS(h.trace_consistency(QuadicRational(1, 0), QuadicRational(0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(h.trace_consistency(QuadicRational(0), QuadicRational(100, 0)),
                    std::invalid_argument);
}

TEST_CASE("boundary projection stays quasisymmetric for small gamma") {
    HerglotzMap h(RieszMeasure{Gamma(1, 10)}, 2);
    double y = std::pow(4.0, -4);
    std::mt19937_64 rng(11);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        double x = -2 + 4 * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
        double step = std::pow(4.0, -static_cast<double>(rng() % 5));
        double rx = h.extend_F(Complex(x, y)).real();
        double ra = h.extend_F(Complex(x - step, y)).real();
        double rb = h.extend_F(Complex(x + step, y)).real();
        double num = std::abs(rx - ra), den = std::abs(rx - rb);
        if (den > 0) worst = std::max(worst, num / den);
    }
    CHECK(worst < 3);
}

TEST_CASE("upper half-plane guards") {
    HerglotzMap h(RieszMeasure{Gamma(1, 4)}, 2);
    CHECK_THROWS_AS(h.f_prime(Complex(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(h.f_second(Complex(0, -1)), std::invalid_argument);
    CHECK_THROWS_AS(h.kernel_ratio(Complex(1, -2)), std::invalid_argument);
    CHECK_THROWS_AS(HerglotzMap(RieszMeasure{Gamma(1, 2)}, 6), std::invalid_argument);
    CHECK_THROWS_AS(HerglotzMap(RieszMeasure{Gamma(1, 2)}, 0), std::invalid_argument);
    CHECK_NOTHROW(HerglotzMap(RieszMeasure{Gamma(0, 1)}, 6));
}

TEST_CASE("Lipschitz Wirtinger check") {
    auto rep = lipschitz_delta_check(BigRat(2), {BigRat(2), BigRat(-2), BigRat(0)});
    CHECK(rep.re_fz == BigRat(5, 2));
    CHECK(rep.rows[0].fzbar_sq == BigRat(13, 4));
    CHECK(rep.rows[0].ratio == doctest::Approx(std::sqrt(13.0) / 5).epsilon(1e-15));
    CHECK(rep.rows[2].fzbar_sq == BigRat(9, 4));
    CHECK(rep.ok);

    auto conformal = lipschitz_delta_check(BigRat(1), {BigRat(0)});
    CHECK(conformal.rows[0].fzbar_sq == 0);
    CHECK(conformal.rows[0].ratio == 0);

    for (BigRat L : {BigRat(1, 2), BigRat(1), BigRat(2), BigRat(5), BigRat(10)}) {
        auto r = lipschitz_delta_check(L, {L, -L});
        CHECK(r.k_sq < 1);
        CHECK(r.ok);
    }
    CHECK_THROWS_AS(lipschitz_delta_check(BigRat(1), {BigRat(2)}), std::invalid_argument);
    CHECK_THROWS_AS(lipschitz_delta_check(BigRat(0), {}), std::invalid_argument);
}
