#include "qsz/quadic.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace qsz;

TEST_CASE("QuadicRational equality is value equality across levels") {
    CHECK(QuadicRational(2, 2) == QuadicRational(8, 3));  // 2/16 == 8/64
    CHECK(QuadicRational(1, 1) != QuadicRational(1, 2));
    CHECK(QuadicRational(-4, 1) == QuadicRational(-1, 0));
    CHECK(QuadicRational(5, 2).normalized().level == 2);
    CHECK(QuadicRational(8, 3).normalized().num == 2);
    CHECK(QuadicRational(0, 4).normalized().level == 0);
}

TEST_CASE("QuadicRational arithmetic is exact") {
    QuadicRational a(5, 2), b(3, 1); // 5/16, 3/4
    CHECK((a + b).value() == BigRat(17, 16));
    CHECK((b - a).value() == BigRat(7, 16));
    CHECK((-a).value() == BigRat(-5, 16));
    CHECK(a < b);
    CHECK_THROWS_AS(QuadicRational(1, -1), std::invalid_argument);
}

TEST_CASE("QuadicRational::from_double is exact") {
    CHECK(QuadicRational::from_double(0.375).value() == BigRat(3, 8));
    CHECK(QuadicRational::from_double(-2.0).value() == BigRat(-2));
    CHECK(QuadicRational::from_double(0.0).value() == 0);
    double x = 0.1; // not a dyadic "nice" value, still an exact double
    CHECK(QuadicRational::from_double(x).to_double() == x);
    CHECK_THROWS_AS(QuadicRational::from_double(1.0 / 0.0), std::invalid_argument);
}

TEST_CASE("QuadicRational::from_fraction accepts dyadic denominators only") {
    auto half = QuadicRational::from_fraction(BigRat(1, 2));
    REQUIRE(half.has_value());
    CHECK(half->value() == BigRat(1, 2));
    CHECK(!QuadicRational::from_fraction(BigRat(1, 3)).has_value());
    CHECK(QuadicRational::from_fraction(BigRat(-7, 32))->value() == BigRat(-7, 32));
}

TEST_CASE("QuadicInterval split partitions the parent") {
    QuadicInterval I(2, -7);
    auto kids = I.split();
    CHECK(kids[0].left() == I.left());
    CHECK(kids[3].right() == I.right());
    for (int c = 0; c < 3; ++c) CHECK(kids[c].right() == kids[c + 1].left());
    CHECK(I.length() == BigRat(1, 16));
}

TEST_CASE("rho matches the digit rule") {
    CHECK(rho(1, QuadicRational(0)) == 0);
    CHECK(rho(1, QuadicRational(5, 2)) == 1);  // 5/16 in I_{1,1}
    CHECK(rho(2, QuadicRational(6, 2)) == -1); // 6/16 in I_{2,6}
    // defined on all of R via floor division
    CHECK(rho(1, QuadicRational(-1, 1)) == 0);  // I_{1,-1}, -1 = 3 mod 4
    CHECK(rho(1, QuadicRational(-2, 1)) == -1); // I_{1,-2}
    CHECK(rho(1, QuadicRational(-3, 1)) == 1);
    CHECK_THROWS_AS(rho(0, QuadicRational(0)), std::invalid_argument);
}

TEST_CASE("antideriv_R step integration") {
    CHECK(antideriv_R(1, QuadicRational(0)) == 0);
    CHECK(antideriv_R(3, QuadicRational(0)) == 0);
    CHECK(antideriv_R(1, QuadicRational(2, 1)) == BigRat(1, 4)); // R_1(1/2)
    CHECK(antideriv_R(2, QuadicRational(1, 1)) == 0);            // period 1/4
    // interior of the rising piece and the peak
    CHECK(antideriv_R(1, QuadicRational(6, 2)) == BigRat(1, 8));  // R_1(3/8)
    CHECK(antideriv_R(2, QuadicRational(2, 2)) == BigRat(1, 16)); // R_2(1/8), the peak
    CHECK(antideriv_R(1, QuadicRational(3, 1)) == 0);             // R_1(3/4)
    // negative arguments via periodicity
    CHECK(antideriv_R(1, QuadicRational(-2, 1)) == antideriv_R(1, QuadicRational(2, 1)));
}

TEST_CASE("weight_v products") {
    Gamma half(1, 2), zero;
    CHECK(weight_v(1, half, QuadicRational(5, 2)) == BigRat(3, 2));
    CHECK(weight_v(1, zero, QuadicRational(5, 2)) == 1);
    CHECK(weight_v(3, zero, QuadicRational(7, 3)) == 1);
    // v_2 = v_1 (1 + rho_3/2); rho_3(5/16) = sign of digit 4*5 = 20 mod 4 = 0
    CHECK(weight_v(2, half, QuadicRational(5, 2)) ==
          BigRat(3, 2) * (1 + BigRat(1, 2) * rho(3, QuadicRational(5, 2))));
}

TEST_CASE("max_weight pointwise maxima") {
    Gamma half(1, 2), zero;
    for (long long j = 0; j < 64; ++j) {
        QuadicRational x(j, 3);
        CHECK(max_weight(1, half, x) == weight_v(1, half, x));
        CHECK(max_weight(4, zero, x) == 1);
        // v_2 = v_1 (1 + rho_3 / 2) so the max collapses to the positive part
        BigRat expect = weight_v(1, half, x) *
                        (1 + BigRat(1, 2) * std::max(rho(3, x), 0));
        CHECK(max_weight(2, half, x) == expect);
    }
}

TEST_CASE("Gamma validates its range") {
    CHECK_THROWS_AS(Gamma(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(Gamma(-1, 2), std::invalid_argument);
    CHECK_THROWS_AS(Gamma(3, 2), std::invalid_argument);
    CHECK(Gamma(0, 1).is_zero());
}

TEST_CASE("Rademacher property suite at shallow depth") {
    auto failures = qsz::testing::rho_property_failures(3, Gamma(1, 2));
    for (const auto& f : failures) MESSAGE(f);
    CHECK(failures.empty());
}
