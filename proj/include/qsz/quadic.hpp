#pragma once

#include "qsz/rational.hpp"

#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

namespace qsz {

/// Sign pattern of the Rademacher-type step functions by base-4 digit:
/// digits 0 and 3 map to 0, digit 1 to +1, digit 2 to -1.
inline constexpr int kDigitSign[4] = {0, 1, -1, 0};

/// Exact 4-adic rational num / 4^level, level >= 0. Kept unreduced;
/// comparisons normalize to a common level lazily.
struct QuadicRational {
    BigInt num = 0;
    int level = 0;

    QuadicRational() = default;
    QuadicRational(BigInt n, int lvl) : num(std::move(n)), level(lvl) {
        if (lvl < 0) throw std::invalid_argument("QuadicRational: negative level");
    }
    QuadicRational(long long n) : num(n), level(0) {} // NOLINT: implicit for integers

    BigRat value() const { return BigRat(num, pow4(level)); }
    double to_double() const { return qsz::to_double(value()); }

    /// Numerator rescaled to a (coarser-or-equal) target level.
    BigInt num_at_level(int lvl) const {
        if (lvl < level) throw std::invalid_argument("num_at_level: target finer than value");
        return num * pow4(lvl - level);
    }

    /// Drop trailing zero digits so that level is minimal.
    QuadicRational normalized() const {
        QuadicRational r = *this;
        while (r.level > 0 && r.num % 4 == 0) {
            r.num /= 4;
            --r.level;
        }
        return r;
    }

    /// Exact conversion of an IEEE double (every finite double is 4-adic).
    static QuadicRational from_double(double x);
    /// From an exact fraction; empty when the denominator is not a power of two.
    static std::optional<QuadicRational> from_fraction(const BigRat& r);

    std::string str() const { return rat_str(value()); }

    friend QuadicRational operator+(const QuadicRational& a, const QuadicRational& b) {
        int lvl = std::max(a.level, b.level);
        return {a.num_at_level(lvl) + b.num_at_level(lvl), lvl};
    }
    friend QuadicRational operator-(const QuadicRational& a, const QuadicRational& b) {
        int lvl = std::max(a.level, b.level);
        return {a.num_at_level(lvl) - b.num_at_level(lvl), lvl};
    }
    QuadicRational operator-() const { return {-num, level}; }

    friend std::strong_ordering operator<=>(const QuadicRational& a, const QuadicRational& b) {
        int lvl = std::max(a.level, b.level);
        BigInt x = a.num_at_level(lvl), y = b.num_at_level(lvl);
        return x < y ? std::strong_ordering::less
             : x > y ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }
    friend bool operator==(const QuadicRational& a, const QuadicRational& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }
};

/// Half-open cell I_{level,index} = [index/4^level, (index+1)/4^level).
struct QuadicInterval {
    int level = 0;
    BigInt index = 0;

    QuadicInterval() = default;
    QuadicInterval(int lvl, BigInt j) : level(lvl), index(std::move(j)) {
        if (lvl < 0) throw std::invalid_argument("QuadicInterval: negative level");
    }

    QuadicRational left() const { return {index, level}; }
    QuadicRational right() const { return {index + 1, level}; }
    BigRat length() const { return BigRat(1, pow4(level)); }

    std::array<QuadicInterval, 4> split() const {
        BigInt base = index * 4;
        return {QuadicInterval{level + 1, base}, QuadicInterval{level + 1, base + 1},
                QuadicInterval{level + 1, base + 2}, QuadicInterval{level + 1, base + 3}};
    }

    /// Base-4 digit of the index at grid level r (1 <= r <= level), i.e. the
    /// residue mod 4 of floor(4^r x) for x in the cell. Floor division keeps
    /// this correct on the negative axis.
    int digit(int r) const {
        BigInt d = floor_mod(floor_div(index, pow4(level - r)), 4);
        return static_cast<int>(d);
    }

    std::string str() const {
        return "[" + left().str() + "," + right().str() + ")";
    }
};

/// gamma = p/q with 0 <= gamma < 1 (gamma = 0 is the Lebesgue control case).
struct Gamma {
    long long p = 0;
    long long q = 1;

    Gamma() = default;
    Gamma(long long p_, long long q_) : p(p_), q(q_) {
        if (q <= 0 || p < 0 || p >= q) throw std::invalid_argument("Gamma: need 0 <= p/q < 1");
    }
    BigRat value() const { return BigRat(p, q); }
    bool is_zero() const { return p == 0; }
    std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
};

/// rho_n(x): 0 on cells with index = 0,3 mod 4, +1 on 1 mod 4, -1 on 2 mod 4.
/// Total on the 4-adic rationals; cells are half-open so grid points take the
/// value of the cell to their right.
int rho(int n, const QuadicRational& x);

/// rho_n on a whole cell of level >= n (where it is constant).
int rho_on_cell(int n, const QuadicInterval& cell);

/// R_n(x) = int_0^x rho_n, exact. 4^{1-n}-periodic with 0 <= R_n <= 4^{-n}.
BigRat antideriv_R(int n, const QuadicRational& x);

/// v_m(x) = prod_{k=1..m} (1 + gamma rho_{2k-1}(x)), exact.
BigRat weight_v(int m, const Gamma& gamma, const QuadicRational& x);

/// v_m^*(x) = max(v_1(x), ..., v_m(x)), exact.
BigRat max_weight(int m, const Gamma& gamma, const QuadicRational& x);

} // namespace qsz
