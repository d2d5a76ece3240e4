#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qsz {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt pow4(int level) {
    BigInt one = 1;
    return one << (2 * level);
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline BigInt floor_mod(const BigInt& a, const BigInt& b) {
    BigInt r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

inline double to_double(const BigRat& r) { return r.convert_to<double>(); }

/// Serialize as "p/q" (or "p" when the denominator is 1).
inline std::string rat_str(const BigRat& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

} // namespace qsz
