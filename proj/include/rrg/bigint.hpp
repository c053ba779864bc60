#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "rrg/error.hpp"

namespace rrg {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt factorial(long long m) {
    BigInt r = 1;
    for (long long i = 2; i <= m; ++i) r *= i;
    return r;
}

inline BigInt binomial(long long m, long long k) {
    if (k < 0 || k > m) return 0;
    k = std::min(k, m - k);
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (m - k + i);
        r /= i;
    }
    return r;
}

// (m-1)!! for even m >= 0: number of perfect matchings on m points.
inline BigInt double_factorial_matchings(long long m) {
    if (m < 0 || m % 2 != 0) throw input_error("double factorial: m must be even");
    BigInt r = 1;
    for (long long i = m - 1; i > 1; i -= 2) r *= i;
    return r;
}

// Number of pairings of dn elements: (dn-1)!! = (dn)! / ((dn/2)! 2^{dn/2}).
inline BigInt count_pairings(int n, int d) {
    long long m = static_cast<long long>(n) * d;
    if (m < 0 || m % 2 != 0) throw input_error("count_pairings: dn must be even");
    return double_factorial_matchings(m);
}

inline double to_double(const BigRat& r) {
    return r.convert_to<double>();
}

} // namespace rrg
