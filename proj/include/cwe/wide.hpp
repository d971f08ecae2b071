#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "cwe/error.hpp"

namespace cwe {

/// Signed 128-bit integer used for frequencies and closed-form counts.
using wide = __int128;

inline std::string to_string(wide v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::string out;
    while (u != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) out.push_back('-');
    return {out.rbegin(), out.rend()};
}

constexpr wide ipow(wide base, unsigned exp) {
    wide r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

constexpr std::int64_t ipow64(std::int64_t base, unsigned exp) {
    std::int64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

/// 2-adic valuation; nu2(0) is treated as +infinity.
constexpr unsigned nu2(std::uint64_t v) {
    if (v == 0) return std::numeric_limits<unsigned>::max();
    unsigned k = 0;
    while ((v & 1u) == 0) {
        v >>= 1;
        ++k;
    }
    return k;
}

constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline wide exact_div(wide num, wide den, ErrorCode code, const char* what) {
    if (den == 0 || num % den != 0) throw Error(code, what);
    return num / den;
}

} // namespace cwe
