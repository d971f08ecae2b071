#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cwe/error.hpp"
#include "cwe/wide.hpp"

namespace cwe {

/// Exact element of Z[zeta_p], stored in the basis {1, zeta, ..., zeta^{p-2}}.
/// zeta^{p-1} is eliminated with 1 + zeta + ... + zeta^{p-1} = 0, which makes
/// the representation canonical.
class CyclotomicInt {
public:
    explicit CyclotomicInt(std::uint32_t p) : p_(p), c_(p - 1, 0) {}

    static CyclotomicInt integer(std::uint32_t p, std::int64_t n) {
        CyclotomicInt r(p);
        r.c_[0] = n;
        return r;
    }

    static CyclotomicInt zeta_power(std::uint32_t p, std::int64_t k) {
        std::vector<std::int64_t> counts(p, 0);
        counts[static_cast<std::size_t>(mod_floor(k, p))] = 1;
        return from_exponent_counts(p, counts);
    }

    /// sum_j counts[j] zeta^j for a length-p vector of (possibly negative) weights.
    static CyclotomicInt from_exponent_counts(std::uint32_t p, std::span<const std::int64_t> counts) {
        CyclotomicInt r(p);
        const std::int64_t top = counts[p - 1];
        for (std::uint32_t i = 0; i + 1 < p; ++i) r.c_[i] = counts[i] - top;
        return r;
    }

    std::uint32_t prime() const { return p_; }
    std::span<const std::int64_t> coefficients() const { return c_; }

    std::optional<std::int64_t> as_integer() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return std::nullopt;
        return c_[0];
    }
    bool is_integer() const { return as_integer().has_value(); }

    /// Image under the automorphism zeta -> zeta^y, gcd(y, p) = 1.
    CyclotomicInt galois(std::int64_t y) const {
        std::vector<std::int64_t> counts(p_, 0);
        for (std::uint32_t i = 0; i + 1 < p_; ++i)
            counts[static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(i) * y, p_))] += c_[i];
        return from_exponent_counts(p_, counts);
    }

    /// Image under zeta -> exp(2 pi i / p).
    std::complex<long double> embed() const {
        std::complex<long double> z = 0;
        for (std::uint32_t i = 0; i + 1 < p_; ++i) {
            const long double angle = 2 * std::numbers::pi_v<long double> * i / p_;
            z += static_cast<long double>(c_[i]) * std::complex<long double>(std::cos(angle), std::sin(angle));
        }
        return z;
    }

    CyclotomicInt operator-() const {
        CyclotomicInt r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b) {
        check_same(a, b);
        CyclotomicInt r(a);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }

    friend CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b) { return a + (-b); }

    friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
        check_same(a, b);
        const std::uint32_t p = a.p_;
        std::vector<std::int64_t> full(p, 0);
        for (std::uint32_t i = 0; i + 1 < p; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::uint32_t j = 0; j + 1 < p; ++j) full[(i + j) % p] += a.c_[i] * b.c_[j];
        }
        return from_exponent_counts(p, full);
    }

    friend CyclotomicInt operator*(const CyclotomicInt& a, std::int64_t k) {
        CyclotomicInt r(a);
        for (auto& v : r.c_) v *= k;
        return r;
    }
    friend CyclotomicInt operator*(std::int64_t k, const CyclotomicInt& a) { return a * k; }

    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    std::string to_string() const {
        std::string s;
        for (std::uint32_t i = 0; i + 1 < p_; ++i) {
            if (c_[i] == 0) continue;
            const std::int64_t v = c_[i];
            s += v < 0 ? (s.empty() ? "-" : " - ") : (s.empty() ? "" : " + ");
            const std::int64_t a = v < 0 ? -v : v;
            if (i == 0) {
                s += std::to_string(a);
                continue;
            }
            if (a != 1) s += std::to_string(a) + "*";
            s += "z^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    static void check_same(const CyclotomicInt& a, const CyclotomicInt& b) {
        if (a.p_ != b.p_)
            throw Error(ErrorCode::MixedPrimes,
                        "cannot combine zeta_" + std::to_string(a.p_) + " with zeta_" + std::to_string(b.p_));
    }

    std::uint32_t p_;
    std::vector<std::int64_t> c_;
};

/// sign * (sqrt(-1))^t * p^{e/2} in normal form: t in {0, 1}, with
/// (sqrt(-1))^2 folded into the sign.
struct GaussTypeValue {
    int sign = 1;
    bool imaginary = false;
    unsigned half_exp = 0;

    /// Normalizes sign * i^quarter_turns * p^{half_exp/2}.
    static GaussTypeValue make(int sign, std::int64_t quarter_turns, unsigned half_exp) {
        const auto t = mod_floor(quarter_turns, 4);
        GaussTypeValue v;
        v.sign = (t >= 2) ? -sign : sign;
        v.imaginary = (t % 2) == 1;
        v.half_exp = half_exp;
        return v;
    }

    static GaussTypeValue real(int sign, unsigned half_exp) { return make(sign, 0, half_exp); }

    GaussTypeValue operator-() const { return {-sign, imaginary, half_exp}; }

    friend GaussTypeValue operator*(const GaussTypeValue& a, const GaussTypeValue& b) {
        return make(a.sign * b.sign, int{a.imaginary} + int{b.imaginary}, a.half_exp + b.half_exp);
    }

    /// The square is the rational integer (-1)^t p^e.
    wide square(std::uint32_t p) const { return (imaginary ? -1 : 1) * ipow(p, half_exp); }

    /// Ascending by (half_exp, imaginary, sign): the serialization order.
    friend auto operator<=>(const GaussTypeValue& a, const GaussTypeValue& b) {
        if (auto c = a.half_exp <=> b.half_exp; c != 0) return c;
        if (auto c = a.imaginary <=> b.imaginary; c != 0) return c;
        return a.sign <=> b.sign;
    }
    friend bool operator==(const GaussTypeValue&, const GaussTypeValue&) = default;

    std::string to_string(std::uint32_t p) const {
        std::string s = sign < 0 ? "-" : "+";
        if (imaginary) s += "i*";
        if (half_exp % 2 == 0)
            s += cwe::to_string(ipow(p, half_exp / 2));
        else
            s += std::to_string(p) + "^(" + std::to_string(half_exp) + "/2)";
        return s;
    }
};

} // namespace cwe
