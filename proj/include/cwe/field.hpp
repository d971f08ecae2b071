#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cwe/error.hpp"
#include "cwe/wide.hpp"

namespace cwe {

/// Coefficients over F_p, constant term first.
using Polynomial = std::vector<std::uint32_t>;

/// Element of F_{p^m} in discrete-log form: either zero or alpha^i with
/// 0 <= i < p^m - 1.
class FieldElement {
public:
    constexpr FieldElement() = default;

    static constexpr FieldElement zero() { return {}; }
    static constexpr FieldElement from_log(std::uint32_t i) {
        FieldElement e;
        e.rep_ = i;
        return e;
    }

    constexpr bool is_zero() const { return rep_ == kZeroRep; }
    /// Exponent i of alpha^i. Undefined for zero.
    constexpr std::uint32_t log() const { return rep_; }

    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;

private:
    static constexpr std::uint32_t kZeroRep = 0xffffffffu;
    std::uint32_t rep_ = kZeroRep;
};

struct FieldOptions {
    std::uint64_t cap = std::uint64_t{1} << 22;
};

namespace detail {

// Arithmetic in F_p[t]/(f) for monic f of degree m; residues have length m.
class PolyRing {
public:
    PolyRing(std::uint32_t p, const Polynomial& f) : p_(p), f_(f), m_(f.size() - 1) {}

    Polynomial one() const {
        Polynomial r(m_, 0);
        r[0] = 1 % p_;
        return r;
    }

    Polynomial t() const {
        Polynomial r(m_, 0);
        if (m_ == 1)
            r[0] = (p_ - f_[0]) % p_;
        else
            r[1] = 1;
        return r;
    }

    Polynomial mul(const Polynomial& a, const Polynomial& b) const {
        std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < m_; ++j)
                prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
        }
        for (std::size_t i = prod.size(); i-- > m_;) {
            const std::uint64_t c = prod[i];
            if (c == 0) continue;
            for (std::size_t j = 0; j < m_; ++j)
                prod[i - m_ + j] = (prod[i - m_ + j] + (p_ - c) * f_[j]) % p_;
            prod[i] = 0;
        }
        Polynomial r(m_);
        for (std::size_t i = 0; i < m_; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
        return r;
    }

    Polynomial pow(Polynomial base, std::uint64_t e) const {
        Polynomial r = one();
        while (e != 0) {
            if (e & 1u) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

private:
    std::uint32_t p_;
    Polynomial f_;
    std::size_t m_;
};

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace detail

/// True iff f is monic of degree >= 1 and t generates (F_p[t]/(f))^* of order
/// p^deg - 1, which forces f to be irreducible.
inline bool is_primitive_polynomial(std::uint32_t p, const Polynomial& f) {
    if (f.size() < 2 || f.back() != 1) return false;
    for (auto c : f)
        if (c >= p) return false;
    if (f[0] == 0) return false;
    const unsigned m = static_cast<unsigned>(f.size() - 1);
    const auto n = static_cast<std::uint64_t>(ipow64(p, m) - 1);
    const detail::PolyRing ring(p, f);
    const Polynomial one = ring.one();
    if (ring.pow(ring.t(), n) != one) return false;
    for (auto q : detail::prime_factors(n))
        if (ring.pow(ring.t(), n / q) == one) return false;
    return true;
}

/// Lexicographically smallest monic primitive polynomial of degree m, comparing
/// coefficient vectors constant term first.
inline Polynomial smallest_primitive_polynomial(std::uint32_t p, unsigned m) {
    Polynomial f(m + 1, 0);
    f[m] = 1;
    const auto count = static_cast<std::uint64_t>(ipow64(p, m));
    for (std::uint64_t code = 0; code < count; ++code) {
        // code enumerates (c0, ..., c_{m-1}) with c0 as the most significant digit
        std::uint64_t rest = code;
        for (unsigned i = m; i-- > 0;) {
            f[i] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
        }
        if (is_primitive_polynomial(p, f)) return f;
    }
    throw Error(ErrorCode::NotPrimitive, "no primitive polynomial found");
}

class FieldContext;
FieldContext build_field(std::uint32_t p, unsigned m, std::optional<Polynomial> poly_override = std::nullopt,
                         FieldOptions options = {});

/// Immutable table-backed model of F_{p^m}. Elements are addressed either by
/// discrete log (FieldElement) or by their coefficient-vector index
/// sum c_i p^i in the polynomial basis {1, alpha, ..., alpha^{m-1}}.
class FieldContext {
public:
    std::uint32_t p() const { return p_; }
    unsigned m() const { return m_; }
    std::uint64_t order() const { return q_; }
    std::uint32_t group_order() const { return n_; }
    const Polynomial& prim_poly() const { return prim_poly_; }

    FieldElement one() const { return FieldElement::from_log(0); }
    FieldElement alpha() const { return alpha_pow(1); }
    FieldElement alpha_pow(std::int64_t k) const {
        return FieldElement::from_log(static_cast<std::uint32_t>(mod_floor(k, n_)));
    }

    /// All q elements, zero first then alpha^0, alpha^1, ...
    std::vector<FieldElement> elements() const {
        std::vector<FieldElement> out;
        out.reserve(q_);
        out.push_back(FieldElement::zero());
        for (std::uint32_t i = 0; i < n_; ++i) out.push_back(FieldElement::from_log(i));
        return out;
    }

    std::uint32_t index_of(FieldElement x) const { return x.is_zero() ? 0 : antilog_[x.log()]; }
    FieldElement from_index(std::uint32_t idx) const {
        return idx == 0 ? FieldElement::zero() : FieldElement::from_log(log_[idx]);
    }

    Polynomial coefficients(FieldElement x) const {
        Polynomial c(m_);
        std::uint32_t idx = index_of(x);
        for (unsigned i = 0; i < m_; ++i) {
            c[i] = idx % p_;
            idx /= p_;
        }
        return c;
    }

    FieldElement from_coefficients(std::span<const std::uint32_t> c) const {
        std::uint32_t idx = 0;
        for (std::size_t i = c.size(); i-- > 0;) idx = idx * p_ + c[i] % p_;
        return from_index(idx);
    }

    FieldElement from_prime_field(std::int64_t c) const {
        return from_index(static_cast<std::uint32_t>(mod_floor(c, p_)));
    }

    std::optional<std::uint32_t> to_prime_field(FieldElement x) const {
        const auto idx = index_of(x);
        if (idx < p_) return idx;
        return std::nullopt;
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        return from_index(add_index(antilog_[a.log()], antilog_[b.log()]));
    }

    FieldElement neg(FieldElement a) const {
        if (a.is_zero()) return a;
        // -1 = alpha^{n/2}
        return FieldElement::from_log(static_cast<std::uint32_t>((a.log() + n_ / 2) % n_));
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.is_zero() || b.is_zero()) return FieldElement::zero();
        return FieldElement::from_log(static_cast<std::uint32_t>((std::uint64_t{a.log()} + b.log()) % n_));
    }

    /// Multiplicative inverse; the inverse of zero is taken to be zero.
    FieldElement inv(FieldElement a) const {
        if (a.is_zero()) return a;
        return FieldElement::from_log(a.log() == 0 ? 0 : n_ - a.log());
    }

    /// a^k for any integer k; 0^0 = 1 and 0^k = 0 otherwise.
    FieldElement pow(FieldElement a, std::int64_t k) const {
        if (a.is_zero()) return k == 0 ? one() : a;
        const auto e = static_cast<std::int64_t>(mod_floor(k, n_));
        return FieldElement::from_log(static_cast<std::uint32_t>((std::uint64_t{a.log()} * e) % n_));
    }

    std::uint32_t trace(FieldElement x) const { return trace_[index_of(x)]; }

    /// Tr(alpha^k) for 0 <= k < p^m - 1; the table the sweeps run on.
    std::span<const std::uint32_t> trace_of_powers() const { return trace_exp_; }

    int quad_char(FieldElement x) const {
        if (x.is_zero()) return 0;
        return x.log() % 2 == 0 ? 1 : -1;
    }

    /// Monic minimal polynomial of x over F_p, built as the product of
    /// (t - y) over the Frobenius orbit of x.
    Polynomial minimal_polynomial(FieldElement x) const {
        std::vector<FieldElement> orbit;
        FieldElement y = x;
        do {
            orbit.push_back(y);
            y = pow(y, p_);
        } while (y != x);

        std::vector<FieldElement> poly{one()};
        for (auto root : orbit) {
            std::vector<FieldElement> next(poly.size() + 1, FieldElement::zero());
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] = add(next[k + 1], poly[k]);
                next[k] = sub(next[k], mul(root, poly[k]));
            }
            poly = std::move(next);
        }

        Polynomial out;
        out.reserve(poly.size());
        for (auto c : poly) {
            const auto v = to_prime_field(c);
            if (!v) throw Error(ErrorCode::NotRepresentable, "minimal polynomial coefficient outside F_p");
            out.push_back(*v);
        }
        return out;
    }

    std::string descriptor() const {
        std::string s = "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + ") mod [";
        for (std::size_t i = 0; i < prim_poly_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(prim_poly_[i]);
        }
        return s + "]";
    }

private:
    friend FieldContext build_field(std::uint32_t, unsigned, std::optional<Polynomial>, FieldOptions);

    FieldContext() = default;

    std::uint32_t add_index(std::uint32_t u, std::uint32_t v) const {
        std::uint32_t r = 0;
        std::uint32_t place = 1;
        for (unsigned i = 0; i < m_; ++i) {
            const std::uint32_t d = (u % p_ + v % p_) % p_;
            r += d * place;
            u /= p_;
            v /= p_;
            place *= p_;
        }
        return r;
    }

    std::uint32_t p_ = 0;
    unsigned m_ = 0;
    std::uint64_t q_ = 0;
    std::uint32_t n_ = 0;
    Polynomial prim_poly_;
    std::vector<std::uint32_t> antilog_;  // exponent -> coefficient index
    std::vector<std::uint32_t> log_;      // coefficient index -> exponent (index 0 unused)
    std::vector<std::uint32_t> trace_;    // coefficient index -> Tr
    std::vector<std::uint32_t> trace_exp_;  // exponent -> Tr(alpha^k)
};

/// Builds F_{p^m}. Without an override the modulus is the smallest primitive
/// polynomial in the order used by smallest_primitive_polynomial.
inline FieldContext build_field(std::uint32_t p, unsigned m, std::optional<Polynomial> poly_override,
                                FieldOptions options) {
    if (p == 2 || !is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
    if (m < 1) throw Error(ErrorCode::BadExponent, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q > options.cap)
            throw Error(ErrorCode::CapExceeded,
                        std::to_string(p) + "^" + std::to_string(m) + " exceeds cap " + std::to_string(options.cap));
    }

    FieldContext ctx;
    ctx.p_ = p;
    ctx.m_ = m;
    ctx.q_ = q;
    ctx.n_ = static_cast<std::uint32_t>(q - 1);
    if (poly_override) {
        if (poly_override->size() != m + 1 || !is_primitive_polynomial(p, *poly_override))
            throw Error(ErrorCode::NotPrimitive, "override is not a monic primitive polynomial of degree m");
        ctx.prim_poly_ = *poly_override;
    } else {
        ctx.prim_poly_ = smallest_primitive_polynomial(p, m);
    }

    const auto& f = ctx.prim_poly_;
    ctx.antilog_.resize(ctx.n_);
    ctx.log_.assign(q, 0);
    std::vector<std::uint32_t> v(m, 0);
    v[0] = 1;
    for (std::uint32_t i = 0; i < ctx.n_; ++i) {
        std::uint32_t idx = 0;
        for (unsigned k = m; k-- > 0;) idx = idx * p + v[k];
        ctx.antilog_[i] = idx;
        ctx.log_[idx] = i;
        // multiply by alpha: shift up and reduce with the monic modulus
        const std::uint32_t carry = v[m - 1];
        for (unsigned k = m; k-- > 1;) v[k] = v[k - 1];
        v[0] = 0;
        for (unsigned k = 0; k < m; ++k) v[k] = static_cast<std::uint32_t>((v[k] + std::uint64_t{p - carry} * f[k]) % p);
    }

    // Tr is F_p-linear, so tabulate it on the polynomial basis by the defining
    // sum and extend by coordinates.
    std::vector<std::uint32_t> basis_trace(m);
    for (unsigned i = 0; i < m; ++i) {
        FieldElement acc = FieldElement::zero();
        FieldElement y = ctx.alpha_pow(i);
        for (unsigned j = 0; j < m; ++j) {
            acc = ctx.add(acc, y);
            y = ctx.pow(y, p);
        }
        const auto t = ctx.to_prime_field(acc);
        if (!t) throw Error(ErrorCode::NotRepresentable, "trace landed outside F_p");
        basis_trace[i] = *t;
    }
    ctx.trace_.resize(q);
    for (std::uint64_t idx = 0; idx < q; ++idx) {
        std::uint64_t rest = idx;
        std::uint64_t t = 0;
        for (unsigned i = 0; i < m; ++i) {
            t += (rest % p) * basis_trace[i];
            rest /= p;
        }
        ctx.trace_[idx] = static_cast<std::uint32_t>(t % p);
    }
    ctx.trace_exp_.resize(ctx.n_);
    for (std::uint32_t i = 0; i < ctx.n_; ++i) ctx.trace_exp_[i] = ctx.trace_[ctx.antilog_[i]];
    return ctx;
}

} // namespace cwe
