#pragma once

// Exact rational scalar type and the elementary kernels <x>, V, v.
// Every quantity in this library is an arbitrary-precision rational in
// canonical form (gcd(|num|,den)=1, den>=1); nothing here rounds.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lilcert {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

/// Floor of a rational as an integer.
inline Int floor_int(const Rational& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

/// Fractional part <x> = x - [x], in [0,1).
inline Rational frac(const Rational& x) {
    Rational f = x - Rational(floor_int(x));
    f.canonicalize();
    return f;
}

/// Covariance kernel V(x,xi) = min(x,xi) - x*xi on [0,1)^2.
inline Rational vee(const Rational& x, const Rational& xi) {
    if (x < 0 || x >= 1 || xi < 0 || xi >= 1)
        throw std::invalid_argument("vee: arguments must lie in [0,1)");
    const Rational& m = (x <= xi) ? x : xi;
    return m - x * xi;
}

/// v(x) = <x>(1-<x>), the diagonal V(<x>,<x>).
inline Rational small_v(const Rational& x) {
    Rational f = frac(x);
    return f * (1 - f);
}

/// True iff the stored representation is canonical (lowest terms, den>0).
inline bool is_canonical(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    return mpz_cmp(c.get_num_mpz_t(), x.get_num_mpz_t()) == 0 &&
           mpz_cmp(c.get_den_mpz_t(), x.get_den_mpz_t()) == 0;
}

namespace detail {

inline bool valid_integer_token(std::string_view s) {
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    if (s.empty()) return false;
    if (negative && s == "0") return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    if (s.size() > 1 && s.front() == '0') return false;  // no leading zeros
    return true;
}

}  // namespace detail

/// Parses the interchange form "num/den" (or integer shorthand "3").
/// Only canonical text is accepted: lowest terms, positive denominator,
/// no leading zeros, no whitespace.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&](const char* why) {
        throw std::invalid_argument("parse_rational: " + std::string(why) +
                                    " in \"" + std::string(text) + "\"");
    };
    auto slash = text.find('/');
    std::string_view num_s = text.substr(0, slash);
    if (!detail::valid_integer_token(num_s)) fail("bad numerator");
    Int num(std::string(num_s), 10);
    Int den(1);
    if (slash != std::string_view::npos) {
        std::string_view den_s = text.substr(slash + 1);
        if (!detail::valid_integer_token(den_s) || den_s.front() == '-')
            fail("bad denominator");
        den = Int(std::string(den_s), 10);
        if (den == 0) fail("zero denominator");
        Int g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (g != 1) fail("not in lowest terms");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Canonical text form: "num/den", or just "num" when den = 1.
inline std::string to_string(const Rational& x) {
    std::string s = x.get_num().get_str();
    if (x.get_den() != 1) s += "/" + x.get_den().get_str();
    return s;
}

}  // namespace lilcert
