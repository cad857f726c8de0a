#pragma once

// Closed-form Sigma^2_{p/q} values for the parameter classes with known
// formulas, the type-k candidate machinery, and the table of constants
// used as desk-scale cross-checks.

#include <lilcert/rational.hpp>
#include <lilcert/series.hpp>

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lilcert {

enum class SigmaClass { OddOdd, LargeRatioEven, QOneEvenP, Irrational, Unknown };

struct SigmaClassification {
    SigmaClass cls = SigmaClass::Unknown;
    std::optional<Rational> sigma_sq;
    std::optional<long> type_index;
    std::optional<Rational> witness;  // maximizer a in (0, 1/2]
};

/// Sigma^2 = (pq+1)/(4(pq-1)) when p and q are both odd.
inline Rational sigma_sq_odd_odd(const RatioPair& pp) {
    if (pp.p % 2 == 0 || pp.q % 2 == 0)
        throw std::invalid_argument("sigma_sq_odd_odd: p and q must both be odd");
    long pq = pp.pq();
    return make_rational(pq + 1, 4 * (pq - 1));
}

/// Least n >= 1 with q^n = +-1 (mod m); returns 1 for m in {1, 2}.
inline long order_pm1(long q, long m) {
    if (m < 1) throw std::invalid_argument("order_pm1: m must be >= 1");
    if (std::gcd(q, m) != 1) throw std::invalid_argument("order_pm1: gcd(q,m) must be 1");
    if (m <= 2) return 1;
    Int acc = 1;
    for (long n = 1;; ++n) {
        acc = (acc * q) % m;
        if (acc == 1 || acc == m - 1) return n;
    }
}

namespace detail {

inline bool large_ratio_applies(const RatioPair& pp) {
    // p odd, q even, p/q >= 9/4; or p even, q odd, p/q >= 4.
    if (pp.p % 2 != 0 && pp.q % 2 == 0) return 4 * pp.p >= 9 * pp.q;
    if (pp.p % 2 == 0 && pp.q % 2 != 0) return pp.p >= 4 * pp.q;
    return false;
}

}  // namespace detail

/// Square of the large-ratio closed form: with a = (p-q-1)/(2(p-q)) and
/// I the order of q mod (p-q) up to sign,
///   ((pq)^I+1)/((pq)^I-1) v(a) + 2(pq)^I/((pq)^I-1) sum_{m=1}^{I-1} v(q^m a)/(pq)^m.
inline Rational sigma_sq_large(const RatioPair& pp) {
    if (!detail::large_ratio_applies(pp))
        throw std::invalid_argument("sigma_sq_large: ratio below the large-ratio threshold");
    const long order = order_pm1(pp.q, pp.p - pp.q);
    const Rational a = make_rational(pp.p - pp.q - 1, 2 * (pp.p - pp.q));
    const Int pqI = detail::pow_int(pp.pq(), order);
    Rational s = make_rational(pqI + 1, pqI - 1) * small_v(a);
    Rational geo = 2 * make_rational(pqI, pqI - 1);
    Rational qm = a;
    Rational weight = 1;
    for (long m = 1; m < order; ++m) {
        qm *= pp.q;
        weight /= pp.pq();
        s += geo * weight * small_v(qm);
    }
    return s;
}

/// All candidate maximizers n/(p^k - q^k) in (0, 1/2], in lowest terms.
inline std::vector<Rational> candidate_points(const RatioPair& pp, long k) {
    if (k < 1) throw std::invalid_argument("candidate_points: k must be >= 1");
    Int den = detail::pow_int(pp.p, k) - detail::pow_int(pp.q, k);
    std::vector<Rational> out;
    std::set<Rational> seen;
    for (Int n = 1; 2 * n <= den; ++n) {
        Rational cand = make_rational(n, den);
        if (seen.insert(cand).second) out.push_back(cand);
    }
    return out;
}

struct KnownConstant {
    long p, q;
    long type_index;
    Rational witness;
    std::optional<Rational> sigma_sq;
};

/// The table of known type-k parameters and (where displayed) their
/// exact Sigma^2 values.
inline const std::vector<KnownConstant>& known_constants() {
    static const std::vector<KnownConstant> table = [] {
        auto r = [](const char* s) { return parse_rational(s); };
        std::vector<KnownConstant> t;
        t.push_back({13, 6, 1, r("3/7"), r("948/3773")});
        t.push_back({4, 3, 2, r("3/7"), std::nullopt});
        t.push_back({8, 3, 2, r("24/55"), std::nullopt});
        t.push_back({10, 3, 2, r("40/91"), std::nullopt});
        t.push_back({12, 5, 2, r("55/119"), std::nullopt});
        t.push_back({17, 8, 2, r("101/225"), std::nullopt});
        t.push_back({19, 10, 3, r("2879/5859"), std::nullopt});
        t.push_back({12, 7, 4, r("8717/18335"), std::nullopt});
        t.push_back({8, 5, 5, r("13690/29643"), std::nullopt});
        t.push_back({2, 1, 2, r("1/3"), r("14/27")});
        t.push_back({3, 2, 6, r("277/665"),
                     r("1222685807050467558645782547163492/"
                       "4561296506512477081905890170847375")});
        return t;
    }();
    return table;
}

inline std::optional<KnownConstant> lookup_known(long p, long q) {
    for (const auto& k : known_constants())
        if (k.p == p && k.q == q) return k;
    return std::nullopt;
}

/// Classifies (p, q) by which closed form (if any) applies.
inline SigmaClassification classify(const RatioPair& pp) {
    SigmaClassification out;
    if (pp.p % 2 != 0 && pp.q % 2 != 0) {
        out.cls = SigmaClass::OddOdd;
        out.sigma_sq = sigma_sq_odd_odd(pp);
        out.witness = make_rational(1, 2);
        return out;
    }
    if (detail::large_ratio_applies(pp)) {
        out.cls = (pp.q == 1) ? SigmaClass::QOneEvenP : SigmaClass::LargeRatioEven;
        out.sigma_sq = sigma_sq_large(pp);
        out.type_index = 1;
        out.witness = make_rational(pp.p - pp.q - 1, 2 * (pp.p - pp.q));
        return out;
    }
    if (auto k = lookup_known(pp.p, pp.q)) {
        out.type_index = k->type_index;
        out.witness = k->witness;
        out.sigma_sq = k->sigma_sq;  // may be absent; class stays Unknown
    }
    return out;
}

}  // namespace lilcert
