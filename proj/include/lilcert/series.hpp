#pragma once

// Exact evaluation of the limit-variance series sigma^2_{p/q}(x), its
// truncations tau_N^2, the piecewise-quadratic structure on
// breakpoint-free intervals, and the rigorous tail / derivative-tail
// widths used by the certifier.

#include <lilcert/rational.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lilcert {

/// Validated parameter pair (p, q) for theta = p/q.
struct RatioPair {
    long p;
    long q;

    RatioPair(long p_, long q_) : p(p_), q(q_) {
        if (q < 1 || p <= q) throw std::invalid_argument("RatioPair: need p > q >= 1");
        Int g;
        Int pi(p), qi(q);
        mpz_gcd(g.get_mpz_t(), pi.get_mpz_t(), qi.get_mpz_t());
        if (g != 1) throw std::invalid_argument("RatioPair: gcd(p,q) must be 1");
    }

    long pq() const { return p * q; }
};

/// Exact lower/upper enclosure of a real quantity.
struct BoundPair {
    Rational lower;
    Rational upper;

    BoundPair(Rational lo, Rational hi) : lower(std::move(lo)), upper(std::move(hi)) {
        if (lower > upper) throw std::invalid_argument("BoundPair: lower > upper");
    }

    Rational width() const { return upper - lower; }
    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
};

/// Exact coefficients of x |-> A x^2 + B x + C.
struct Quadratic {
    Rational A, B, C;

    Rational eval(const Rational& x) const { return (A * x + B) * x + C; }
    Rational deriv_at(const Rational& x) const { return 2 * A * x + B; }

    bool operator==(const Quadratic& o) const { return A == o.A && B == o.B && C == o.C; }
};

/// Eventual periodicity of the orbit pair (<p^k x>, <q^k x>).
struct CycleInfo {
    long preperiod;  // first index k >= 1 of the periodic part
    long period;
};

namespace detail {

/// State a_k = num(x) p^k mod den(x), b_k = num(x) q^k mod den(x), k >= 1.
struct OrbitIter {
    Int d;
    Int a, b;
    long p, q;

    OrbitIter(const RatioPair& pp, const Rational& x)
        : d(x.get_den()), a(x.get_num() % d), b(x.get_num() % d), p(pp.p), q(pp.q) {}

    void step() {
        a = (a * p) % d;
        b = (b * q) % d;
    }
};

inline Int pow_int(long base, long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return r;
}

}  // namespace detail

/// Minimal (preperiod, period) of the exact orbit state of x under p, q.
inline CycleInfo orbit_cycle(const RatioPair& pp, const Rational& x) {
    if (x < 0 || x >= 1) throw std::invalid_argument("orbit_cycle: x must lie in [0,1)");
    detail::OrbitIter it(pp, x);
    std::map<std::pair<Int, Int>, long> seen;
    for (long k = 1;; ++k) {
        it.step();
        auto state = std::make_pair(it.a, it.b);
        auto [pos, fresh] = seen.emplace(state, k);
        if (!fresh) return CycleInfo{pos->second, k - pos->second};
    }
}

/// Exact sigma^2_{p/q}(x) = V(x,x) + 2 sum_k V(<p^k x>, <q^k x>)/(pq)^k,
/// summed in closed form over one period of the orbit.
inline Rational sigma_sq_exact(const RatioPair& pp, const Rational& x) {
    if (x < 0 || x > 1) throw std::invalid_argument("sigma_sq_exact: x must lie in [0,1]");
    const Rational head = x * (1 - x);  // V(x,x)
    if (x == 1) return head;

    CycleInfo cyc = orbit_cycle(pp, x);
    const Int d = x.get_den();
    const Int d2 = d * d;
    const long pq = pp.pq();

    detail::OrbitIter it(pp, x);
    // V(<p^k x>, <q^k x>) = u_k / d^2 with integer u_k = min(a,b) d - a b.
    auto term_num = [&]() -> Int {
        Int m = std::min(it.a, it.b);
        return Int(m * d - it.a * it.b);
    };

    // Preperiodic part: sum_{k=1}^{pre-1} u_k (pq)^{-k}, as S_pre / (d^2 (pq)^{pre-1}).
    Int s_pre = 0;
    for (long k = 1; k < cyc.preperiod; ++k) {
        it.step();
        s_pre = s_pre * pq + term_num();
    }
    Rational pre_sum = make_rational(s_pre, d2 * detail::pow_int(pq, cyc.preperiod - 1));

    // One period, Horner-accumulated: sum_{k=pre}^{pre+L-1} u_k (pq)^{-k}.
    Int s_per = 0;
    for (long k = 0; k < cyc.period; ++k) {
        it.step();
        s_per = s_per * pq + term_num();
    }
    Rational per_sum =
        make_rational(s_per, d2 * detail::pow_int(pq, cyc.preperiod + cyc.period - 1));

    // Geometric closure: the periodic block repeats with weight (pq)^{-L j}.
    Int pqL = detail::pow_int(pq, cyc.period);
    Rational geo = make_rational(pqL, pqL - 1);

    return head + 2 * (pre_sum + geo * per_sum);
}

/// Rigorous bound on |2 sum_{n>=N} V(.)/(pq)^n|, valid for every x:
/// (pq)^{1-N} / (2(pq-1)), from 0 <= V <= 1/4.
inline Rational tail_width(const RatioPair& pp, long n) {
    if (n < 1) throw std::invalid_argument("tail_width: N must be >= 1");
    const long pq = pp.pq();
    return make_rational(Int(1), 2 * (pq - 1) * detail::pow_int(pq, n - 1));
}

/// Truncation tau_N^2(x) = V(x,x) + 2 sum_{k=1}^N V(<p^k x>,<q^k x>)/(pq)^k.
inline Rational tau_sq(const RatioPair& pp, const Rational& x, long n) {
    if (x < 0 || x > 1) throw std::invalid_argument("tau_sq: x must lie in [0,1]");
    if (n < 1) throw std::invalid_argument("tau_sq: N must be >= 1");
    const Rational head = x * (1 - x);
    if (x == 1) return head;
    const Int d = x.get_den();
    const Int d2 = d * d;
    const long pq = pp.pq();
    detail::OrbitIter it(pp, x);
    Int s = 0;
    for (long k = 1; k <= n; ++k) {
        it.step();
        Int m = std::min(it.a, it.b);
        s = s * pq + m * d - it.a * it.b;
    }
    return head + 2 * make_rational(s, d2 * detail::pow_int(pq, n));
}

/// Enclosure tau_N^2(x) -+ tail of sigma^2(x); lower clamped at 0.
inline BoundPair sigma_sq_truncated(const RatioPair& pp, const Rational& x, long n) {
    Rational t = tau_sq(pp, x, n);
    Rational w = tail_width(pp, n + 1);
    Rational lo = t - w;
    if (lo < 0) lo = 0;
    return BoundPair(lo, t + w);
}

namespace detail {

/// Points m/p^k, m/q^k (k <= n) strictly inside (lo,hi); stops early once
/// more than `cap` distinct points are found (cap = 0 means unbounded).
inline bool collect_breakpoints(const RatioPair& pp, const Rational& lo, const Rational& hi,
                                long n, std::size_t cap, std::set<Rational>& out) {
    for (long base : {pp.p, pp.q}) {
        Int bk = 1;
        for (long k = 1; k <= n; ++k) {
            bk *= base;
            Int m = floor_int(lo * Rational(bk)) + 1;
            for (Rational pt = make_rational(m, bk); pt < hi; pt = make_rational(++m, bk)) {
                if (pt > lo) {
                    out.insert(pt);
                    if (cap != 0 && out.size() > cap) return false;
                }
            }
            if (base == 1) break;  // 1^k never changes
        }
    }
    return true;
}

}  // namespace detail

/// All fractional-part breakpoints m/p^k, m/q^k (1 <= k <= N) strictly
/// inside (lo, hi), deduplicated and sorted.
inline std::vector<Rational> breakpoints(const RatioPair& pp, const Rational& lo,
                                         const Rational& hi, long n) {
    if (!(0 <= lo && lo < hi && hi <= 1))
        throw std::invalid_argument("breakpoints: need 0 <= lo < hi <= 1");
    std::set<Rational> pts;
    detail::collect_breakpoints(pp, lo, hi, n, 0, pts);
    return {pts.begin(), pts.end()};
}

/// Points inside (lo,hi) where <p^k x> - <q^k x> changes sign for some
/// k <= N. The difference is linear on each level-k branch piece, so each
/// level contributes at most one root per piece.
inline std::vector<Rational> order_change_points(const RatioPair& pp, const Rational& lo,
                                                 const Rational& hi, long n) {
    if (!(0 <= lo && lo < hi && hi <= 1))
        throw std::invalid_argument("order_change_points: need 0 <= lo < hi <= 1");
    std::set<Rational> pts;
    Int pk = 1, qk = 1;
    for (long k = 1; k <= n; ++k) {
        pk *= pp.p;
        qk *= pp.q;
        // Split at this level's own breakpoints, then solve the linear
        // difference (p^k - q^k) x - (a - b) on each branch piece.
        std::set<Rational> cuts;
        for (const Int& base : {pk, qk}) {
            if (base == 1) continue;
            Int m = floor_int(lo * Rational(base)) + 1;
            for (Rational pt = make_rational(m, base); pt < hi; pt = make_rational(++m, base))
                if (pt > lo) cuts.insert(pt);
        }
        std::vector<Rational> edges{lo};
        edges.insert(edges.end(), cuts.begin(), cuts.end());
        edges.push_back(hi);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            Rational mid = (edges[i] + edges[i + 1]) / 2;
            Int a = floor_int(Rational(pk) * mid);
            Int b = floor_int(Rational(qk) * mid);
            Rational root = make_rational(a - b, pk - qk);
            if (edges[i] < root && root < edges[i + 1]) pts.insert(root);
        }
    }
    return {pts.begin(), pts.end()};
}

/// The exact quadratic equal to tau_N^2 on [lo, hi), which must be free of
/// breakpoints and order-change points up to level N.
inline Quadratic tau_quadratic(const RatioPair& pp, const Rational& lo, const Rational& hi,
                               long n) {
    if (!breakpoints(pp, lo, hi, n).empty())
        throw std::invalid_argument("tau_quadratic: interval has breakpoints");
    if (!order_change_points(pp, lo, hi, n).empty())
        throw std::invalid_argument("tau_quadratic: interval has order-change points");
    const Rational mid = (lo + hi) / 2;
    Quadratic acc{-1, 1, 0};  // V(x,x) = x(1-x)
    Int pk = 1, qk = 1;
    for (long k = 1; k <= n; ++k) {
        pk *= pp.p;
        qk *= pp.q;
        Int a = floor_int(Rational(pk) * mid);
        Int b = floor_int(Rational(qk) * mid);
        // u = p^k x - a, w = q^k x - b; V(u,w) = min(1 - max) with the min
        // branch decided once for the whole interval.
        Rational us = Rational(pk), uc = make_rational(-a, Int(1));
        Rational ws = Rational(qk), wc = make_rational(-b, Int(1));
        bool u_is_min = us * mid + uc <= ws * mid + wc;
        const Rational &ms = u_is_min ? us : ws, &mc = u_is_min ? uc : wc;
        const Rational &Ms = u_is_min ? ws : us, &Mc = u_is_min ? wc : uc;
        Rational w = 2 * make_rational(Int(1), detail::pow_int(pp.pq(), k));
        acc.A -= w * ms * Ms;
        acc.B += w * (ms - ms * Mc - mc * Ms);
        acc.C += w * (mc - mc * Mc);
    }
    return acc;
}

/// Exact maximum of the quadratic over the closed interval [lo, hi].
inline std::pair<Rational, Rational> quad_max_on(const Quadratic& quad, const Rational& lo,
                                                 const Rational& hi) {
    if (!(lo < hi)) throw std::invalid_argument("quad_max_on: need lo < hi");
    if (quad.A < 0) {
        Rational vertex = -quad.B / (2 * quad.A);
        if (lo <= vertex && vertex <= hi) return {vertex, quad.eval(vertex)};
    }
    Rational flo = quad.eval(lo), fhi = quad.eval(hi);
    if (fhi > flo) return {hi, fhi};
    return {lo, flo};  // ties toward lo
}

/// Derivative-tail bound 2 q^{-N} / (q-1) on |2 sum_{n>N} V'(.)/(pq)^n|;
/// requires q >= 2 (the geometric argument needs per-term decay).
inline Rational derivative_tail(const RatioPair& pp, long n) {
    if (pp.q < 2)
        throw std::invalid_argument("derivative_tail: no tail bound exists for q = 1");
    return make_rational(Int(2), (pp.q - 1) * detail::pow_int(pp.q, n));
}

/// Rigorous enclosure of (sigma^2)' on the breakpoint/order-change-free
/// interval (lo, hi): the linear (tau_N^2)' at both endpoints widened by
/// the derivative tail.
inline BoundPair derivative_enclosure(const RatioPair& pp, const Rational& lo,
                                      const Rational& hi, long n) {
    Rational dtail = derivative_tail(pp, n);
    Quadratic quad = tau_quadratic(pp, lo, hi, n);
    Rational d1 = quad.deriv_at(lo), d2 = quad.deriv_at(hi);
    return BoundPair(std::min(d1, d2) - dtail, std::max(d1, d2) + dtail);
}

}  // namespace lilcert
