#pragma once

// Independent certificate verifier.  Everything is recomputed from
// (p, q, cstar) and the declared line structure alone, with private
// implementations of the series machinery: the exact series value via
// its own cycle closure, truncated values by direct term-by-term
// summation, and quadratic pieces by three-point interpolation.  Stored
// margins are never trusted; they are recomputed and compared exactly.

#include <lilcert/certificate.hpp>
#include <lilcert/rational.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lilcert {

struct Verdict {
    bool accepted = false;
    long line_index = -1;  // -1 for certificate-level failures
    std::string reason;

    static Verdict ok() { return {true, -1, ""}; }
    static Verdict fail(long idx, std::string why) { return {false, idx, std::move(why)}; }
};

namespace chk {

inline Int ipow(long base, long e) {
    Int r = 1;
    for (long i = 0; i < e; ++i) r *= base;
    return r;
}

inline Rational fractional(const Rational& x) {
    return x - Rational(floor_int(x));
}

inline Rational kernel(const Rational& a, const Rational& b) {
    return (a <= b ? a : b) - a * b;
}

/// Truncated series value by direct term-by-term summation.
inline Rational tau_at(long p, long q, const Rational& x, long n) {
    Rational s = x * (1 - x);
    Rational w = 1;
    for (long k = 1; k <= n; ++k) {
        w /= p * q;
        s += 2 * w *
             kernel(fractional(Rational(ipow(p, k)) * x),
                    fractional(Rational(ipow(q, k)) * x));
    }
    return s;
}

/// Exact series value: sum terms until the pair of fractional parts
/// repeats, then close the geometric remainder.
inline Rational sigma_exact(long p, long q, const Rational& x) {
    if (x == 1) return 0;
    Rational s = x * (1 - x);
    std::map<std::pair<Rational, Rational>, long> seen;
    std::vector<Rational> terms;  // 2 V_k / (pq)^k
    Rational a = fractional(Rational(p) * x), b = fractional(Rational(q) * x);
    Rational w = 1;
    for (long k = 1;; ++k) {
        auto state = std::make_pair(a, b);
        auto it = seen.find(state);
        if (it != seen.end()) {
            long start = it->second, len = k - it->second;
            Rational cycle = 0;
            for (long j = start; j < k; ++j) cycle += terms[static_cast<size_t>(j - 1)];
            for (const Rational& t : terms) s += t;
            s += cycle / Rational(ipow(p * q, len) - 1);
            return s;
        }
        seen.emplace(state, k);
        w /= p * q;
        terms.push_back(2 * w * kernel(a, b));
        a = fractional(a * p);
        b = fractional(b * q);
    }
}

/// True iff no multiple of 1/p^k or 1/q^k (k <= n) lies strictly
/// inside (lo, hi).
inline bool breakpoint_free(long p, long q, const Rational& lo, const Rational& hi,
                            long n) {
    for (long base : {p, q}) {
        if (base == 1) continue;
        Int bk = 1;
        for (long k = 1; k <= n; ++k) {
            bk *= base;
            Int first_above = floor_int(lo * Rational(bk)) + 1;
            if (Rational(first_above) < hi * Rational(bk)) return false;
        }
    }
    return true;
}

/// True iff min(<p^k x>, <q^k x>) never switches branches inside
/// (lo, hi); assumes breakpoint_free already holds.
inline bool order_change_free(long p, long q, const Rational& lo, const Rational& hi,
                              long n) {
    const Rational mid = (lo + hi) / 2;
    for (long k = 1; k <= n; ++k) {
        Int pk = ipow(p, k), qk = ipow(q, k);
        if (pk == qk) continue;
        Int fp = floor_int(Rational(pk) * mid), fq = floor_int(Rational(qk) * mid);
        // <p^k x> - <q^k x> = (p^k - q^k) x - (fp - fq) on this branch
        Rational root = Rational(fp - fq) / Rational(pk - qk);
        if (lo < root && root < hi) return false;
    }
    return true;
}

/// The quadratic through three exact samples of tau_N on [lo, hi).
inline Quadratic interpolate_piece(long p, long q, const Rational& lo,
                                   const Rational& hi, long n) {
    const Rational x0 = lo;
    const Rational x1 = lo + (hi - lo) / 3;
    const Rational x2 = lo + (hi - lo) * 2 / 3;
    const Rational y0 = tau_at(p, q, x0, n);
    const Rational y1 = tau_at(p, q, x1, n);
    const Rational y2 = tau_at(p, q, x2, n);
    // divided differences
    const Rational d01 = (y1 - y0) / (x1 - x0);
    const Rational d12 = (y2 - y1) / (x2 - x1);
    const Rational a = (d12 - d01) / (x2 - x0);
    const Rational b = d01 - a * (x0 + x1);
    const Rational c = y0 - (a * x0 + b) * x0;
    return Quadratic{a, b, c};
}

inline Rational tail(long p, long q, long n) {
    Int pq = Int(p) * q;
    return Rational(1) / Rational(2 * (pq - 1) * ipow(p * q, n));
}

inline Rational quad_max(const Quadratic& g, const Rational& lo, const Rational& hi) {
    if (g.A < 0) {
        Rational vertex = -g.B / (2 * g.A);
        if (lo <= vertex && vertex <= hi) return g.eval(vertex);
    }
    return std::max(g.eval(lo), g.eval(hi));
}

}  // namespace chk

/// Verifies a certificate from scratch.  Accepted only if the header
/// quantities, the tiling, and every line's claim are reproduced
/// exactly by independent recomputation.
inline Verdict check(const Certificate& cert) {
    const long p = cert.p, q = cert.q;
    const Rational half = make_rational(1, 2);
    if (!(p > q && q >= 1))
        return Verdict::fail(-1, "a: invalid ratio parameters");
    if (!(cert.cstar > 0 && cert.cstar < half))
        return Verdict::fail(-1, "a: cstar outside (0, 1/2)");
    // Screen eta against truncated enclosures before committing to the
    // exact sum: a wrong cstar can have an orbit cycle far too long to
    // sum outright, but its series value already separates from eta at
    // a shallow truncation.  The remainder past n terms is nonnegative
    // and at most tail(n), so the enclosure never rejects a valid pair.
    for (long n = 8; n <= 64; n *= 2) {
        Rational t = chk::tau_at(p, q, cert.cstar, n);
        if (cert.eta < t || cert.eta > t + chk::tail(p, q, n))
            return Verdict::fail(-1, "a: eta does not match the recomputed series value");
    }
    if (chk::sigma_exact(p, q, cert.cstar) != cert.eta)
        return Verdict::fail(-1, "a: eta does not match the recomputed series value");

    // (b) exact tiling of [0, 1/2] with the derivative lines at cstar
    const auto& lines = cert.lines;
    if (lines.empty()) return Verdict::fail(-1, "b: no lines");
    long deriv_pos = -1, deriv_neg = -1;
    for (size_t i = 0; i < lines.size(); ++i) {
        if (!(lines[i].lo < lines[i].hi))
            return Verdict::fail(static_cast<long>(i), "b: empty or inverted interval");
        if (i > 0 && lines[i].lo != lines[i - 1].hi)
            return Verdict::fail(static_cast<long>(i), "b: coverage gap");
        if (lines[i].kind == LineKind::DerivPos) {
            if (deriv_pos >= 0) return Verdict::fail(static_cast<long>(i), "b: duplicate increasing flank");
            deriv_pos = static_cast<long>(i);
        }
        if (lines[i].kind == LineKind::DerivNeg) {
            if (deriv_neg >= 0) return Verdict::fail(static_cast<long>(i), "b: duplicate decreasing flank");
            deriv_neg = static_cast<long>(i);
        }
    }
    if (lines.front().lo != 0) return Verdict::fail(0, "b: coverage does not start at 0");
    if (lines.back().hi != half)
        return Verdict::fail(static_cast<long>(lines.size()) - 1, "b: coverage does not end at 1/2");
    if (deriv_pos < 0 || deriv_neg < 0 || deriv_neg != deriv_pos + 1)
        return Verdict::fail(-1, "b: flank lines missing or not adjacent");
    if (lines[static_cast<size_t>(deriv_pos)].hi != cert.cstar ||
        lines[static_cast<size_t>(deriv_neg)].lo != cert.cstar)
        return Verdict::fail(deriv_pos, "b: flank lines do not meet at cstar");

    // (c) and (d): per-line recomputation
    for (size_t i = 0; i < lines.size(); ++i) {
        const CertLine& ln = lines[i];
        const long idx = static_cast<long>(i);
        if (ln.level < 1) return Verdict::fail(idx, "c: level must be >= 1");
        if (!chk::breakpoint_free(p, q, ln.lo, ln.hi, ln.level))
            return Verdict::fail(idx, "c: interval contains a breakpoint at its level");
        if (!chk::order_change_free(p, q, ln.lo, ln.hi, ln.level))
            return Verdict::fail(idx, "c: interval contains an order change at its level");
        Quadratic piece = chk::interpolate_piece(p, q, ln.lo, ln.hi, ln.level);
        if (ln.kind == LineKind::QuadBound) {
            if (ln.bound_style == BoundStyle::ExactPiece) {
                if (!(ln.quad == piece))
                    return Verdict::fail(idx, "c: stored quadratic is not the truncated piece");
            } else {
                // upper_piece: stored quad must dominate the recomputed
                // piece; for quadratics it suffices to check both
                // endpoints and the difference's interior vertex.
                Quadratic diff{ln.quad.A - piece.A, ln.quad.B - piece.B,
                               ln.quad.C - piece.C};
                if (diff.eval(ln.lo) < 0 || diff.eval(ln.hi) < 0)
                    return Verdict::fail(idx, "c: stored quadratic does not dominate the piece");
                if (diff.A < 0) {
                    Rational vertex = -diff.B / (2 * diff.A);
                    if (ln.lo < vertex && vertex < ln.hi && diff.eval(vertex) < 0)
                        return Verdict::fail(idx, "c: stored quadratic does not dominate the piece");
                }
            }
            Rational value =
                chk::quad_max(ln.quad, ln.lo, ln.hi) + chk::tail(p, q, ln.level);
            if (ln.value != value)
                return Verdict::fail(idx, "c: stored value does not match the recomputed bound");
            if (!(value < cert.eta)) return Verdict::fail(idx, "c: bound not below eta");
            if (ln.margin != cert.eta - value)
                return Verdict::fail(idx, "c: margin mismatch");
        } else {
            if (q < 2)
                return Verdict::fail(idx, "d: no derivative tail bound exists for q = 1");
            if (!(ln.quad == piece))
                return Verdict::fail(idx, "d: stored quadratic is not the truncated piece");
            Rational dtail = Rational(2) / Rational((q - 1) * chk::ipow(q, ln.level));
            Rational d_lo = piece.deriv_at(ln.lo), d_hi = piece.deriv_at(ln.hi);
            if (ln.kind == LineKind::DerivPos) {
                Rational lower = std::min(d_lo, d_hi) - dtail;
                if (!(lower > 0)) return Verdict::fail(idx, "d: slope not certified positive");
                if (ln.value != lower) return Verdict::fail(idx, "d: stored bound mismatch");
                if (ln.margin != lower) return Verdict::fail(idx, "d: margin mismatch");
            } else {
                Rational upper = std::max(d_lo, d_hi) + dtail;
                if (!(upper < 0)) return Verdict::fail(idx, "d: slope not certified negative");
                if (ln.value != upper) return Verdict::fail(idx, "d: stored bound mismatch");
                if (ln.margin != -upper) return Verdict::fail(idx, "d: margin mismatch");
            }
        }
    }

    // (e) right endpoint
    if (chk::sigma_exact(p, q, half) != cert.right_endpoint_value)
        return Verdict::fail(-1, "e: endpoint value does not match the recomputed series");
    if (!(cert.right_endpoint_value < cert.eta))
        return Verdict::fail(-1, "e: endpoint value not below eta");
    return Verdict::ok();
}

}  // namespace lilcert
