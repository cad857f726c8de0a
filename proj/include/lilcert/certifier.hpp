#pragma once

// Automated construction of supremum certificates: subdivide [0, 1/2],
// bound sigma^2 above by an exact quadratic-plus-tail on each piece,
// certify the derivative sign on the two pieces flanking the claimed
// maximizer, and assemble a self-contained Certificate.

#include <lilcert/certificate.hpp>
#include <lilcert/rational.hpp>
#include <lilcert/series.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace lilcert {

struct CertificationFailed : std::runtime_error {
    Rational lo, hi;
    CertificationFailed(Rational lo_, Rational hi_, const std::string& why)
        : std::runtime_error("certification failed on [" + to_string(lo_) +
                             ", " + to_string(hi_) + "): " + why),
          lo(std::move(lo_)),
          hi(std::move(hi_)) {}
};

namespace detail {

/// All breakpoints and order-change points strictly inside (lo, hi) at
/// levels up to n, sorted ascending.
inline std::vector<Rational> structure_points(const RatioPair& pp, const Rational& lo,
                                              const Rational& hi, long n) {
    std::set<Rational> pts;
    for (const Rational& b : breakpoints(pp, lo, hi, n)) pts.insert(b);
    for (const Rational& b : order_change_points(pp, lo, hi, n)) pts.insert(b);
    return {pts.begin(), pts.end()};
}

inline CertLine make_quad_line(const Rational& lo, const Rational& hi, long level,
                               const Quadratic& quad, const Rational& value,
                               const Rational& eta) {
    CertLine ln;
    ln.kind = LineKind::QuadBound;
    ln.bound_style = BoundStyle::ExactPiece;
    ln.lo = lo;
    ln.hi = hi;
    ln.level = level;
    ln.quad = quad;
    ln.value = value;
    ln.margin = eta - value;
    return ln;
}

struct CertifyContext {
    RatioPair pp;
    Rational eta;
    long max_level;
    long max_depth;
    std::size_t piece_cap = 256;
    std::vector<CertLine> lines;
};

/// Certifies sigma^2 < eta on [lo, hi) by adaptive level selection and
/// depth-bounded bisection; appends QuadBound lines on success.
inline void certify_interval(CertifyContext& ctx, const Rational& lo,
                             const Rational& hi, long depth) {
    if (!(lo < hi)) return;
    for (long n = 1; n <= ctx.max_level; ++n) {
        std::vector<Rational> pts = structure_points(ctx.pp, lo, hi, n);
        if (pts.size() + 1 > ctx.piece_cap) break;  // only grows with n
        std::vector<CertLine> candidate;
        bool ok = true;
        Rational a = lo;
        pts.push_back(hi);
        Rational tail = tail_width(ctx.pp, n + 1);
        for (const Rational& b : pts) {
            Quadratic quad = tau_quadratic(ctx.pp, a, b, n);
            auto [arg, val] = quad_max_on(quad, a, b);
            Rational value = val + tail;
            if (!(value < ctx.eta)) {
                ok = false;
                break;
            }
            candidate.push_back(make_quad_line(a, b, n, quad, value, ctx.eta));
            a = b;
        }
        if (ok) {
            ctx.lines.insert(ctx.lines.end(), candidate.begin(), candidate.end());
            return;
        }
    }
    if (depth >= ctx.max_depth)
        throw CertificationFailed(lo, hi, "level and depth budgets exhausted");
    // Bisect, preferring the breakpoint nearest the plain midpoint.
    Rational mid = (lo + hi) / 2;
    std::vector<Rational> bps = breakpoints(ctx.pp, lo, hi, ctx.max_level);
    Rational split = mid;
    Rational best_dist = hi - lo;
    for (const Rational& b : bps) {
        Rational d = abs(b - mid);
        if (d < best_dist) {
            best_dist = d;
            split = b;
        }
    }
    certify_interval(ctx, lo, split, depth + 1);
    certify_interval(ctx, split, hi, depth + 1);
}

/// Builds the one-sided derivative line on the flank of cstar (q >= 2):
/// at each level, take the interval up to the nearest structure point
/// and accept the smallest level whose derivative enclosure has the
/// required sign.
inline CertLine flank_line(const CertifyContext& ctx, const Rational& cstar,
                           bool right_side) {
    const Rational cap_lo = 0, cap_hi = make_rational(1, 2);
    for (long n = 1; n <= ctx.max_level; ++n) {
        Rational lo = cstar, hi = cstar;
        if (right_side) {
            std::vector<Rational> pts =
                structure_points(ctx.pp, cstar, cap_hi, n);
            hi = pts.empty() ? cap_hi : pts.front();
        } else {
            std::vector<Rational> pts =
                structure_points(ctx.pp, cap_lo, cstar, n);
            lo = pts.empty() ? cap_lo : pts.back();
        }
        BoundPair enc = derivative_enclosure(ctx.pp, lo, hi, n);
        CertLine ln;
        ln.bound_style = BoundStyle::ExactPiece;
        ln.lo = lo;
        ln.hi = hi;
        ln.level = n;
        ln.quad = tau_quadratic(ctx.pp, lo, hi, n);
        if (right_side && enc.upper < 0) {
            ln.kind = LineKind::DerivNeg;
            ln.value = enc.upper;
            ln.margin = -enc.upper;
            return ln;
        }
        if (!right_side && enc.lower > 0) {
            ln.kind = LineKind::DerivPos;
            ln.value = enc.lower;
            ln.margin = enc.lower;
            return ln;
        }
    }
    if (right_side)
        throw CertificationFailed(cstar, cap_hi,
                                  "no level certifies a negative slope right of the claimed maximizer");
    throw CertificationFailed(cap_lo, cstar,
                              "no level certifies a positive slope left of the claimed maximizer");
}

/// Peak handling for q = 1, where no derivative tail bound exists.
/// Works on shrinking punctured intervals approaching cstar; the
/// terminal condition demands that at the level where the orbit of
/// cstar has completed a full cycle, the adjacent truncated piece has
/// its vertex exactly at cstar with value-plus-tail exactly eta.
inline CertLine peak_line_q1(CertifyContext& ctx, const Rational& cstar,
                             bool right_side) {
    const Rational cap_lo = 0, cap_hi = make_rational(1, 2);
    CycleInfo ci = orbit_cycle(ctx.pp, cstar);
    const long nstar = ci.preperiod + ci.period;
    Rational edge;  // nearest structure point on this side at level nstar
    if (right_side) {
        std::vector<Rational> pts = structure_points(ctx.pp, cstar, cap_hi, nstar);
        edge = pts.empty() ? cap_hi : pts.front();
    } else {
        std::vector<Rational> pts = structure_points(ctx.pp, cap_lo, cstar, nstar);
        edge = pts.empty() ? cap_lo : pts.back();
    }
    Rational delta = abs(edge - cstar);
    for (long j = 0; j <= ctx.max_depth; ++j) {
        Rational lo = right_side ? cstar : cstar - delta;
        Rational hi = right_side ? cstar + delta : cstar;
        Quadratic quad = tau_quadratic(ctx.pp, lo, hi, nstar);
        bool vertex_coincides =
            quad.A < 0 && -quad.B / (2 * quad.A) == cstar &&
            quad.eval(cstar) + tail_width(ctx.pp, nstar + 1) == ctx.eta;
        if (vertex_coincides) {
            CertLine ln;
            ln.kind = right_side ? LineKind::DerivNeg : LineKind::DerivPos;
            ln.bound_style = BoundStyle::ExactPiece;
            ln.lo = lo;
            ln.hi = hi;
            ln.level = nstar;
            ln.quad = quad;
            ln.value = ctx.eta;
            ln.margin = 0;
            return ln;
        }
        // Certify the outer half of the punctured interval and shrink.
        Rational half = delta / 2;
        if (right_side)
            certify_interval(ctx, cstar + half, cstar + delta, 0);
        else
            certify_interval(ctx, cstar - delta, cstar - half, 0);
        delta = half;
    }
    Rational lo = right_side ? cstar : cstar - delta;
    Rational hi = right_side ? cstar + delta : cstar;
    throw CertificationFailed(lo, hi,
                              "peak neighborhood: vertex-coincidence condition never satisfied");
}

}  // namespace detail

/// Produces a certificate that sigma^2 attains its supremum over
/// [0, 1/2] exactly at cstar, or throws CertificationFailed naming the
/// interval that could not be bounded.
inline Certificate certify_supremum(const RatioPair& pp, const Rational& cstar,
                                    long max_level = 14, long max_depth = 40) {
    const Rational half = make_rational(1, 2);
    if (!(cstar > 0 && cstar <= half))
        throw std::invalid_argument("certify_supremum: cstar must lie in (0, 1/2]");
    detail::CertifyContext ctx{pp, sigma_sq_exact(pp, cstar), max_level, max_depth};
    if (cstar == half)
        throw CertificationFailed(half, half,
                                  "peaks at 1/2 have no right flank inside [0, 1/2]");
    Rational endpoint_value = sigma_sq_exact(pp, half);
    if (!(endpoint_value < ctx.eta))
        throw CertificationFailed(half, half,
                                  "sigma^2(1/2) is not below the claimed supremum");

    CertLine left, right;
    if (pp.q >= 2) {
        left = detail::flank_line(ctx, cstar, /*right_side=*/false);
        right = detail::flank_line(ctx, cstar, /*right_side=*/true);
    } else {
        left = detail::peak_line_q1(ctx, cstar, /*right_side=*/false);
        right = detail::peak_line_q1(ctx, cstar, /*right_side=*/true);
    }
    ctx.lines.push_back(left);
    ctx.lines.push_back(right);
    detail::certify_interval(ctx, 0, left.lo, 0);
    detail::certify_interval(ctx, right.hi, half, 0);

    std::sort(ctx.lines.begin(), ctx.lines.end(),
              [](const CertLine& a, const CertLine& b) { return a.lo < b.lo; });
    Certificate cert;
    cert.p = pp.p;
    cert.q = pp.q;
    cert.cstar = cstar;
    cert.eta = ctx.eta;
    cert.right_endpoint_value = endpoint_value;
    cert.lines = std::move(ctx.lines);
    return cert;
}

}  // namespace lilcert
