#pragma once

// Desk-scale empirical side: exact orbit generation for <(p/q)^k x>,
// extreme discrepancy of finite point sets, and law-of-the-iterated-
// logarithm ratio experiments.  The orbit itself is exact big-integer
// arithmetic; only the final statistics are binary64.

#include <lilcert/rational.hpp>
#include <lilcert/series.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lilcert {

struct OrbitPoint {
    long k = 0;            // index >= 1
    Rational value;        // <(p/q)^k x>, exactly
};

struct DiscrepancyResult {
    long N = 0;
    double d_n = 0.0;        // extreme discrepancy of the first N points
    double lil_ratio = 0.0;  // N d_n / sqrt(2 N log log N)
};

/// Exact orbit <(p/q)^k x> for k = 1..N.  Works with a single fixed
/// modulus d q^N: with x = n/d, the residue v_k = n p^k mod (d q^N)
/// determines every orbit value because d q^k divides d q^N, so
/// <p^k x / q^k> = (v_k mod d q^k) / (d q^k).  Each step is one
/// multiply-and-reduce; no floating-point drift anywhere.
inline std::vector<OrbitPoint> orbit(const RatioPair& pp, const Rational& x, long N) {
    if (x < 0 || x >= 1) throw std::invalid_argument("orbit: x must lie in [0,1)");
    if (N < 1) throw std::invalid_argument("orbit: N must be >= 1");
    const Int d = x.get_den();
    const Int qN = detail::pow_int(pp.q, N);
    const Int M = d * qN;
    Int v = x.get_num() % M;
    Int dqk = d;
    std::vector<OrbitPoint> out;
    out.reserve(static_cast<size_t>(N));
    for (long k = 1; k <= N; ++k) {
        v = (v * pp.p) % M;
        dqk *= pp.q;
        out.push_back({k, make_rational(v % dqk, dqk)});
    }
    return out;
}

/// Extreme (two-sided) discrepancy of a finite point set in [0,1):
/// D = D+ + D- over the sorted points, where D+ = max_i (i/N - x_(i))
/// and D- = max_i (x_(i) - (i-1)/N), each floored at zero.
inline double discrepancy(std::vector<double> points) {
    if (points.empty()) throw std::invalid_argument("discrepancy: empty point set");
    for (double v : points)
        if (!(v >= 0.0 && v < 1.0))
            throw std::invalid_argument("discrepancy: points must lie in [0,1)");
    std::sort(points.begin(), points.end());
    const double n = static_cast<double>(points.size());
    double dplus = 0.0, dminus = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        double hi = (static_cast<double>(i) + 1.0) / n - points[i];
        double lo = points[i] - static_cast<double>(i) / n;
        dplus = std::max(dplus, hi);
        dminus = std::max(dminus, lo);
    }
    return dplus + dminus;
}

namespace detail {

inline double lil_ratio_of(long N, double d_n) {
    if (N < 3) return 0.0;
    double n = static_cast<double>(N);
    return n * d_n / std::sqrt(2.0 * n * std::log(std::log(n)));
}

}  // namespace detail

struct LilResult {
    std::vector<DiscrepancyResult> checkpoints;  // N_j = 2^j <= N
    double running_max = 0.0;                    // max lil_ratio over checkpoints
    const DiscrepancyResult& final() const { return checkpoints.back(); }
};

/// Runs the exact orbit to length N, converts to binary64, and records
/// the discrepancy and LIL ratio at every power-of-two checkpoint.
inline LilResult lil_experiment(const RatioPair& pp, const Rational& x, long N) {
    if (N < 16) throw std::invalid_argument("lil_experiment: N must be >= 16");
    auto pts = orbit(pp, x, N);
    std::vector<double> vals;
    vals.reserve(pts.size());
    for (const auto& pt : pts) vals.push_back(pt.value.get_d());
    LilResult out;
    for (long nj = 16; nj <= N; nj *= 2) {
        std::vector<double> prefix(vals.begin(), vals.begin() + nj);
        DiscrepancyResult r;
        r.N = nj;
        r.d_n = discrepancy(std::move(prefix));
        r.lil_ratio = detail::lil_ratio_of(nj, r.d_n);
        out.running_max = std::max(out.running_max, r.lil_ratio);
        out.checkpoints.push_back(r);
    }
    return out;
}

namespace detail {

/// Shortest binary64 text that round-trips ('.' decimal separator).
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

inline void write_orbit_csv(std::ostream& os, const std::vector<OrbitPoint>& pts) {
    os << "k,value\n";
    for (const auto& pt : pts)
        os << pt.k << ',' << detail::format_double(pt.value.get_d()) << '\n';
}

inline void write_lil_csv(std::ostream& os, const LilResult& r) {
    os << "N,d_n,lil_ratio\n";
    for (const auto& c : r.checkpoints)
        os << c.N << ',' << detail::format_double(c.d_n) << ','
           << detail::format_double(c.lil_ratio) << '\n';
}

}  // namespace lilcert
