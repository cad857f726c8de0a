#pragma once

// Certificate data model and its canonical text form.  A certificate is
// a self-contained claim that sigma^2 attains its supremum on [0, 1/2]
// exactly at cstar: a tiling of [0, 1/2] by quadratic upper-bound lines
// plus two one-sided derivative lines flanking cstar.  Parsing and
// verification are deliberately separate: this file only enforces
// syntactic well-formedness, never the mathematical claims.

#include <lilcert/rational.hpp>
#include <lilcert/series.hpp>

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lilcert {

enum class LineKind { QuadBound, DerivPos, DerivNeg };
enum class BoundStyle { ExactPiece, UpperPiece };

struct CertLine {
    LineKind kind = LineKind::QuadBound;
    BoundStyle bound_style = BoundStyle::ExactPiece;
    Rational lo, hi;
    long level = 0;       // truncation level N
    Quadratic quad;       // tau_N^2 piece (or dominating quadratic)
    Rational value;       // QuadBound: quad max + tail; Deriv*: certified bound
    Rational margin;      // QuadBound: eta - value; Deriv*: |value|

    bool operator==(const CertLine& o) const {
        return kind == o.kind && bound_style == o.bound_style && lo == o.lo &&
               hi == o.hi && level == o.level && quad == o.quad &&
               value == o.value && margin == o.margin;
    }
};

struct Certificate {
    long p = 0, q = 0;
    Rational cstar;
    Rational eta;
    Rational right_endpoint_value;  // sigma^2(1/2)
    std::vector<CertLine> lines;    // sorted by lo

    bool operator==(const Certificate& o) const {
        return p == o.p && q == o.q && cstar == o.cstar && eta == o.eta &&
               right_endpoint_value == o.right_endpoint_value && lines == o.lines;
    }
};

struct ParseError : std::runtime_error {
    long line;
    std::string field;
    ParseError(long line_, std::string field_, const std::string& reason)
        : std::runtime_error("certificate parse error at line " +
                             std::to_string(line_) + ", field '" + field_ +
                             "': " + reason),
          line(line_),
          field(std::move(field_)) {}
};

namespace detail {

inline const char* kind_token(LineKind k) {
    switch (k) {
        case LineKind::QuadBound: return "quad";
        case LineKind::DerivPos: return "deriv+";
        default: return "deriv-";
    }
}

inline const char* style_token(BoundStyle s) {
    return s == BoundStyle::ExactPiece ? "exact" : "upper";
}

}  // namespace detail

/// Canonical byte-deterministic text form.  One object per line, fixed
/// field order, rationals in canonical "num/den" text, '\n' endings.
inline std::string serialize(const Certificate& c) {
    std::ostringstream os;
    os << "lilcert 1\n";
    os << "p " << c.p << "\n";
    os << "q " << c.q << "\n";
    os << "cstar " << to_string(c.cstar) << "\n";
    os << "eta " << to_string(c.eta) << "\n";
    os << "endpoint " << to_string(c.right_endpoint_value) << "\n";
    os << "lines " << c.lines.size() << "\n";
    for (const CertLine& ln : c.lines) {
        os << detail::kind_token(ln.kind) << ' ' << detail::style_token(ln.bound_style)
           << ' ' << to_string(ln.lo) << ' ' << to_string(ln.hi) << ' ' << ln.level
           << ' ' << to_string(ln.quad.A) << ' ' << to_string(ln.quad.B) << ' '
           << to_string(ln.quad.C) << ' ' << to_string(ln.value) << ' '
           << to_string(ln.margin) << "\n";
    }
    os << "end\n";
    return os.str();
}

namespace detail {

struct LineReader {
    std::istringstream in;
    long lineno = 0;
    explicit LineReader(const std::string& text) : in(text) {}
    std::string next(const char* field) {
        std::string s;
        if (!std::getline(in, s)) throw ParseError(lineno + 1, field, "unexpected end of input");
        ++lineno;
        return s;
    }
};

inline std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

inline Rational parse_rat_field(long lineno, const char* field, const std::string& tok) {
    try {
        return parse_rational(tok);
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, field, e.what());
    }
}

inline long parse_long_field(long lineno, const char* field, const std::string& tok,
                             long min_value) {
    if (!valid_integer_token(tok)) throw ParseError(lineno, field, "not an integer");
    try {
        long v = std::stol(tok);
        if (v < min_value) throw ParseError(lineno, field, "out of range");
        return v;
    } catch (const std::out_of_range&) {
        throw ParseError(lineno, field, "out of range");
    }
}

inline std::string expect_keyword_line(LineReader& r, const char* kw) {
    std::string s = r.next(kw);
    auto w = split_words(s);
    if (w.size() != 2 || w[0] != kw)
        throw ParseError(r.lineno, kw, "expected '" + std::string(kw) + " <value>'");
    return w[1];
}

}  // namespace detail

/// Strict inverse of serialize on its image.  Any syntactic deviation
/// (wrong keyword, non-canonical rational, missing field, trailing
/// junk) raises ParseError naming the offending line and field.
inline Certificate parse(const std::string& text) {
    detail::LineReader r(text);
    Certificate c;
    {
        std::string hdr = r.next("header");
        if (hdr != "lilcert 1") throw ParseError(r.lineno, "header", "expected 'lilcert 1'");
    }
    std::string tok = detail::expect_keyword_line(r, "p");
    c.p = detail::parse_long_field(r.lineno, "p", tok, 2);
    tok = detail::expect_keyword_line(r, "q");
    c.q = detail::parse_long_field(r.lineno, "q", tok, 1);
    tok = detail::expect_keyword_line(r, "cstar");
    c.cstar = detail::parse_rat_field(r.lineno, "cstar", tok);
    tok = detail::expect_keyword_line(r, "eta");
    c.eta = detail::parse_rat_field(r.lineno, "eta", tok);
    tok = detail::expect_keyword_line(r, "endpoint");
    c.right_endpoint_value = detail::parse_rat_field(r.lineno, "endpoint", tok);
    tok = detail::expect_keyword_line(r, "lines");
    long count = detail::parse_long_field(r.lineno, "lines", tok, 0);
    for (long i = 0; i < count; ++i) {
        std::string s = r.next("line");
        auto w = detail::split_words(s);
        if (w.size() != 10)
            throw ParseError(r.lineno, "line", "expected 10 fields, got " +
                                                    std::to_string(w.size()));
        CertLine ln;
        if (w[0] == "quad") ln.kind = LineKind::QuadBound;
        else if (w[0] == "deriv+") ln.kind = LineKind::DerivPos;
        else if (w[0] == "deriv-") ln.kind = LineKind::DerivNeg;
        else throw ParseError(r.lineno, "kind", "unknown line kind '" + w[0] + "'");
        if (w[1] == "exact") ln.bound_style = BoundStyle::ExactPiece;
        else if (w[1] == "upper") ln.bound_style = BoundStyle::UpperPiece;
        else throw ParseError(r.lineno, "style", "unknown bound style '" + w[1] + "'");
        if (ln.kind != LineKind::QuadBound && ln.bound_style != BoundStyle::ExactPiece)
            throw ParseError(r.lineno, "style", "derivative lines must be 'exact'");
        ln.lo = detail::parse_rat_field(r.lineno, "lo", w[2]);
        ln.hi = detail::parse_rat_field(r.lineno, "hi", w[3]);
        ln.level = detail::parse_long_field(r.lineno, "level", w[4], 0);
        ln.quad.A = detail::parse_rat_field(r.lineno, "A", w[5]);
        ln.quad.B = detail::parse_rat_field(r.lineno, "B", w[6]);
        ln.quad.C = detail::parse_rat_field(r.lineno, "C", w[7]);
        ln.value = detail::parse_rat_field(r.lineno, "value", w[8]);
        ln.margin = detail::parse_rat_field(r.lineno, "margin", w[9]);
        c.lines.push_back(std::move(ln));
    }
    {
        std::string tail = r.next("end");
        if (tail != "end") throw ParseError(r.lineno, "end", "expected 'end'");
    }
    std::string extra;
    if (std::getline(r.in, extra) && !extra.empty())
        throw ParseError(r.lineno + 1, "end", "trailing content after 'end'");
    return c;
}

}  // namespace lilcert
