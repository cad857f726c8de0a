#pragma once

// Hand-transcribed reference derivation for the 3/2 case: a complete
// tiling of [0, 1/2) by quadratic-plus-tail upper bounds, two flank
// derivative bounds around the maximizer c = 277/665, and the exact
// expected margin of every bound.  Used as a regression suite for the
// series and certifier machinery and as the source of a hand-written
// certificate for the checker.

#include <lilcert/rational.hpp>
#include <lilcert/series.hpp>

#include <vector>

namespace lilcert::reference {

/// The maximizer c = 277/(3^6 - 2^6) and eta = sigma^2(c).
inline const Rational& cstar() {
    static const Rational c = make_rational(277, 665);
    return c;
}

inline const Rational& eta() {
    static const Rational e = parse_rational(
        "1222685807050467558645782547163492/4561296506512477081905890170847375");
    return e;
}

/// eta in the factored display form (2/665)^2 * (M/D).
inline Rational eta_factored() {
    Rational m = parse_rational(
        "305671451762616889661445636790873/10314424798490535546171949055");
    return make_rational(4, 665 * 665) * m;
}

namespace detail {

// Accumulates the weighted product (2/6^m) (alpha x - beta)(gamma - delta x).
inline void add_term(Quadratic& g, long m, long alpha, long beta, long gamma,
                     long delta) {
    Rational w = make_rational(Int(2), lilcert::detail::pow_int(6, m));
    g.A += w * make_rational(-Int(alpha) * delta, 1);
    g.B += w * make_rational(Int(alpha) * gamma + Int(beta) * delta, 1);
    g.C += w * make_rational(-Int(beta) * gamma, 1);
}

}  // namespace detail

/// Cumulative quadratic pieces g_0 .. g_11 along the minus branch, plus
/// the two plus-branch pieces g_{6+}, g_{7+}.
inline Quadratic g_minus(int n) {
    Quadratic g{make_rational(-1), make_rational(1), make_rational(0)};  // x(1-x)
    static const long terms[][5] = {
        {1, 3, 1, 1, 2},        {2, 4, 1, 4, 9},         {3, 27, 11, 4, 8},
        {4, 16, 6, 34, 81},     {5, 243, 101, 14, 32},   {6, 729, 303, 27, 64},
        {7, 128, 53, 911, 2187},{8, 256, 106, 2733, 6561},
        {9, 512, 213, 8199, 19683}, {10, 59049, 24596, 427, 1024},
        {11, 177147, 73789, 854, 2048},
    };
    for (int i = 0; i < n; ++i)
        detail::add_term(g, terms[i][0], terms[i][1], terms[i][2], terms[i][3],
                         terms[i][4]);
    return g;
}

inline Quadratic g_plus(int n) {
    Quadratic g = g_minus(5);
    if (n >= 6) detail::add_term(g, 6, 64, 26, 304, 729);
    if (n >= 7) detail::add_term(g, 7, 128, 53, 911, 2187);
    return g;
}

struct QuadRow {
    Rational lo, hi;     // half-open interval [lo, hi)
    long level;          // truncation level of the bound
    Quadratic quad;      // exact truncated-series piece on [lo, hi)
    Rational xstar;      // where the quadratic is maximized over [lo, hi]
    Rational axis;       // the quadratic's axis of symmetry
    Rational displayed;  // quad(xstar) + tail - eta, exactly (negative)
};

struct DerivRow {
    Rational lo, hi;
    long level;
    Quadratic quad;      // truncated-series piece whose slope is bounded
    bool increasing;     // true: certified positive slope; false: negative
    Rational bound;      // one-sided derivative bound (slope at c +- tail)
};

/// The 26 quadratic bound rows.  Together with the two derivative rows
/// they tile [0, 1/2) exactly.
inline const std::vector<QuadRow>& quad_rows() {
    static const std::vector<QuadRow> rows = [] {
        auto r = [](const char* s) { return parse_rational(s); };
        std::vector<QuadRow> t;
        auto add = [&](const char* lo, const char* hi, long m, Quadratic g,
                       const char* xs, const char* ax, const char* disp) {
            t.push_back({r(lo), r(hi), m, g, r(xs), r(ax), r(disp)});
        };
        auto with = [](Quadratic g, long m, long a, long b, long c, long d) {
            detail::add_term(g, m, a, b, c, d);
            return g;
        };

        add("0", "1/3", 1, with(g_minus(0), 1, 2, 0, 1, 3), "5/18", "5/18",
            "-4903660393458055269333329257473743/"
            "246310011351673762422918069225758250");
        add("1/3", "3/8", 1, g_minus(1), "3/8", "4/9",
            "-5778590326763421748314562478852239/"
            "875768929250395599725930912802696000");
        add("4/9", "1/2", 2, with(g_minus(1), 2, 9, 4, 2, 4), "41/90", "41/90",
            "-15967737560279378662084583483719591/"
            "2955720136220085149075016830709099000");
        add("3/8", "2/5", 3,
            with(with(g_minus(1), 2, 9, 3, 2, 4), 3, 8, 3, 11, 27), "2/5",
            "91/216",
            "-40623864934079027775310823389107/"
            "72980744104199633310494242733558000");
        add("2/5", "11/27", 3, with(g_minus(2), 3, 8, 3, 11, 27), "607/1512",
            "607/1512",
            "-115305379420414389410460002655935827/"
            "212811849807846130733401211811055128000");
        add("11/27", "87/211", 3, g_minus(3), "87/211", "317/756",
            "-4087562128846726808409665149171701983/"
            "29242581374367646871548627626666621462000");
        add("28/65", "4/9", 3, with(g_minus(2), 3, 8, 3, 12, 27), "28/65",
            "205/504",
            "-62145572531001959682866090587826537/"
            "25616241180574071291983479199478858000");
        add("8/19", "28/65", 4,
            with(with(g_minus(2), 3, 8, 3, 12, 27), 4, 81, 34, 7, 16), "8/19",
            "4801/11664",
            "-638551936297453983963801188142263/"
            "3940960181626780198766689107612132000");
        add("34/81", "8/19", 4, with(g_minus(3), 4, 81, 34, 7, 16), "8/19",
            "4915/11664",
            "-638551936297453983963801188142263/"
            "3940960181626780198766689107612132000");
        add("87/211", "302/729", 5,
            with(with(g_minus(3), 4, 81, 33, 7, 16), 5, 32, 13, 101, 243),
            "302/729", "35785/85536",
            "-13250661085528974219050820575468766883/"
            "155139838509919829304649483410259188312000");
        add("302/729", "276/665", 6,
            with(with(with(g_minus(3), 4, 81, 33, 7, 16), 5, 32, 13, 101, 243),
                 6, 729, 302, 27, 64),
            "276/665", "19517/46656",
            "-9623392693609973991877849224521309/"
            "425623699615692261466802423622110256000");
        add("276/665", "27/65", 6,
            with(with(with(g_minus(3), 4, 81, 33, 7, 16), 5, 32, 13, 101, 243),
                 6, 64, 26, 303, 729),
            "27/65", "1318/3159",
            "-1906349521544493873261549971920349/"
            "425623699615692261466802423622110256000");
        add("27/65", "101/243", 6,
            with(with(g_minus(4), 5, 32, 13, 101, 243), 6, 64, 26, 303, 729),
            "27/65", "20893/50544",
            "-1906349521544493873261549971920349/"
            "425623699615692261466802423622110256000");
        add("278/665", "34/81", 5, with(g_minus(4), 5, 32, 13, 102, 243),
            "278/665", "11809/28512",
            "-5091905468453476674801592843459949/"
            "70937283269282043577800403937018376000");
        add("88/211", "278/665", 6,
            with(with(g_minus(4), 5, 32, 13, 102, 243), 6, 729, 304, 27, 64),
            "88/211", "251701/606528",
            "-56411054147338655852222279153714125703/"
            "6316397576863411724254503567359990235792000");
        add("304/729", "88/211", 6, with(g_minus(5), 6, 729, 304, 27, 64),
            "88/211", "19459/46656",
            "-56411054147338655852222279153714125703/"
            "6316397576863411724254503567359990235792000");
        add("858/2059", "304/729", 6, g_plus(6), "858/2059", "126119/303264",
            "-245734830243268354941082685853561543661/"
            "200491509741159404926171222855543067801904000");
        add("2627/6305", "858/2059", 7,
            with(g_plus(6), 7, 2187, 911, 54, 128), "2627/6305",
            "874067/2099520",
            "-296152864180283626343198670531396721/"
            "357807656810258627806425237458320688544000");
        add("911/2187", "2627/6305", 8,
            with(with(g_plus(6), 7, 2187, 911, 54, 128), 8, 6561, 2733, 107,
                 256),
            "911/2187", "3963493/9517824",
            "-2903244137571860267233333557802343701/"
            "11170068372714227709934762805538661558464000");
        add("101/243", "857/2059", 6, g_minus(6), "857/2059", "84301/202176",
            "-5169596011476730532177386324915893190949/"
            "1804423587670434644335541005699887610217136000");
        add("857/2059", "202/485", 7, g_minus(7), "202/485", "1749937/4199040",
            "-103698794723921201659167205767313/"
            "3058185100942381434242950747507014432000");
        add("202/485", "7985/19171", 8, g_minus(8), "7985/19171",
            "247807/594864",
            "-47689069442943750663023590748245592189/"
            "15599498462223969356869812416770378735394496000");
        add("7985/19171", "24169/58025", 9, g_minus(9), "24169/58025",
            "2954029/7091712",
            "-5902470452852577000431786200645894683457/"
            "2476280506033531932376735578547810572039895680000");
        add("24169/58025", "24596/59049", 10,
            with(g_minus(9), 10, 1024, 426, 24596, 59049), "24169/58025",
            "18889067/45349632",
            "-11899418967263802834461455793906308311731/"
            "4952561012067063864753471157095621144079791360000");
        add("24596/59049", "72935/175099", 10, g_minus(10), "72935/175099",
            "528952925/1269789696",
            "-92702352365411529614480198024779430800965409/"
            "16912123272164340374273932618342897873352232696576000");
        add("72935/175099", "73789/177147", 11,
            with(g_minus(10), 11, 2048, 853, 73789, 177147), "73789/177147",
            "3475943813/8344332288",
            "-29347546710908416454761350780039732607/"
            "65143838749669376004339536681901474208962048000");
        return t;
    }();
    return rows;
}

/// The two flank derivative rows adjacent to c.
inline const std::vector<DerivRow>& deriv_rows() {
    static const std::vector<DerivRow> rows = [] {
        auto r = [](const char* s) { return parse_rational(s); };
        std::vector<DerivRow> t;
        t.push_back({r("73789/177147"), cstar(), 11, g_minus(11), true,
                     r("122591869/120630021120")});
        t.push_back({cstar(), r("911/2187"), 7, g_plus(7), false,
                     r("-62497/9307872")});
        return t;
    }();
    return rows;
}

}  // namespace lilcert::reference
