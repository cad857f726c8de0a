#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lilcert/certifier.hpp>
#include <lilcert/checker.hpp>
#include <lilcert/reference_table.hpp>

#include <random>

using namespace lilcert;
namespace ref = lilcert::reference;

static const RatioPair kPP(3, 2);

static const Certificate& good_cert() {
    static const Certificate c = certify_supremum(kPP, ref::cstar());
    return c;
}

// Builds a certificate by transcribing the hand-derived reference rows.
static Certificate reference_cert() {
    Certificate c;
    c.p = 3;
    c.q = 2;
    c.cstar = ref::cstar();
    c.eta = ref::eta();
    c.right_endpoint_value = parse_rational("1/4");
    for (const auto& row : ref::quad_rows()) {
        CertLine ln;
        ln.kind = LineKind::QuadBound;
        ln.bound_style = BoundStyle::ExactPiece;
        ln.lo = row.lo;
        ln.hi = row.hi;
        ln.level = row.level;
        ln.quad = row.quad;
        ln.value = row.quad.eval(row.xstar) + tail_width(kPP, row.level + 1);
        ln.margin = c.eta - ln.value;
        c.lines.push_back(ln);
    }
    for (const auto& row : ref::deriv_rows()) {
        CertLine ln;
        ln.kind = row.increasing ? LineKind::DerivPos : LineKind::DerivNeg;
        ln.bound_style = BoundStyle::ExactPiece;
        ln.lo = row.lo;
        ln.hi = row.hi;
        ln.level = row.level;
        ln.quad = row.quad;
        ln.value = row.bound;
        ln.margin = abs(row.bound);
        c.lines.push_back(ln);
    }
    std::sort(c.lines.begin(), c.lines.end(),
              [](const CertLine& a, const CertLine& b) { return a.lo < b.lo; });
    return c;
}

TEST_CASE("accepts the generated certificate") {
    Verdict v = check(good_cert());
    CAPTURE(v.line_index);
    CAPTURE(v.reason);
    CHECK(v.accepted);
}

TEST_CASE("accepts the hand-transcribed reference certificate") {
    Certificate c = reference_cert();
    Verdict v = check(c);
    CAPTURE(v.line_index);
    CAPTURE(v.reason);
    CHECK(v.accepted);
    // and after a text round trip
    CHECK(check(parse(serialize(c))).accepted);
}

TEST_CASE("upper-style lines are accepted when they dominate") {
    Certificate c = reference_cert();
    // replace one exact piece by a slightly lifted dominating quadratic
    for (CertLine& ln : c.lines) {
        if (ln.lo == parse_rational("1/3")) {
            ln.bound_style = BoundStyle::UpperPiece;
            ln.quad.C += parse_rational("1/1000000");
            auto [arg, val] = quad_max_on(ln.quad, ln.lo, ln.hi);
            ln.value = val + tail_width(kPP, ln.level + 1);
            ln.margin = c.eta - ln.value;
        }
    }
    Verdict v = check(c);
    CAPTURE(v.reason);
    CHECK(v.accepted);

    // but an upper-style line sitting below the true piece is rejected
    for (CertLine& ln : c.lines) {
        if (ln.lo == parse_rational("1/3")) {
            ln.quad.C -= parse_rational("1/500000");
            auto [arg, val] = quad_max_on(ln.quad, ln.lo, ln.hi);
            ln.value = val + tail_width(kPP, ln.level + 1);
            ln.margin = c.eta - ln.value;
        }
    }
    v = check(c);
    CHECK(!v.accepted);
    CHECK(v.reason.substr(0, 2) == "c:");
}

TEST_CASE("tampering detection") {
    Certificate base = good_cert();

    SUBCASE("negated margin sign via value edit") {
        Certificate c = base;
        for (CertLine& ln : c.lines)
            if (ln.kind == LineKind::QuadBound) {
                ln.value = c.eta + 1;
                break;
            }
        Verdict v = check(c);
        CHECK(!v.accepted);
        CHECK(v.reason.substr(0, 2) == "c:");
    }
    SUBCASE("deleted line") {
        Certificate c = base;
        c.lines.erase(c.lines.begin() + 3);
        Verdict v = check(c);
        CHECK(!v.accepted);
        CHECK(v.reason.substr(0, 2) == "b:");
    }
    SUBCASE("wrong eta") {
        Certificate c = base;
        c.eta += parse_rational("1/1000000000");
        CHECK(!check(c).accepted);
    }
    SUBCASE("wrong endpoint value") {
        Certificate c = base;
        c.right_endpoint_value = parse_rational("1/5");
        Verdict v = check(c);
        CHECK(!v.accepted);
        CHECK(v.reason.substr(0, 2) == "e:");
    }
    SUBCASE("wrong maximizer") {
        Certificate c = base;
        c.cstar = parse_rational("1/3");
        CHECK(!check(c).accepted);
    }
}

TEST_CASE("every single-rational mutation flips the verdict") {
    const Certificate base = good_cert();
    REQUIRE(check(base).accepted);
    std::mt19937_64 rng(57);
    auto perturb = [&](Rational& r) {
        long num = long(rng() % 1000) + 1;
        long den = long(rng() % 1000000) + 1000;
        if (rng() % 2) r += make_rational(num, den);
        else r -= make_rational(num, den);
    };
    int rejected = 0;
    for (int trial = 0; trial < 500; ++trial) {
        Certificate c = base;
        size_t field = rng() % (3 + c.lines.size() * 7);
        if (field == 0) perturb(c.cstar);
        else if (field == 1) perturb(c.eta);
        else if (field == 2) perturb(c.right_endpoint_value);
        else {
            CertLine& ln = c.lines[(field - 3) / 7];
            switch ((field - 3) % 7) {
                case 0: perturb(ln.lo); break;
                case 1: perturb(ln.hi); break;
                case 2: perturb(ln.quad.A); break;
                case 3: perturb(ln.quad.B); break;
                case 4: perturb(ln.quad.C); break;
                case 5: perturb(ln.value); break;
                case 6: perturb(ln.margin); break;
            }
        }
        if (!check(c).accepted) ++rejected;
    }
    CHECK(rejected == 500);
}

TEST_CASE("rejection names the first failing line deterministically") {
    Certificate c = good_cert();
    c.lines[5].value += 1;
    c.lines[10].value += 1;
    Verdict v1 = check(c);
    Verdict v2 = check(c);
    CHECK(!v1.accepted);
    CHECK(v1.line_index == 5);
    CHECK(v1.line_index == v2.line_index);
    CHECK(v1.reason == v2.reason);
}

TEST_CASE("derivative lines with q = 1 are rejected") {
    Certificate c = good_cert();
    c.q = 1;  // header mutation: everything downstream must fail
    CHECK(!check(c).accepted);
}
