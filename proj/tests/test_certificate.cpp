#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lilcert/certificate.hpp>

using namespace lilcert;

static Rational rat(const char* s) { return parse_rational(s); }

static Certificate sample() {
    Certificate c;
    c.p = 3;
    c.q = 2;
    c.cstar = rat("277/665");
    c.eta = rat("14/27");
    c.right_endpoint_value = rat("1/4");
    CertLine a;
    a.kind = LineKind::QuadBound;
    a.lo = rat("0");
    a.hi = rat("1/3");
    a.level = 1;
    a.quad = Quadratic{rat("-3"), rat("8/3"), rat("-1/3")};
    a.value = rat("1/2");
    a.margin = rat("1/54");
    CertLine b = a;
    b.kind = LineKind::DerivPos;
    b.bound_style = BoundStyle::ExactPiece;
    b.lo = rat("1/3");
    b.hi = rat("277/665");
    b.value = rat("5/7");
    b.margin = rat("5/7");
    c.lines = {a, b};
    return c;
}

TEST_CASE("round trip and determinism") {
    Certificate c = sample();
    std::string s1 = serialize(c);
    std::string s2 = serialize(c);
    CHECK(s1 == s2);
    Certificate back = parse(s1);
    CHECK(back == c);
    CHECK(serialize(back) == s1);
}

TEST_CASE("tampered values still parse") {
    // verification is the checker's job, not the parser's
    Certificate c = sample();
    c.lines[0].margin = rat("-1/54");
    Certificate back = parse(serialize(c));
    CHECK(back.lines[0].margin == rat("-1/54"));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("garbage\n"), ParseError);

    std::string good = serialize(sample());

    // non-canonical rational rejected
    std::string bad = good;
    auto pos = bad.find("277/665");
    bad.replace(pos, 7, "554/1330");
    CHECK_THROWS_AS(parse(bad), ParseError);
    bad = good;
    pos = bad.find("8/3");
    bad.replace(pos, 3, "04/6");
    CHECK_THROWS_AS(parse(bad), ParseError);

    // truncated final line names the line number
    std::string trunc = good.substr(0, good.rfind("end\n"));
    trunc = trunc.substr(0, trunc.rfind(' '));
    trunc += "\n";
    try {
        parse(trunc);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 9);  // second payload line
    }

    // trailing junk rejected
    CHECK_THROWS_AS(parse(good + "extra\n"), ParseError);

    // wrong line count
    bad = good;
    pos = bad.find("lines 2");
    bad.replace(pos, 7, "lines 3");
    CHECK_THROWS_AS(parse(bad), ParseError);

    // derivative lines must be exact-style
    bad = good;
    pos = bad.find("deriv+ exact");
    bad.replace(pos, 12, "deriv+ upper");
    CHECK_THROWS_AS(parse(bad), ParseError);
}

TEST_CASE("error carries line and field") {
    try {
        parse("lilcert 1\np 3\nq x\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.field == "q");
    }
}
