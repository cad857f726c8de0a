#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lilcert/empirical.hpp>

#include <random>
#include <sstream>

using namespace lilcert;

static Rational rat(const char* s) { return parse_rational(s); }

// Ground-truth oracle: enumerate candidate interval endpoints among the
// point values and {0, 1}, with open/closed corrections on both sides.
static double discrepancy_bruteforce(const std::vector<double>& pts) {
    const double n = static_cast<double>(pts.size());
    std::vector<double> ends{0.0, 1.0};
    ends.insert(ends.end(), pts.begin(), pts.end());
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    auto count = [&](double a, double b, bool a_closed, bool b_closed) {
        long c = 0;
        for (double v : pts) {
            bool above = a_closed ? (v >= a) : (v > a);
            bool below = b_closed ? (v <= b) : (v < b);
            if (above && below) ++c;
        }
        return static_cast<double>(c);
    };
    double best = 0.0;
    for (size_t i = 0; i < ends.size(); ++i)
        for (size_t j = i; j < ends.size(); ++j) {
            double a = ends[i], b = ends[j];
            for (int ac = 0; ac < 2; ++ac)
                for (int bc = 0; bc < 2; ++bc) {
                    double dev = std::abs(count(a, b, ac, bc) / n - (b - a));
                    best = std::max(best, dev);
                }
        }
    return best;
}

TEST_CASE("orbit examples") {
    auto o = orbit(RatioPair(3, 2), rat("1/2"), 3);
    REQUIRE(o.size() == 3);
    CHECK(o[0].value == rat("3/4"));
    CHECK(o[1].value == rat("1/8"));
    CHECK(o[2].value == rat("11/16"));

    o = orbit(RatioPair(2, 1), rat("1/3"), 4);
    CHECK(o[0].value == rat("2/3"));
    CHECK(o[1].value == rat("1/3"));
    CHECK(o[2].value == rat("2/3"));
    CHECK(o[3].value == rat("1/3"));

    o = orbit(RatioPair(3, 2), Rational(0), 5);
    for (const auto& pt : o) CHECK(pt.value == 0);

    CHECK_THROWS(orbit(RatioPair(3, 2), Rational(1), 2));
    CHECK_THROWS(orbit(RatioPair(3, 2), rat("1/2"), 0));
}

TEST_CASE("orbit equals direct big-rational computation") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        long p = 2 + long(rng() % 6);
        long q = 1 + long(rng() % (p - 1));
        while (std::gcd(p, q) != 1) q = 1 + long(rng() % (p - 1));
        RatioPair pp(p, q);
        long den = 2 + long(rng() % 999983);
        Rational x = make_rational(long(rng() % den), den);
        auto o = orbit(pp, x, 64);
        Rational pk = 1, qk = 1;
        for (long k = 1; k <= 64; ++k) {
            pk *= p;
            qk *= q;
            CHECK(o[size_t(k - 1)].value == frac(x * pk / qk));
        }
    }
}

TEST_CASE("discrepancy matches the brute-force oracle") {
    // [0, 1/2], N=2
    std::vector<double> two{0.0, 0.5};
    CHECK(discrepancy(two) == doctest::Approx(discrepancy_bruteforce(two)).epsilon(1e-12));

    // shifted grids: i/N + 1/(2N) has discrepancy exactly 1/N
    for (long n : {2L, 4L, 8L}) {
        std::vector<double> grid;
        for (long i = 0; i < n; ++i)
            grid.push_back((2.0 * double(i) + 1.0) / (2.0 * double(n)));
        CHECK(discrepancy(grid) == doctest::Approx(1.0 / double(n)).epsilon(1e-12));
        CHECK(discrepancy_bruteforce(grid) == doctest::Approx(1.0 / double(n)).epsilon(1e-12));
    }

    std::vector<double> zero{0.0};
    CHECK(discrepancy(zero) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(discrepancy_bruteforce(zero) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS(discrepancy({}));
    CHECK_THROWS(discrepancy({1.0}));
    CHECK_THROWS(discrepancy({-0.1}));

    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> pts;
        long n = 1 + long(rng() % 64);
        for (long i = 0; i < n; ++i) pts.push_back(std::min(unif(rng), 0.999999999));
        double sorted_val = discrepancy(pts);
        double brute = discrepancy_bruteforce(pts);
        CHECK(std::abs(sorted_val - brute) <= 1e-12);
    }
}

TEST_CASE("lil_experiment") {
    auto r = lil_experiment(RatioPair(3, 2), rat("355/1130207"), 1 << 12);
    REQUIRE(!r.checkpoints.empty());
    CHECK(r.final().N == 1 << 12);
    CHECK(r.running_max > 0.0);
    // running max is monotone under extension
    auto r2 = lil_experiment(RatioPair(3, 2), rat("355/1130207"), 1 << 13);
    CHECK(r2.running_max >= r.running_max);

    // degenerate orbit at 0: every point is 0 and D_N stays 1
    auto z = lil_experiment(RatioPair(3, 2), Rational(0), 64);
    for (const auto& c : z.checkpoints) CHECK(c.d_n == doctest::Approx(1.0));

    // periodic orbit: D_N bounded away from 0
    auto per = lil_experiment(RatioPair(2, 1), rat("1/3"), 1 << 10);
    CHECK(per.final().d_n > 0.3);

    CHECK_THROWS(lil_experiment(RatioPair(3, 2), rat("1/2"), 8));
}

TEST_CASE("csv emission") {
    std::ostringstream os;
    write_orbit_csv(os, orbit(RatioPair(3, 2), rat("1/2"), 2));
    CHECK(os.str() == "k,value\n1,0.75\n2,0.125\n");

    std::ostringstream os2;
    auto r = lil_experiment(RatioPair(3, 2), rat("1/7"), 32);
    write_lil_csv(os2, r);
    std::string s = os2.str();
    CHECK(s.substr(0, 16) == "N,d_n,lil_ratio\n");
    CHECK(s.find("\n16,") != std::string::npos);
    CHECK(s.find("\n32,") != std::string::npos);
}
