#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "bautinlab/bounds.hpp"
#include "bautinlab/diophantine.hpp"
#include "oracles.hpp"

using namespace bautinlab;

namespace {

// nearest fractions with denominator <= T around v, by full enumeration
FareyNeighbors brute_neighbors(const Rat& v, long T) {
    Rat below, above;
    bool has_b = false, has_a = false;
    for (long t = 1; t <= T; ++t) {
        Int lo_n = Int(v.get_num() * t) / v.get_den() - 2;
        for (Int s = lo_n; s <= lo_n + 5; ++s) {
            Rat y = make_rat(s, Int(t));
            if (y <= v && (!has_b || y > below)) {
                below = y;
                has_b = true;
            }
            if (y >= v && (!has_a || y < above)) {
                above = y;
                has_a = true;
            }
        }
    }
    return {below, above};
}

std::uint64_t mix(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

TEST_CASE("height of rationals and points") {
    CHECK(height(make_rat(3, 7)) == 7);
    CHECK(height(make_rat(-22, 7)) == 22);
    CHECK(height(Rat(0)) == 1);
    CHECK(height_point(make_rat(1, 2), make_rat(-2, 3)) == 3);
}

TEST_CASE("farey neighbors agree with brute force") {
    std::uint64_t s = 2024;
    for (int trial = 0; trial < 200; ++trial) {
        long num = static_cast<long>(mix(s) % 4001) - 2000;
        long den = static_cast<long>(mix(s) % 999) + 2;
        long T = static_cast<long>(mix(s) % 29) + 2;
        Rat v = make_rat(num, den);
        auto fast = farey_neighbors(v, Int(T));
        auto slow = brute_neighbors(v, T);
        CHECK(fast.below == slow.below);
        CHECK(fast.above == slow.above);
        CHECK(fast.below <= v);
        CHECK(fast.above >= v);
    }
    // exact representation within the budget
    auto hit = farey_neighbors(make_rat(2, 5), Int(10));
    CHECK(hit.below == make_rat(2, 5));
    CHECK(hit.above == make_rat(2, 5));
}

TEST_CASE("prepared evaluator matches rational Horner") {
    auto f = oracle::exp_minus_one(24);
    auto ev = SeriesEvaluator::prepare(f, 24);
    std::uint64_t s = 77;
    for (int trial = 0; trial < 20; ++trial) {
        long num = static_cast<long>(mix(s) % 401) - 200;
        long den = static_cast<long>(mix(s) % 800) + 801;
        Rat x = make_rat(num, den);
        Rat direct(0);
        for (int k = 24; k >= 0; --k) direct = direct * x + f.coeffs[static_cast<size_t>(k)];
        CHECK(ev.eval(x) == direct);
    }
}

TEST_CASE("graph scan of e^x - 1 finds only the origin") {
    auto f = oracle::exp_minus_one(80);
    auto rep = scan_graph_points(f, 50, 80);
    REQUIRE(rep.certified.size() == 1);
    CHECK(rep.certified[0].first == 0);
    CHECK(rep.certified[0].second == 0);
    CHECK(rep.unresolved.empty());
    CHECK(rep.excluded == rep.enumerated - 1);
}

TEST_CASE("height cap one reduces the scan to the origin") {
    auto f = oracle::exp_minus_one(40);
    auto rep = scan_graph_points(f, 1, 40);
    CHECK(rep.enumerated == 1);
    REQUIRE(rep.certified.size() == 1);
    CHECK(rep.certified[0].first == 0);
}

TEST_CASE("certified plus unresolved is monotone in the height cap") {
    auto f = oracle::exp_minus_one(60);
    auto small = scan_graph_points(f, 20, 60);
    auto large = scan_graph_points(f, 60, 60);
    CHECK(large.certified.size() + large.unresolved.size() >=
          small.certified.size() + small.unresolved.size());
    CHECK(large.enumerated > small.enumerated);
}

TEST_CASE("enumeration density tracks the quadratic asymptotic") {
    auto f = oracle::exp_minus_one(60);
    const long T = 200;
    auto rep = scan_graph_points(f, T, 60);
    double positives = (static_cast<double>(rep.enumerated) - 1) / 2;
    double expect = 3.0 / (M_PI * M_PI) * T * T / 4.0;
    CHECK(std::fabs(positives - expect) / expect < 0.10);
}

TEST_CASE("exclusion certificates survive a deeper truncation") {
    auto f = oracle::exp_minus_one(100);
    auto ev = SeriesEvaluator::prepare(f, 60);
    auto deeper = SeriesEvaluator::prepare(f, 80);
    std::uint64_t s = 5150;
    int checked = 0;
    while (checked < 25) {
        long q = static_cast<long>(mix(s) % 49) + 2;
        long p = static_cast<long>(mix(s) % (2 * (q / 4) + 1)) - q / 4;
        if (int_gcd(Int(p), Int(q)) != 1) continue;
        Rat x = make_rat(p, q);
        if (rat_abs(x) > make_rat(1, 4)) continue;
        auto first = scan_point(f, ev, Int(50), x);
        if (first.status != PointStatus::Excluded) continue;
        auto again = scan_point(f, deeper, Int(50), x);
        CHECK(again.status == PointStatus::Excluded);
        CHECK(again.margin > 0);
        ++checked;
    }
}

TEST_CASE("scan counts sit under the composed point bound") {
    // with the unit normalization K = 1, Q = 1 and a polynomial count bound
    // Z(x) = x^2 + 2x, the scanned counts stay below Z(floor(log T))
    auto f = oracle::exp_minus_one(80);
    bautinlab::UPoly zpoly(std::vector<Rat>{Rat(0), Rat(2), Rat(1)});
    bautinlab::UPoly one(std::vector<Rat>{Rat(1)});
    for (long T : {100L, 1000L}) {
        auto rep = scan_graph_points(f, T, 64);
        auto bound = bautinlab::rational_point_bound(Rat(T), zpoly, Rat(1), one);
        Rat count(static_cast<long>(rep.certified.size() + rep.unresolved.size()));
        CHECK(count <= bound.report.exact_value);
    }
}

TEST_CASE("precision precondition is enforced") {
    auto f = oracle::exp_minus_one(30);
    CHECK_THROWS_AS(scan_graph_points(f, 5000, 4), PrecisionError);
}

TEST_CASE("log-power fit") {
    // constant counts degenerate to alpha = 0
    auto flat = fit_log_power({{10, 1}, {100, 1}, {1000, 1}});
    CHECK(flat.alpha == 0);
    CHECK(flat.beta == 1);

    // synthetic beta (log T)^alpha data round-trips
    double alpha = 1.75, beta = 2.5;
    std::vector<std::pair<double, double>> pts;
    for (double t : {10.0, 100.0, 1000.0, 10000.0})
        pts.push_back({t, beta * std::pow(std::log(t), alpha)});
    auto fit = fit_log_power(pts);
    CHECK(std::fabs(fit.alpha - alpha) < 1e-9);
    CHECK(std::fabs(fit.beta - beta) < 1e-9);
    CHECK(fit.max_residual < 1e-9);

    // permutation invariance
    std::swap(pts[0], pts[3]);
    auto fit2 = fit_log_power(pts);
    CHECK(fit2.alpha == doctest::Approx(fit.alpha).epsilon(1e-12));
    CHECK(fit2.max_residual == doctest::Approx(fit.max_residual).epsilon(1e-12));

    CHECK_THROWS(fit_log_power({{10, 1}, {100, 2}}));
}
