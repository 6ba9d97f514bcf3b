#include <doctest.h>

#include <tuple>

#include "bautinlab/zero_oracle.hpp"
#include "oracles.hpp"

using namespace bautinlab;

namespace {

// square(d) polynomial from a flat (i, j, value) list
CurvePolynomial make_poly(int d, std::initializer_list<std::tuple<int, int, Rat>> entries) {
    CurvePolynomial p;
    p.family = MonomialFamily::square(d);
    p.lambda.assign(static_cast<size_t>(p.family.size()), Rat(0));
    auto cols = p.family.columns();
    for (const auto& [i, j, v] : entries)
        for (size_t c = 0; c < cols.size(); ++c)
            if (cols[c].z_exp == i && cols[c].f_exp == j) p.lambda[c] = v;
    return p;
}

}  // namespace

TEST_CASE("composition by Horner matches the power-table route") {
    auto f = oracle::exp_minus_one(12);
    auto table = power_table(f, 2, 12);
    auto p = make_poly(2, {{0, 0, make_rat(1, 3)}, {1, 1, Rat(-2)}, {2, 2, make_rat(5, 7)}, {0, 2, Rat(1)}});
    auto g = compose_series(p, f, 12);
    auto cols = p.family.columns();
    for (int k = 0; k <= 12; ++k) {
        Rat expect(0);
        for (size_t c = 0; c < cols.size(); ++c)
            expect += p.lambda[c] * table.coeff_or_zero(k - cols[c].z_exp, cols[c].f_exp);
        CHECK(g[static_cast<size_t>(k)] == expect);
    }
}

TEST_CASE("multiplicity at the origin, worked examples") {
    auto f = oracle::exp_minus_one(12);
    // y - z - z^2/2 - z^3/6 kills the expansion through order 3
    auto p = make_poly(3, {{0, 1, Rat(1)}, {1, 0, Rat(-1)}, {2, 0, make_rat(-1, 2)}, {3, 0, make_rat(-1, 6)}});
    auto m = multiplicity_at_origin(p, f, 12);
    REQUIRE(m.has_value());
    CHECK(*m == 4);

    auto constant = make_poly(1, {{0, 0, Rat(1)}});
    CHECK(*multiplicity_at_origin(constant, f, 12) == 0);

    // the kernel witness reaches exactly the stabilization index
    auto w = witness_polynomial(f, MonomialFamily::square(1), 12);
    CurvePolynomial wp{MonomialFamily::square(1), w.lambda};
    CHECK(*multiplicity_at_origin(wp, f, 12) == 3);

    // annihilating polynomial of f = z exceeds every finite order
    auto z = oracle::identity_series(12);
    auto ann = make_poly(1, {{0, 1, Rat(1)}, {1, 0, Rat(-1)}});
    CHECK(!multiplicity_at_origin(ann, z, 12).has_value());
}

TEST_CASE("zero counts on the quarter disc for e^z - 1") {
    auto f = oracle::exp_minus_one(96);
    Rat quarter = make_rat(1, 4);

    // e^z - 1 - z has a double zero at the origin and nothing else nearby
    auto p1 = make_poly(1, {{0, 1, Rat(1)}, {1, 0, Rat(-1)}});
    auto c1 = count_zeros_disc(p1, f, quarter);
    CHECK(c1.certified());
    CHECK(c1.count == 2);
    CHECK(c1.companion == 2);
    CHECK(c1.margin > 0);

    // e^z - 1 = 3 has no solution in the quarter disc
    auto p2 = make_poly(1, {{0, 1, Rat(1)}, {0, 0, Rat(-3)}});
    auto c2 = count_zeros_disc(p2, f, quarter);
    CHECK(c2.certified());
    CHECK(c2.count == 0);
    CHECK(c2.companion == 0);

    // e^z - 1 itself has the single simple zero
    auto p3 = make_poly(1, {{0, 1, Rat(1)}});
    auto c3 = count_zeros_disc(p3, f, quarter);
    CHECK(c3.certified());
    CHECK(c3.count == 1);
    CHECK(c3.companion == 1);
}

TEST_CASE("certified counts are stable under a larger truncation") {
    auto f = oracle::exp_minus_one(140);
    Rat quarter = make_rat(1, 4);
    auto p = make_poly(1, {{0, 1, Rat(1)}, {1, 0, Rat(-1)}});
    auto base = count_zeros_disc(p, f, quarter, 64);
    auto more = count_zeros_disc(p, f, quarter, 74);
    REQUIRE(base.certified());
    REQUIRE(more.certified());
    CHECK(base.count == more.count);
}

TEST_CASE("winding equals companion count on certified instances") {
    auto f = oracle::exp_minus_one(96);
    for (std::uint64_t seed : {3ULL, 4ULL, 5ULL, 6ULL}) {
        auto e = empirical_Z(f, 1, 3, make_rat(1, 4), seed);
        for (const auto& zc : e.counts) {
            if (!zc.certified()) continue;
            CHECK(zc.winding == zc.companion);
            CHECK(zc.count == zc.winding);
        }
    }
}

TEST_CASE("empirical_Z reaches the witness multiplicity") {
    auto f = oracle::exp_minus_one(96);
    auto e = empirical_Z(f, 1, 5, make_rat(1, 4));
    CHECK(e.certified_samples > 0);
    CHECK(e.max_count >= 3);
}

TEST_CASE("empirical_Z grows with the trial budget") {
    auto f = oracle::exp_minus_one(96);
    auto small = empirical_Z(f, 1, 2, make_rat(1, 4), 9);
    auto large = empirical_Z(f, 1, 8, make_rat(1, 4), 9);
    CHECK(large.max_count >= small.max_count);
}

TEST_CASE("multiplicity at origin never exceeds a certified disc count") {
    auto f = oracle::exp_minus_one(96);
    auto p = make_poly(1, {{0, 1, Rat(1)}, {1, 0, Rat(-1)}, {1, 1, make_rat(1, 8)}});
    auto m = multiplicity_at_origin(p, f, 90);
    auto zc = count_zeros_disc(p, f, make_rat(1, 4));
    REQUIRE(m.has_value());
    REQUIRE(zc.certified());
    CHECK(*m <= zc.count);
}

TEST_CASE("a root sitting on the contour triggers a documented radius nudge") {
    auto f = oracle::exp_minus_one(96);
    // z - 1/4 vanishes exactly on the quarter circle
    auto p = make_poly(1, {{1, 0, Rat(1)}, {0, 0, make_rat(-1, 4)}});
    auto zc = count_zeros_disc(p, f, make_rat(1, 4));
    CHECK(zc.nudges > 0);
    CHECK(zc.radius < make_rat(1, 4));
    CHECK(zc.certified());
    CHECK(zc.count == 0);  // the root moved outside the shrunken contour
}

TEST_CASE("identically vanishing composition is rejected") {
    auto z = oracle::identity_series(24);
    auto ann = make_poly(1, {{0, 1, Rat(1)}, {1, 0, Rat(-1)}});
    CHECK_THROWS_AS(count_zeros_disc(ann, z, make_rat(1, 4)), std::domain_error);
}

TEST_CASE("radius preconditions") {
    auto f = oracle::exp_minus_one(64);
    auto p = make_poly(1, {{0, 1, Rat(1)}});
    CHECK_THROWS_AS(count_zeros_disc(p, f, Rat(1)), RadiusError);
    CHECK_THROWS_AS(count_zeros_disc(p, f, Rat(0)), RadiusError);
}
