#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "bautinlab/bounds.hpp"

using namespace bautinlab;

namespace {

long double parse_ld(const std::string& s) { return strtold(s.c_str(), nullptr); }

// 12 significant digits with the stated direction: the report must enclose the
// independently computed value from the directed side.
void check_directed(const BoundReport& r, long double reference) {
    long double v = parse_ld(r.value);
    if (r.rounded == "up") {
        CHECK(v >= reference * (reference > 0 ? 1 - 1e-15L : 1 + 1e-15L));
        CHECK(v <= reference * (1 + 5e-12L));
    } else {
        CHECK(v <= reference * (1 + 1e-15L));
        CHECK(v >= reference * (1 - 5e-12L));
    }
    CHECK(std::fabs(static_cast<double>(v) - r.approx) <= 1e-9 * std::fabs(r.approx) + 1e-300);
}

}  // namespace

TEST_CASE("zero_bound_disc worked value and monotonicity") {
    auto r = zero_bound_disc(3, Rat(1), Rat(1), Rat(1));
    check_directed(r, 15.0L * logl(12.0L));
    CHECK(r.rounded == "up");
    CHECK(r.precision_digits >= 50);

    // shrinking R can only grow the bound
    auto smaller = zero_bound_disc(3, Rat(1), Rat(1), make_rat(1, 2));
    CHECK(parse_ld(smaller.value) >= parse_ld(r.value));
    // the two branches agree at R = 1
    auto above = zero_bound_disc(3, Rat(1), Rat(1), Rat(2));
    check_directed(above, 15.0L * logl(12.0L));
    // monotone in b, c, B
    CHECK(parse_ld(zero_bound_disc(4, Rat(1), Rat(1), Rat(1)).value) > parse_ld(r.value));
    CHECK(parse_ld(zero_bound_disc(3, Rat(2), Rat(1), Rat(1)).value) > parse_ld(r.value));
    CHECK(parse_ld(zero_bound_disc(3, Rat(1), Rat(3), Rat(1)).value) > parse_ld(r.value));
}

TEST_CASE("small_disc_radius worked value") {
    auto r = small_disc_radius(3, Rat(1), Rat(1), Rat(1));
    check_directed(r, 1.0L / (4.0L * expl(32.0L)));
    CHECK(r.rounded == "down");
    // increasing c decreases rho
    auto r2 = small_disc_radius(3, Rat(2), Rat(1), Rat(1));
    CHECK(parse_ld(r2.value) < parse_ld(r.value));
    // rho <= R / (2 e^{12}) always
    for (long b : {1L, 2L, 5L}) {
        auto rb = small_disc_radius(b, Rat(1), Rat(1), Rat(1));
        CHECK(parse_ld(rb.value) <= 1.0L / (2.0L * expl(12.0L)));
    }
}

TEST_CASE("c_bound worked value") {
    auto r = c_bound(4, Rat(1), Rat(1), 3, Rat(1));
    REQUIRE(r.exact);
    CHECK(r.exact_value == Rat(32));
    // doubling delta halves the bound
    auto r2 = c_bound(4, Rat(1), Rat(1), 3, Rat(2));
    REQUIRE(r2.exact);
    CHECK(r2.exact_value * 2 == r.exact_value);
    // odd sigma exercises the sqrt path
    auto r3 = c_bound(3, Rat(1), Rat(1), 2, Rat(1));
    check_directed(r3, 3.0L * 3.0L);  // 3 * (sqrt 3)^2
}

TEST_CASE("z_bound_unit worked value") {
    auto r = z_bound_unit(3, 4, make_rat(1, 12));
    check_directed(r, 15.0L * logl(24580.0L));
    // argument of the log is at least 4
    auto tiny = z_bound_unit(1, 1, Rat(1000000));
    CHECK(parse_ld(tiny.value) >= 5.0L * logl(4.0L) * 0.999999L);
}

TEST_CASE("z_bound_general worked value and monotonicity in Delta") {
    auto r = z_bound_general(1, 3, make_rat(1, 12));
    check_directed(r, 15.0L * logl(4.0L + 8.0L * 256.0L * 12.0L));
    // at d=1, sigma=4 the unit-disc form coincides: e^{sigma log sigma} = 256 = e^{2(d+1)^2 log(d+1)}
    auto u = z_bound_unit(3, 4, make_rat(1, 12));
    CHECK(r.value == u.value);
    // integer-coefficient case Delta >= 1 caps the bound
    auto one = z_bound_general(1, 3, Rat(1));
    CHECK(parse_ld(one.value) <= parse_ld(r.value));
    auto big = z_bound_general(1, 3, Rat(100));
    CHECK(parse_ld(big.value) <= parse_ld(one.value));
}

TEST_CASE("delta_lower_rational exact values") {
    auto r = delta_lower_rational(1, 5, Int(2));
    REQUIRE(r.exact);
    CHECK(r.exact_value == make_rat(1, 1024));
    auto h1 = delta_lower_rational(2, 7, Int(1));
    CHECK(h1.exact_value == Rat(1));
    // theta <= nu means the density variant is at least the plain bound
    auto dens = delta_lower_rational(1, 5, Int(2), 3);
    CHECK(dens.exact_value >= r.exact_value);
}

TEST_CASE("composite_T proof-chain value") {
    UPoly R_poly(std::vector<Rat>{Rat(0), Rat(2), Rat(1)});  // x^2 + 2x
    UPoly S_poly(std::vector<Rat>{Rat(0), Rat(1)});          // x
    auto r = composite_T(1, R_poly, S_poly);
    REQUIRE(r.exact);
    CHECK(r.exact_value == Rat(12160));
    CHECK(r.value == "12160");

    // S == 0 degenerates to 10 R^2(2d) + 20 R(2d) (d+1)^3
    auto r0 = composite_T(1, R_poly, UPoly());
    CHECK(r0.exact_value == Rat(10 * 64 + 20 * 8 * 8));

    // monotone in each coefficient of R and S
    UPoly R_up(std::vector<Rat>{Rat(1), Rat(2), Rat(1)});
    CHECK(composite_T(1, R_up, S_poly).exact_value > r.exact_value);
    UPoly S_up(std::vector<Rat>{Rat(0), Rat(2)});
    CHECK(composite_T(1, R_poly, S_up).exact_value > r.exact_value);

    CHECK_THROWS(composite_T(1, UPoly(std::vector<Rat>{Rat(-1)}), S_poly));
}

TEST_CASE("lacunary bounds exact values") {
    auto nu_only = lacunary_bounds(3, Rat(3), std::nullopt);
    REQUIRE(nu_only.nu.exact);
    CHECK(nu_only.nu.exact_value == Rat(19683));
    CHECK(!nu_only.zeros.has_value());

    auto full = lacunary_bounds(2, Rat(3), Rat(1));
    REQUIRE(full.zeros.has_value());
    REQUIRE(full.zeros->exact);
    CHECK(full.zeros->exact_value == Rat(872939520));
    CHECK(full.zeros->value == "872939520");

    // monotone in d, q, p
    CHECK(lacunary_bounds(3, Rat(3), Rat(1)).zeros->exact_value > full.zeros->exact_value);
    CHECK(lacunary_bounds(2, Rat(4), Rat(1)).zeros->exact_value > full.zeros->exact_value);
    CHECK(lacunary_bounds(2, Rat(3), Rat(2)).zeros->exact_value > full.zeros->exact_value);

    // rational q exercises the directed transcendental path
    auto rq = lacunary_bounds(2, make_rat(5, 2), Rat(1));
    long double expect = powl(2.0L, 6.25L);
    check_directed(rq.nu, expect);
    CHECK_THROWS(lacunary_bounds(2, Rat(2), std::nullopt));
}

TEST_CASE("random_epsilon worked value") {
    auto r = random_epsilon(1, make_rat(1, 2), 2, 1);
    long double pi = 3.14159265358979323846L;
    check_directed(r, 1.5L / (4.0L * pi * pi));
    // p -> 1 sends epsilon to 0
    auto close = random_epsilon(1, make_rat(999, 1000), 2, 1);
    CHECK(parse_ld(close.value) < parse_ld(r.value));
    // the arity/degree pair used for the determinant polynomial
    auto det_eps = random_epsilon(2, make_rat(1, 2), 2 * 2 + 2, 2 * 9 / 2);
    CHECK(parse_ld(det_eps.value) > 0);
    CHECK(parse_ld(det_eps.value) < 1);
}

TEST_CASE("floor_log and rational_point_bound") {
    CHECK(floor_log(Rat(22027)) == 10);
    CHECK(floor_log(Rat(3)) == 1);
    CHECK(floor_log(Rat(2)) == 0);

    UPoly zsq(std::vector<Rat>{Rat(0), Rat(0), Rat(1)});  // x^2
    UPoly lin(std::vector<Rat>{Rat(0), Rat(1)});          // x
    auto r = rational_point_bound(Rat(22027), zsq, Rat(1), lin);
    REQUIRE(r.report.exact);
    CHECK(r.report.exact_value == Rat(1000));
    CHECK(r.log_floor == 10);
    CHECK(r.alpha == 3);

    // Q == 1 reduces to Z(floor log T)
    UPoly one(std::vector<Rat>{Rat(1)});
    auto rz = rational_point_bound(Rat(22027), zsq, Rat(1), one);
    CHECK(rz.report.exact_value == Rat(100));
    // doubling K doubles the bound
    auto r2 = rational_point_bound(Rat(22027), zsq, Rat(2), one);
    CHECK(r2.report.exact_value == Rat(200));
}

TEST_CASE("pipeline consistency: lower-bounded Delta never shrinks the count bound") {
    // if the true Delta respects the lower bound, plugging the lower bound in
    // gives a count bound at least as large
    Rat true_delta = make_rat(1, 12);
    auto lower = delta_lower_rational(1, 5, Int(6));
    REQUIRE(lower.exact_value <= true_delta);
    auto with_lower = z_bound_general(1, 3, lower.exact_value);
    auto with_true = z_bound_general(1, 3, true_delta);
    CHECK(parse_ld(with_lower.value) >= parse_ld(with_true.value));
}

TEST_CASE("composite envelope dominates the direct count bound") {
    // with valid growth envelopes (nu_d <= R(d), h_l <= e^{S(l)}) the
    // composite polynomial bound sits above the direct evaluation
    UPoly R_poly(std::vector<Rat>{Rat(0), Rat(2), Rat(1)});  // x^2 + 2x >= nu_x for exp
    UPoly S_poly(std::vector<Rat>{Rat(0), Rat(0), Rat(1)});  // x^2 >= log h_x = log x!
    auto t1 = composite_T(1, R_poly, S_poly);
    auto direct = z_bound_general(1, 3, make_rat(1, 12));
    CHECK(rat_double(t1.exact_value) >= parse_ld(direct.value));
}

TEST_CASE("remez check on closed forms") {
    // P(x) = x on [-1,1], window [-1/2,1/2]: 1 < 8 * (1/2)
    MultiPoly p;
    p.nvars = 1;
    p.terms = {{{1}, Rat(1)}};
    RemezWindow w{{{make_rat(-1, 2), make_rat(1, 2)}}};
    auto res = remez_check(p, w, 1, 65);
    CHECK(res.holds);
    CHECK(res.factor == Rat(8));
    CHECK(res.sup_cube == doctest::Approx(1.0));
    CHECK(res.sup_window == doctest::Approx(0.5));

    // constants always hold once the factor exceeds 1
    MultiPoly c;
    c.nvars = 1;
    c.terms = {{{0}, make_rat(3, 7)}};
    auto resc = remez_check(c, w, 1, 65);
    CHECK(resc.holds);
    CHECK(resc.sup_cube == doctest::Approx(resc.sup_window));

    // empty window grid is inconclusive
    RemezWindow tiny{{{make_rat(1, 1000), make_rat(2, 1000)}}};
    auto rest = remez_check(p, tiny, 1, 5);
    CHECK(rest.inconclusive);
}

TEST_CASE("bound reports echo their inputs") {
    auto r = z_bound_unit(3, 4, make_rat(1, 12));
    REQUIRE(r.inputs.size() == 3);
    CHECK(r.inputs[0] == std::pair<std::string, std::string>{"b", "3"});
    CHECK(r.inputs[2].second == "1/12");
    CHECK(!r.anchor.empty());
}
