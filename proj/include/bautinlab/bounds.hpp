#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bautinlab/rational.hpp"
#include "bautinlab/real.hpp"
#include "bautinlab/upoly.hpp"

namespace bautinlab {

/// One evaluated closed-form bound, with inputs echoed and the value rounded
/// in its conservative direction (up for count/size bounds, down for radii
/// and lower bounds).
struct BoundReport {
    std::string formula;
    std::string anchor;  // the formula rendered as text
    std::vector<std::pair<std::string, std::string>> inputs;
    bool exact = false;
    Rat exact_value;
    std::string value;    // 12 significant digits, directed
    std::string rounded;  // "up" or "down"
    double approx = 0;
    int precision_digits = 0;
};

namespace detail {

constexpr int kReportDigits = 12;

inline int digits_of(mpfr_prec_t prec) { return static_cast<int>(static_cast<double>(prec) * 0.30103); }

inline BoundReport finish_real(std::string formula, std::string anchor,
                               std::vector<std::pair<std::string, std::string>> inputs,
                               const Real& v, mpfr_rnd_t rnd) {
    BoundReport r;
    r.formula = std::move(formula);
    r.anchor = std::move(anchor);
    r.inputs = std::move(inputs);
    r.value = format_directed(v, kReportDigits, rnd);
    r.rounded = rnd == MPFR_RNDU ? "up" : "down";
    r.approx = v.to_double();
    r.precision_digits = digits_of(v.prec());
    return r;
}

inline BoundReport finish_exact(std::string formula, std::string anchor,
                                std::vector<std::pair<std::string, std::string>> inputs, Rat v,
                                mpfr_rnd_t rnd, mpfr_prec_t prec) {
    BoundReport r = finish_real(std::move(formula), std::move(anchor), std::move(inputs),
                                Real::of_rat(v, prec, rnd), rnd);
    r.exact = true;
    if (v.get_den() == 1) r.value = v.get_num().get_str();
    r.exact_value = std::move(v);
    return r;
}

inline Rat max_rat(const Rat& a, const Rat& b) { return a >= b ? a : b; }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

}  // namespace detail

/// 5 b log(4 + 2 c (b+1) B / R^b) for R <= 1, and with the R^b factor dropped
/// for R >= 1; a count bound for the disc of radius R/4.
inline BoundReport zero_bound_disc(long b, const Rat& c, const Rat& B, const Rat& R,
                                   mpfr_prec_t prec = 200) {
    if (b < 1 || c <= 0 || B <= 0 || R <= 0) throw std::invalid_argument("zero_bound_disc: bad inputs");
    Rat arg = 4 + 2 * c * (b + 1) * B * (R <= 1 ? rat_pow(R, -b) : Rat(1));
    Real v = mul_rat(log_rat(arg, prec, MPFR_RNDU), Rat(5 * b), MPFR_RNDU);
    return detail::finish_real("zero_bound_disc", "5*b*log(4+2*c*(b+1)*B/R^b) [R<=1]; 5*b*log(4+2*c*(b+1)*B) [R>=1]",
                               {{"b", std::to_string(b)}, {"c", rat_str(c)}, {"B", rat_str(B)}, {"R", rat_str(R)}},
                               v, MPFR_RNDU);
}

/// Radius rho such that at most b zeros live in the disc of radius rho.
inline BoundReport small_disc_radius(long b, const Rat& c, const Rat& B, const Rat& R,
                                     mpfr_prec_t prec = 200) {
    if (b < 1 || c <= 0 || B <= 0 || R <= 0) throw std::invalid_argument("small_disc_radius: bad inputs");
    Rat inner = c * (b + 1) * B * (R <= 1 ? rat_pow(R, -b) : Rat(1));
    Rat m = detail::max_rat(Rat(2), inner);
    Real den = mul_rat(exp_rat(Rat(10 * b + 2), prec, MPFR_RNDU), m, MPFR_RNDU);
    Real rho = div_rat_by(R, den, MPFR_RNDD);
    return detail::finish_real("small_disc_radius", "R/(e^(10*b+2)*max(2,c*(b+1)*B*max(1/R,1)^b))",
                               {{"b", std::to_string(b)}, {"c", rat_str(c)}, {"B", rat_str(B)}, {"R", rat_str(R)}},
                               rho, MPFR_RNDD);
}

/// Bound on the norm constant c of the stabilized family:
/// sigma (B sqrt(sigma))^(sigma-1) / (delta R^(beta (sigma-1))).
inline BoundReport c_bound(long sigma, const Rat& B, const Rat& R, long b, const Rat& delta,
                           mpfr_prec_t prec = 200) {
    if (sigma < 1 || delta <= 0 || B <= 0 || R <= 0) throw std::invalid_argument("c_bound: bad inputs");
    long beta_exp = R <= 1 ? b * (sigma - 1) : sigma * (sigma - 1) / 2;
    Rat part = Rat(sigma) * rat_pow(B, sigma - 1) / (delta * rat_pow(R, beta_exp));
    auto inputs = std::vector<std::pair<std::string, std::string>>{
        {"sigma", std::to_string(sigma)}, {"B", rat_str(B)}, {"R", rat_str(R)},
        {"b", std::to_string(b)},         {"delta", rat_str(delta)}};
    const char* anchor = "sigma*(B*sqrt(sigma))^(sigma-1)/(delta*R^(beta*(sigma-1))), beta=b [R<=1], sigma/2 [R>=1]";
    if ((sigma - 1) % 2 == 0) {
        Rat v = part * Rat(int_pow(Int(sigma), static_cast<unsigned long>((sigma - 1) / 2)));
        return detail::finish_exact("c_bound", anchor, inputs, v, MPFR_RNDU, prec);
    }
    if (mpz_perfect_square_p(Int(sigma).get_mpz_t())) {
        Int root;
        mpz_sqrt(root.get_mpz_t(), Int(sigma).get_mpz_t());
        Rat v = part * Rat(int_pow(root, static_cast<unsigned long>(sigma - 1)));
        return detail::finish_exact("c_bound", anchor, inputs, v, MPFR_RNDU, prec);
    }
    part *= Rat(int_pow(Int(sigma), static_cast<unsigned long>((sigma - 2) / 2)));
    Real v = mul_rat(sqrt_long(sigma, prec, MPFR_RNDU), part, MPFR_RNDU);
    return detail::finish_real("c_bound", anchor, inputs, v, MPFR_RNDU);
}

/// Count bound on the quarter disc for R = B = 1:
/// 5 b log(4 + 2 (b+1) sigma^sigma / delta).
inline BoundReport z_bound_unit(long b, long sigma, const Rat& delta, mpfr_prec_t prec = 200) {
    if (b < 1 || sigma < 1 || delta <= 0) throw std::invalid_argument("z_bound_unit: bad inputs");
    Rat arg = 4 + 2 * Rat(b + 1) * Rat(int_pow(Int(sigma), static_cast<unsigned long>(sigma))) / delta;
    Real v = mul_rat(log_rat(arg, prec, MPFR_RNDU), Rat(5 * b), MPFR_RNDU);
    return detail::finish_real("z_bound_unit", "5*b*log(4+2*(b+1)*e^(sigma*log(sigma))/delta)",
                               {{"b", std::to_string(b)}, {"sigma", std::to_string(sigma)}, {"delta", rat_str(delta)}},
                               v, MPFR_RNDU);
}

/// Count bound on the quarter disc from any nonzero minor of the power block:
/// 5 b log(4 + 2 (b+1) (d+1)^(2 (d+1)^2) / Delta).
inline BoundReport z_bound_general(long d, long b, const Rat& Delta, mpfr_prec_t prec = 200) {
    if (d < 1 || b < 1 || Delta <= 0) throw std::invalid_argument("z_bound_general: bad inputs");
    unsigned long e = static_cast<unsigned long>(2 * (d + 1) * (d + 1));
    Rat arg = 4 + 2 * Rat(b + 1) * Rat(int_pow(Int(d + 1), e)) / Delta;
    Real v = mul_rat(log_rat(arg, prec, MPFR_RNDU), Rat(5 * b), MPFR_RNDU);
    return detail::finish_real("z_bound_general", "5*b*log(4+2*(b+1)*e^(2*(d+1)^2*log(d+1))/Delta)",
                               {{"d", std::to_string(d)}, {"b", std::to_string(b)}, {"Delta", rat_str(Delta)}},
                               v, MPFR_RNDU);
}

/// Lower bound h^(-d^2 (d+1) nu) on any nonzero minor of the power block for
/// rational coefficients; passing theta sharpens nu to the nonzero count.
inline BoundReport delta_lower_rational(long d, long nu, const Int& h, std::optional<long> theta = {},
                                        mpfr_prec_t prec = 200) {
    if (d < 1 || nu < 1 || h < 1) throw std::invalid_argument("delta_lower_rational: bad inputs");
    long e = theta.has_value() ? *theta : nu;
    if (e < 1) throw std::invalid_argument("delta_lower_rational: bad theta");
    unsigned long expo = static_cast<unsigned long>(d) * static_cast<unsigned long>(d) *
                         static_cast<unsigned long>(d + 1) * static_cast<unsigned long>(e);
    Rat v = make_rat(Int(1), int_pow(h, expo));
    std::vector<std::pair<std::string, std::string>> inputs = {
        {"d", std::to_string(d)}, {"nu", std::to_string(nu)}, {"h", h.get_str()}};
    if (theta) inputs.emplace_back("theta", std::to_string(*theta));
    return detail::finish_exact("delta_lower_rational", "h^(-d^2*(d+1)*nu)  (theta in place of nu when given)",
                                inputs, v, MPFR_RNDD, prec);
}

/// Composite polynomial count bound from growth envelopes nu_d <= R(d),
/// h_l <= e^S(l): T(d) = 10 R(2d)^2 + 10 R(2d) (2 (d+1)^3 + U(d)) with
/// U(d) = S(R(2d)) d^2 (d+1) R(2d). Exact rational arithmetic throughout.
inline BoundReport composite_T(long d, const UPoly& R_poly, const UPoly& S_poly, mpfr_prec_t prec = 200) {
    if (d < 1) throw std::invalid_argument("composite_T: degree must be >= 1");
    for (const Rat& c : R_poly.c)
        if (c < 0) throw std::invalid_argument("composite_T: R must have nonnegative coefficients");
    for (const Rat& c : S_poly.c)
        if (c < 0) throw std::invalid_argument("composite_T: S must have nonnegative coefficients");
    Rat r2d = R_poly.eval(Rat(2 * d));
    Rat u = S_poly.eval(r2d) * Rat(d) * Rat(d) * Rat(d + 1) * r2d;
    Rat t = 10 * r2d * r2d + 10 * r2d * (2 * rat_pow(Rat(d + 1), 3) + u);
    return detail::finish_exact("composite_T", "10*R(2d)^2+10*R(2d)*(2*(d+1)^3+U(d)), U(d)=S(R(2d))*d^2*(d+1)*R(2d)",
                                {{"d", std::to_string(d)},
                                 {"R(2d)", rat_str(r2d)},
                                 {"U(d)", rat_str(u)}},
                                t, MPFR_RNDU, prec);
}

struct LacunaryBounds {
    BoundReport nu;                     // d^(q^2)
    std::optional<BoundReport> zeros;   // 10 (2d)^(q^2) (1 + q d^2 + 5 d^(pq+3)), needs p
};

/// Bounds for series with gap condition n_k^2 < n_{k+1} <= n_k^q and, for the
/// count bound, coefficient floor |a_k| >= e^(-n_k^p).
inline LacunaryBounds lacunary_bounds(long d, const Rat& q, std::optional<Rat> p, mpfr_prec_t prec = 200) {
    if (d < 1 || q <= 2) throw std::invalid_argument("lacunary_bounds: needs d >= 1 and q > 2");
    if (p && *p <= 0) throw std::invalid_argument("lacunary_bounds: p must be positive");
    LacunaryBounds out;

    auto pow_rat_exp = [&](const Rat& base, const Rat& e, mpfr_rnd_t rnd) -> std::pair<bool, Rat> {
        // exact when the exponent is a nonnegative integer
        if (detail::is_integer(e) && e >= 0)
            return {true, rat_pow(base, static_cast<long>(e.get_num().get_si()))};
        (void)rnd;
        return {false, Rat(0)};
    };

    Rat q2 = q * q;
    auto [nu_exact, nu_val] = pow_rat_exp(Rat(d), q2, MPFR_RNDU);
    std::vector<std::pair<std::string, std::string>> in_nu = {{"d", std::to_string(d)}, {"q", rat_str(q)}};
    if (nu_exact) {
        out.nu = detail::finish_exact("lacunary_nu_bound", "d^(q^2)", in_nu, nu_val, MPFR_RNDU, prec);
    } else {
        Real v(prec);
        Real e = mul_rat(log_int(Int(d), prec, MPFR_RNDU), q2, MPFR_RNDU);
        mpfr_exp(v.get(), e.get(), MPFR_RNDU);
        out.nu = detail::finish_real("lacunary_nu_bound", "d^(q^2)", in_nu, v, MPFR_RNDU);
    }

    if (!p) return out;
    Rat pq3 = *p * q + 3;
    std::vector<std::pair<std::string, std::string>> in_z = {
        {"d", std::to_string(d)}, {"q", rat_str(q)}, {"p", rat_str(*p)}};
    auto [e1, v1] = pow_rat_exp(Rat(2 * d), q2, MPFR_RNDU);
    auto [e2, v2] = pow_rat_exp(Rat(d), pq3, MPFR_RNDU);
    if (e1 && e2) {
        Rat z = 10 * v1 * (1 + q * Rat(d) * Rat(d) + 5 * v2);
        out.zeros = detail::finish_exact("lacunary_zero_bound", "10*(2d)^(q^2)*(1+q*d^2+5*d^(p*q+3))", in_z, z,
                                         MPFR_RNDU, prec);
    } else {
        Real t1(prec), t2(prec);
        Real l1 = mul_rat(log_int(Int(2 * d), prec, MPFR_RNDU), q2, MPFR_RNDU);
        mpfr_exp(t1.get(), l1.get(), MPFR_RNDU);
        Real l2 = mul_rat(log_int(Int(d), prec, MPFR_RNDU), pq3, MPFR_RNDU);
        mpfr_exp(t2.get(), l2.get(), MPFR_RNDU);
        Real inner = mul_rat(t2, Rat(5), MPFR_RNDU);
        mpfr_add_q(inner.get(), inner.get(), Rat(1 + q * Rat(d) * Rat(d)).get_mpq_t(), MPFR_RNDU);
        Real z = mul(t1, inner, MPFR_RNDU);
        z = mul_rat(z, Rat(10), MPFR_RNDU);
        out.zeros = detail::finish_real("lacunary_zero_bound", "10*(2d)^(q^2)*(1+q*d^2+5*d^(p*q+3))", in_z, z,
                                        MPFR_RNDU);
    }
    return out;
}

/// eps_d = (3 (1-p) / (2 pi^2 d^2 m_d))^(q_d) as a directed value.
inline Real random_epsilon_real(long d, const Rat& phat, long m_d, long q_d, mpfr_prec_t prec,
                                mpfr_rnd_t rnd) {
    if (d < 1 || phat <= 0 || phat >= 1 || m_d < 1 || q_d < 1)
        throw std::invalid_argument("random_epsilon: bad inputs");
    mpfr_rnd_t opp = rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU;
    Rat num = 3 * (1 - phat);
    Real pi_opp = pi_dir(prec, opp);
    Real den = mul(pi_opp, pi_opp, opp);
    den = mul_rat(den, Rat(2) * Rat(d) * Rat(d) * Rat(m_d), opp);
    Real base = div_rat_by(num, den, rnd);
    Real v(prec);
    mpfr_pow_ui(v.get(), base.get(), static_cast<unsigned long>(q_d), rnd);
    return v;
}

/// Probability-p floor for |Q_d| at random coefficients, rounded up.
inline BoundReport random_epsilon(long d, const Rat& phat, long m_d, long q_d, mpfr_prec_t prec = 200) {
    Real v = random_epsilon_real(d, phat, m_d, q_d, prec, MPFR_RNDU);
    return detail::finish_real("random_epsilon", "(3*(1-p)/(2*pi^2*d^2*m_d))^(q_d)",
                               {{"d", std::to_string(d)},
                                {"phat", rat_str(phat)},
                                {"m_d", std::to_string(m_d)},
                                {"q_d", std::to_string(q_d)}},
                               v, MPFR_RNDU);
}

/// floor(log T) for rational T > 1, by interval refinement; log T is
/// irrational for rational T != 1, so the refinement terminates.
inline long floor_log(const Rat& T) {
    if (T < 1) throw std::invalid_argument("floor_log: T must be >= 1");
    if (T == 1) return 0;
    for (mpfr_prec_t prec = 96;; prec *= 2) {
        Real lo = log_rat(T, prec, MPFR_RNDD);
        Real hi = log_rat(T, prec, MPFR_RNDU);
        long flo = mpfr_get_si(lo.get(), MPFR_RNDD);
        long fhi = mpfr_get_si(hi.get(), MPFR_RNDD);
        if (flo == fhi) return flo;
        if (prec > 1 << 20) throw std::runtime_error("floor_log failed to converge");
    }
}

/// Count bound for rational points of height <= T on the graph:
/// Z(floor(log T)) * K * Q(floor(log T)), plus the implied envelope
/// beta * (log T)^alpha with alpha = deg Z + deg Q and
/// beta = K * sum|z_i| * sum|q_j| (valid for all T with log T >= 1).
struct RationalPointBound {
    BoundReport report;
    long log_floor = 0;
    long alpha = 0;
    Rat beta;
};

inline RationalPointBound rational_point_bound(const Rat& T, const UPoly& Z_of, const Rat& K,
                                               const UPoly& Q_poly, mpfr_prec_t prec = 200) {
    if (T < 3) throw std::invalid_argument("rational_point_bound: T must be >= 3");
    if (K <= 0) throw std::invalid_argument("rational_point_bound: K must be positive");
    RationalPointBound out;
    out.log_floor = floor_log(T);
    Rat n0(out.log_floor);
    Rat v = Z_of.eval(n0) * K * Q_poly.eval(n0);
    out.alpha = std::max(0, Z_of.degree()) + std::max(0, Q_poly.degree());
    Rat zsum(0), qsum(0);
    for (const Rat& c : Z_of.c) zsum += rat_abs(c);
    for (const Rat& c : Q_poly.c) qsum += rat_abs(c);
    out.beta = K * zsum * qsum;
    out.report = detail::finish_exact("rational_point_bound", "Z(floor(log T))*K*Q(floor(log T))",
                                      {{"T", rat_str(T)},
                                       {"floor_log_T", std::to_string(out.log_floor)},
                                       {"K", rat_str(K)},
                                       {"alpha", std::to_string(out.alpha)},
                                       {"beta", rat_str(out.beta)}},
                                      v, MPFR_RNDU, prec);
    return out;
}

/// Small dense multivariate polynomial for the Remez falsification harness.
struct MultiPoly {
    int nvars = 1;
    std::vector<std::pair<std::vector<int>, Rat>> terms;  // (exponents, coefficient)

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms) {
            int s = 0;
            for (int x : e) s += x;
            if (c != 0 && s > d) d = s;
        }
        return d;
    }

    double eval(const std::vector<double>& x) const {
        double acc = 0;
        for (const auto& [e, c] : terms) {
            double t = rat_double(c);
            for (int v = 0; v < nvars; ++v)
                for (int k = 0; k < e[static_cast<size_t>(v)]; ++k) t *= x[static_cast<size_t>(v)];
            acc += t;
        }
        return acc;
    }
};

/// Axis-aligned window inside [-1,1]^n; lambda is its normalized measure.
struct RemezWindow {
    std::vector<std::pair<Rat, Rat>> box;

    Rat measure() const {
        Rat m(1);
        for (const auto& [lo, hi] : box) m *= (hi - lo) / 2;
        return m;
    }
};

struct RemezResult {
    bool holds = false;
    bool inconclusive = false;
    double sup_cube = 0;
    double sup_window = 0;
    Rat factor;  // (4n/lambda)^d
    int grid = 0;
};

/// Grid check of sup_cube |P| < (4n/lambda)^d sup_window |P|. A falsification
/// harness: grids approximate both sups from below, so `holds` is a necessary
/// consequence at any resolution, never a proof.
inline RemezResult remez_check(const MultiPoly& P, const RemezWindow& window, int degree_cap,
                               int grid_per_axis) {
    int n = P.nvars;
    if (static_cast<int>(window.box.size()) != n)
        throw std::invalid_argument("remez_check: window dimension mismatch");
    if (degree_cap < P.total_degree())
        throw std::invalid_argument("remez_check: degree cap below the polynomial degree");
    if (grid_per_axis < 2) throw std::invalid_argument("remez_check: grid too small");
    Rat lambda = window.measure();
    if (lambda <= 0) throw std::invalid_argument("remez_check: window has empty interior");

    RemezResult res;
    res.factor = rat_pow(Rat(4 * n) / lambda, degree_cap);
    res.grid = grid_per_axis;

    std::vector<int> idx(static_cast<size_t>(n), 0);
    std::vector<double> x(static_cast<size_t>(n));
    std::vector<Rat> xq(static_cast<size_t>(n));
    bool any_window = false;
    while (true) {
        bool inside = true;
        for (int v = 0; v < n; ++v) {
            Rat t = Rat(-1) + Rat(2 * idx[static_cast<size_t>(v)]) / Rat(grid_per_axis - 1);
            xq[static_cast<size_t>(v)] = t;
            x[static_cast<size_t>(v)] = rat_double(t);
            if (t < window.box[static_cast<size_t>(v)].first || t > window.box[static_cast<size_t>(v)].second)
                inside = false;
        }
        double val = std::fabs(P.eval(x));
        if (val > res.sup_cube) res.sup_cube = val;
        if (inside) {
            any_window = true;
            if (val > res.sup_window) res.sup_window = val;
        }
        int v = 0;
        while (v < n && ++idx[static_cast<size_t>(v)] == grid_per_axis) {
            idx[static_cast<size_t>(v)] = 0;
            ++v;
        }
        if (v == n) break;
    }
    if (!any_window || (res.sup_window == 0 && res.sup_cube > 0)) {
        res.inconclusive = true;
        return res;
    }
    res.holds = res.sup_cube < rat_double(res.factor) * res.sup_window;
    return res;
}

}  // namespace bautinlab
