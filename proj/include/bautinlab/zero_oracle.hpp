#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bautinlab/bautin.hpp"
#include "bautinlab/series.hpp"

namespace bautinlab {

/// P(z, y) = sum lambda_{j,i} z^i y^j over a monomial family.
struct CurvePolynomial {
    MonomialFamily family;
    std::vector<Rat> lambda;  // by family column order

    bool is_zero() const {
        for (const Rat& c : lambda)
            if (c != 0) return false;
        return true;
    }

    void validate() const {
        if (static_cast<int>(lambda.size()) != family.size())
            throw std::invalid_argument("curve polynomial coefficient count mismatch");
        if (is_zero()) throw std::invalid_argument("curve polynomial must not vanish identically");
    }

    /// Coefficients of p_j(z), the z-polynomial multiplying y^j.
    std::vector<Rat> z_poly(int j) const {
        auto cols = family.columns();
        int imax = family.kind == FamilyKind::Square ? family.degree : family.degree - j;
        std::vector<Rat> p(static_cast<size_t>(imax) + 1, Rat(0));
        for (size_t c = 0; c < cols.size(); ++c)
            if (cols[c].f_exp == j) p[static_cast<size_t>(cols[c].z_exp)] = lambda[c];
        return p;
    }
};

namespace detail {

inline std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, int cap = -1) {
    if (a.empty() || b.empty()) return {};
    size_t out_len = a.size() + b.size() - 1;
    if (cap >= 0) out_len = std::min(out_len, static_cast<size_t>(cap) + 1);
    std::vector<Rat> r(out_len, Rat(0));
    for (size_t i = 0; i < a.size() && i < out_len; ++i) {
        if (a[i] == 0) continue;
        size_t jmax = std::min(b.size(), out_len - i);
        for (size_t j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

inline void poly_add_into(std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (b.size() > a.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

}  // namespace detail

/// Exact Taylor coefficients of P(z, f(z)) through order K, by Horner in the
/// second argument. Independent of the power-table route.
inline std::vector<Rat> compose_series(const CurvePolynomial& P, const ExactSeries& f, int K) {
    P.validate();
    f.require_order(K);
    std::vector<Rat> fz(f.coeffs.begin(), f.coeffs.begin() + K + 1);
    std::vector<Rat> g = P.z_poly(P.family.degree);
    for (int j = P.family.degree - 1; j >= 0; --j) {
        g = detail::poly_mul(g, fz, K);
        detail::poly_add_into(g, P.z_poly(j));
    }
    g.resize(static_cast<size_t>(K) + 1, Rat(0));
    return g;
}

/// The exact polynomial P(z, f_N(z)) where f_N is the degree-N truncation.
inline std::vector<Rat> compose_truncated(const CurvePolynomial& P, const ExactSeries& f, int N) {
    P.validate();
    f.require_order(N);
    std::vector<Rat> fz(f.coeffs.begin(), f.coeffs.begin() + N + 1);
    std::vector<Rat> g = P.z_poly(P.family.degree);
    for (int j = P.family.degree - 1; j >= 0; --j) {
        g = detail::poly_mul(g, fz);
        detail::poly_add_into(g, P.z_poly(j));
    }
    while (!g.empty() && g.back() == 0) g.pop_back();
    return g;
}

/// Vanishing order of P(z, f(z)) at the origin; empty means every coefficient
/// through order K vanished (order >= K+1).
inline std::optional<int> multiplicity_at_origin(const CurvePolynomial& P, const ExactSeries& f, int K) {
    auto g = compose_series(P, f, K);
    for (int k = 0; k <= K; ++k)
        if (g[static_cast<size_t>(k)] != 0) return k;
    return std::nullopt;
}

struct ZeroCount {
    int count = -1;
    enum class Cert { Rouche, Heuristic } certification = Cert::Heuristic;
    int truncation_order = 0;  // N used
    Rat radius;                // radius actually used after nudges
    Rat margin;                // certified min modulus on the contour minus the tail error
    int contour_panels = 0;
    int winding = -1;
    int companion = -1;
    int nudges = 0;

    bool certified() const { return certification == Cert::Rouche; }
};

namespace detail {

struct ContourScan {
    double min_abs = 0;
    double max_step = 0;
    double turns = 0;  // accumulated argument / 2 pi
};

inline ContourScan contour_scan(const std::vector<double>& c, double r, int panels) {
    ContourScan s;
    s.min_abs = std::numeric_limits<double>::infinity();
    double prev_arg = 0, acc = 0;
    for (int t = 0; t <= panels; ++t) {
        double th = 2.0 * M_PI * t / panels;
        std::complex<double> z = std::polar(r, th);
        std::complex<double> v(0, 0);
        for (size_t k = c.size(); k-- > 0;) v = v * z + c[k];
        double a = std::abs(v);
        if (a < s.min_abs) s.min_abs = a;
        if (t == 0) {
            prev_arg = std::arg(v);
        } else {
            double d = std::arg(v) - prev_arg;
            while (d > M_PI) d -= 2 * M_PI;
            while (d <= -M_PI) d += 2 * M_PI;
            if (std::fabs(d) > s.max_step) s.max_step = std::fabs(d);
            acc += d;
            prev_arg = std::arg(v);
        }
    }
    s.turns = acc / (2 * M_PI);
    return s;
}

/// In-disc root count of the scaled polynomial via companion-matrix
/// eigenvalues; tail terms whose total contribution on the circle stays below
/// `drop_budget` are removed first (they cannot change the count when the
/// certified margin exceeds the budget).
inline int companion_count(const std::vector<Rat>& scaled, const Rat& drop_budget) {
    int deg = static_cast<int>(scaled.size()) - 1;
    Rat dropped(0);
    while (deg > 0) {
        Rat next = dropped + rat_abs(scaled[static_cast<size_t>(deg)]);
        if (next > drop_budget) break;
        dropped = next;
        --deg;
    }
    // leading terms below double range cannot steer a double eigensolver
    while (deg > 0 && rat_double(scaled[static_cast<size_t>(deg)]) == 0.0) --deg;
    if (deg <= 0) return 0;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    double lead = rat_double(scaled[static_cast<size_t>(deg)]);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        comp(i, deg - 1) = -rat_double(scaled[static_cast<size_t>(i)]) / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    int inside = 0;
    for (int i = 0; i < deg; ++i)
        if (std::abs(es.eigenvalues()(i)) <= 1.0) ++inside;
    return inside;
}

inline Rat rat_of_double(double x) {
    if (!std::isfinite(x)) throw std::range_error("non-finite value in certified conversion");
    Rat q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

}  // namespace detail

/// Zeros of P(z, f(z)) in the closed disc |z| <= r, counted with multiplicity.
/// The truncated polynomial P(z, f_N(z)) is counted by a winding number and
/// cross-checked against companion-matrix roots; the count transfers to the
/// full series when the certified contour minimum beats the truncation error
/// (min |g_N| on |z| = r exceeds a Lipschitz bound for |g - g_N|).
inline ZeroCount count_zeros_disc(const CurvePolynomial& P, const ExactSeries& f, Rat r,
                                  int N_start = 0, int panels_start = 256) {
    P.validate();
    if (r <= 0 || r >= f.radius) throw RadiusError("count_zeros_disc: radius outside (0, R)");
    const int d = P.family.degree;
    int N = N_start > 0 ? std::min(N_start, f.order()) : std::min(std::max(4 * d * d, 64), f.order());
    const Rat u = make_rat(Int(1), int_pow(Int(2), 53));  // double unit roundoff

    ZeroCount best;
    for (int nudge = 0; nudge <= 3; ++nudge) {
        Rat rr = r * (Rat(1024 - nudge) / 1024);
        for (;; N = std::min(2 * N, f.order())) {
            auto g = compose_truncated(P, f, N);
            if (g.empty())
                throw std::domain_error("count_zeros_disc: the polynomial annihilates the truncation");
            int deg = static_cast<int>(g.size()) - 1;

            // exact contour data
            Rat S(0), tau = tail_bound(f, N, rr);
            Rat rk(1);
            for (int k = 0; k <= N; ++k) {
                S += rat_abs(f.coeffs[static_cast<size_t>(k)]) * rk;
                rk *= rr;
            }
            Rat Y = S + tau;
            Rat lip(0);
            for (int j = 1; j <= d; ++j) {
                Rat pj_norm(0);
                Rat ri(1);
                auto pj = P.z_poly(j);
                for (const Rat& c : pj) {
                    pj_norm += rat_abs(c) * ri;
                    ri *= rr;
                }
                lip += Rat(j) * pj_norm * rat_pow(Y, j - 1);
            }
            Rat tail_err = lip * tau;

            // scaled coefficients h_k = c_k r^k (contour values of g on |z|=r
            // are values of h on the unit circle), normalized to unit sup so
            // the double evaluation cannot overflow
            std::vector<Rat> scaled(g.size());
            rk = 1;
            Rat unit(0);
            for (size_t k = 0; k < g.size(); ++k) {
                scaled[k] = g[k] * rk;
                rk *= rr;
                Rat a = rat_abs(scaled[k]);
                if (a > unit) unit = a;
            }
            std::vector<double> hd(g.size());
            Rat c1(0), gband(0);
            for (size_t k = 0; k < g.size(); ++k) {
                scaled[k] /= unit;
                hd[k] = rat_double(scaled[k]);
                c1 += rat_abs(scaled[k]);
                gband += Rat(static_cast<long>(k)) * rat_abs(scaled[k]);
            }
            Rat tail_err_scaled = tail_err / unit;
            // evaluation error majorant: Horner rounding, coefficient
            // conversion, trig placement, underflow slack
            Rat eval_err = Rat(4 * deg + 64) * u * c1 + gband * Rat(64) * u +
                           make_rat(Int(deg + 1), int_pow(Int(2), 900));

            // panels refine until the winding integer repeats across two
            // clean scans and the sampling gap stops blocking the margin
            detail::ContourScan scan;
            const int max_panels = 1 << 16;
            int prev_w = std::numeric_limits<int>::min();
            int used_panels = std::max(panels_start, 64);
            bool settled = false;
            Rat sample_min(0), contour_min(0), margin(-1);
            for (int panels = used_panels;; panels *= 2) {
                scan = detail::contour_scan(hd, 1.0, panels);
                used_panels = panels;
                int w = static_cast<int>(std::lround(scan.turns));
                bool clean = scan.max_step < M_PI / 2 && std::fabs(scan.turns - w) < 0.01;
                settled = clean && w == prev_w;
                prev_w = clean ? w : std::numeric_limits<int>::min();

                sample_min = detail::rat_of_double(scan.min_abs);
                Rat panel_gap = gband * make_rat(4, panels);  // > G * (pi / panels)
                contour_min = sample_min - eval_err - panel_gap;
                margin = contour_min - tail_err_scaled;
                if (settled && margin > 0) break;
                if (panels >= max_panels) break;
            }
            int winding = static_cast<int>(std::lround(scan.turns));

            ZeroCount out;
            out.truncation_order = N;
            out.radius = rr;
            out.contour_panels = used_panels;
            out.winding = winding;
            out.nudges = nudge;
            out.margin = margin * unit;
            out.count = winding;
            if (margin > 0 && settled) {
                out.certification = ZeroCount::Cert::Rouche;
                out.companion = detail::companion_count(scaled, contour_min / 4);
                return out;
            }
            out.certification = ZeroCount::Cert::Heuristic;
            out.companion = detail::companion_count(scaled, c1 / rat_pow(Rat(2), 600));
            best = out;

            bool tail_limited = tail_err_scaled >= contour_min && N < f.order();
            if (!tail_limited) break;  // raising N cannot help any further
        }
        // a contour minimum indistinguishable from zero suggests a root on the
        // circle: retry on a slightly smaller, documented radius
        if (best.count >= 0 && best.margin <= 0) continue;
        break;
    }
    return best;
}

/// Running maximum of certified counts over sampled polynomials: seeded random
/// coefficient draws plus the kernel witness and its perturbations. A lower
/// estimate of the true supremum by construction.
struct EmpiricalZ {
    int max_count = 0;
    int certified_samples = 0;
    int heuristic_samples = 0;
    std::vector<ZeroCount> counts;
};

inline EmpiricalZ empirical_Z(const ExactSeries& f, int d, int trials, const Rat& r,
                              std::uint64_t seed = 1, int K_max = 0) {
    if (trials < 1) throw std::invalid_argument("empirical_Z: trials must be >= 1");
    MonomialFamily fam = MonomialFamily::square(d);
    std::vector<CurvePolynomial> polys;

    std::uint64_t state = seed;
    auto next_u64 = [&state]() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    const Int half = int_pow(Int(2), 63);
    for (int t = 0; t < trials; ++t) {
        CurvePolynomial p;
        p.family = fam;
        p.lambda.resize(static_cast<size_t>(fam.size()));
        for (auto& c : p.lambda) {
            std::uint64_t v = next_u64();
            Int num(0);
            mpz_import(num.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
            c = make_rat(num - half, half);
        }
        if (!p.is_zero()) polys.push_back(std::move(p));
    }
    // adversarial picks: the maximal-multiplicity witness and two perturbations
    int cutoff = K_max > 0 ? K_max : std::min(4 * fam.size(), f.order());
    try {
        Witness w = witness_polynomial(f, fam, cutoff);
        CurvePolynomial wp{fam, w.lambda};
        polys.push_back(wp);
        CurvePolynomial bump = wp;
        bump.lambda[0] += make_rat(1, 1024);
        if (!bump.is_zero()) polys.push_back(bump);
        CurvePolynomial scaled = wp;
        scaled.lambda[static_cast<size_t>(fam.size()) - 1] *= make_rat(1025, 1024);
        scaled.lambda[1] += make_rat(1, 4096);
        if (!scaled.is_zero()) polys.push_back(scaled);
    } catch (const std::exception&) {
        // stalled or short input: random samples only
    }

    EmpiricalZ out;
    for (const auto& p : polys) {
        ZeroCount zc;
        try {
            zc = count_zeros_disc(p, f, r);
        } catch (const std::domain_error&) {
            continue;
        }
        if (zc.certified()) {
            ++out.certified_samples;
            if (zc.count > out.max_count) out.max_count = zc.count;
        } else {
            ++out.heuristic_samples;
        }
        out.counts.push_back(std::move(zc));
    }
    return out;
}

}  // namespace bautinlab
