#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bautinlab/bounds.hpp"
#include "bautinlab/rational.hpp"
#include "bautinlab/real.hpp"
#include "bautinlab/series.hpp"

namespace bautinlab {

struct LacunarityViolation : std::runtime_error {
    int k;
    LacunarityViolation(int k_, const std::string& what_) : std::runtime_error(what_), k(k_) {}
};

/// Sparse series f(z) = sum_k a_k z^{n_k} with gap condition n_{k+1} > n_k^2,
/// optionally capped by n_{k+1} <= n_k^q (q > 2) and coefficient floor
/// |a_k| >= e^{-n_k^p}.
struct LacunarySpec {
    std::vector<long> exponents;  // n_1 < n_2 < ...
    enum class CoeffKind { Explicit, Geometric } coeff_kind = CoeffKind::Geometric;
    std::vector<Rat> coeff_list;      // used by Explicit
    Rat coeff_first = Rat(1, 2);      // Geometric: a_k = first * ratio^(k-1)
    Rat coeff_ratio = Rat(1, 2);
    std::optional<Rat> gap_upper;     // q
    std::optional<Rat> decay;         // p

    /// a_k, 1-based.
    Rat coeff(int k) const {
        if (coeff_kind == CoeffKind::Explicit) {
            if (k < 1 || k > static_cast<int>(coeff_list.size()))
                throw std::out_of_range("lacunary coefficient index");
            return coeff_list[static_cast<size_t>(k) - 1];
        }
        return coeff_first * rat_pow(coeff_ratio, k - 1);
    }

    int count() const { return static_cast<int>(exponents.size()); }

    void validate() const {
        if (exponents.empty()) throw std::invalid_argument("lacunary spec has no exponents");
        if (exponents[0] < 1) throw LacunarityViolation(1, "lacunary exponents must be >= 1");
        if (gap_upper && *gap_upper <= 2)
            throw std::invalid_argument("lacunary gap exponent q must exceed 2");
        if (decay && *decay <= 0) throw std::invalid_argument("lacunary decay exponent p must be positive");
        for (int k = 1; k < count(); ++k) {
            long nk = exponents[static_cast<size_t>(k) - 1];
            long nk1 = exponents[static_cast<size_t>(k)];
            if (nk1 <= nk * nk)
                throw LacunarityViolation(k, "gap condition violated at k=" + std::to_string(k) +
                                                 ": n_{k+1} must exceed n_k^2");
            if (gap_upper) {
                // n_{k+1} <= n_k^q checked exactly as n_{k+1}^den <= n_k^num
                const Rat& q = *gap_upper;
                Int lhs = int_pow(Int(nk1), q.get_den().get_ui());
                Int rhs = int_pow(Int(nk), q.get_num().get_ui());
                if (lhs > rhs)
                    throw LacunarityViolation(k, "upper gap condition violated at k=" + std::to_string(k));
            }
        }
        for (int k = 1; k <= count(); ++k) {
            if (coeff(k) == 0) throw LacunarityViolation(k, "lacunary coefficients must be nonzero");
            if (decay) {
                // |a_k| >= e^{-n_k^p}, certified with directed rounding
                Rat a = rat_abs(coeff(k));
                long nk = exponents[static_cast<size_t>(k) - 1];
                Real lhs = log_rat(a, 256, MPFR_RNDD);  // log|a_k|, rounded down
                Real rhs(256);
                if (detail::is_integer(*decay)) {
                    Int nkp = int_pow(Int(nk), decay->get_num().get_ui());
                    mpfr_set_z(rhs.get(), nkp.get_mpz_t(), MPFR_RNDD);
                } else {
                    Real e = mul_rat(log_int(Int(nk), 256, MPFR_RNDD), *decay, MPFR_RNDD);
                    mpfr_exp(rhs.get(), e.get(), MPFR_RNDD);
                }
                mpfr_neg(rhs.get(), rhs.get(), MPFR_RNDU);
                if (mpfr_cmp(lhs.get(), rhs.get()) < 0)
                    throw LacunarityViolation(k, "coefficient decay floor violated at k=" + std::to_string(k));
            }
        }
    }
};

/// Exponents from the rule n_{k+1} = n_k^2 + 1.
inline std::vector<long> lacunary_rule_square_plus_one(long n1, int count) {
    std::vector<long> e;
    long n = n1;
    for (int k = 0; k < count; ++k) {
        e.push_back(n);
        if (n > 3000000000L) break;  // long overflow guard; later exponents are unusable anyway
        n = n * n + 1;
    }
    return e;
}

inline ExactSeries gen_lacunary(const LacunarySpec& spec, int K) {
    spec.validate();
    ExactSeries f;
    f.coeffs.assign(static_cast<size_t>(K) + 1, Rat(0));
    f.origin_value_zero = true;
    Rat sum(0);
    for (int k = 1; k <= spec.count(); ++k) {
        long n = spec.exponents[static_cast<size_t>(k) - 1];
        if (n > K) break;
        f.coeffs[static_cast<size_t>(n)] = spec.coeff(k);
        sum += rat_abs(spec.coeff(k));
    }
    f.radius = 1;
    f.bound = sum <= 1 ? Rat(1) : sum;
    return f;
}

struct NuSandwich {
    long lower = 0;  // n_{l+1}
    long upper = 0;  // n_{l+1}^2 - 1
    int l = 0;
};

/// For degrees d in [n_l, n_{l+1} - 1] the transcendence index is pinned to
/// [n_{l+1}, n_{l+1}^2 - 1].
inline NuSandwich lacunary_nu_sandwich(const LacunarySpec& spec, long d) {
    spec.validate();
    if (spec.count() < 2 || d < spec.exponents[0])
        throw std::out_of_range("degree below the first lacunary exponent");
    for (int l = 1; l < spec.count(); ++l) {
        long nl = spec.exponents[static_cast<size_t>(l) - 1];
        long nl1 = spec.exponents[static_cast<size_t>(l)];
        if (d >= nl && d <= nl1 - 1) return {nl1, nl1 * nl1 - 1, l};
    }
    throw std::out_of_range("degree beyond the generated lacunary exponents");
}

struct LacunaryMinor {
    Rat value;                  // (a_{l+1})^(d(d+1)^2/2)
    std::vector<int> row_set;   // rows j n_{l+1} + i, 0 <= i,j <= d
    bool upper_square = false;  // d = n_{l+1} - 1: the top (d+1)^2 x (d+1)^2 block
    int l = 0;
};

/// Closed-form nonzero minor of the square-family coefficient matrix given by
/// the block-triangular row selection.
inline LacunaryMinor lacunary_minor_closed_form(const LacunarySpec& spec, long d) {
    NuSandwich s = lacunary_nu_sandwich(spec, d);
    LacunaryMinor m;
    m.l = s.l;
    long exp = d * (d + 1) * (d + 1) / 2;
    m.value = rat_pow(spec.coeff(s.l + 1), exp);
    for (long j = 0; j <= d; ++j)
        for (long i = 0; i <= d; ++i) m.row_set.push_back(static_cast<int>(j * s.lower + i));
    m.upper_square = d == s.lower - 1;
    return m;
}

/// One monomial c(k) u_1^{b_1} ... u_r^{b_r} of the update rule, with c(k) a
/// polynomial of degree <= d2 in 1/(k+shift).
struct RecurrenceTerm {
    std::vector<int> exps;   // beta, length r
    std::vector<Rat> invk;   // coefficients of (1/(k+shift))^i, i = 0..d2
};

/// a_{k+1} = sum_beta p_beta(k) a_k^{b_1} a_{k-1}^{b_2} ... a_{k-r+1}^{b_r}.
/// shift = 0 is the plain 1/k form; shift >= 1 admits rules like a_k/(k+1)
/// and removes the k = 0 singularity.
struct RecurrenceSpec {
    int length = 1;  // r
    int shift = 0;   // s
    std::vector<RecurrenceTerm> terms;
    std::vector<Rat> initial;  // a_0 .. a_{start_index()}

    int deg_terms() const {  // d1
        int d = 0;
        for (const auto& t : terms) {
            int s = 0;
            for (int e : t.exps) s += e;
            if (s > d) d = s;
        }
        return d;
    }

    int deg_invk() const {  // d2
        int d = 0;
        for (const auto& t : terms)
            for (size_t i = 0; i < t.invk.size(); ++i)
                if (t.invk[i] != 0 && static_cast<int>(i) > d) d = static_cast<int>(i);
        return d;
    }

    Int denom_coeffs() const {  // L1
        Int l(1);
        for (const auto& t : terms)
            for (const Rat& c : t.invk) l = int_lcm(l, c.get_den());
        return l;
    }

    Int denom_initial() const {  // L2
        Int l(1);
        for (const Rat& a : initial) l = int_lcm(l, a.get_den());
        return l;
    }

    /// First k at which a_{k+1} is produced; the 1/k form cannot start at 0.
    int start_index() const {
        if (deg_invk() == 0 || shift >= 1) return length - 1;
        return std::max(length - 1, 1);
    }

    void validate() const {
        if (length < 1) throw std::invalid_argument("recurrence length must be >= 1");
        if (shift < 0) throw std::invalid_argument("recurrence shift must be >= 0");
        for (const auto& t : terms)
            if (static_cast<int>(t.exps.size()) != length)
                throw std::invalid_argument("recurrence term arity mismatch");
        if (static_cast<int>(initial.size()) != start_index() + 1)
            throw std::invalid_argument("recurrence needs initial terms a_0..a_" +
                                        std::to_string(start_index()));
    }
};

struct RecurrenceTrace {
    ExactSeries series;
    std::vector<Int> denominators;  // D_k = lcm of denominators of a_0..a_k
};

inline RecurrenceTrace gen_recurrence(const RecurrenceSpec& spec, int K) {
    spec.validate();
    RecurrenceTrace out;
    auto& a = out.series.coeffs;
    a.assign(static_cast<size_t>(K) + 1, Rat(0));
    int given = std::min<int>(spec.start_index(), K);
    for (int i = 0; i <= given; ++i) a[static_cast<size_t>(i)] = spec.initial[static_cast<size_t>(i)];
    for (int k = spec.start_index(); k + 1 <= K; ++k) {
        // k + shift = 0 only happens when no term actually uses 1/(k+shift)
        Rat invk = k + spec.shift > 0 ? make_rat(1, k + spec.shift) : Rat(0);
        Rat next(0);
        for (const auto& t : spec.terms) {
            Rat c(0);
            Rat p(1);
            for (const Rat& ci : t.invk) {
                c += ci * p;
                p *= invk;
            }
            if (c == 0) continue;
            Rat mono(1);
            for (int v = 0; v < spec.length; ++v) {
                int e = t.exps[static_cast<size_t>(v)];
                if (e == 0) continue;
                mono *= rat_pow(a[static_cast<size_t>(k - v)], e);
            }
            next += c * mono;
        }
        a[static_cast<size_t>(k + 1)] = next;
    }
    Int d(1);
    for (int k = 0; k <= K; ++k) {
        d = int_lcm(d, a[static_cast<size_t>(k)].get_den());
        out.denominators.push_back(d);
    }
    return out;
}

/// Denominator growth bound D_k <= e^{M d1^{k-r+1} k log k}. For r >= 3, M is
/// max(log L2 / ((r-1) log(r-1)), d2 + log L1 / log 2); for r <= 2 that base
/// case degenerates and M is rebuilt from the observed D_{k0}, k0 = max(r-1,2),
/// which the report flags.
struct DenominatorBound {
    BoundReport report;
    bool adjusted_base = false;
    Real log_bound_floor{64};  // directed enclosure of M d1^{k-r+1} k log k
    Real log_bound_ceil{64};
};

inline DenominatorBound denominator_bound(const RecurrenceSpec& spec, int k,
                                          const std::vector<Int>& denom_trace,
                                          mpfr_prec_t prec = 256) {
    spec.validate();
    const int r = spec.length;
    if (k < r - 1 || k < 2) throw std::invalid_argument("denominator_bound: needs k >= max(r-1, 2)");
    const int d1 = std::max(1, spec.deg_terms());
    const int d2 = spec.deg_invk();
    const Int L1 = spec.denom_coeffs();
    const Int L2 = spec.denom_initial();

    auto ratio_dir = [&](const Int& num_log, const Int& den_base, long den_mult,
                         mpfr_rnd_t rnd) -> Real {
        // log(num_log) / (den_mult * log(den_base)), directed
        if (num_log == 1) return Real::of_long(0, prec);
        mpfr_rnd_t opp = rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU;
        Real num = log_int(num_log, prec, rnd);
        Real den = mul_rat(log_int(den_base, prec, opp), Rat(den_mult), opp);
        Real out(prec);
        mpfr_div(out.get(), num.get(), den.get(), rnd);
        return out;
    };

    DenominatorBound out;
    Real m_up(prec), m_down(prec);
    Real t2_up = ratio_dir(L1, Int(2), 1, MPFR_RNDU);
    Real t2_down = ratio_dir(L1, Int(2), 1, MPFR_RNDD);
    mpfr_add_si(t2_up.get(), t2_up.get(), d2, MPFR_RNDU);
    mpfr_add_si(t2_down.get(), t2_down.get(), d2, MPFR_RNDD);
    Real t1_up(prec), t1_down(prec);
    if (r >= 3) {
        t1_up = ratio_dir(L2, Int(r - 1), r - 1, MPFR_RNDU);
        t1_down = ratio_dir(L2, Int(r - 1), r - 1, MPFR_RNDD);
    } else {
        out.adjusted_base = true;
        int k0 = std::max(r - 1, 2);
        if (static_cast<int>(denom_trace.size()) <= k0)
            throw std::invalid_argument("denominator_bound: trace too short for the adjusted base");
        const Int& dk0 = denom_trace[static_cast<size_t>(k0)];
        t1_up = ratio_dir(dk0, Int(k0), k0, MPFR_RNDU);
        t1_down = ratio_dir(dk0, Int(k0), k0, MPFR_RNDD);
    }
    mpfr_max(m_up.get(), t1_up.get(), t2_up.get(), MPFR_RNDU);
    mpfr_max(m_down.get(), t1_down.get(), t2_down.get(), MPFR_RNDD);

    Int growth = int_pow(Int(d1), static_cast<unsigned long>(k - r + 1));
    auto exponent_dir = [&](const Real& m, mpfr_rnd_t rnd) -> Real {
        Real e = log_int(Int(k), prec, rnd);
        e = mul_rat(e, Rat(growth) * Rat(k), rnd);
        Real out_e(prec);
        mpfr_mul(out_e.get(), e.get(), m.get(), rnd);
        return out_e;
    };
    out.log_bound_ceil = exponent_dir(m_up, MPFR_RNDU);
    out.log_bound_floor = exponent_dir(m_down, MPFR_RNDD);
    Real v(prec);
    mpfr_exp(v.get(), out.log_bound_ceil.get(), MPFR_RNDU);

    std::vector<std::pair<std::string, std::string>> inputs = {
        {"k", std::to_string(k)},      {"r", std::to_string(r)},
        {"d1", std::to_string(d1)},    {"d2", std::to_string(d2)},
        {"L1", L1.get_str()},          {"L2", L2.get_str()},
        {"M_upper", format_directed(m_up, 12, MPFR_RNDU)},
        {"adjusted_base", out.adjusted_base ? "true" : "false"}};
    out.report = detail::finish_real("denominator_bound", "e^(M*d1^(k-r+1)*k*log(k))", std::move(inputs),
                                     v, MPFR_RNDU);
    return out;
}

/// Log-domain check of D_k <= e^{M d1^{k-r+1} k log k}. Certified pass when
/// the rounded-up left side clears the rounded-down exponent; the boundary
/// case (equality within working precision, which real specs do hit at the
/// base index) is also accepted, since a genuine violation would show up as
/// log(D_k) rounded down exceeding the rounded-up exponent.
inline bool denominator_bound_holds(const DenominatorBound& b, const Int& D_k,
                                    mpfr_prec_t prec = 256) {
    Real up = log_int(D_k, prec, MPFR_RNDU);
    if (mpfr_cmp(up.get(), b.log_bound_floor.get()) <= 0) return true;
    Real down = log_int(D_k, prec, MPFR_RNDD);
    return mpfr_cmp(down.get(), b.log_bound_ceil.get()) <= 0;
}

/// Reproducible uniform dyadic coefficients on [-1, 1], one stream per seed.
struct RandomSpec {
    std::uint64_t seed = 0;
    int count = 32;  // truncation order K
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Coefficients are (u - 2^63)/2^63 for consecutive 64-bit draws: exact dyadic
/// rationals in [-1, 1). Metadata records |f| <= 2 on the half disc (geometric
/// sum of unit coefficients).
inline ExactSeries sample_random(const RandomSpec& spec) {
    ExactSeries f;
    f.coeffs.resize(static_cast<size_t>(spec.count) + 1);
    std::uint64_t s = spec.seed;
    const Int half = int_pow(Int(2), 63);
    for (auto& c : f.coeffs) {
        std::uint64_t u = splitmix64(s);
        Int num(0);
        mpz_import(num.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
        c = make_rat(num - half, half);
    }
    f.radius = make_rat(1, 2);
    f.bound = 2;
    return f;
}

/// g(z) = f(z/2)/2: for coefficients in [-1,1] this is honestly bounded by 1
/// on the unit disc, so the unit-normalized bounds apply.
inline ExactSeries rescale_half(const ExactSeries& f) {
    ExactSeries g;
    g.coeffs.resize(f.coeffs.size());
    for (size_t k = 0; k < f.coeffs.size(); ++k)
        g.coeffs[k] = f.coeffs[k] / rat_pow(Rat(2), static_cast<long>(k) + 1);
    g.radius = 1;
    g.bound = 1;
    g.origin_value_zero = f.origin_value_zero;
    return g;
}

}  // namespace bautinlab
