#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "bautinlab/rational.hpp"

namespace bautinlab {

/// Thin RAII wrapper over mpfr_t. Every operation takes an explicit rounding
/// mode; callers pick the direction that keeps their statement conservative.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 200) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(Real o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    static Real of_rat(const Rat& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        Real r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
        return r;
    }
    static Real of_long(long x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

inline Real log_rat(const Rat& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    // one directed conversion plus one directed log keeps the bound valid
    Real x = Real::of_rat(q, prec + 16, rnd);
    Real r(prec);
    mpfr_log(r.get(), x.get(), rnd);
    return r;
}

inline Real exp_rat(const Rat& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real x = Real::of_rat(q, prec + 16, rnd);
    Real r(prec);
    mpfr_exp(r.get(), x.get(), rnd);
    return r;
}

inline Real log_int(const Int& n, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real x(prec + 16);
    mpfr_set_z(x.get(), n.get_mpz_t(), rnd);
    Real r(prec);
    mpfr_log(r.get(), x.get(), rnd);
    return r;
}

inline Real pi_dir(mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_const_pi(r.get(), rnd);
    return r;
}

inline Real sqrt_long(long x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_sqrt_ui(r.get(), static_cast<unsigned long>(x), rnd);
    return r;
}

inline Real mul_rat(const Real& a, const Rat& q, mpfr_rnd_t rnd) {
    Real r(a.prec());
    mpfr_mul_q(r.get(), a.get(), q.get_mpq_t(), rnd);
    return r;
}

inline Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r(a.prec());
    mpfr_mul(r.get(), a.get(), b.get(), rnd);
    return r;
}

/// q / den with the quotient rounded in `rnd`; the caller is responsible for
/// having rounded `den` in the opposite direction.
inline Real div_rat_by(const Rat& q, const Real& den, mpfr_rnd_t rnd) {
    Real num = Real::of_rat(q, den.prec() + 16, rnd);
    Real r(den.prec());
    mpfr_div(r.get(), num.get(), den.get(), rnd);
    return r;
}

/// Decimal rendering with `digits` significant digits, rounded in `rnd`.
inline std::string format_directed(const Real& x, int digits, mpfr_rnd_t rnd) {
    if (mpfr_zero_p(x.get())) return "0";
    mpfr_exp_t e;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), x.get(), rnd);
    std::string s(raw);
    mpfr_free_str(raw);
    bool neg = !s.empty() && s[0] == '-';
    std::string mant = neg ? s.substr(1) : s;
    std::string out = neg ? "-" : "";
    out += mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    long exp10 = static_cast<long>(e) - 1;
    if (exp10 != 0) out += "e" + std::to_string(exp10);
    return out;
}

}  // namespace bautinlab
