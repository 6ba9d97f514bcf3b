#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace bautinlab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q;
    q.get_num() = std::move(num);
    q.get_den() = std::move(den);
    q.canonicalize();
    return q;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

/// x^e for integer e (e < 0 requires x != 0).
inline Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    if (x == 0) {
        if (e < 0) throw std::domain_error("zero raised to negative power");
        return Rat(0);
    }
    Rat r;
    unsigned long ue = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_pow_ui(r.get_num().get_mpz_t(), x.get_num().get_mpz_t(), ue);
    mpz_pow_ui(r.get_den().get_mpz_t(), x.get_den().get_mpz_t(), ue);
    if (e < 0) {
        mpz_swap(r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
        r.canonicalize();
    }
    return r;
}

inline Int int_pow(const Int& x, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int parse_int(const std::string& s) {
    Int v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("bad integer literal: " + s);
    return v;
}

/// Parses "n", "n/d" or a plain decimal like "-0.25" into an exact rational.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return make_rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        if (frac_len == 0) throw std::invalid_argument("bad decimal literal: " + s);
        return make_rat(parse_int(digits), int_pow(Int(10), frac_len));
    }
    return Rat(parse_int(s));
}

/// ("num","den") decimal strings, reduced, den > 0.
inline std::pair<std::string, std::string> rat_strings(const Rat& x) {
    return {x.get_num().get_str(), x.get_den().get_str()};
}

inline std::string rat_str(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline double rat_double(const Rat& x) { return x.get_d(); }

}  // namespace bautinlab
