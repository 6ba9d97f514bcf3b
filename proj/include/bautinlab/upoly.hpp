#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bautinlab/rational.hpp"

namespace bautinlab {

/// Dense univariate polynomial over Q, used for coefficients expanded at a
/// movable base point. Zero is the empty coefficient vector.
struct UPoly {
    std::vector<Rat> c;  // c[i] is the coefficient of u^i

    UPoly() = default;
    explicit UPoly(Rat constant) {
        if (constant != 0) c.push_back(std::move(constant));
    }
    explicit UPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    /// Order of the lowest nonzero term; -1 for the zero polynomial.
    int valuation() const {
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) return static_cast<int>(i);
        return -1;
    }

    const Rat& coeff(int i) const {
        static const Rat zero(0);
        if (i < 0 || i >= static_cast<int>(c.size())) return zero;
        return c[i];
    }

    UPoly truncated(int max_deg) const {
        UPoly r;
        int n = std::min<int>(max_deg, degree());
        r.c.assign(c.begin(), c.begin() + (n + 1 > 0 ? n + 1 : 0));
        r.trim();
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }
};

inline UPoly operator+(const UPoly& a, const UPoly& b) {
    UPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

inline UPoly operator-(const UPoly& a, const UPoly& b) {
    UPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
}

inline UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            r.c[i + j] += a.c[i] * b.c[j];
        }
    }
    r.trim();
    return r;
}

inline UPoly mul_trunc(const UPoly& a, const UPoly& b, int max_deg) {
    if (a.is_zero() || b.is_zero() || max_deg < 0) return {};
    UPoly r;
    r.c.assign(std::min<size_t>(a.c.size() + b.c.size() - 1, max_deg + 1), Rat(0));
    for (size_t i = 0; i < a.c.size() && static_cast<int>(i) <= max_deg; ++i) {
        if (a.c[i] == 0) continue;
        size_t jmax = std::min(b.c.size(), static_cast<size_t>(max_deg) - i + 1);
        for (size_t j = 0; j < jmax; ++j) {
            if (b.c[j] == 0) continue;
            r.c[i + j] += a.c[i] * b.c[j];
        }
    }
    r.trim();
    return r;
}

/// Exact division; throws if b does not divide a in Q[u].
inline UPoly div_exact(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) return {};
    int da = a.degree(), db = b.degree();
    if (da < db) throw std::domain_error("inexact polynomial division");
    std::vector<Rat> rem = a.c;
    std::vector<Rat> q(da - db + 1, Rat(0));
    const Rat& lead = b.c[db];
    for (int k = da - db; k >= 0; --k) {
        Rat t = rem[k + db] / lead;
        q[k] = t;
        if (t != 0)
            for (int j = 0; j <= db; ++j) rem[k + j] -= t * b.c[j];
    }
    for (const Rat& x : rem)
        if (x != 0) throw std::domain_error("inexact polynomial division");
    return UPoly(std::move(q));
}

}  // namespace bautinlab
