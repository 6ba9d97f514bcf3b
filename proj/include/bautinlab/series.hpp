#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bautinlab/rational.hpp"
#include "bautinlab/upoly.hpp"

namespace bautinlab {

/// Operation asked for more Taylor coefficients than the series stores.
struct TruncationError : std::runtime_error {
    int needed, stored;
    TruncationError(int needed_, int stored_)
        : std::runtime_error("truncation too short: need " + std::to_string(needed_) +
                             " coefficients, have " + std::to_string(stored_)),
          needed(needed_),
          stored(stored_) {}
};

struct RadiusError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Truncated power series with exact rational coefficients and analyticity
/// metadata: f is declared analytic on the closed disc of radius `radius`
/// and bounded there by `bound`.
struct ExactSeries {
    std::vector<Rat> coeffs;  // a_0 .. a_K
    Rat radius{1};
    Rat bound{1};
    bool origin_value_zero = false;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }

    const Rat& coeff(int k) const {
        static const Rat zero(0);
        if (k < 0) return zero;
        if (k > order()) throw TruncationError(k + 1, static_cast<int>(coeffs.size()));
        return coeffs[static_cast<size_t>(k)];
    }

    void require_order(int K) const {
        if (order() < K) throw TruncationError(K + 1, static_cast<int>(coeffs.size()));
    }

    void validate() const {
        if (coeffs.empty()) throw std::invalid_argument("series needs at least a_0");
        if (radius <= 0) throw std::invalid_argument("radius must be positive");
        if (bound <= 0) throw std::invalid_argument("bound must be positive");
        if (origin_value_zero && coeffs[0] != 0)
            throw std::invalid_argument("origin_value_zero set but a_0 != 0");
    }

    /// First k violating the Cauchy estimate |a_k| <= B/R^k, if any.
    std::optional<int> cauchy_violation() const {
        Rat rk(1);
        for (int k = 0; k <= order(); ++k) {
            if (rat_abs(coeffs[static_cast<size_t>(k)]) * rk > bound) return k;
            rk *= radius;
        }
        return std::nullopt;
    }
};

/// Taylor coefficients of the powers f^j at the origin:
/// entry(i, j) is the coefficient of z^i in f(z)^j, 0 <= i <= order, 0 <= j <= power_cap.
struct PowerTable {
    int power_cap = 0;  // d
    int order = 0;      // K
    std::vector<std::vector<Rat>> cols;  // cols[j][i]

    const Rat& at(int i, int j) const { return cols[static_cast<size_t>(j)][static_cast<size_t>(i)]; }

    /// Coefficient of z^l in f^j, with l < 0 reading as 0.
    const Rat& coeff_or_zero(int l, int j) const {
        static const Rat zero(0);
        if (l < 0) return zero;
        if (j < 0 || j > power_cap || l > order)
            throw std::out_of_range("power table index out of range");
        return at(l, j);
    }
};

inline PowerTable power_table(const ExactSeries& f, int d, int K) {
    if (d < 0 || K < 0) throw std::invalid_argument("power_table: d and K must be nonnegative");
    f.require_order(K);
    PowerTable t;
    t.power_cap = d;
    t.order = K;
    t.cols.resize(static_cast<size_t>(d) + 1);
    auto& c0 = t.cols[0];
    c0.assign(static_cast<size_t>(K) + 1, Rat(0));
    c0[0] = 1;
    if (d >= 1) {
        t.cols[1].assign(f.coeffs.begin(), f.coeffs.begin() + K + 1);
    }
    for (int j = 2; j <= d; ++j) {
        const auto& prev = t.cols[static_cast<size_t>(j) - 1];
        const auto& base = t.cols[1];
        auto& cur = t.cols[static_cast<size_t>(j)];
        cur.assign(static_cast<size_t>(K) + 1, Rat(0));
        for (int i = 0; i <= K; ++i) {
            if (prev[static_cast<size_t>(i)] == 0) continue;
            for (int l = 0; i + l <= K; ++l) {
                if (base[static_cast<size_t>(l)] == 0) continue;
                cur[static_cast<size_t>(i + l)] += prev[static_cast<size_t>(i)] * base[static_cast<size_t>(l)];
            }
        }
    }
    return t;
}

/// Same table with every entry a polynomial in the base point u, truncated at
/// degree base_order: entry(i, j) is the coefficient of w^i in f(u+w)^j.
struct RecenteredTable {
    int power_cap = 0;
    int order = 0;
    int base_order = 0;  // K_u
    std::vector<std::vector<UPoly>> cols;  // cols[j][i]

    const UPoly& at(int i, int j) const { return cols[static_cast<size_t>(j)][static_cast<size_t>(i)]; }

    const UPoly& coeff_or_zero(int l, int j) const {
        static const UPoly zero;
        if (l < 0) return zero;
        if (j < 0 || j > power_cap || l > order)
            throw std::out_of_range("recentered table index out of range");
        return at(l, j);
    }
};

inline RecenteredTable recenter(const ExactSeries& f, int d, int K, int K_u) {
    if (d < 0 || K < 0 || K_u < 0) throw std::invalid_argument("recenter: negative argument");
    f.require_order(K + K_u);
    RecenteredTable t;
    t.power_cap = d;
    t.order = K;
    t.base_order = K_u;
    t.cols.resize(static_cast<size_t>(d) + 1);

    auto& c0 = t.cols[0];
    c0.assign(static_cast<size_t>(K) + 1, UPoly());
    c0[0] = UPoly(Rat(1));

    if (d >= 1) {
        // a_k(u) = sum_{n >= k} C(n,k) a_n u^{n-k}, truncated at u^{K_u}
        auto& c1 = t.cols[1];
        c1.resize(static_cast<size_t>(K) + 1);
        for (int k = 0; k <= K; ++k) {
            std::vector<Rat> cs(static_cast<size_t>(K_u) + 1, Rat(0));
            for (int n = k; n <= k + K_u; ++n)
                cs[static_cast<size_t>(n - k)] =
                    Rat(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k))) *
                    f.coeff(n);
            c1[static_cast<size_t>(k)] = UPoly(std::move(cs));
        }
    }
    for (int j = 2; j <= d; ++j) {
        const auto& prev = t.cols[static_cast<size_t>(j) - 1];
        const auto& base = t.cols[1];
        auto& cur = t.cols[static_cast<size_t>(j)];
        cur.assign(static_cast<size_t>(K) + 1, UPoly());
        for (int i = 0; i <= K; ++i) {
            if (prev[static_cast<size_t>(i)].is_zero()) continue;
            for (int l = 0; i + l <= K; ++l) {
                if (base[static_cast<size_t>(l)].is_zero()) continue;
                cur[static_cast<size_t>(i + l)] =
                    cur[static_cast<size_t>(i + l)] +
                    mul_trunc(prev[static_cast<size_t>(i)], base[static_cast<size_t>(l)], K_u);
            }
        }
    }
    return t;
}

/// Certified bound on |sum_{k>N} a_k z^k| for |z| <= r, from the Cauchy
/// estimates: B (r/R)^{N+1} / (1 - r/R). Requires 0 <= r < R.
inline Rat tail_bound(const ExactSeries& f, int N, const Rat& r) {
    if (r < 0) throw RadiusError("tail_bound: negative radius");
    if (r >= f.radius) throw RadiusError("tail_bound: evaluation radius must be below the disc radius");
    if (N < 0) throw std::invalid_argument("tail_bound: negative order");
    if (r == 0) return Rat(0);
    Rat q = r / f.radius;
    return f.bound * rat_pow(q, N + 1) / (Rat(1) - q);
}

/// Denominator growth h_l = max reduced denominator of a_1..a_l, and the count
/// theta_l of nonzero coefficients among a_0..a_l, for l = 1..L.
struct HeightProfile {
    std::vector<Int> max_denominator;  // index l-1 holds h_l
    std::vector<int> nonzero_count;    // index l-1 holds theta_l

    const Int& h(int l) const { return max_denominator.at(static_cast<size_t>(l) - 1); }
    int theta(int l) const { return nonzero_count.at(static_cast<size_t>(l) - 1); }
    int cap() const { return static_cast<int>(max_denominator.size()); }
};

inline HeightProfile height_profile(const ExactSeries& f, int L) {
    if (L < 1) throw std::invalid_argument("height_profile: cap must be >= 1");
    f.require_order(L);
    HeightProfile p;
    p.max_denominator.reserve(static_cast<size_t>(L));
    p.nonzero_count.reserve(static_cast<size_t>(L));
    Int h(1);
    int theta = f.coeffs[0] != 0 ? 1 : 0;
    for (int l = 1; l <= L; ++l) {
        const Rat& a = f.coeffs[static_cast<size_t>(l)];
        if (a.get_den() > h) h = a.get_den();
        if (a != 0) ++theta;
        p.max_denominator.push_back(h);
        p.nonzero_count.push_back(theta);
    }
    return p;
}

}  // namespace bautinlab
