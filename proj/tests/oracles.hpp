#pragma once

// Brute-force reference implementations used only by tests. Everything here is
// deliberately naive and independent of the library's elimination paths.

#include <cstdint>
#include <vector>

#include "bautinlab/qmatrix.hpp"
#include "bautinlab/rational.hpp"
#include "bautinlab/series.hpp"

namespace oracle {

using bautinlab::ExactSeries;
using bautinlab::Int;
using bautinlab::QMatrix;
using bautinlab::Rat;

/// Determinant by Laplace expansion along the first row.
inline Rat det_laplace(const QMatrix& m) {
    int n = m.rows;
    if (n == 0) return Rat(1);
    if (n == 1) return m.at(0, 0);
    Rat acc(0);
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        QMatrix sub(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = m.at(i, c);
            }
        }
        Rat term = m.at(0, j) * det_laplace(sub);
        if (j % 2) acc -= term; else acc += term;
    }
    return acc;
}

inline bool next_combo(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

/// Rank as the largest k admitting a nonzero k x k minor. Exponential; only
/// for small matrices.
inline int rank_minors(const QMatrix& m) {
    int cap = m.rows < m.cols ? m.rows : m.cols;
    for (int k = cap; k >= 1; --k) {
        std::vector<int> rs(k), cs0(k);
        for (int i = 0; i < k; ++i) rs[i] = i;
        do {
            std::vector<int> cs = cs0;
            for (int i = 0; i < k; ++i) cs[i] = i;
            do {
                if (det_laplace(m.submatrix(rs, cs)) != 0) return k;
            } while (next_combo(cs, m.cols));
        } while (next_combo(rs, m.rows));
    }
    return 0;
}

/// Coefficient of z^i in f(z)^j by explicit summation over compositions
/// i_1 + ... + i_j = i of products a_{i_1} ... a_{i_j}.
inline Rat power_coeff_compositions(const ExactSeries& f, int i, int j) {
    if (j == 0) return i == 0 ? Rat(1) : Rat(0);
    if (j == 1) return f.coeff(i);
    Rat acc(0);
    for (int first = 0; first <= i; ++first) {
        if (f.coeff(first) == 0) continue;
        acc += f.coeff(first) * power_coeff_compositions(f, i - first, j - 1);
    }
    return acc;
}

/// max of the absolute values of all nonzero size x size minors, brute force.
inline Rat max_minor_brute(const QMatrix& m, int size) {
    Rat best(0);
    std::vector<int> rs(size), cs(size);
    for (int i = 0; i < size; ++i) rs[i] = i;
    do {
        for (int i = 0; i < size; ++i) cs[i] = i;
        do {
            Rat d = bautinlab::rat_abs(det_laplace(m.submatrix(rs, cs)));
            if (d > best) best = d;
        } while (next_combo(cs, m.cols));
    } while (next_combo(rs, m.rows));
    return best;
}

inline ExactSeries exp_minus_one(int K) {
    ExactSeries f;
    f.coeffs.resize(static_cast<size_t>(K) + 1);
    f.coeffs[0] = 0;
    Rat inv_fact(1);
    for (int k = 1; k <= K; ++k) {
        inv_fact /= k;
        f.coeffs[static_cast<size_t>(k)] = inv_fact;
    }
    f.origin_value_zero = true;
    return f;
}

inline ExactSeries identity_series(int K) {
    ExactSeries f;
    f.coeffs.assign(static_cast<size_t>(K) + 1, Rat(0));
    if (K >= 1) f.coeffs[1] = 1;
    f.origin_value_zero = true;
    return f;
}

}  // namespace oracle
