#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bautinlab/family.hpp"
#include "bautinlab/qmatrix.hpp"
#include "bautinlab/series.hpp"

namespace bautinlab {

/// Row k holds the coefficient vector of the k-th Taylor coefficient of
/// sum lambda_{j,i} z^i f^j, i.e. entry (k, (i,j)) = a^j_{k-i}.
struct BautinMatrix {
    MonomialFamily family;
    QMatrix m;  // (K+1) x family.size()
};

inline std::vector<Rat> bautin_row(const PowerTable& table, const MonomialFamily& family, int k) {
    auto cols = family.columns();
    std::vector<Rat> row;
    row.reserve(cols.size());
    for (const auto& e : cols) row.push_back(table.coeff_or_zero(k - e.z_exp, e.f_exp));
    return row;
}

inline BautinMatrix build_bautin_matrix(const PowerTable& table, const MonomialFamily& family, int K) {
    if (table.power_cap < family.degree || table.order < K)
        throw std::invalid_argument("power table too small for the requested Bautin matrix");
    BautinMatrix bm{family, QMatrix(K + 1, family.size())};
    auto cols = family.columns();
    for (int k = 0; k <= K; ++k)
        for (size_t c = 0; c < cols.size(); ++c)
            bm.m.at(k, static_cast<int>(c)) = table.coeff_or_zero(k - cols[c].z_exp, cols[c].f_exp);
    return bm;
}

/// Rank stabilization report. `index` is the first row count at which the rank
/// reaches the number of parameters; empty means the search stalled at
/// `rows_examined` rows, with the kernel of that matrix as evidence.
struct BautinReport {
    MonomialFamily family;
    std::optional<int> index;                     // b
    int sigma = 0;                                // final rank
    std::vector<std::pair<int, int>> rank_trace;  // (k, rank of M_k)
    std::vector<std::vector<Rat>> kernel;         // kernel basis when stalled
    int rows_examined = 0;

    bool stalled() const { return !index.has_value(); }
};

inline BautinReport bautin_index(const ExactSeries& f, const MonomialFamily& family, int K_max) {
    if (K_max < 0) throw std::invalid_argument("bautin_index: negative row cutoff");
    f.require_order(K_max);
    const int m = family.size();
    PowerTable table = power_table(f, family.degree, K_max);
    EchelonForm ech(m);
    BautinReport rep;
    rep.family = family;
    for (int k = 0; k <= K_max; ++k) {
        ech.add_row(bautin_row(table, family, k));
        rep.rank_trace.emplace_back(k, ech.rank());
        rep.rows_examined = k;
        if (ech.rank() == m) {
            rep.index = k;
            rep.sigma = m;
            return rep;
        }
    }
    rep.sigma = ech.rank();
    rep.kernel = ech.kernel_basis();
    return rep;
}

/// The transcendence index nu_d is the Bautin index of the total-degree
/// family: the maximal vanishing order of P(z, f(z)) over nonzero P of total
/// degree <= d.
inline BautinReport transcendence_index(const ExactSeries& f, int d, int K_max) {
    return bautin_index(f, MonomialFamily::total(d), K_max);
}

/// Rows k = d+1..b of the f-power block: entry (k-d-1, (j,i)) = a^j_{k-i},
/// columns grouped by j = 1..d, i = 0..d inside each group. Square of size
/// d^2+d exactly when b = d^2+2d.
inline QMatrix tilde_matrix(const PowerTable& table, int d, int b) {
    if (b < d + 1) throw std::invalid_argument("tilde_matrix: needs b >= d+1");
    if (table.power_cap < d || table.order < b)
        throw std::invalid_argument("power table too small for tilde matrix");
    QMatrix t(b - d, d * (d + 1));
    for (int k = d + 1; k <= b; ++k) {
        int c = 0;
        for (int j = 1; j <= d; ++j)
            for (int i = 0; i <= d; ++i) t.at(k - d - 1, c++) = table.coeff_or_zero(k - i, j);
    }
    return t;
}

/// Determinant of the square tilde matrix at the minimal index b = d^2+2d.
inline Rat bautin_determinant(const ExactSeries& f, int d) {
    if (d < 1) throw std::invalid_argument("bautin_determinant: degree must be >= 1");
    const int b = d * d + 2 * d;
    f.require_order(b);
    PowerTable table = power_table(f, d, b);
    return det_exact(tilde_matrix(table, d, b));
}

enum class MinorMode { ExhaustiveMax, HeuristicNonzero };

struct RankDeficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MinorBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// |det| of a chosen size x size nonzero minor together with its location.
struct MinorResult {
    Rat value;
    std::vector<int> row_set;
    std::vector<int> col_set;
    MinorMode mode = MinorMode::ExhaustiveMax;
};

namespace detail {

inline bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[static_cast<size_t>(i)] < n - k + i) {
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j) - 1] + 1;
            return true;
        }
    }
    return false;
}

inline double log_choose(int n, int k) {
    double s = 0;
    for (int i = 0; i < k; ++i) s += std::log(static_cast<double>(n - i)) - std::log(static_cast<double>(i + 1));
    return s;
}

/// Greedy nonzero minor via complete-pivot elimination: each pivot picks the
/// largest remaining entry, which locally maximizes the spanned volume.
inline MinorResult heuristic_minor(const QMatrix& M, int size) {
    std::vector<int> rsel, csel;
    QMatrix z = M;
    std::vector<int> ridx(static_cast<size_t>(M.rows)), cidx(static_cast<size_t>(M.cols));
    for (int i = 0; i < M.rows; ++i) ridx[static_cast<size_t>(i)] = i;
    for (int j = 0; j < M.cols; ++j) cidx[static_cast<size_t>(j)] = j;
    for (int step = 0; step < size; ++step) {
        int pr = -1, pc = -1;
        Rat best(0);
        for (int i = step; i < z.rows; ++i)
            for (int j = step; j < z.cols; ++j) {
                Rat v = rat_abs(z.at(i, j));
                if (v != 0 && (pr < 0 || v > best)) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) throw RankDeficientError("matrix rank below requested minor size");
        if (pr != step) {
            for (int j = 0; j < z.cols; ++j) std::swap(z.at(pr, j), z.at(step, j));
            std::swap(ridx[static_cast<size_t>(pr)], ridx[static_cast<size_t>(step)]);
        }
        if (pc != step) {
            for (int i = 0; i < z.rows; ++i) std::swap(z.at(i, pc), z.at(i, step));
            std::swap(cidx[static_cast<size_t>(pc)], cidx[static_cast<size_t>(step)]);
        }
        rsel.push_back(ridx[static_cast<size_t>(step)]);
        csel.push_back(cidx[static_cast<size_t>(step)]);
        for (int i = step + 1; i < z.rows; ++i) {
            if (z.at(i, step) == 0) continue;
            Rat fac = z.at(i, step) / z.at(step, step);
            for (int j = step; j < z.cols; ++j) z.at(i, j) -= fac * z.at(step, j);
        }
    }
    std::sort(rsel.begin(), rsel.end());
    std::sort(csel.begin(), csel.end());
    MinorResult res;
    res.row_set = rsel;
    res.col_set = csel;
    res.value = rat_abs(det_exact(M.submatrix(rsel, csel)));
    res.mode = MinorMode::HeuristicNonzero;
    if (res.value == 0) throw RankDeficientError("heuristic pivoting produced a singular minor");
    return res;
}

}  // namespace detail

/// Maximal |det| over nonzero size x size minors (exhaustive mode), or a
/// greedily chosen nonzero minor (heuristic mode). `forced_rows` restricts the
/// exhaustive search to supersets of rows that every nonzero minor provably
/// contains. Falls back from exhaustive to heuristic when the enumeration
/// exceeds `budget`, recording the mode actually used.
inline MinorResult max_nonzero_minor(const QMatrix& M, int size, MinorMode mode,
                                     std::uint64_t budget = 1000000,
                                     const std::vector<int>& forced_rows = {}) {
    if (size < 1 || size > M.rows || size > M.cols)
        throw std::invalid_argument("minor size out of range");
    if (mode == MinorMode::HeuristicNonzero) return detail::heuristic_minor(M, size);

    int extra = size - static_cast<int>(forced_rows.size());
    if (extra < 0) throw std::invalid_argument("more forced rows than the minor size");
    std::vector<int> free_rows;
    for (int i = 0; i < M.rows; ++i)
        if (std::find(forced_rows.begin(), forced_rows.end(), i) == forced_rows.end())
            free_rows.push_back(i);

    double log_count = detail::log_choose(static_cast<int>(free_rows.size()), extra) +
                       detail::log_choose(M.cols, size);
    if (log_count > std::log(static_cast<double>(budget)))
        return detail::heuristic_minor(M, size);

    MinorResult best;
    best.mode = MinorMode::ExhaustiveMax;
    bool found = false;

    std::vector<int> rc(static_cast<size_t>(extra));
    for (int i = 0; i < extra; ++i) rc[static_cast<size_t>(i)] = i;
    bool rows_done = false;
    while (!rows_done) {
        std::vector<int> rows = forced_rows;
        for (int i : rc) rows.push_back(free_rows[static_cast<size_t>(i)]);
        std::sort(rows.begin(), rows.end());

        std::vector<int> cc(static_cast<size_t>(size));
        for (int j = 0; j < size; ++j) cc[static_cast<size_t>(j)] = j;
        bool cols_done = false;
        while (!cols_done) {
            Rat d = rat_abs(det_exact(M.submatrix(rows, cc)));
            if (d != 0 && (!found || d > best.value)) {
                best.value = d;
                best.row_set = rows;
                best.col_set = cc;
                found = true;
            }
            cols_done = !detail::next_combination(cc, M.cols);
        }
        rows_done = !detail::next_combination(rc, static_cast<int>(free_rows.size()));
    }
    if (!found) throw RankDeficientError("no nonzero minor of the requested size");
    return best;
}

/// Convenience wrapper for Bautin matrices: when the minor size equals the
/// parameter count, the column set is all columns and rows 0..d are forced
/// (the f^0 block columns are unit vectors supported there).
inline MinorResult max_nonzero_minor(const BautinMatrix& bm, int size, MinorMode mode,
                                     std::uint64_t budget = 1000000) {
    std::vector<int> forced;
    if (size == bm.family.size())
        for (int i = 0; i <= bm.family.degree && i < bm.m.rows; ++i) forced.push_back(i);
    return max_nonzero_minor(bm.m, size, mode, budget, forced);
}

/// Order in the base point u of the recentered tilde determinant, read from an
/// exact determinant over Q[u] of entries truncated at u^{order_cap}.
struct EtaResult {
    enum class Status { Found, AllZeroUpToCap } status = Status::Found;
    int eta = -1;          // valid when Found
    Rat leading;           // alpha_d, valid when Found
    int order_cap = 0;     // K_u actually used
    bool det_poly_zero = false;  // determinant vanished identically at this truncation
};

inline EtaResult bautin_multiplicity(const ExactSeries& f, int d, int K_u) {
    if (d < 1) throw std::invalid_argument("bautin_multiplicity: degree must be >= 1");
    if (K_u < 0) throw std::invalid_argument("bautin_multiplicity: negative base order");
    const int b = d * d + 2 * d;
    RecenteredTable rt = recenter(f, d, b, K_u);
    const int n = d * (d + 1);
    std::vector<std::vector<UPoly>> z(static_cast<size_t>(n), std::vector<UPoly>(static_cast<size_t>(n)));
    for (int k = d + 1; k <= b; ++k) {
        int c = 0;
        for (int j = 1; j <= d; ++j)
            for (int i = 0; i <= d; ++i) z[static_cast<size_t>(k - d - 1)][static_cast<size_t>(c++)] =
                rt.coeff_or_zero(k - i, j);
    }
    UPoly det = det_poly(std::move(z));
    EtaResult res;
    res.order_cap = K_u;
    int val = det.valuation();
    if (val < 0) {
        res.status = EtaResult::Status::AllZeroUpToCap;
        res.det_poly_zero = true;
        return res;
    }
    if (val > K_u) {
        // coefficients beyond the entry truncation order are not trustworthy
        res.status = EtaResult::Status::AllZeroUpToCap;
        return res;
    }
    res.eta = val;
    res.leading = det.coeff(val);
    return res;
}

/// Kernel vector of M_{b-1} (the unique direction killed by every Taylor
/// coefficient below b), plus the verified vanishing order of the resulting
/// combination sum lambda_{j,i} z^i f^j.
struct Witness {
    std::vector<Rat> lambda;  // by family column order, primitive integers
    int multiplicity = 0;
};

inline Witness witness_polynomial(const ExactSeries& f, const MonomialFamily& family, int K_max) {
    BautinReport rep = bautin_index(f, family, K_max);
    if (rep.stalled())
        throw std::runtime_error("witness_polynomial: rank never reached the parameter count");
    const int b = *rep.index;
    PowerTable table = power_table(f, family.degree, K_max);
    EchelonForm ech(family.size());
    for (int k = 0; k < b; ++k) ech.add_row(bautin_row(table, family, k));
    auto basis = ech.kernel_basis();
    if (basis.size() != 1)
        throw std::runtime_error("witness_polynomial: kernel of the stalled prefix is not a line");
    Witness w;
    w.lambda = basis[0];
    // independent check by direct evaluation of the rows
    int mult = -1;
    for (int k = 0; k <= table.order; ++k) {
        auto row = bautin_row(table, family, k);
        Rat g(0);
        for (size_t c = 0; c < row.size(); ++c) g += row[c] * w.lambda[c];
        if (g != 0) {
            mult = k;
            break;
        }
    }
    if (mult != b)
        throw std::runtime_error("witness_polynomial: vanishing order does not match the index");
    w.multiplicity = mult;
    return w;
}

}  // namespace bautinlab
