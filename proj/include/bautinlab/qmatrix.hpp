#pragma once

#include <stdexcept>
#include <vector>

#include "bautinlab/rational.hpp"
#include "bautinlab/upoly.hpp"

namespace bautinlab {

struct QMatrix {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    QMatrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
        QMatrix s(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
        for (size_t i = 0; i < row_idx.size(); ++i)
            for (size_t j = 0; j < col_idx.size(); ++j)
                s.at(static_cast<int>(i), static_cast<int>(j)) = at(row_idx[i], col_idx[j]);
        return s;
    }
};

namespace detail {

/// Clears denominators row by row; det(A) = det(Z) / scale.
inline std::pair<std::vector<std::vector<Int>>, Int> clear_rows(const QMatrix& m) {
    std::vector<std::vector<Int>> z(static_cast<size_t>(m.rows),
                                    std::vector<Int>(static_cast<size_t>(m.cols)));
    Int scale(1);
    for (int i = 0; i < m.rows; ++i) {
        Int l(1);
        for (int j = 0; j < m.cols; ++j) l = int_lcm(l, m.at(i, j).get_den());
        for (int j = 0; j < m.cols; ++j) {
            Rat v = m.at(i, j) * l;
            z[static_cast<size_t>(i)][static_cast<size_t>(j)] = v.get_num();
        }
        scale *= l;
    }
    return {std::move(z), std::move(scale)};
}

}  // namespace detail

/// Exact determinant by fraction-free (Bareiss) elimination with complete
/// pivoting on the largest entry.
inline Rat det_exact(const QMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    int n = m.rows;
    if (n == 0) return Rat(1);
    auto [z, scale] = detail::clear_rows(m);
    int sign = 1;
    Int prev(1);
    for (int k = 0; k < n; ++k) {
        int pr = -1, pc = -1;
        Int best(0);
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                Int v = abs(z[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                if (v != 0 && (pr < 0 || v > best)) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) return Rat(0);
        if (pr != k) {
            std::swap(z[static_cast<size_t>(pr)], z[static_cast<size_t>(k)]);
            sign = -sign;
        }
        if (pc != k) {
            for (int i = 0; i < n; ++i)
                std::swap(z[static_cast<size_t>(i)][static_cast<size_t>(pc)],
                          z[static_cast<size_t>(i)][static_cast<size_t>(k)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int t = z[static_cast<size_t>(i)][static_cast<size_t>(j)] * z[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                        z[static_cast<size_t>(i)][static_cast<size_t>(k)] * z[static_cast<size_t>(k)][static_cast<size_t>(j)];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                z[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(t);
            }
            z[static_cast<size_t>(i)][static_cast<size_t>(k)] = 0;
        }
        prev = z[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    Rat d = make_rat(z[static_cast<size_t>(n) - 1][static_cast<size_t>(n) - 1], scale);
    return sign < 0 ? Rat(-d) : d;
}

/// Incremental exact row reduction: the pivot rows are kept in reduced row
/// echelon form, so ranks are read off directly and kernels come for free.
class EchelonForm {
public:
    explicit EchelonForm(int cols) : cols_(cols) {}

    /// Returns true when the row is independent of those added so far.
    bool add_row(const std::vector<Rat>& row) {
        if (static_cast<int>(row.size()) != cols_) throw std::invalid_argument("row width mismatch");
        std::vector<Rat> r = row;
        for (size_t p = 0; p < pivots_.size(); ++p) {
            int pc = pivot_col_[p];
            if (r[static_cast<size_t>(pc)] == 0) continue;
            Rat fac = r[static_cast<size_t>(pc)];
            const auto& prow = pivots_[p];
            for (int j = 0; j < cols_; ++j)
                if (prow[static_cast<size_t>(j)] != 0) r[static_cast<size_t>(j)] -= fac * prow[static_cast<size_t>(j)];
            r[static_cast<size_t>(pc)] = 0;
        }
        int lead = -1;
        for (int j = 0; j < cols_; ++j)
            if (r[static_cast<size_t>(j)] != 0) {
                lead = j;
                break;
            }
        if (lead < 0) return false;
        Rat piv = r[static_cast<size_t>(lead)];
        for (int j = 0; j < cols_; ++j)
            if (r[static_cast<size_t>(j)] != 0) r[static_cast<size_t>(j)] /= piv;
        for (size_t p = 0; p < pivots_.size(); ++p) {
            Rat fac = pivots_[p][static_cast<size_t>(lead)];
            if (fac == 0) continue;
            for (int j = 0; j < cols_; ++j)
                if (r[static_cast<size_t>(j)] != 0)
                    pivots_[p][static_cast<size_t>(j)] -= fac * r[static_cast<size_t>(j)];
            pivots_[p][static_cast<size_t>(lead)] = 0;
        }
        size_t pos = 0;
        while (pos < pivots_.size() && pivot_col_[pos] < lead) ++pos;
        pivots_.insert(pivots_.begin() + static_cast<long>(pos), std::move(r));
        pivot_col_.insert(pivot_col_.begin() + static_cast<long>(pos), lead);
        return true;
    }

    int rank() const { return static_cast<int>(pivots_.size()); }
    int cols() const { return cols_; }
    const std::vector<int>& pivot_cols() const { return pivot_col_; }

    /// Basis of the right kernel of the row span, as primitive integer vectors.
    std::vector<std::vector<Rat>> kernel_basis() const {
        std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
        for (int pc : pivot_col_) is_pivot[static_cast<size_t>(pc)] = true;
        std::vector<std::vector<Rat>> basis;
        for (int f = 0; f < cols_; ++f) {
            if (is_pivot[static_cast<size_t>(f)]) continue;
            std::vector<Rat> v(static_cast<size_t>(cols_), Rat(0));
            v[static_cast<size_t>(f)] = 1;
            for (size_t p = 0; p < pivots_.size(); ++p)
                v[static_cast<size_t>(pivot_col_[p])] = -pivots_[p][static_cast<size_t>(f)];
            Int l(1);
            for (const Rat& x : v) l = int_lcm(l, x.get_den());
            Int g(0);
            for (Rat& x : v) {
                x *= l;
                g = int_gcd(g, x.get_num());
            }
            if (g > 1)
                for (Rat& x : v) x /= Rat(g);
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    int cols_;
    std::vector<std::vector<Rat>> pivots_;
    std::vector<int> pivot_col_;
};

inline int rank_exact(const QMatrix& m) {
    EchelonForm e(m.cols);
    std::vector<Rat> row(static_cast<size_t>(m.cols));
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) row[static_cast<size_t>(j)] = m.at(i, j);
        e.add_row(row);
    }
    return e.rank();
}

/// Determinant of a square matrix over Q[u] by Bareiss elimination; divisions
/// stay exact in the polynomial ring. Pivots are chosen by lowest valuation.
inline UPoly det_poly(std::vector<std::vector<UPoly>> z) {
    int n = static_cast<int>(z.size());
    if (n == 0) return UPoly(Rat(1));
    int sign = 1;
    UPoly prev(Rat(1));
    for (int k = 0; k < n; ++k) {
        int pr = -1, pc = -1, bestval = -1;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                const UPoly& v = z[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (v.is_zero()) continue;
                int val = v.valuation();
                if (pr < 0 || val < bestval) {
                    bestval = val;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) return {};
        if (pr != k) {
            std::swap(z[static_cast<size_t>(pr)], z[static_cast<size_t>(k)]);
            sign = -sign;
        }
        if (pc != k) {
            for (int i = 0; i < n; ++i)
                std::swap(z[static_cast<size_t>(i)][static_cast<size_t>(pc)],
                          z[static_cast<size_t>(i)][static_cast<size_t>(k)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                UPoly t = z[static_cast<size_t>(i)][static_cast<size_t>(j)] * z[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                          z[static_cast<size_t>(i)][static_cast<size_t>(k)] * z[static_cast<size_t>(k)][static_cast<size_t>(j)];
                z[static_cast<size_t>(i)][static_cast<size_t>(j)] = div_exact(t, prev);
            }
            z[static_cast<size_t>(i)][static_cast<size_t>(k)] = {};
        }
        prev = z[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    UPoly d = z[static_cast<size_t>(n) - 1][static_cast<size_t>(n) - 1];
    if (sign < 0) d = UPoly() - d;
    return d;
}

}  // namespace bautinlab
