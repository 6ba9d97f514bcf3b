#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bautinlab/parallel.hpp"
#include "bautinlab/rational.hpp"
#include "bautinlab/series.hpp"

namespace bautinlab {

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Height of a reduced rational: max(|numerator|, denominator).
inline Int height(const Rat& x) {
    Int n = abs(x.get_num());
    return n > x.get_den() ? n : Int(x.get_den());
}

inline Int height_point(const Rat& x, const Rat& y) {
    Int hx = height(x), hy = height(y);
    return hx > hy ? hx : hy;
}

/// Nearest fractions with denominator <= T on both sides of v (both equal to v
/// when v itself qualifies), via the continued fraction of v.
struct FareyNeighbors {
    Rat below, above;
};

inline FareyNeighbors farey_neighbors(const Rat& v, const Int& T) {
    if (T < 1) throw std::invalid_argument("farey_neighbors: T must be >= 1");
    if (v.get_den() <= T) return {v, v};
    Int num = v.get_num(), den = v.get_den();
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int p_prev(1), q_prev(0);
    Int p_cur = a, q_cur(1);
    Int u = den;
    Int w = num - a * den;
    while (w != 0) {
        Int step;
        mpz_fdiv_q(step.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t());
        Int p_next = step * p_cur + p_prev;
        Int q_next = step * q_cur + q_prev;
        if (q_next > T) break;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        Int r = u - step * w;
        u = w;
        w = r;
    }
    // best approximation with denominator <= T is the last convergent; the
    // other side is reached by the deepest admissible semiconvergent
    Int t = (T - q_prev) / q_cur;
    Rat side1 = make_rat(p_cur, q_cur);
    Rat side2 = make_rat(p_prev + t * p_cur, q_prev + t * q_cur);
    if (side1 > side2) std::swap(side1, side2);
    return {side1, side2};
}

/// Prepared exact evaluation of the degree-N truncation over a common
/// denominator, by integer Horner.
struct SeriesEvaluator {
    int N = 0;
    Int D{1};
    std::vector<Int> c;  // c_k = D a_k

    static SeriesEvaluator prepare(const ExactSeries& f, int N) {
        f.require_order(N);
        SeriesEvaluator e;
        e.N = N;
        for (int k = 0; k <= N; ++k) e.D = int_lcm(e.D, f.coeffs[static_cast<size_t>(k)].get_den());
        e.c.resize(static_cast<size_t>(N) + 1);
        for (int k = 0; k <= N; ++k) {
            Rat scaled = f.coeffs[static_cast<size_t>(k)] * e.D;
            e.c[static_cast<size_t>(k)] = scaled.get_num();
        }
        return e;
    }

    Rat eval(const Rat& x) const {
        const Int& p = x.get_num();
        const Int& q = x.get_den();
        Int acc = c[static_cast<size_t>(N)];
        Int qpow(1);  // q^(N-k) alongside the Horner recursion
        for (int k = N - 1; k >= 0; --k) {
            qpow *= q;
            acc = acc * p + c[static_cast<size_t>(k)] * qpow;
        }
        return make_rat(acc, D * qpow);
    }
};

enum class PointStatus { CertifiedMember, Excluded, Unresolved };

struct PointOutcome {
    PointStatus status = PointStatus::Unresolved;
    Rat x;
    Rat y;       // certified value, excluded candidate, or unresolved candidate
    Rat margin;  // |f_N(x) - y| - tail_bound(f, N, |x|); positive when excluded
};

/// Decides one abscissa: an exact hit when the tail vanishes, an exclusion
/// certificate against the nearest denominator-bounded candidates, or an
/// unresolved flag. Exclusion against denominator <= T is sound for height
/// <= T since every height-bounded rational is denominator-bounded.
inline PointOutcome scan_point(const ExactSeries& f, const SeriesEvaluator& ev, const Int& T,
                               const Rat& x) {
    PointOutcome out;
    out.x = x;
    Rat v = ev.eval(x);
    Rat tau = tail_bound(f, ev.N, rat_abs(x));
    auto nb = farey_neighbors(v, T);
    if (nb.below == v) {
        out.y = v;
        if (tau == 0 && height(v) <= T) {
            out.status = PointStatus::CertifiedMember;
        } else {
            // the truncated value itself is an admissible candidate: a
            // transcendental equality cannot be decided by evaluation
            out.status = PointStatus::Unresolved;
            out.margin = -tau;
        }
        return out;
    }
    Rat d_below = v - nb.below;
    Rat d_above = nb.above - v;
    bool below_closer = d_below <= d_above;
    out.y = below_closer ? nb.below : nb.above;
    Rat dist = below_closer ? d_below : d_above;
    out.margin = dist - tau;
    out.status = out.margin > 0 ? PointStatus::Excluded : PointStatus::Unresolved;
    return out;
}

struct ScanReport {
    Int T;
    int truncation_order = 0;
    std::vector<std::pair<Rat, Rat>> certified;
    long excluded = 0;
    struct Unresolved {
        Rat x, y, width;
    };
    std::vector<Unresolved> unresolved;
    long enumerated = 0;
};

/// Certified sweep of the graph over [-1/4, 1/4] for rational points of
/// height <= T. Requires the tail at radius 1/4 to resolve below the minimal
/// gap 1/T^2 between distinct height-bounded rationals.
inline ScanReport scan_graph_points(const ExactSeries& f, long T, int N) {
    if (T < 1) throw std::invalid_argument("scan_graph_points: T must be >= 1");
    f.validate();
    if (f.radius <= make_rat(1, 4))
        throw RadiusError("scan_graph_points: series must be analytic beyond 1/4");
    Rat sep = make_rat(Int(1), 2 * Int(T) * Int(T));
    if (tail_bound(f, N, make_rat(1, 4)) >= sep)
        throw PrecisionError("scan_graph_points: truncation order too small for height " +
                             std::to_string(T));
    SeriesEvaluator ev = SeriesEvaluator::prepare(f, N);

    ScanReport rep;
    rep.T = T;
    rep.truncation_order = N;

    struct Cell {
        std::vector<std::pair<Rat, Rat>> certified;
        std::vector<ScanReport::Unresolved> unresolved;
        long excluded = 0;
        long enumerated = 0;
    };
    std::vector<Cell> cells(static_cast<size_t>(T));
    parallel_for(T, [&](long qi) {
        long q = qi + 1;
        Cell& cell = cells[static_cast<size_t>(qi)];
        long pmax = q / 4;
        for (long p = -pmax; p <= pmax; ++p) {
            if (int_gcd(Int(p), Int(q)) != 1) continue;
            Rat x = make_rat(p, q);
            if (rat_abs(x) > make_rat(1, 4)) continue;
            ++cell.enumerated;
            auto pt = scan_point(f, ev, Int(T), x);
            switch (pt.status) {
                case PointStatus::CertifiedMember:
                    cell.certified.emplace_back(pt.x, pt.y);
                    break;
                case PointStatus::Excluded:
                    ++cell.excluded;
                    break;
                case PointStatus::Unresolved:
                    cell.unresolved.push_back({pt.x, pt.y, 2 * tail_bound(f, N, rat_abs(pt.x))});
                    break;
            }
        }
    });
    for (const Cell& c : cells) {
        rep.enumerated += c.enumerated;
        rep.excluded += c.excluded;
        rep.certified.insert(rep.certified.end(), c.certified.begin(), c.certified.end());
        rep.unresolved.insert(rep.unresolved.end(), c.unresolved.begin(), c.unresolved.end());
    }
    return rep;
}

/// Least-squares fit of count ~ beta (log T)^alpha; descriptive only.
struct LogPowerFit {
    double alpha = 0;
    double beta = 0;
    double max_residual = 0;  // in log-count space
};

inline LogPowerFit fit_log_power(const std::vector<std::pair<double, double>>& counts) {
    if (counts.size() < 3) throw std::invalid_argument("fit_log_power: needs at least 3 samples");
    bool constant = true;
    for (const auto& [t, c] : counts) {
        if (t < 3 || c < 1) throw std::invalid_argument("fit_log_power: needs T >= 3 and counts >= 1");
        if (c != counts.front().second) constant = false;
    }
    LogPowerFit fit;
    if (constant) {
        fit.alpha = 0;
        fit.beta = counts.front().second;
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(counts.size());
    for (const auto& [t, c] : counts) {
        double x = std::log(std::log(t));
        double y = std::log(c);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    fit.alpha = (n * sxy - sx * sy) / denom;
    double intercept = (sy - fit.alpha * sx) / n;
    fit.beta = std::exp(intercept);
    for (const auto& [t, c] : counts) {
        double x = std::log(std::log(t));
        double res = std::fabs(std::log(c) - (fit.alpha * x + intercept));
        if (res > fit.max_residual) fit.max_residual = res;
    }
    return fit;
}

}  // namespace bautinlab
