#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bautinlab {

enum class FamilyKind { Square, Total };

/// Monomial family z^i f^j indexing the parameter columns.
/// Square(d): 0 <= i, j <= d. Total(d): i + j <= d.
/// Columns are grouped by j ascending, i ascending inside each group.
struct MonomialFamily {
    FamilyKind kind = FamilyKind::Square;
    int degree = 1;

    struct Exp {
        int z_exp;  // i
        int f_exp;  // j
    };

    static MonomialFamily square(int d) { return {FamilyKind::Square, d}; }
    static MonomialFamily total(int d) { return {FamilyKind::Total, d}; }

    int size() const {
        return kind == FamilyKind::Square ? (degree + 1) * (degree + 1)
                                          : (degree + 1) * (degree + 2) / 2;
    }

    std::vector<Exp> columns() const {
        std::vector<Exp> c;
        c.reserve(static_cast<size_t>(size()));
        for (int j = 0; j <= degree; ++j) {
            int imax = kind == FamilyKind::Square ? degree : degree - j;
            for (int i = 0; i <= imax; ++i) c.push_back({i, j});
        }
        return c;
    }

    std::string name() const { return kind == FamilyKind::Square ? "square" : "total"; }
};

inline MonomialFamily parse_family(const std::string& s, int degree) {
    if (degree < 1) throw std::invalid_argument("family degree must be >= 1");
    if (s == "square") return MonomialFamily::square(degree);
    if (s == "total") return MonomialFamily::total(degree);
    throw std::invalid_argument("unknown family kind: " + s);
}

}  // namespace bautinlab
