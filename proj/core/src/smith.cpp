#include "kisin/smith.hpp"

#include <algorithm>

#include "kisin/errors.hpp"

namespace kisin {

SeriesMatrix SmithDecomposition::middle(int rows, int cols) const {
    SeriesMatrix d(left.field(), rows, cols);
    for (int i = 0; i < rank; ++i) d.at(i, i) = USeries::u_power(left.field(), divisors[i]);
    return d;
}

namespace {

void swap_rows(SeriesMatrix& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(SeriesMatrix& m, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

}  // namespace

SmithDecomposition smith_decompose(const SeriesMatrix& a, int cap) {
    const FieldPtr& k = a.field();
    const int m = a.rows(), n = a.cols();
    if (!a.is_integral()) throw MathError("Smith form needs an integral matrix");
    SeriesMatrix w = a;
    SeriesMatrix left = SeriesMatrix::identity(k, m);
    SeriesMatrix right = SeriesMatrix::identity(k, n);
    SmithDecomposition out;
    const int steps = std::min(m, n);
    for (int s = 0; s < steps; ++s) {
        int best = kExact, bi = -1, bj = -1;
        int unknown_floor = kExact;  // least precision among zero-to-precision entries
        for (int i = s; i < m; ++i)
            for (int j = s; j < n; ++j) {
                const USeries& x = w.at(i, j);
                if (x.is_zero()) {
                    unknown_floor = std::min(unknown_floor, x.precision());
                    continue;
                }
                if (*x.valuation() < best) {
                    best = *x.valuation();
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;  // remaining block vanishes (to precision)
        if (unknown_floor < best)
            throw InsufficientPrecision("Smith pivot undecided: entry only known modulo u^" +
                                        std::to_string(unknown_floor));
        swap_rows(w, s, bi);
        swap_cols(left, s, bi);
        swap_cols(w, s, bj);
        swap_rows(right, s, bj);

        const int av = best;
        USeries unit = w.at(s, s).shifted(-av);
        USeries unit_inv = unit.inverse(cap);
        for (int j = s; j < n; ++j) w.at(s, j) = w.at(s, j) * unit_inv;
        for (int i = 0; i < m; ++i) left.at(i, s) = left.at(i, s) * unit;
        w.at(s, s) = USeries::u_power(k, av);

        for (int i = s + 1; i < m; ++i) {
            if (w.at(i, s).is_zero() && w.at(i, s).is_exact()) continue;
            USeries g = w.at(i, s).shifted(-av);
            for (int j = s + 1; j < n; ++j) w.at(i, j) = w.at(i, j) - g * w.at(s, j);
            w.at(i, s) = USeries::zero(k);
            for (int r = 0; r < m; ++r) left.at(r, s) = left.at(r, s) + g * left.at(r, i);
        }
        for (int j = s + 1; j < n; ++j) {
            if (w.at(s, j).is_zero() && w.at(s, j).is_exact()) continue;
            USeries h = w.at(s, j).shifted(-av);
            w.at(s, j) = USeries::zero(k);
            for (int c = 0; c < n; ++c) right.at(s, c) = right.at(s, c) + h * right.at(j, c);
        }
        out.divisors.push_back(av);
        out.rank = s + 1;
    }
    out.left = std::move(left);
    out.right = std::move(right);
    return out;
}

SmithDecomposition smith_normal_form(const SeriesMatrix& a, int cap) {
    if (!a.is_square()) throw DimensionMismatch("smith_normal_form expects a square matrix");
    USeries det = determinant(a);
    if (det.is_zero()) {
        if (det.is_exact()) throw SingularMatrix("Smith form of a singular matrix");
        throw InsufficientPrecision("precision exhausted or singular: determinant is zero modulo u^" +
                                    std::to_string(det.precision()));
    }
    SmithDecomposition s = smith_decompose(a, cap);
    if (s.rank != a.rows()) throw InsufficientPrecision("Smith form lost rank to truncation");
    return s;
}

SmithDecomposition smith_normal_form(const SeriesMatrix& a) {
    int cap = 64;
    if (a.is_square() && a.rows() > 0) {
        USeries det = determinant(a);
        if (!det.is_zero()) cap = std::max(cap, 2 * (*det.valuation()) + 2 * a.max_degree() + 16);
    }
    return smith_normal_form(a, cap);
}

std::vector<int> smith_divisors(const SeriesMatrix& a) {
    // Divisors do not depend on the unit inverses, so a tiny cap is enough.
    if (!a.is_square()) throw DimensionMismatch("smith_divisors expects a square matrix");
    USeries det = determinant(a);
    if (det.is_zero()) {
        if (det.is_exact()) throw SingularMatrix("Smith form of a singular matrix");
        throw InsufficientPrecision("determinant is zero to precision");
    }
    int v = *det.valuation();
    SmithDecomposition s = smith_decompose(a.truncated(v + 1), v + 1);
    if (s.rank != a.rows()) throw InsufficientPrecision("Smith divisors undecided at this precision");
    return s.divisors;
}

}  // namespace kisin
