#include "kisin/hermite.hpp"

#include <algorithm>

#include "kisin/errors.hpp"
#include "kisin/smith.hpp"

namespace kisin {

namespace {

using Column = std::vector<USeries>;

bool exact_zero(const USeries& x) { return x.is_zero(); }

// Exact polynomial approximant of x known modulo u^prec.
USeries approximant(const USeries& x) {
    if (x.is_exact()) return x;
    return x.low_part(x.precision());
}

}  // namespace

int lattice_floor(const SeriesMatrix& gens) {
    const int d = gens.rows();
    if (d == 0) return 0;
    if (gens.cols() < d) throw SingularMatrix("fewer generators than the rank");
    int mv = gens.min_valuation();
    if (mv >= kExact) throw SingularMatrix("zero generating set");
    SeriesMatrix g = gens.shifted(-mv);
    int cap = g.precision() < kExact ? g.precision() : 64 + 4 * g.max_degree();
    SmithDecomposition s = smith_decompose(g, cap);
    if (s.rank < d) {
        if (g.is_exact()) throw SingularMatrix("rank-deficient generating set");
        throw InsufficientPrecision("generating set has full rank only to precision");
    }
    return mv + *std::max_element(s.divisors.begin(), s.divisors.end());
}

SeriesMatrix hnf_lattice(const SeriesMatrix& gens) {
    if (gens.rows() == 0) return SeriesMatrix(gens.field(), 0, 0);
    return hnf_lattice(gens, lattice_floor(gens));
}

SeriesMatrix hnf_lattice(const SeriesMatrix& gens, int floor) {
    const FieldPtr& k = gens.field();
    const int d = gens.rows();
    const int work = floor + 1;  // everything is taken modulo u^{floor+1}
    std::vector<Column> cols;
    cols.reserve(gens.cols() + d);
    for (int j = 0; j < gens.cols(); ++j) {
        Column c(d);
        bool nonzero = false;
        for (int i = 0; i < d; ++i) {
            const USeries& x = gens.at(i, j);
            if (x.precision() < work)
                throw InsufficientPrecision("generator known modulo u^" + std::to_string(x.precision()) +
                                            ", lattice needs u^" + std::to_string(work));
            c[i] = approximant(x.truncated(work));
            nonzero = nonzero || !c[i].is_zero();
        }
        if (nonzero) cols.push_back(std::move(c));
    }
    for (int i = 0; i < d; ++i) {
        Column c(d, USeries::zero(k));
        c[i] = USeries::u_power(k, floor);
        cols.push_back(std::move(c));
    }

    auto reduce = [&](const USeries& x) { return approximant(x.truncated(work)); };

    std::vector<Column> basis(d);
    std::vector<int> pivots(d);
    for (int r = d - 1; r >= 0; --r) {
        int best = -1, bv = kExact;
        for (size_t j = 0; j < cols.size(); ++j) {
            const USeries& x = cols[j][r];
            if (exact_zero(x)) continue;
            if (*x.valuation() < bv) {
                bv = *x.valuation();
                best = static_cast<int>(j);
            }
        }
        if (best < 0) throw SingularMatrix("lattice floor is not valid for these generators");
        Column piv = std::move(cols[best]);
        cols.erase(cols.begin() + best);
        const int a = bv;
        // Normalize the pivot to exactly u^a.
        USeries unit = piv[r].shifted(-a);
        int rel = work - a;
        USeries unit_inv = approximant(unit.truncated(rel).inverse(rel));
        if (!(unit.is_monomial() && unit.lead() == 1)) {
            for (int i = 0; i < r; ++i) piv[i] = reduce(piv[i] * unit_inv);
        }
        piv[r] = USeries::u_power(k, a);
        for (auto& c : cols) {
            if (exact_zero(c[r])) continue;
            USeries g = c[r].shifted(-a);  // exact polynomial, integral
            for (int i = 0; i < r; ++i) {
                if (exact_zero(piv[i])) continue;
                c[i] = reduce(c[i] - g * piv[i]);
            }
            c[r] = USeries::zero(k);
        }
        basis[r] = std::move(piv);
        pivots[r] = a;
    }

    SeriesMatrix h(k, d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) h.at(i, j) = i <= j ? basis[j][i] : USeries::zero(k);
    for (int j = 0; j < d; ++j) {
        for (int i = j - 1; i >= 0; --i) {
            USeries x = h.at(i, j);
            if (x.is_zero() || x.degree() < pivots[i]) continue;
            USeries q = x.high_part(pivots[i]).shifted(-pivots[i]);
            for (int t = 0; t <= i; ++t) {
                if (exact_zero(h.at(t, i))) continue;
                h.at(t, j) = reduce(h.at(t, j) - q * h.at(t, i));
            }
        }
    }
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < j; ++i) h.at(i, j) = h.at(i, j).low_part(pivots[i]);
    return h;
}

bool is_hnf(const SeriesMatrix& h) {
    if (!h.is_square()) return false;
    const int d = h.rows();
    for (int j = 0; j < d; ++j) {
        const USeries& piv = h.at(j, j);
        if (!piv.is_exact() || !piv.is_monomial() || piv.lead() != 1) return false;
        int a = *piv.valuation();
        for (int i = j + 1; i < d; ++i)
            if (!(h.at(i, j).is_zero() && h.at(i, j).is_exact())) return false;
        (void)a;
        for (int i = 0; i < j; ++i) {
            const USeries& x = h.at(i, j);
            if (!x.is_exact()) return false;
            if (!x.is_zero() && x.degree() >= *h.at(i, i).valuation()) return false;
        }
    }
    return true;
}

SeriesMatrix hnf_inverse(const SeriesMatrix& h) {
    const FieldPtr& k = h.field();
    const int d = h.rows();
    SeriesMatrix x(k, d, d);
    std::vector<int> a(d);
    for (int i = 0; i < d; ++i) {
        if (!h.at(i, i).is_exact() || !h.at(i, i).is_monomial())
            throw DimensionMismatch("hnf_inverse expects a canonical lattice basis");
        a[i] = *h.at(i, i).valuation();
    }
    for (int j = 0; j < d; ++j) {
        x.at(j, j) = USeries::u_power(k, -a[j]);
        for (int i = j - 1; i >= 0; --i) {
            USeries acc = USeries::zero(k);
            for (int l = i + 1; l <= j; ++l) {
                if (h.at(i, l).is_zero() || x.at(l, j).is_zero()) continue;
                acc += h.at(i, l) * x.at(l, j);
            }
            x.at(i, j) = (-acc).shifted(-a[i]);
        }
    }
    return x;
}

std::optional<std::vector<USeries>> solve_membership(const SeriesMatrix& basis, const std::vector<USeries>& v) {
    if (!basis.is_square() || static_cast<int>(v.size()) != basis.rows())
        throw DimensionMismatch("solve_membership: shapes do not match");
    SeriesMatrix inv;
    if (basis.is_exact() && is_hnf(basis)) {
        inv = hnf_inverse(basis);
    } else {
        int cap = kExact;
        for (const auto& x : v) cap = std::min(cap, x.precision());
        if (cap >= kExact) cap = 64 + 4 * basis.max_degree();
        inv = inverse_laurent(basis, cap);
    }
    std::vector<USeries> x = inv * v;
    bool undecided = false;
    for (const auto& c : x) {
        if (c.is_zero()) {
            if (c.precision() < 0) undecided = true;
            continue;
        }
        if (*c.valuation() < 0) return std::nullopt;
    }
    if (undecided) throw InsufficientPrecision("membership undecided: coordinate known only modulo a negative power of u");
    return x;
}

}  // namespace kisin
