#include "kisin/hom.hpp"

#include <algorithm>

#include "kisin/errors.hpp"
#include "kisin/fp_linalg.hpp"

namespace kisin {

namespace {

struct HomSetup {
    int da = 0, db = 0, f = 1, p = 2;
    int h = 0;   // height of A_a
    int n1 = 1;  // F mod u^{n1} determines F
};

HomSetup setup(const PhiModule& a, const PhiModule& b) {
    if (!a.same_base(b)) throw ParameterMismatch("hom between modules over different bases");
    HomSetup s;
    s.da = a.rank();
    s.db = b.rank();
    s.f = a.field()->degree();
    s.p = a.p();
    s.h = frob_height(a);
    s.n1 = s.h / (s.p - 1) + 1;
    return s;
}

Elem basis_elem(const Field& k, int c) {
    std::vector<int> v(k.degree(), 0);
    v[c] = 1;
    return k.from_coords(v);
}

// Writes the F_p coordinates of every coefficient of x with exponent in
// [lo, hi) into column `col` of sys starting at row `row0`.
void scatter(FpMatrix& sys, int row0, int col, const USeries& x, int lo, int hi) {
    const Field& k = *x.field();
    const int f = k.degree();
    for (int n = lo; n < hi; ++n) {
        Elem c = x.coeff(n);
        if (c == 0) continue;
        auto co = k.coords(c);
        for (int t = 0; t < f; ++t) sys.at(row0 + (n - lo) * f + t, col) = static_cast<std::uint8_t>(co[t]);
    }
}

// Lift an exact solution modulo u^{n1} towards precision prec.
SeriesMatrix lift(const PhiModule& a, const PhiModule& b, const HomSetup& s, const SeriesMatrix& low,
                  const SeriesMatrix& ainv, int prec) {
    SeriesMatrix f = low.truncated(s.n1);
    int last = f.precision();
    while (f.precision() < prec) {
        SeriesMatrix t = b.frob() * f.phi() * ainv;
        SeriesMatrix next = low;
        for (int i = 0; i < s.db; ++i)
            for (int j = 0; j < s.da; ++j) next.at(i, j) = low.at(i, j) + t.at(i, j).high_part(s.n1);
        next = next.truncated(prec);
        // Inexact module data caps the attainable precision.
        if (next.precision() <= last) break;
        f = std::move(next);
        last = f.precision();
    }
    (void)a;
    return f;
}

}  // namespace

std::vector<PhiMorphism> hom_space(const PhiModule& a, const PhiModule& b, const HomOptions& opts) {
    require_valid(a);
    require_valid(b);
    HomSetup s = setup(a, b);
    std::vector<PhiMorphism> out;
    if (s.da == 0 || s.db == 0) return out;
    const FieldPtr& kp = a.field();
    const Field& k = *kp;
    const int prec = opts.precision > 0 ? opts.precision : std::max(working_precision(a), working_precision(b));

    // T(F) - F on a single unknown monomial; equations at exponents [-h, n1).
    SeriesMatrix ainv = inverse_laurent(a.frob(), s.n1 + 2);
    const int unknowns = s.db * s.da * s.n1 * s.f;
    const int eq_per_entry = (s.n1 + s.h) * s.f;
    FpMatrix sys(s.p, s.db * s.da * eq_per_entry, unknowns);
    auto unknown_index = [&](int i, int j, int m, int c) { return ((i * s.da + j) * s.n1 + m) * s.f + c; };
    for (int i = 0; i < s.db; ++i)
        for (int j = 0; j < s.da; ++j)
            for (int m = 0; m < s.n1; ++m)
                for (int c = 0; c < s.f; ++c) {
                    const int col = unknown_index(i, j, m, c);
                    Elem x = basis_elem(k, c);
                    USeries phix = USeries::monomial(kp, k.frob(x), s.p * m);
                    for (int r = 0; r < s.db; ++r) {
                        const USeries& br = b.frob().at(r, i);
                        if (br.is_zero()) continue;
                        USeries left = br * phix;
                        for (int t = 0; t < s.da; ++t) {
                            USeries val = left * ainv.at(j, t);
                            if (r == i && t == j) val = val - USeries::monomial(kp, x, m);
                            scatter(sys, (r * s.da + t) * eq_per_entry, col, val, -s.h, s.n1);
                        }
                    }
                    if (b.frob().at(i, i).is_zero()) {
                        // the -F term was not emitted above
                        scatter(sys, (i * s.da + j) * eq_per_entry, col, -USeries::monomial(kp, x, m), -s.h, s.n1);
                    }
                }

    auto null = sys.nullspace();
    SeriesMatrix ainv_lift = inverse_laurent(a.frob(), 2 * prec + s.h + 4);
    for (const auto& v : null) {
        SeriesMatrix low(kp, s.db, s.da);
        for (int i = 0; i < s.db; ++i)
            for (int j = 0; j < s.da; ++j) {
                std::vector<Elem> coeffs(s.n1, 0);
                for (int m = 0; m < s.n1; ++m) {
                    std::vector<int> co(s.f);
                    for (int c = 0; c < s.f; ++c) co[c] = v[unknown_index(i, j, m, c)];
                    coeffs[m] = k.from_coords(co);
                }
                low.at(i, j) = USeries::from_coeffs(kp, 0, coeffs);
            }
        SeriesMatrix f = lift(a, b, s, low, ainv_lift, prec);
        PhiMorphism mor(a, b, f);
        if (!mor.commutes()) throw InsufficientPrecision("precision not stabilized: lifted solution fails to commute");
        if (opts.check_stability) {
            SeriesMatrix f2 = lift(a, b, s, low, ainv_lift, 2 * prec);
            PhiMorphism mor2(a, b, f2);
            if (!mor2.commutes() || !f2.agrees_with(f))
                throw InsufficientPrecision("precision not stabilized between N and 2N");
        }
        out.push_back(std::move(mor));
    }
    // Independent re-solve of the truncated system at N and 2N (data
    // precision permitting; it is cubic in N, so only for small systems).
    const int data_prec = std::min(a.frob().precision(), b.frob().precision());
    const int n_lo = std::min(prec, data_prec), n_hi = std::min(2 * prec, data_prec);
    if (opts.check_stability && n_lo >= s.n1 + s.h && static_cast<long long>(s.da) * s.db * s.f * n_hi <= 1200) {
        int d1 = hom_dimension_truncated(a, b, n_lo);
        int d2 = hom_dimension_truncated(a, b, n_hi);
        if (d1 != d2 || d1 != static_cast<int>(out.size()))
            throw InsufficientPrecision("precision not stabilized: truncated dimensions " + std::to_string(d1) + " and " +
                                        std::to_string(d2) + " vs " + std::to_string(out.size()));
    }
    return out;
}

int hom_dimension_truncated(const PhiModule& a, const PhiModule& b, int n) {
    HomSetup s = setup(a, b);
    if (s.da == 0 || s.db == 0) return 0;
    if (n < s.n1) throw InsufficientPrecision("truncation below the determining precision");
    if (n > std::min(a.frob().precision(), b.frob().precision()))
        throw InsufficientPrecision("truncated hom system beyond the precision of the module data");
    const FieldPtr& kp = a.field();
    const Field& k = *kp;
    const int unknowns = s.db * s.da * n * s.f;
    const int eq_per_entry = n * s.f;
    FpMatrix sys(s.p, s.db * s.da * eq_per_entry, unknowns);
    auto unknown_index = [&](int i, int j, int m, int c) { return ((i * s.da + j) * n + m) * s.f + c; };
    for (int i = 0; i < s.db; ++i)
        for (int j = 0; j < s.da; ++j)
            for (int m = 0; m < n; ++m)
                for (int c = 0; c < s.f; ++c) {
                    const int col = unknown_index(i, j, m, c);
                    Elem x = basis_elem(k, c);
                    USeries fx = USeries::monomial(kp, x, m);
                    USeries phix = USeries::monomial(kp, k.frob(x), s.p * m);
                    // residual F A_a - A_b phi(F), entry by entry
                    SeriesMatrix res(kp, s.db, s.da);
                    for (int t = 0; t < s.da; ++t) res.at(i, t) = fx * a.frob().at(j, t);
                    for (int r = 0; r < s.db; ++r) res.at(r, j) = res.at(r, j) - b.frob().at(r, i) * phix;
                    for (int r = 0; r < s.db; ++r)
                        for (int t = 0; t < s.da; ++t)
                            if (!res.at(r, t).is_zero())
                                scatter(sys, (r * s.da + t) * eq_per_entry, col, res.at(r, t).truncated(n), 0, n);
                }
    auto null = sys.nullspace();
    // project onto the coordinates of F mod u^{n1}
    std::vector<int> keep;
    for (int i = 0; i < s.db; ++i)
        for (int j = 0; j < s.da; ++j)
            for (int m = 0; m < s.n1; ++m)
                for (int c = 0; c < s.f; ++c) keep.push_back(unknown_index(i, j, m, c));
    FpMatrix proj(s.p, static_cast<int>(null.size()), static_cast<int>(keep.size()));
    for (size_t r = 0; r < null.size(); ++r)
        for (size_t c = 0; c < keep.size(); ++c)
            proj.at(static_cast<int>(r), static_cast<int>(c)) = static_cast<std::uint8_t>(null[r][keep[c]]);
    return null.empty() ? 0 : proj.rank();
}

IsoResult find_isomorphism(const PhiModule& a, const PhiModule& b, int max_dim) {
    IsoResult res;
    if (!a.same_base(b) || a.rank() != b.rank()) {
        res.verdict = IsoVerdict::NotIsomorphic;
        return res;
    }
    const int d = a.rank();
    if (d == 0) {
        res.verdict = IsoVerdict::Isomorphic;
        res.witness = PhiMorphism(a, b, SeriesMatrix(a.field(), 0, 0));
        return res;
    }
    auto basis = hom_space(a, b);
    const int dim = static_cast<int>(basis.size());
    if (dim == 0) {
        res.verdict = IsoVerdict::NotIsomorphic;
        return res;
    }
    if (dim > max_dim) {
        res.verdict = IsoVerdict::Undecided;
        return res;
    }
    const Field& k = *a.field();
    const int p = a.p();
    std::vector<std::vector<Elem>> c0(dim, std::vector<Elem>(d * d));
    for (int t = 0; t < dim; ++t)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) c0[t][i * d + j] = basis[t].mat().at(i, j).coeff(0);
    auto det_k = [&](std::vector<Elem> m) {
        Elem det = 1;
        for (int c = 0; c < d; ++c) {
            int piv = -1;
            for (int r = c; r < d; ++r)
                if (m[r * d + c] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return Elem{0};
            if (piv != c) {
                for (int j = 0; j < d; ++j) std::swap(m[piv * d + j], m[c * d + j]);
                det = k.neg(det);
            }
            Elem inv = k.inv(m[c * d + c]);
            det = k.mul(det, m[c * d + c]);
            for (int r = c + 1; r < d; ++r) {
                Elem fct = k.mul(m[r * d + c], inv);
                if (fct == 0) continue;
                for (int j = c; j < d; ++j) m[r * d + j] = k.sub(m[r * d + j], k.mul(fct, m[c * d + j]));
            }
        }
        return det;
    };
    std::vector<int> coef(dim, 0);
    while (true) {
        int pos = 0;
        while (pos < dim && coef[pos] == p - 1) coef[pos++] = 0;
        if (pos == dim) break;
        ++coef[pos];
        std::vector<Elem> m(d * d, 0);
        for (int t = 0; t < dim; ++t) {
            if (coef[t] == 0) continue;
            Elem c = k.from_int(coef[t]);
            for (int x = 0; x < d * d; ++x) m[x] = k.add(m[x], k.mul(c, c0[t][x]));
        }
        if (det_k(m) != 0) {
            SeriesMatrix f(a.field(), d, d);
            for (int t = 0; t < dim; ++t)
                if (coef[t]) f = f + basis[t].mat().scaled(USeries::constant(a.field(), k.from_int(coef[t])));
            res.verdict = IsoVerdict::Isomorphic;
            res.witness = PhiMorphism(a, b, f);
            return res;
        }
    }
    res.verdict = IsoVerdict::NotIsomorphic;
    return res;
}

}  // namespace kisin
