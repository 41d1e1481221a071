#include "kisin/morphism_ops.hpp"

#include <numeric>

#include "kisin/errors.hpp"
#include "kisin/smith.hpp"

namespace kisin {

namespace {

int op_precision(const PhiMorphism& f) {
    return std::max(working_precision(f.source()), working_precision(f.target()));
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> v(std::max(0, hi - lo));
    std::iota(v.begin(), v.end(), lo);
    return v;
}

// Keep exact entries exact and truncate the rest.
SeriesMatrix settle(const SeriesMatrix& m, int prec) { return m.is_exact() ? m : m.truncated(prec); }

}  // namespace

int CokernelResult::torsion_length() const { return std::accumulate(torsion.begin(), torsion.end(), 0); }

SubobjectResult kernel(const PhiMorphism& f) {
    const PhiModule& a = f.source();
    const int da = a.rank();
    const FieldPtr& k = a.field();
    const int prec = op_precision(f);
    if (f.mat().is_zero() || f.target().rank() == 0)
        return {a, identity_morphism(a)};
    SmithDecomposition s = smith_decompose(f.mat(), prec);
    const int rho = s.rank;
    if (rho == da) {
        PhiModule z = zero_module(k, a.e(), a.r());
        return {z, PhiMorphism(z, a, SeriesMatrix(k, da, 0))};
    }
    SeriesMatrix vinv = inverse_laurent(s.right, prec);
    SeriesMatrix basis = settle(vinv.select_cols(range(rho, da)), prec);
    SeriesMatrix left_inv = s.right.select_rows(range(rho, da));
    SeriesMatrix frob = settle(left_inv * a.frob() * basis.phi(), prec);
    PhiModule ker = a.with_frob(frob);
    return {ker, PhiMorphism(ker, a, basis)};
}

SubobjectResult image(const PhiMorphism& f) {
    const PhiModule& b = f.target();
    const int db = b.rank();
    const FieldPtr& k = b.field();
    const int prec = op_precision(f);
    if (f.mat().is_zero() || f.source().rank() == 0) {
        PhiModule z = zero_module(k, b.e(), b.r());
        return {z, PhiMorphism(z, b, SeriesMatrix(k, db, 0))};
    }
    SmithDecomposition s = smith_decompose(f.mat(), prec);
    const int rho = s.rank;
    std::vector<int> div(s.divisors.begin(), s.divisors.begin() + rho);
    SeriesMatrix basis = settle(s.left.select_cols(range(0, rho)) * SeriesMatrix::diag_u(k, div), prec);
    SeriesMatrix uinv = inverse_laurent(s.left, prec);
    std::vector<int> neg(div.size());
    for (size_t i = 0; i < div.size(); ++i) neg[i] = -div[i];
    SeriesMatrix left_inv = SeriesMatrix::diag_u(k, neg) * uinv.select_rows(range(0, rho));
    SeriesMatrix frob = settle(left_inv * b.frob() * basis.phi(), prec);
    PhiModule im = b.with_frob(frob);
    return {im, PhiMorphism(im, b, basis)};
}

CokernelResult cokernel_mod_torsion(const PhiMorphism& f) {
    const PhiModule& b = f.target();
    const int db = b.rank();
    const FieldPtr& k = b.field();
    const int prec = op_precision(f);
    if (f.mat().is_zero() || f.source().rank() == 0) return {b, identity_morphism(b), {}};
    SmithDecomposition s = smith_decompose(f.mat(), prec);
    const int rho = s.rank;
    CokernelResult out;
    for (int i = 0; i < rho; ++i)
        if (s.divisors[i] > 0) out.torsion.push_back(s.divisors[i]);
    SeriesMatrix uinv = inverse_laurent(s.left, prec);
    SeriesMatrix proj = settle(uinv.select_rows(range(rho, db)), prec);
    SeriesMatrix section = s.left.select_cols(range(rho, db));
    SeriesMatrix frob = rho == db ? SeriesMatrix(k, 0, 0) : settle(proj * b.frob() * section.phi(), prec);
    PhiModule c = b.with_frob(frob);
    out.module = c;
    out.projection = PhiMorphism(b, c, rho == db ? SeriesMatrix(k, 0, db) : proj);
    return out;
}

}  // namespace kisin
