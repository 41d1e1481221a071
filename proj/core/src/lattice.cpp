#include "kisin/lattice.hpp"

#include <algorithm>

#include "kisin/errors.hpp"
#include "kisin/hermite.hpp"
#include "kisin/smith.hpp"

namespace kisin {

Lattice Lattice::from_canonical(ModulePtr ambient, SeriesMatrix basis) {
    Lattice l;
    l.ambient_ = std::move(ambient);
    l.basis_ = std::move(basis);
    l.inverse_ = hnf_inverse(l.basis_);
    l.floor_ = l.rank() == 0 ? 0 : -l.inverse_.min_valuation();
    l.ceiling_ = l.rank() == 0 ? 0 : l.basis_.min_valuation();
    return l;
}

Lattice Lattice::standard(ModulePtr ambient) {
    int d = ambient->rank();
    FieldPtr k = ambient->field();
    return from_canonical(std::move(ambient), SeriesMatrix::identity(k, d));
}

Lattice Lattice::from_generators(ModulePtr ambient, const SeriesMatrix& gens) {
    return from_canonical(std::move(ambient), hnf_lattice(gens));
}

Lattice Lattice::from_generators(ModulePtr ambient, const SeriesMatrix& gens, int floor) {
    return from_canonical(std::move(ambient), hnf_lattice(gens, floor));
}

int Lattice::det_valuation() const {
    int v = 0;
    for (int i = 0; i < rank(); ++i) v += *basis_.at(i, i).valuation();
    return v;
}

std::vector<int> Lattice::elementary_divisors() const {
    if (rank() == 0) return {};
    int c = ceiling_;
    auto div = smith_divisors(basis_.shifted(-c));
    for (auto& a : div) a += c;
    return div;
}

bool Lattice::contains(const Lattice& o) const {
    if (o.ceiling_ < ceiling_) return false;
    SeriesMatrix x = inverse_ * o.basis_;
    return x.min_valuation() >= 0;
}

bool Lattice::contains_vector(const std::vector<USeries>& v) const {
    auto x = inverse_ * v;
    for (const auto& c : x)
        if (!c.is_zero() && *c.valuation() < 0) return false;
    return true;
}

Lattice Lattice::scaled(int k) const {
    Lattice l = *this;
    l.basis_ = basis_.shifted(k);
    l.inverse_ = inverse_.shifted(-k);
    l.floor_ += k;
    l.ceiling_ += k;
    return l;
}

Lattice Lattice::dual_lattice(ModulePtr dual_ambient) const {
    // (B^T)^{-1} = (B^{-1})^T is lower triangular; re-canonicalize.
    SeriesMatrix gens = inverse_.transpose();
    return from_canonical(std::move(dual_ambient), hnf_lattice(gens, -ceiling_));
}

Lattice Lattice::with_ambient(ModulePtr ambient) const {
    Lattice l = *this;
    l.ambient_ = std::move(ambient);
    return l;
}

std::string Lattice::key() const { return basis_.to_string(); }

bool canonical_less(const Lattice& a, const Lattice& b) {
    int da = a.det_valuation(), db = b.det_valuation();
    if (da != db) return da < db;
    for (int i = 0; i < a.rank(); ++i) {
        int pa = *a.basis().at(i, i).valuation(), pb = *b.basis().at(i, i).valuation();
        if (pa != pb) return pa < pb;
    }
    return a.key() < b.key();
}

SeriesMatrix phi_matrix_in(const Lattice& l) {
    return l.inverse() * l.ambient().frob() * l.basis().phi();
}

int matrix_height(const SeriesMatrix& a) {
    USeries det = determinant(a);
    if (det.is_zero()) {
        if (det.is_exact()) throw SingularMatrix("degenerate Frobenius");
        throw InsufficientPrecision("determinant is zero to precision");
    }
    if (a.rows() == 1) return *det.valuation() - 0;
    SeriesMatrix adj = adjugate(a);
    int mv = kExact;
    for (int i = 0; i < adj.rows(); ++i)
        for (int j = 0; j < adj.cols(); ++j) {
            const USeries& x = adj.at(i, j);
            if (x.is_zero()) {
                if (!x.is_exact()) mv = std::min(mv, x.precision());
                continue;
            }
            mv = std::min(mv, *x.valuation());
        }
    // a zero-to-precision entry with mv = its precision only bounds from
    // below; that makes the height an upper bound, which is what callers
    // compare against er, so report it as undecided instead.
    for (int i = 0; i < adj.rows(); ++i)
        for (int j = 0; j < adj.cols(); ++j) {
            const USeries& x = adj.at(i, j);
            if (x.is_zero() && !x.is_exact() && x.precision() == mv)
                throw InsufficientPrecision("height undecided at this precision");
        }
    return *det.valuation() - mv;
}

bool lattice_in_fr(const Lattice& l, int er) {
    if (l.rank() == 0) return true;
    SeriesMatrix a = phi_matrix_in(l);
    if (!a.is_integral()) return false;
    return matrix_height(a) <= er;
}

bool lattice_in_fr(const Lattice& l) {
    const PhiModule& m = l.ambient();
    if (!m.bounded()) {
        if (l.rank() == 0) return true;
        SeriesMatrix a = phi_matrix_in(l);
        return a.is_integral() && !determinant(a).is_zero();
    }
    return lattice_in_fr(l, m.er());
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    if (a.rank() != b.rank()) throw DimensionMismatch("lattices of different rank");
    SeriesMatrix gens = SeriesMatrix::hconcat(a.basis(), b.basis());
    return Lattice::from_generators(a.ambient_ptr(), gens, std::min(a.floor(), b.floor()));
}

Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
    if (a.rank() != b.rank()) throw DimensionMismatch("lattices of different rank");
    // (A^v + B^v)^v, all in coordinates of the dual basis.
    SeriesMatrix gens = SeriesMatrix::hconcat(a.inverse().transpose(), b.inverse().transpose());
    SeriesMatrix s = hnf_lattice(gens, std::min(-a.ceiling(), -b.ceiling()));
    SeriesMatrix sinv = hnf_inverse(s);
    int ceil_s = s.min_valuation();
    return Lattice::from_generators(a.ambient_ptr(), sinv.transpose(), -ceil_s);
}

}  // namespace kisin
