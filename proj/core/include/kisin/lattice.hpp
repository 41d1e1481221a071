#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kisin/phi_module.hpp"

namespace kisin {

using ModulePtr = std::shared_ptr<const PhiModule>;

// Full-rank k[[u]]-lattice in M[1/u], M the ambient module, stored by its
// canonical (Hermite) basis in the ambient coordinates.
class Lattice {
public:
    Lattice() = default;
    static Lattice standard(ModulePtr ambient);
    // Canonicalizes; derives a floor from the generators.
    static Lattice from_generators(ModulePtr ambient, const SeriesMatrix& gens);
    // Canonicalizes, trusting u^floor * standard inside the span.
    static Lattice from_generators(ModulePtr ambient, const SeriesMatrix& gens, int floor);
    // basis must already be canonical.
    static Lattice from_canonical(ModulePtr ambient, SeriesMatrix basis);

    const PhiModule& ambient() const { return *ambient_; }
    const ModulePtr& ambient_ptr() const { return ambient_; }
    int rank() const { return basis_.rows(); }
    const SeriesMatrix& basis() const { return basis_; }
    const SeriesMatrix& inverse() const { return inverse_; }

    // Least K with u^K * standard inside this lattice.
    int floor() const { return floor_; }
    // Greatest c with this lattice inside u^c * standard.
    int ceiling() const { return ceiling_; }
    // Valuation of det(basis): the signed length relative to the standard lattice.
    int det_valuation() const;
    // Exponents a_1 <= ... <= a_d with L = U diag(u^{a_i}) standard, U a unit.
    std::vector<int> elementary_divisors() const;

    bool contains(const Lattice& o) const;  // o inside this
    bool contains_vector(const std::vector<USeries>& v) const;
    Lattice scaled(int k) const;             // u^k L
    // The lattice with basis (B^T)^{-1}, placed in the given (dual) ambient.
    Lattice dual_lattice(ModulePtr dual_ambient) const;
    Lattice with_ambient(ModulePtr ambient) const;

    std::string key() const;
    bool operator==(const Lattice& o) const { return basis_ == o.basis_; }

private:
    ModulePtr ambient_;
    SeriesMatrix basis_, inverse_;
    int floor_ = 0, ceiling_ = 0;
};

// Deterministic total order: larger det valuation last, then by key.
bool canonical_less(const Lattice& a, const Lattice& b);

// B^{-1} A phi(B): the Frobenius matrix in the lattice basis.
SeriesMatrix phi_matrix_in(const Lattice& l);
// phi-stable and of height er (defaults to the ambient's er).
bool lattice_in_fr(const Lattice& l);
bool lattice_in_fr(const Lattice& l, int er);
// Largest Smith divisor of a nondegenerate square matrix that may be Laurent:
// val(det) - min val(adjugate).
int matrix_height(const SeriesMatrix& a);

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersection(const Lattice& a, const Lattice& b);

}  // namespace kisin
