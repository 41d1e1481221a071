#pragma once

#include <optional>
#include <vector>

#include "kisin/phi_module.hpp"

namespace kisin {

struct HomOptions {
    int precision = 0;            // precision of returned matrices; 0 = working precision
    bool check_stability = true;  // re-solve at doubled precision and compare
};

// F_p-basis of Hom(a, b) = {F integral : F A_a = A_b phi(F)}.
//
// F is pinned down by F mod u^{n1}, n1 = floor(h/(p-1)) + 1 with h the
// height of A_a, because F = A_b phi(F) A_a^{-1} determines higher
// coefficients from lower ones.  The finite system on F mod u^{n1} is solved
// exactly and each solution is lifted to the requested precision.  Throws
// InsufficientPrecision("precision not stabilized") when the doubled
// precision re-check disagrees.
std::vector<PhiMorphism> hom_space(const PhiModule& a, const PhiModule& b, const HomOptions& opts = {});

// Dimension over F_p of the projection onto F mod u^{n1} of the solutions of
// the truncated system F A_a = A_b phi(F) mod u^n.  Independent of the
// lifting argument above; agrees with hom_space once n >= n1 + h.
int hom_dimension_truncated(const PhiModule& a, const PhiModule& b, int n);

enum class IsoVerdict { Isomorphic, NotIsomorphic, Undecided };

struct IsoResult {
    IsoVerdict verdict = IsoVerdict::Undecided;
    std::optional<PhiMorphism> witness;
};

// Looks for an invertible element of hom_space(a, b) by exhausting its F_p
// span when the dimension is at most max_dim.
IsoResult find_isomorphism(const PhiModule& a, const PhiModule& b, int max_dim = 12);

}  // namespace kisin
