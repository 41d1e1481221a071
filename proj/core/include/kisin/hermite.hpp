#pragma once

#include <optional>
#include <vector>

#include "kisin/matrix.hpp"

namespace kisin {

// Canonical basis of the k[[u]]-lattice spanned by the columns of gens
// (entries in k((u)), rank d = gens.rows()).  The result H is upper
// triangular, H(j,j) = u^{a_j}, and for i < j the entry H(i,j) is a Laurent
// polynomial with all exponents < a_i.  Every entry is exact.
SeriesMatrix hnf_lattice(const SeriesMatrix& gens);

// Same, when the caller knows u^floor * k[[u]]^d lies in the span.  Only
// the generators modulo u^{floor+1} matter; less precision throws
// InsufficientPrecision.
SeriesMatrix hnf_lattice(const SeriesMatrix& gens, int floor);

// Smallest K with u^K k[[u]]^d inside the span of gens (rank-deficient
// input throws SingularMatrix).
int lattice_floor(const SeriesMatrix& gens);

// Exact inverse of a matrix in the canonical form above.
SeriesMatrix hnf_inverse(const SeriesMatrix& h);
bool is_hnf(const SeriesMatrix& h);

// Coordinates x over k[[u]] with basis * x = v, or nullopt ("outside").
// Throws InsufficientPrecision when the answer is undecided.
std::optional<std::vector<USeries>> solve_membership(const SeriesMatrix& basis, const std::vector<USeries>& v);

}  // namespace kisin
