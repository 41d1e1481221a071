#pragma once

#include <vector>

#include "kisin/matrix.hpp"

namespace kisin {

// original = left * D * right with D the rows x cols matrix carrying u^{divisors[i]}
// at (i, i) for i < rank and zeros elsewhere; left and right are units.
struct SmithDecomposition {
    SeriesMatrix left;
    std::vector<int> divisors;
    SeriesMatrix right;
    int rank = 0;

    SeriesMatrix middle(int rows, int cols) const;
};

// Integral input of any shape.  Unit parts of pivots are inverted to
// absolute precision cap.  Throws InsufficientPrecision when a pivot choice
// depends on unknown coefficients.
SmithDecomposition smith_decompose(const SeriesMatrix& a, int cap);

// Square input with nonzero determinant.
SmithDecomposition smith_normal_form(const SeriesMatrix& a);
SmithDecomposition smith_normal_form(const SeriesMatrix& a, int cap);

// Elementary divisors only (sorted), for square full-rank integral input.
std::vector<int> smith_divisors(const SeriesMatrix& a);

}  // namespace kisin
