#pragma once

#include <random>

#include "kisin/phi_module.hpp"

namespace kisin {

using Rng = std::mt19937_64;

// Polynomial of degree < max_deg + 1 with uniform coefficients.
USeries random_poly(Rng& rng, const FieldPtr& k, int max_deg);
// Product of random elementary and diagonal unit matrices.
SeriesMatrix random_unimodular(Rng& rng, const FieldPtr& k, int d, int max_deg, int steps = 3);
// U diag(u^{a_i}) V with 0 <= a_i <= er, so always an object of height r.
PhiModule random_valid_module(Rng& rng, const FieldPtr& k, int e, int r, int d, int max_deg = 1);

}  // namespace kisin
