#include "kisin/random.hpp"

namespace kisin {

USeries random_poly(Rng& rng, const FieldPtr& k, int max_deg) {
    std::uniform_int_distribution<int> coef(0, static_cast<int>(k->size()) - 1);
    std::vector<Elem> c(max_deg + 1);
    for (auto& x : c) x = static_cast<Elem>(coef(rng));
    return USeries::from_coeffs(k, 0, c);
}

SeriesMatrix random_unimodular(Rng& rng, const FieldPtr& k, int d, int max_deg, int steps) {
    SeriesMatrix m = SeriesMatrix::identity(k, d);
    if (d == 0) return m;
    std::uniform_int_distribution<int> idx(0, d - 1);
    std::uniform_int_distribution<int> unit(1, static_cast<int>(k->size()) - 1);
    for (int s = 0; s < steps; ++s) {
        SeriesMatrix e = SeriesMatrix::identity(k, d);
        int i = idx(rng), j = idx(rng);
        if (i != j)
            e.at(i, j) = random_poly(rng, k, max_deg);
        else
            e.at(i, i) = USeries::constant(k, static_cast<Elem>(unit(rng)));
        m = m * e;
    }
    for (int i = 0; i < d; ++i) {
        SeriesMatrix e = SeriesMatrix::identity(k, d);
        int j = idx(rng);
        if (j != i) e.at(i, j) = random_poly(rng, k, max_deg);
        m = e * m;
    }
    return m;
}

PhiModule random_valid_module(Rng& rng, const FieldPtr& k, int e, int r, int d, int max_deg) {
    std::uniform_int_distribution<int> ex(0, e * r);
    std::vector<int> a(d);
    for (auto& x : a) x = ex(rng);
    SeriesMatrix m = random_unimodular(rng, k, d, max_deg) * SeriesMatrix::diag_u(k, a) *
                     random_unimodular(rng, k, d, max_deg);
    return PhiModule(k, e, r, m);
}

}  // namespace kisin
