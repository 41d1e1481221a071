#pragma once

#include <string>
#include <vector>

#include "kisin/phi_module.hpp"
#include "kisin/series_literal.hpp"

namespace kisin::test_util {

inline SeriesMatrix M(const FieldPtr& k, std::vector<std::vector<std::string>> rows) {
    std::vector<std::vector<USeries>> out;
    for (auto& r : rows) {
        std::vector<USeries> row;
        for (auto& t : r) row.push_back(parse_series(t, k));
        out.push_back(row);
    }
    return SeriesMatrix::from_rows(k, out);
}

// phi(e_i) = u^{n_i} e_{i+1}
inline PhiModule cyclic(const FieldPtr& k, int e, std::optional<int> r, std::vector<int> n) {
    int d = static_cast<int>(n.size());
    SeriesMatrix a(k, d, d);
    for (int i = 0; i < d; ++i) a.at((i + 1) % d, i) = USeries::u_power(k, n[i]);
    return PhiModule(k, e, r, a);
}

}  // namespace kisin::test_util

#include "kisin/simple.hpp"

namespace kisin::test_util {

struct MonomialSolution {
    int index;
    long long v;
    Elem alpha;
};

// Every nonzero alpha u^v e_i (|v| <= bound, or 0 <= v <= bound) with
// phi^d(x) = u^exp x, found by applying the module Frobenius d times.
inline std::vector<MonomialSolution> brute_force_frob(const SimpleSeq& s, long long exp, bool laurent, int bound) {
    PhiModule m = build_module(s);
    const FieldPtr& k = m.field();
    std::vector<MonomialSolution> out;
    for (int i = 0; i < s.d(); ++i)
        for (int v = laurent ? -bound : 0; v <= bound; ++v)
            for (Elem a = 1; a < k->size(); ++a) {
                std::vector<USeries> x(s.d(), USeries::zero(k));
                x[i] = USeries::monomial(k, a, v);
                std::vector<USeries> y = x;
                for (int j = 0; j < s.d(); ++j) y = apply_phi(m, y);
                bool ok = true;
                for (int c = 0; c < s.d() && ok; ++c) ok = y[c] == x[c].shifted(static_cast<int>(exp));
                if (ok) out.push_back({i, v, a});
            }
    return out;
}

}  // namespace kisin::test_util
