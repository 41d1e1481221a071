#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kisin/matrix.hpp"

namespace kisin {

// Free k[[u]]-module of rank d with phi(e_j) = sum_i frob(i, j) e_i.
// The height bound r may be unbounded (nullopt).
class PhiModule {
public:
    PhiModule() = default;
    PhiModule(FieldPtr k, int e, std::optional<int> r, SeriesMatrix frob);

    const FieldPtr& field() const { return k_; }
    int p() const { return k_->p(); }
    int e() const { return e_; }
    std::optional<int> r() const { return r_; }
    bool bounded() const { return r_.has_value(); }
    int er() const;  // throws UnboundedHeight
    int rank() const { return frob_.rows(); }
    const SeriesMatrix& frob() const { return frob_; }

    PhiModule with_height(std::optional<int> r) const { return PhiModule(k_, e_, r, frob_); }
    PhiModule with_frob(SeriesMatrix frob) const { return PhiModule(k_, e_, r_, std::move(frob)); }

    // Same p, f, modulus and e.
    bool same_base(const PhiModule& o) const;
    // Same base and same r.
    bool same_category(const PhiModule& o) const;

    bool operator==(const PhiModule& o) const { return same_category(o) && frob_ == o.frob_; }

private:
    FieldPtr k_;
    int e_ = 1;
    std::optional<int> r_;
    SeriesMatrix frob_;
};

// The rank-1 module phi(e) = u^n e.
PhiModule rank_one_module(const FieldPtr& k, int e, std::optional<int> r, int n);
PhiModule zero_module(const FieldPtr& k, int e, std::optional<int> r);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string witness;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    std::vector<int> divisors;  // Smith divisors of frob when computable
    bool ok() const;
    std::string to_string() const;
};

ValidationReport validate(const PhiModule& m);
// Throws HeightViolation (or InsufficientPrecision) carrying the report text.
void require_valid(const PhiModule& m);

// Largest Smith divisor of frob: the least h with u^h M inside <im phi>.
int frob_height(const PhiModule& m);
// t = floor((h + 1)/(p - 1)) for h = er (or frob_height when r is unbounded).
int window_bound(const PhiModule& m);
inline int window_bound(int p, int er) { return (er + 1) / (p - 1); }
// Working precision e*r*(d+1) + p*(t + maxdeg) + 8.
int working_precision(const PhiModule& m);

// frob * phi(v), for v in M[1/u] coordinates.
std::vector<USeries> apply_phi(const PhiModule& m, const std::vector<USeries>& v);

class PhiMorphism {
public:
    PhiMorphism() = default;
    // Throws DimensionMismatch / ParameterMismatch; does not check commutation.
    PhiMorphism(PhiModule source, PhiModule target, SeriesMatrix mat);

    const PhiModule& source() const { return source_; }
    const PhiModule& target() const { return target_; }
    const SeriesMatrix& mat() const { return mat_; }

    // mat * A_source - A_target * phi(mat), which vanishes for a morphism.
    SeriesMatrix defect() const;
    // Integral and the defect vanishes to its precision.
    bool commutes() const;

private:
    PhiModule source_, target_;
    SeriesMatrix mat_;
};

PhiMorphism identity_morphism(const PhiModule& m);
PhiMorphism zero_morphism(const PhiModule& source, const PhiModule& target);
PhiMorphism compose(const PhiMorphism& g, const PhiMorphism& f);  // g after f

// Frobenius u^{er} (A^T)^{-1}.  Exact when det A is a monomial, otherwise
// known to the working precision.
PhiModule dual(const PhiModule& m);
// F: a -> b gives F^T: dual(b) -> dual(a).
PhiMorphism dual(const PhiMorphism& f);

PhiModule direct_sum(const PhiModule& a, const PhiModule& b);
// [[A_sub, cocycle], [0, A_quot]]; throws HeightViolation if the result is
// not an object of height r.
PhiModule extension_build(const PhiModule& sub, const PhiModule& quot, const SeriesMatrix& cocycle);

}  // namespace kisin
