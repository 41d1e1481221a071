#pragma once

#include <climits>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include "kisin/field.hpp"

namespace kisin {

// Precision value standing for "known exactly".  Arithmetic on precisions
// saturates at this value.
inline constexpr int kExact = INT_MAX / 4;

inline int prec_add(int a, int b) {
    if (a >= kExact || b >= kExact) return kExact;
    long long s = static_cast<long long>(a) + b;
    return s >= kExact ? kExact : static_cast<int>(s);
}

inline int prec_mul(int a, int k) {
    if (a >= kExact) return kExact;
    long long s = static_cast<long long>(a) * k;
    return s >= kExact ? kExact : static_cast<int>(s);
}

// Laurent series in u over k, known modulo u^prec.
//
// A nonzero value stores coeffs_[0] != 0 at exponent val_.  The value zero
// has empty coeffs_; it is the exact zero when prec_ == kExact and the
// zero-to-precision value O(u^prec) otherwise.
class USeries {
public:
    USeries() = default;  // null value with no field; only for containers
    explicit USeries(FieldPtr k) : k_(std::move(k)) {}

    static USeries zero(FieldPtr k, int prec = kExact);
    static USeries constant(FieldPtr k, Elem c, int prec = kExact);
    static USeries monomial(FieldPtr k, Elem c, int exponent, int prec = kExact);
    static USeries one(FieldPtr k) { return constant(std::move(k), 1); }
    static USeries u_power(FieldPtr k, int exponent) { return monomial(std::move(k), 1, exponent); }
    // coeffs[i] is the coefficient of u^{lowest+i}
    static USeries from_coeffs(FieldPtr k, int lowest, std::vector<Elem> coeffs, int prec = kExact);

    const FieldPtr& field() const { return k_; }
    bool has_field() const { return static_cast<bool>(k_); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_exact() const { return prec_ >= kExact; }
    int precision() const { return prec_; }
    // nullopt is the +infinity marker (zero to precision).
    std::optional<int> valuation() const;
    // Valuation, or the precision for a zero value: a lower bound that is
    // what precision propagation needs.
    int val_bound() const { return coeffs_.empty() ? prec_ : val_; }
    // Highest exponent with a stored nonzero coefficient (undefined for zero).
    int degree() const { return val_ + static_cast<int>(coeffs_.size()) - 1; }
    // Coefficient of u^n; throws InsufficientPrecision when n >= precision.
    Elem coeff(int n) const;
    Elem lead() const { return coeffs_.empty() ? 0 : coeffs_.front(); }
    bool is_monomial() const { return coeffs_.size() == 1; }
    const std::vector<Elem>& raw_coeffs() const { return coeffs_; }

    USeries operator+(const USeries& b) const;
    USeries operator-(const USeries& b) const;
    USeries operator-() const;
    USeries operator*(const USeries& b) const;
    USeries& operator+=(const USeries& b) { return *this = *this + b; }
    USeries& operator-=(const USeries& b) { return *this = *this - b; }
    USeries& operator*=(const USeries& b) { return *this = *this * b; }

    USeries scaled(Elem c) const;
    USeries shifted(int k) const;  // u^k * this
    USeries truncated(int prec) const;  // lower precision to min(prec, current)
    // Terms of exponent < n (exact polynomial part) and the rest.
    USeries low_part(int n) const;
    USeries high_part(int n) const;

    // sigma on coefficients and u -> u^p.
    USeries phi() const;
    // Inverse; exact when this is an exact monomial, otherwise known to
    // absolute precision min(relative precision - val, cap).
    USeries inverse(int cap) const;

    // Coefficient of u^{p m + j} raised to sigma^{-1}, as series in m: the
    // j-th Frobenius component, w = sum_j u^j phi(w_j).
    USeries frobenius_component(int j) const;

    // Structural equality: same value, same precision.
    bool operator==(const USeries& b) const;
    // Equality modulo u^n (both must be known that far).
    bool equal_mod(const USeries& b, int n) const;
    // Equal on the common precision.
    bool agrees_with(const USeries& b) const;

    std::string to_string() const;

private:
    void normalize();

    FieldPtr k_;
    int val_ = 0;
    std::vector<Elem> coeffs_;
    int prec_ = kExact;
};

inline std::ostream& operator<<(std::ostream& os, const USeries& x) { return os << x.to_string(); }

}  // namespace kisin
