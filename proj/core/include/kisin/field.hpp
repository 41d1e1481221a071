#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace kisin {

// Parameters of k = F_{p^f} = F_p[x]/(modulus).
struct FieldParams {
    int p = 2;
    int f = 1;
    std::vector<int> modulus;  // low degree first, monic, size f+1

    // F_p itself, modulus x.
    static FieldParams prime(int p);
    // First monic primitive polynomial of degree f in a fixed enumeration.
    static FieldParams standard(int p, int f);

    std::string modulus_string() const;
    bool operator==(const FieldParams&) const = default;
};

// Elements are encoded as integers sum c_i p^i where c_i are the coordinates
// in the basis 1, a, ..., a^{f-1} (a = class of x).  0 and 1 encode the
// obvious elements.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    // Throws ParseError if p is not prime or the modulus is not irreducible.
    static FieldPtr make(const FieldParams& params);
    static FieldPtr prime(int p) { return make(FieldParams::prime(p)); }

    const FieldParams& params() const { return params_; }
    int p() const { return params_.p; }
    int degree() const { return params_.f; }
    Elem size() const { return q_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elem inv(Elem a) const;
    Elem pow(Elem a, long long n) const;
    Elem frob(Elem a) const { return frob_[a]; }          // a^p
    Elem frob_inv(Elem a) const { return frob_inv_[a]; }  // a^{1/p}
    Elem from_int(long long n) const;
    Elem gen() const;  // class of x
    bool in_prime_field(Elem a) const { return a < static_cast<Elem>(params_.p); }
    std::vector<int> coords(Elem a) const;
    Elem from_coords(const std::vector<int>& c) const;

    bool same_as(const Field& other) const {
        return this == &other || params_ == other.params_;
    }

private:
    explicit Field(const FieldParams& params);
    Elem slow_mul(Elem a, Elem b) const;

    FieldParams params_;
    Elem q_ = 0;
    std::vector<Elem> neg_, frob_, frob_inv_, exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> add_table_;  // only for small fields
};

void require_same_field(const Field& a, const Field& b);

// Value type for a single element, convenient in tests and user code.
class FieldElement {
public:
    FieldElement(FieldPtr field, Elem v) : field_(std::move(field)), v_(v) {}
    static FieldElement from_coords(FieldPtr field, const std::vector<int>& c);

    const FieldPtr& field() const { return field_; }
    Elem raw() const { return v_; }
    std::vector<int> coords() const { return field_->coords(v_); }
    bool is_zero() const { return v_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const { return {field_, field_->neg(v_)}; }
    FieldElement pow(long long n) const { return {field_, field_->pow(v_, n)}; }
    FieldElement inverse() const { return {field_, field_->inv(v_)}; }
    FieldElement frobenius() const { return {field_, field_->frob(v_)}; }
    bool operator==(const FieldElement& o) const;

private:
    FieldPtr field_;
    Elem v_;
};

// Text form used by the series grammar: 0..p-1 in the prime field, otherwise
// a^k with the smallest k, or a parenthesized sum.
std::string format_elem(const Field& k, Elem a);

bool is_prime(long long n);

}  // namespace kisin
