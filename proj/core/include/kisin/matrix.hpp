#pragma once

#include <string>
#include <vector>

#include "kisin/series.hpp"

namespace kisin {

class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(FieldPtr k, int rows, int cols);  // exact zeros

    static SeriesMatrix identity(FieldPtr k, int n);
    static SeriesMatrix diag(const std::vector<USeries>& d);
    static SeriesMatrix diag_u(const FieldPtr& k, const std::vector<int>& exponents);
    static SeriesMatrix from_rows(FieldPtr k, const std::vector<std::vector<USeries>>& rows);
    static SeriesMatrix column(const std::vector<USeries>& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const FieldPtr& field() const { return k_; }

    USeries& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const USeries& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const USeries& operator()(int i, int j) const { return at(i, j); }

    std::vector<USeries> col(int j) const;
    std::vector<USeries> row(int i) const;
    void set_col(int j, const std::vector<USeries>& v);

    SeriesMatrix operator*(const SeriesMatrix& b) const;
    SeriesMatrix operator+(const SeriesMatrix& b) const;
    SeriesMatrix operator-(const SeriesMatrix& b) const;
    std::vector<USeries> operator*(const std::vector<USeries>& v) const;

    SeriesMatrix transpose() const;
    SeriesMatrix phi() const;
    SeriesMatrix shifted(int k) const;  // u^k * this
    SeriesMatrix scaled(const USeries& s) const;
    SeriesMatrix truncated(int prec) const;
    SeriesMatrix block(int r0, int c0, int nr, int nc) const;
    static SeriesMatrix hconcat(const SeriesMatrix& a, const SeriesMatrix& b);
    static SeriesMatrix vconcat(const SeriesMatrix& a, const SeriesMatrix& b);
    SeriesMatrix select_cols(const std::vector<int>& idx) const;
    SeriesMatrix select_rows(const std::vector<int>& idx) const;

    int precision() const;      // minimum entry precision
    // Minimum valuation over nonzero entries; for an all-zero matrix the
    // minimum entry precision (kExact for the exact zero matrix).
    int min_valuation() const;
    int max_degree() const;     // highest exponent over nonzero entries (0 if none)
    bool is_exact() const { return precision() >= kExact; }
    bool is_zero() const;
    // All entries have valuation >= 0; throws InsufficientPrecision when a
    // zero-to-precision entry leaves this undecided.
    bool is_integral() const;

    bool operator==(const SeriesMatrix& b) const;
    bool agrees_with(const SeriesMatrix& b) const;

    std::string to_string() const;

private:
    FieldPtr k_;
    int rows_ = 0, cols_ = 0;
    std::vector<USeries> e_;
};

// mat_mul is operator*; spelled out for callers that prefer functions.
inline SeriesMatrix mat_mul(const SeriesMatrix& a, const SeriesMatrix& b) { return a * b; }

USeries determinant(const SeriesMatrix& a);
// Cofactor transpose: a * adjugate(a) = det(a) * I.
SeriesMatrix adjugate(const SeriesMatrix& a);
// Inverse over k((u)).  Entries are exact when a is exact and det(a) is a
// monomial; otherwise they are known to absolute precision at most cap.
SeriesMatrix inverse_laurent(const SeriesMatrix& a, int cap);

inline std::ostream& operator<<(std::ostream& os, const SeriesMatrix& m) { return os << m.to_string(); }

}  // namespace kisin
