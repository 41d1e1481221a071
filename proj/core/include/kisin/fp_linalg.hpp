#pragma once

#include <cstdint>
#include <vector>

namespace kisin {

// Dense matrices over F_p for the linear systems behind Hom computations.
class FpMatrix {
public:
    FpMatrix(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int p() const { return p_; }
    std::uint8_t& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    std::uint8_t at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    int rank() const;
    // Basis of {x : A x = 0}, each vector of length cols().
    std::vector<std::vector<int>> nullspace() const;

private:
    // Reduced row echelon form in place; returns pivot columns.
    std::vector<int> rref();

    int p_;
    int rows_, cols_;
    std::vector<std::uint8_t> a_;
};

}  // namespace kisin
