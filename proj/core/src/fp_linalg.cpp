#include "kisin/fp_linalg.hpp"

#include <utility>

namespace kisin {

namespace {

int inv_mod(int a, int p) {
    int r = 1;
    for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r;
}

}  // namespace

std::vector<int> FpMatrix::rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int c = 0; c < cols_ && row < rows_; ++c) {
        int piv = -1;
        for (int i = row; i < rows_; ++i)
            if (at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < cols_; ++j) std::swap(at(piv, j), at(row, j));
        int s = inv_mod(at(row, c), p_);
        for (int j = c; j < cols_; ++j) at(row, j) = static_cast<std::uint8_t>(at(row, j) * s % p_);
        for (int i = 0; i < rows_; ++i) {
            if (i == row || at(i, c) == 0) continue;
            int f = at(i, c);
            for (int j = c; j < cols_; ++j) {
                if (at(row, j) == 0) continue;
                at(i, j) = static_cast<std::uint8_t>(((at(i, j) - f * at(row, j)) % p_ + p_) % p_);
            }
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

int FpMatrix::rank() const {
    FpMatrix copy = *this;
    return static_cast<int>(copy.rref().size());
}

std::vector<std::vector<int>> FpMatrix::nullspace() const {
    FpMatrix r = *this;
    std::vector<int> pivots = r.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<int>> out;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<int> v(cols_, 0);
        v[free] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p_ - r.at(static_cast<int>(i), free)) % p_;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace kisin
