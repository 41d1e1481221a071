#include "kisin/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "kisin/errors.hpp"

namespace kisin {

SeriesMatrix::SeriesMatrix(FieldPtr k, int rows, int cols)
    : k_(std::move(k)), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * cols, USeries::zero(k_)) {}

SeriesMatrix SeriesMatrix::identity(FieldPtr k, int n) {
    SeriesMatrix m(k, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = USeries::one(k);
    return m;
}

SeriesMatrix SeriesMatrix::diag(const std::vector<USeries>& d) {
    if (d.empty()) throw DimensionMismatch("diag of an empty list needs a field");
    SeriesMatrix m(d[0].field(), static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

SeriesMatrix SeriesMatrix::diag_u(const FieldPtr& k, const std::vector<int>& exponents) {
    int n = static_cast<int>(exponents.size());
    SeriesMatrix m(k, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = USeries::u_power(k, exponents[i]);
    return m;
}

SeriesMatrix SeriesMatrix::from_rows(FieldPtr k, const std::vector<std::vector<USeries>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    SeriesMatrix m(std::move(k), r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw DimensionMismatch("ragged matrix rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

SeriesMatrix SeriesMatrix::column(const std::vector<USeries>& v) {
    if (v.empty()) throw DimensionMismatch("empty column");
    SeriesMatrix m(v[0].field(), static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m.at(static_cast<int>(i), 0) = v[i];
    return m;
}

std::vector<USeries> SeriesMatrix::col(int j) const {
    std::vector<USeries> out;
    out.reserve(rows_);
    for (int i = 0; i < rows_; ++i) out.push_back(at(i, j));
    return out;
}

std::vector<USeries> SeriesMatrix::row(int i) const {
    std::vector<USeries> out;
    out.reserve(cols_);
    for (int j = 0; j < cols_; ++j) out.push_back(at(i, j));
    return out;
}

void SeriesMatrix::set_col(int j, const std::vector<USeries>& v) {
    if (static_cast<int>(v.size()) != rows_) throw DimensionMismatch("column length");
    for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& b) const {
    if (cols_ != b.rows_)
        throw DimensionMismatch("matrix product " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                " by " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    SeriesMatrix out(k_ ? k_ : b.k_, rows_, b.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) {
            USeries acc = USeries::zero(out.k_);
            for (int t = 0; t < cols_; ++t) {
                const USeries& x = at(i, t);
                const USeries& y = b.at(t, j);
                if (x.is_zero() && x.is_exact()) continue;
                if (y.is_zero() && y.is_exact()) continue;
                acc += x * y;
            }
            out.at(i, j) = std::move(acc);
        }
    return out;
}

std::vector<USeries> SeriesMatrix::operator*(const std::vector<USeries>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("matrix-vector product");
    std::vector<USeries> out;
    out.reserve(rows_);
    for (int i = 0; i < rows_; ++i) {
        USeries acc = USeries::zero(k_);
        for (int t = 0; t < cols_; ++t) {
            const USeries& x = at(i, t);
            if (x.is_zero() && x.is_exact()) continue;
            acc += x * v[t];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

SeriesMatrix SeriesMatrix::operator+(const SeriesMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("matrix sum");
    SeriesMatrix out = *this;
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + b.e_[i];
    return out;
}

SeriesMatrix SeriesMatrix::operator-(const SeriesMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("matrix difference");
    SeriesMatrix out = *this;
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] - b.e_[i];
    return out;
}

SeriesMatrix SeriesMatrix::transpose() const {
    SeriesMatrix out(k_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

SeriesMatrix SeriesMatrix::phi() const {
    SeriesMatrix out = *this;
    for (auto& x : out.e_) x = x.phi();
    return out;
}

SeriesMatrix SeriesMatrix::shifted(int k) const {
    SeriesMatrix out = *this;
    for (auto& x : out.e_) x = x.shifted(k);
    return out;
}

SeriesMatrix SeriesMatrix::scaled(const USeries& s) const {
    SeriesMatrix out = *this;
    for (auto& x : out.e_) x = x * s;
    return out;
}

SeriesMatrix SeriesMatrix::truncated(int prec) const {
    SeriesMatrix out = *this;
    for (auto& x : out.e_) x = x.truncated(prec);
    return out;
}

SeriesMatrix SeriesMatrix::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    SeriesMatrix out(k_, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) out.at(i, j) = at(r0 + i, c0 + j);
    return out;
}

SeriesMatrix SeriesMatrix::hconcat(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows_ != b.rows_) throw DimensionMismatch("hconcat row counts");
    SeriesMatrix out(a.k_ ? a.k_ : b.k_, a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < a.cols_; ++j) out.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols_; ++j) out.at(i, a.cols_ + j) = b.at(i, j);
    }
    return out;
}

SeriesMatrix SeriesMatrix::vconcat(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.cols_ != b.cols_) throw DimensionMismatch("vconcat column counts");
    SeriesMatrix out(a.k_ ? a.k_ : b.k_, a.rows_ + b.rows_, a.cols_);
    for (int j = 0; j < a.cols_; ++j) {
        for (int i = 0; i < a.rows_; ++i) out.at(i, j) = a.at(i, j);
        for (int i = 0; i < b.rows_; ++i) out.at(a.rows_ + i, j) = b.at(i, j);
    }
    return out;
}

SeriesMatrix SeriesMatrix::select_cols(const std::vector<int>& idx) const {
    SeriesMatrix out(k_, rows_, static_cast<int>(idx.size()));
    for (int i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) out.at(i, static_cast<int>(j)) = at(i, idx[j]);
    return out;
}

SeriesMatrix SeriesMatrix::select_rows(const std::vector<int>& idx) const {
    SeriesMatrix out(k_, static_cast<int>(idx.size()), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
        for (int j = 0; j < cols_; ++j) out.at(static_cast<int>(i), j) = at(idx[i], j);
    return out;
}

int SeriesMatrix::precision() const {
    int p = kExact;
    for (const auto& x : e_) p = std::min(p, x.precision());
    return p;
}

int SeriesMatrix::min_valuation() const {
    int v = kExact;
    bool any = false;
    for (const auto& x : e_)
        if (!x.is_zero()) {
            v = any ? std::min(v, *x.valuation()) : *x.valuation();
            any = true;
        }
    if (any) return v;
    return precision();
}

int SeriesMatrix::max_degree() const {
    int d = 0;
    for (const auto& x : e_)
        if (!x.is_zero()) d = std::max(d, x.degree());
    return d;
}

bool SeriesMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const USeries& x) { return x.is_zero(); });
}

bool SeriesMatrix::is_integral() const {
    bool undecided = false;
    for (const auto& x : e_) {
        if (x.is_zero()) {
            if (x.precision() < 0) undecided = true;
            continue;
        }
        if (*x.valuation() < 0) return false;
    }
    if (undecided) throw InsufficientPrecision("integrality undecided: entry zero only modulo a negative power of u");
    return true;
}

bool SeriesMatrix::operator==(const SeriesMatrix& b) const {
    return rows_ == b.rows_ && cols_ == b.cols_ && e_ == b.e_;
}

bool SeriesMatrix::agrees_with(const SeriesMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (!e_[i].agrees_with(b.e_[i])) return false;
    return true;
}

std::string SeriesMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << ", ";
        os << "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << at(i, j).to_string();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

USeries det_rec(const SeriesMatrix& a, std::vector<int>& rows, int col) {
    const FieldPtr& k = a.field();
    int n = static_cast<int>(rows.size());
    if (n == 0) return USeries::one(k);
    if (n == 1) return a.at(rows[0], col);
    if (n == 2) return a.at(rows[0], col) * a.at(rows[1], col + 1) - a.at(rows[1], col) * a.at(rows[0], col + 1);
    USeries acc = USeries::zero(k);
    for (int i = 0; i < n; ++i) {
        const USeries& x = a.at(rows[i], col);
        if (x.is_zero() && x.is_exact()) continue;
        int r = rows[i];
        rows.erase(rows.begin() + i);
        USeries minor = det_rec(a, rows, col + 1);
        rows.insert(rows.begin() + i, r);
        USeries term = x * minor;
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

USeries determinant(const SeriesMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    if (a.rows() > 8) throw DimensionMismatch("determinant: rank above 8 is outside desk scale");
    std::vector<int> rows(a.rows());
    for (int i = 0; i < a.rows(); ++i) rows[i] = i;
    return det_rec(a, rows, 0);
}

SeriesMatrix adjugate(const SeriesMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("adjugate of a non-square matrix");
    int n = a.rows();
    SeriesMatrix out(a.field(), n, n);
    if (n == 1) {
        out.at(0, 0) = USeries::one(a.field());
        return out;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> keep_r, keep_c;
            for (int t = 0; t < n; ++t) {
                if (t != i) keep_r.push_back(t);
                if (t != j) keep_c.push_back(t);
            }
            SeriesMatrix minor = a.select_rows(keep_r).select_cols(keep_c);
            USeries m = determinant(minor);
            // adj(a)_{j,i} = (-1)^{i+j} det(minor_{i,j})
            out.at(j, i) = ((i + j) % 2 == 0) ? m : -m;
        }
    return out;
}

SeriesMatrix inverse_laurent(const SeriesMatrix& a, int cap) {
    USeries det = determinant(a);
    if (det.is_zero()) {
        if (det.is_exact()) throw SingularMatrix("matrix is singular");
        throw InsufficientPrecision("determinant is zero to precision " + std::to_string(det.precision()));
    }
    SeriesMatrix adj = adjugate(a);
    int adj_val = adj.min_valuation();
    USeries dinv = det.inverse(adj_val < 0 && adj_val > -kExact ? prec_add(cap, -adj_val) : cap);
    SeriesMatrix out = adj.scaled(dinv);
    if (out.is_exact()) return out;
    return out.truncated(cap);
}

}  // namespace kisin
