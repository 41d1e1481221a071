#include "kisin/series.hpp"

#include <algorithm>
#include <sstream>

#include "kisin/errors.hpp"

namespace kisin {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

}  // namespace

USeries USeries::zero(FieldPtr k, int prec) {
    USeries s(std::move(k));
    s.prec_ = prec;
    return s;
}

USeries USeries::constant(FieldPtr k, Elem c, int prec) {
    return monomial(std::move(k), c, 0, prec);
}

USeries USeries::monomial(FieldPtr k, Elem c, int exponent, int prec) {
    USeries s(std::move(k));
    s.prec_ = prec;
    s.val_ = exponent;
    s.coeffs_.push_back(c);
    s.normalize();
    return s;
}

USeries USeries::from_coeffs(FieldPtr k, int lowest, std::vector<Elem> coeffs, int prec) {
    USeries s(std::move(k));
    s.val_ = lowest;
    s.coeffs_ = std::move(coeffs);
    s.prec_ = prec;
    s.normalize();
    return s;
}

void USeries::normalize() {
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        val_ = 0;
        return;
    }
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        val_ += static_cast<int>(lead);
    }
    if (prec_ < kExact) {
        long long keep = static_cast<long long>(prec_) - val_;
        if (keep <= 0) {
            coeffs_.clear();
            val_ = 0;
            return;
        }
        if (static_cast<long long>(coeffs_.size()) > keep) coeffs_.resize(static_cast<size_t>(keep));
    }
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) val_ = 0;
}

std::optional<int> USeries::valuation() const {
    if (coeffs_.empty()) return std::nullopt;
    return val_;
}

Elem USeries::coeff(int n) const {
    if (n >= prec_)
        throw InsufficientPrecision("coefficient of u^" + std::to_string(n) +
                                    " requested but series is only known modulo u^" +
                                    std::to_string(prec_));
    if (coeffs_.empty() || n < val_ || n > degree()) return 0;
    return coeffs_[static_cast<size_t>(n - val_)];
}

USeries USeries::operator+(const USeries& b) const {
    require_same_field(*k_, *b.k_);
    int prec = std::min(prec_, b.prec_);
    if (b.coeffs_.empty()) return truncated(prec);
    if (coeffs_.empty()) return b.truncated(prec);
    int lo = std::min(val_, b.val_);
    int hi = std::max(degree(), b.degree());
    if (prec < kExact) hi = std::min(hi, prec - 1);
    USeries out(k_);
    out.prec_ = prec;
    if (hi < lo) {
        out.normalize();
        return out;
    }
    out.val_ = lo;
    out.coeffs_.assign(static_cast<size_t>(hi - lo + 1), 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        int e = val_ + static_cast<int>(i);
        if (e > hi) break;
        out.coeffs_[static_cast<size_t>(e - lo)] = coeffs_[i];
    }
    const Field& k = *k_;
    for (size_t i = 0; i < b.coeffs_.size(); ++i) {
        int e = b.val_ + static_cast<int>(i);
        if (e > hi) break;
        auto& slot = out.coeffs_[static_cast<size_t>(e - lo)];
        slot = k.add(slot, b.coeffs_[i]);
    }
    out.normalize();
    return out;
}

USeries USeries::operator-() const {
    USeries out = *this;
    for (auto& c : out.coeffs_) c = k_->neg(c);
    return out;
}

USeries USeries::operator-(const USeries& b) const { return *this + (-b); }

USeries USeries::operator*(const USeries& b) const {
    require_same_field(*k_, *b.k_);
    int prec = std::min(prec_add(prec_, b.val_bound()), prec_add(b.prec_, val_bound()));
    USeries out(k_);
    out.prec_ = prec;
    if (coeffs_.empty() || b.coeffs_.empty()) return out;
    out.val_ = val_ + b.val_;
    long long n_max = static_cast<long long>(coeffs_.size() + b.coeffs_.size()) - 2;
    if (prec < kExact) n_max = std::min<long long>(n_max, static_cast<long long>(prec) - 1 - out.val_);
    if (n_max < 0) {
        out.coeffs_.clear();
        out.val_ = 0;
        return out;
    }
    out.coeffs_.assign(static_cast<size_t>(n_max + 1), 0);
    const Field& k = *k_;
    const size_t la = coeffs_.size(), lb = b.coeffs_.size();
    for (size_t i = 0; i < la && static_cast<long long>(i) <= n_max; ++i) {
        Elem ai = coeffs_[i];
        if (ai == 0) continue;
        size_t jmax = std::min<long long>(static_cast<long long>(lb) - 1, n_max - static_cast<long long>(i));
        for (size_t j = 0; j <= jmax; ++j) {
            Elem bj = b.coeffs_[j];
            if (bj == 0) continue;
            auto& slot = out.coeffs_[i + j];
            slot = k.add(slot, k.mul(ai, bj));
        }
    }
    out.normalize();
    return out;
}

USeries USeries::scaled(Elem c) const {
    if (c == 0) return zero(k_);
    USeries out = *this;
    for (auto& x : out.coeffs_) x = k_->mul(x, c);
    return out;
}

USeries USeries::shifted(int k) const {
    USeries out = *this;
    if (!out.coeffs_.empty()) out.val_ += k;
    if (out.prec_ < kExact) out.prec_ += k;
    return out;
}

USeries USeries::truncated(int prec) const {
    if (prec >= prec_) return *this;
    USeries out = *this;
    out.prec_ = prec;
    out.normalize();
    return out;
}

USeries USeries::low_part(int n) const {
    if (n > prec_) throw InsufficientPrecision("low part beyond known precision");
    USeries out = *this;
    out.prec_ = n;
    out.normalize();
    out.prec_ = kExact;
    return out;
}

USeries USeries::high_part(int n) const {
    USeries out(k_);
    out.prec_ = prec_;
    if (coeffs_.empty() || degree() < n) {
        out.normalize();
        return out;
    }
    int start = std::max(n, val_);
    out.val_ = start;
    out.coeffs_.assign(coeffs_.begin() + (start - val_), coeffs_.end());
    out.normalize();
    return out;
}

USeries USeries::phi() const {
    const int p = k_->p();
    USeries out(k_);
    out.prec_ = prec_mul(prec_, p);
    if (coeffs_.empty()) return out;
    out.val_ = val_ * p;
    out.coeffs_.assign((coeffs_.size() - 1) * static_cast<size_t>(p) + 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i * p] = k_->frob(coeffs_[i]);
    out.normalize();
    return out;
}

USeries USeries::inverse(int cap) const {
    if (coeffs_.empty()) {
        if (is_exact()) throw SingularMatrix("inverse of zero");
        throw InsufficientPrecision("inverse of a series that is zero to precision " +
                                    std::to_string(prec_));
    }
    const Field& k = *k_;
    const int v = val_;
    if (is_exact() && coeffs_.size() == 1) return monomial(k_, k.inv(coeffs_[0]), -v);
    long long rel_in = is_exact() ? static_cast<long long>(kExact) : static_cast<long long>(prec_) - v;
    long long rel = std::min<long long>(rel_in, static_cast<long long>(cap) + v);
    int out_prec = static_cast<int>(rel - v);
    if (rel <= 0) return zero(k_, out_prec);
    std::vector<Elem> b(static_cast<size_t>(rel), 0);
    Elem b0 = k.inv(coeffs_[0]);
    Elem nb0 = k.neg(b0);
    b[0] = b0;
    for (long long n = 1; n < rel; ++n) {
        Elem acc = 0;
        long long kmax = std::min<long long>(n, static_cast<long long>(coeffs_.size()) - 1);
        for (long long t = 1; t <= kmax; ++t) {
            Elem c = coeffs_[static_cast<size_t>(t)];
            if (c == 0) continue;
            acc = k.add(acc, k.mul(c, b[static_cast<size_t>(n - t)]));
        }
        b[static_cast<size_t>(n)] = k.mul(nb0, acc);
    }
    return from_coeffs(k_, -v, std::move(b), out_prec);
}

USeries USeries::frobenius_component(int j) const {
    const int p = k_->p();
    USeries out(k_);
    out.prec_ = is_exact() ? kExact : ceil_div(prec_ - j, p);
    if (coeffs_.empty()) return out;
    int m_lo = ceil_div(val_ - j, p);
    int m_hi = floor_div(degree() - j, p);
    if (m_hi < m_lo) {
        out.normalize();
        return out;
    }
    out.val_ = m_lo;
    out.coeffs_.assign(static_cast<size_t>(m_hi - m_lo + 1), 0);
    for (int m = m_lo; m <= m_hi; ++m) {
        int n = p * m + j;
        out.coeffs_[static_cast<size_t>(m - m_lo)] = k_->frob_inv(coeffs_[static_cast<size_t>(n - val_)]);
    }
    out.normalize();
    return out;
}

bool USeries::operator==(const USeries& b) const {
    if (has_field() != b.has_field()) return false;
    if (has_field() && !k_->same_as(*b.k_)) return false;
    return prec_ == b.prec_ && coeffs_ == b.coeffs_ && (coeffs_.empty() || val_ == b.val_);
}

bool USeries::equal_mod(const USeries& b, int n) const {
    if (prec_ < n || b.prec_ < n)
        throw InsufficientPrecision("comparison modulo u^" + std::to_string(n) + " beyond known precision");
    return (*this - b).truncated(n).is_zero();
}

bool USeries::agrees_with(const USeries& b) const {
    int n = std::min(prec_, b.prec_);
    return (*this - b).truncated(n).is_zero();
}

std::string USeries::to_string() const {
    if (!k_) return "<null>";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        Elem c = coeffs_[i];
        if (c == 0) continue;
        int e = val_ + static_cast<int>(i);
        if (!first) os << " + ";
        first = false;
        std::string cs = format_elem(*k_, c);
        bool compound = cs.find('+') != std::string::npos;
        if (e == 0) {
            os << (compound ? "(" + cs + ")" : cs);
            continue;
        }
        if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
        os << "u";
        if (e != 1) os << "^" << e;
    }
    if (!is_exact()) {
        if (!first) os << " + ";
        first = false;
        os << "O(u^" << prec_ << ")";
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace kisin
