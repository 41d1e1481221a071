#include "kisin/field.hpp"

#include <algorithm>
#include <sstream>

#include "kisin/errors.hpp"

namespace kisin {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<long long> prime_factors(long long n) {
    std::vector<long long> out;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense polynomials over F_p, low degree first, no trailing zeros.
using Poly = std::vector<int>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
    int r = 1;
    for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
    trim(a);
    int dm = static_cast<int>(m.size()) - 1;
    int lead_inv = inv_mod(m.back(), p);
    while (static_cast<int>(a.size()) - 1 >= dm) {
        int shift = static_cast<int>(a.size()) - 1 - dm;
        int c = a.back() * lead_inv % p;
        for (int i = 0; i <= dm; ++i)
            a[i + shift] = ((a[i + shift] - c * m[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return poly_mod(c, m, p);
}

Poly poly_powmod(Poly b, long long e, const Poly& m, int p) {
    Poly r{1};
    r = poly_mod(r, m, p);
    b = poly_mod(b, m, p);
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, b, m, p);
        b = poly_mulmod(b, b, m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin's test.
bool irreducible(const Poly& m, int p) {
    int f = static_cast<int>(m.size()) - 1;
    if (f < 1) return false;
    if (f == 1) return true;
    Poly x{0, 1};
    auto frob_power = [&](int k) {
        Poly r = x;
        for (int i = 0; i < k; ++i) r = poly_powmod(r, p, m, p);
        return r;
    };
    Poly full = frob_power(f);
    if (full != poly_mod(x, m, p)) return false;
    for (long long r : prime_factors(f)) {
        Poly h = frob_power(f / static_cast<int>(r));
        h.resize(std::max<size_t>(h.size(), 2), 0);
        h[1] = ((h[1] - 1) % p + p) % p;
        trim(h);
        Poly g = poly_gcd(h, m, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

FieldParams FieldParams::prime(int p) {
    FieldParams out;
    out.p = p;
    out.f = 1;
    out.modulus = {0, 1};
    return out;
}

FieldParams FieldParams::standard(int p, int f) {
    if (f == 1) return prime(p);
    if (!is_prime(p)) throw ParseError("p must be prime");
    long long count = 1;
    for (int i = 0; i < f; ++i) count *= p;
    for (long long n = 0; n < count; ++n) {
        Poly m(f + 1, 0);
        long long v = n;
        for (int i = 0; i < f; ++i) {
            m[i] = static_cast<int>(v % p);
            v /= p;
        }
        m[f] = 1;
        if (m[0] == 0 || !irreducible(m, p)) continue;
        // x must generate the multiplicative group.
        long long order = count - 1;
        bool primitive = true;
        for (long long l : prime_factors(order)) {
            Poly h = poly_powmod(Poly{0, 1}, order / l, m, p);
            if (h == Poly{1}) {
                primitive = false;
                break;
            }
        }
        if (!primitive) continue;
        FieldParams out;
        out.p = p;
        out.f = f;
        out.modulus = m;
        return out;
    }
    throw ParseError("no primitive polynomial found");
}

std::string FieldParams::modulus_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(modulus.size()) - 1; i >= 0; --i) {
        int c = modulus[i];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c << "*";
        os << "x";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

FieldPtr Field::make(const FieldParams& params) {
    return FieldPtr(new Field(params));
}

Field::Field(const FieldParams& params) : params_(params) {
    const int p = params.p;
    const int f = params.f;
    if (!is_prime(p)) throw ParseError("p = " + std::to_string(p) + " is not prime");
    if (f < 1) throw ParseError("field degree must be >= 1");
    if (static_cast<int>(params.modulus.size()) != f + 1 || params.modulus.back() != 1)
        throw ParseError("field modulus must be monic of degree f");
    for (int c : params.modulus)
        if (c < 0 || c >= p) throw ParseError("field modulus coefficients must lie in 0..p-1");
    long long q = 1;
    for (int i = 0; i < f; ++i) {
        q *= p;
        if (q > (1 << 16)) throw ParseError("field too large (p^f > 65536)");
    }
    if (f > 1 && !irreducible(params.modulus, p))
        throw ParseError("field modulus " + params.modulus_string() + " is not irreducible");
    q_ = static_cast<Elem>(q);

    // Find a primitive element with polynomial arithmetic, then build log tables.
    auto order = q - 1;
    auto factors = prime_factors(order);
    Elem g = 0;
    for (Elem c = 1; c < q_ && g == 0; ++c) {
        if (q_ == 2) {
            g = 1;
            break;
        }
        Poly cp = coords(c);
        trim(cp);
        bool ok = true;
        for (long long l : factors) {
            Poly h = poly_powmod(cp, order / l, params.modulus, p);
            if (h == Poly{1}) {
                ok = false;
                break;
            }
        }
        if (ok) g = c;
    }
    exp_.assign(2 * static_cast<size_t>(order) + 1, 0);
    log_.assign(q_, 0);
    Elem x = 1;
    for (long long i = 0; i < order; ++i) {
        exp_[i] = x;
        log_[x] = static_cast<std::uint32_t>(i);
        x = slow_mul(x, g);
    }
    for (long long i = order; i < 2 * order + 1; ++i) exp_[i] = exp_[i - order];

    neg_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
        auto c = coords(a);
        for (auto& v : c) v = (p - v) % p;
        neg_[a] = from_coords(c);
    }
    if (q_ <= 256) {
        add_table_.resize(static_cast<size_t>(q_) * q_);
        for (Elem a = 0; a < q_; ++a) {
            auto ca = coords(a);
            for (Elem b = 0; b < q_; ++b) {
                auto cb = coords(b);
                std::vector<int> c(f);
                for (int i = 0; i < f; ++i) c[i] = (ca[i] + cb[i]) % p;
                add_table_[static_cast<size_t>(a) * q_ + b] = from_coords(c);
            }
        }
    }
    frob_.resize(q_);
    frob_inv_.resize(q_);
    for (Elem a = 0; a < q_; ++a) frob_[a] = pow(a, p);
    for (Elem a = 0; a < q_; ++a) frob_inv_[frob_[a]] = a;
}

Elem Field::slow_mul(Elem a, Elem b) const {
    Poly pa = coords(a), pb = coords(b);
    trim(pa);
    trim(pb);
    Poly c = poly_mulmod(pa, pb, params_.modulus, params_.p);
    c.resize(params_.f, 0);
    return from_coords(c);
}

Elem Field::add(Elem a, Elem b) const {
    if (!add_table_.empty()) return add_table_[static_cast<size_t>(a) * q_ + b];
    if (params_.p == 2) return a ^ b;
    Elem out = 0, scale = 1;
    const Elem p = static_cast<Elem>(params_.p);
    for (int i = 0; i < params_.f; ++i) {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return out;
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw MathError("division by zero in the coefficient field");
    std::uint32_t order = q_ - 1;
    return exp_[(order - log_[a]) % order];
}

Elem Field::pow(Elem a, long long n) const {
    if (a == 0) {
        if (n == 0) return 1;
        if (n < 0) throw MathError("division by zero in the coefficient field");
        return 0;
    }
    long long order = q_ - 1;
    long long e = (static_cast<long long>(log_[a]) * (((n % order) + order) % order)) % order;
    return exp_[e];
}

Elem Field::from_int(long long n) const {
    long long p = params_.p;
    return static_cast<Elem>(((n % p) + p) % p);
}

Elem Field::gen() const {
    if (params_.f == 1) return from_int(-params_.modulus[0]);
    return static_cast<Elem>(params_.p);
}

std::vector<int> Field::coords(Elem a) const {
    std::vector<int> c(params_.f, 0);
    for (int i = 0; i < params_.f; ++i) {
        c[i] = static_cast<int>(a % params_.p);
        a /= params_.p;
    }
    return c;
}

Elem Field::from_coords(const std::vector<int>& c) const {
    Elem out = 0, scale = 1;
    for (int i = 0; i < params_.f; ++i) {
        int v = i < static_cast<int>(c.size()) ? c[i] : 0;
        v = ((v % params_.p) + params_.p) % params_.p;
        out += static_cast<Elem>(v) * scale;
        scale *= params_.p;
    }
    return out;
}

void require_same_field(const Field& a, const Field& b) {
    if (!a.same_as(b)) throw ParameterMismatch("operands live over different coefficient fields");
}

FieldElement FieldElement::from_coords(FieldPtr field, const std::vector<int>& c) {
    Elem v = field->from_coords(c);
    return {std::move(field), v};
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(*field_, *o.field_);
    return {field_, field_->add(v_, o.v_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(*field_, *o.field_);
    return {field_, field_->sub(v_, o.v_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(*field_, *o.field_);
    return {field_, field_->mul(v_, o.v_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    require_same_field(*field_, *o.field_);
    return {field_, field_->mul(v_, field_->inv(o.v_))};
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_->same_as(*o.field_) && v_ == o.v_;
}

std::string format_elem(const Field& k, Elem a) {
    if (k.in_prime_field(a)) return std::to_string(a);
    auto c = k.coords(a);
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c[i];
            continue;
        }
        if (c[i] != 1) os << c[i] << "*";
        os << "a";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

}  // namespace kisin
