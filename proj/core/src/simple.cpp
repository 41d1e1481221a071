#include "kisin/simple.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "kisin/errors.hpp"

namespace kisin {

namespace {

long long ipow(long long b, int n) {
    long long r = 1;
    for (int i = 0; i < n; ++i) r *= b;
    return r;
}

Rational frac(Rational x) {
    long long fl = x.numerator() / x.denominator();
    if (x.numerator() < 0 && x.numerator() % x.denominator() != 0) --fl;
    return x - fl;
}

int minimal_period(const std::vector<int>& n) {
    int len = static_cast<int>(n.size());
    for (int d = 1; d <= len; ++d) {
        if (len % d) continue;
        bool ok = true;
        for (int i = 0; i < len && ok; ++i) ok = n[i] == n[i % d];
        if (ok) return d;
    }
    return len;
}

void require_S(const SimpleSeq& s) {
    if (!s.in_S()) throw NotInS("sequence " + s.to_string() + " is not in S (the t_i are not pairwise distinct)");
}

}  // namespace

SimpleSeq::SimpleSeq(int p, int f, int e, std::optional<int> r, std::vector<int> n)
    : p_(p), f_(f), e_(e), r_(r), n_(std::move(n)) {
    if (n_.empty()) throw DimensionMismatch("empty sequence");
    if (p < 2 || f < 1 || e < 1) throw ParameterMismatch("bad parameters for a sequence");
    for (int x : n_) {
        if (x < 0) throw HeightViolation("negative entry in sequence");
        if (r_ && x > e_ * *r_) throw HeightViolation("entry " + std::to_string(x) + " exceeds er");
    }
    d_ = minimal_period(n_);
    if (d_ > 12) throw DimensionMismatch("period too long");
}

int SimpleSeq::er() const {
    if (!r_) throw UnboundedHeight("r is unbounded");
    return e_ * *r_;
}

int SimpleSeq::n(int i) const { return n_[((i % d_) + d_) % d_]; }

std::vector<long long> SimpleSeq::s() const {
    std::vector<long long> out(d_);
    for (int i = 0; i < d_; ++i) {
        long long acc = 0;
        for (int j = 0; j < d_; ++j) acc = acc * p_ + n(i + j);
        out[i] = acc;
    }
    return out;
}

std::vector<Rational> SimpleSeq::t() const {
    long long den = ipow(p_, d_) - 1;
    std::vector<Rational> out;
    for (long long x : s()) out.push_back(frac(Rational(x, den)));
    return out;
}

bool SimpleSeq::in_S() const {
    auto t = this->t();
    std::set<Rational> seen(t.begin(), t.end());
    return static_cast<int>(seen.size()) == d_;
}

bool SimpleSeq::in_Smax() const {
    int m = r_ ? std::min(er(), p_ - 1) : p_ - 1;
    bool constant_pm1 = true;
    for (int i = 0; i < d_; ++i) {
        if (n(i) < 0 || n(i) > m) return false;
        constant_pm1 = constant_pm1 && n(i) == p_ - 1;
    }
    return !constant_pm1;
}

bool SimpleSeq::in_Smin() const {
    if (!r_) return false;
    int m = std::min(er(), p_ - 1);
    bool constant = true;
    for (int i = 0; i < d_; ++i) {
        if (n(i) < er() - m || n(i) > er()) return false;
        constant = constant && n(i) == er() - (p_ - 1);
    }
    return !constant;
}

bool SimpleSeq::same_params(const SimpleSeq& o) const {
    return p_ == o.p_ && f_ == o.f_ && e_ == o.e_ && r_ == o.r_;
}

std::string SimpleSeq::to_string() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < d_; ++i) os << (i ? "," : "") << n(i);
    os << ')';
    return os.str();
}

SeqInvariants seq_invariants(const SimpleSeq& s) {
    SeqInvariants inv;
    inv.d = s.d();
    inv.s = s.s();
    inv.t = s.t();
    inv.in_S = s.in_S();
    inv.in_Smax = s.in_Smax();
    inv.in_Smin = s.in_Smin();
    return inv;
}

PhiModule build_module(const SimpleSeq& s) {
    FieldPtr k = Field::make(FieldParams::standard(s.p(), s.f()));
    const int d = s.d();
    SeriesMatrix a(k, d, d);
    for (int i = 0; i < d; ++i) a.at((i + 1) % d, i) = USeries::u_power(k, s.n(i));
    return PhiModule(k, s.e(), s.r(), a);
}

std::optional<SimpleSeq> recognize_simple(const PhiModule& m) {
    const int d = m.rank();
    if (d == 0) return std::nullopt;
    const SeriesMatrix& a = m.frob();
    std::vector<int> n(d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            const USeries& x = a.at(i, j);
            if (!x.is_exact()) return std::nullopt;
            if (i == (j + 1) % d) {
                if (!x.is_monomial() || x.lead() != 1 || *x.valuation() < 0) return std::nullopt;
                n[j] = *x.valuation();
            } else if (!x.is_zero()) {
                return std::nullopt;
            }
        }
    if (minimal_period(n) != d) return std::nullopt;
    if (m.bounded())
        for (int x : n)
            if (x > m.er()) return std::nullopt;
    return SimpleSeq(m.p(), m.field()->degree(), m.e(), m.r(), n);
}

std::optional<int> iso_simple(const SimpleSeq& a, const SimpleSeq& b) {
    if (!a.same_params(b)) throw ParameterMismatch("sequences have different parameters");
    if (a.d() != b.d()) return std::nullopt;
    for (int sh = 0; sh < a.d(); ++sh) {
        bool ok = true;
        for (int i = 0; i < a.d() && ok; ++i) ok = b.n(i + sh) == a.n(i);
        if (ok) return sh;
    }
    return std::nullopt;
}

std::optional<FrobSolution> solve_frob_eq(const SimpleSeq& s, long long exp, bool laurent) {
    require_S(s);
    long long den = ipow(s.p(), s.d()) - 1;
    auto sv = s.s();
    for (int i = 0; i < s.d(); ++i) {
        long long diff = exp - sv[i];
        if (diff % den) continue;
        long long v = diff / den;
        if (!laurent && v < 0) continue;
        FrobSolution sol;
        sol.index = i;
        sol.v = v;
        sol.scalar_degree = std::gcd(s.f(), s.d());
        return sol;
    }
    return std::nullopt;
}

ClosedForm max_closed_form(const SimpleSeq& s) {
    require_S(s);
    const int d = s.d();
    const long long den = ipow(s.p(), d) - 1;
    const long long top = ipow(s.p(), d - 1);
    auto sv = s.s();
    std::vector<int> m(d);
    std::vector<long long> q(d);
    for (int i = 0; i < d; ++i) {
        long long sp = ((sv[i] % den) + den) % den;
        m[i] = static_cast<int>(sp / top);
        q[i] = (sv[i] - sp) / den;
    }
    for (int i = 0; i < d; ++i)
        if (s.p() * q[i] + m[i] != q[(i + 1) % d] + s.n(i))
            throw MathError("closed form relation fails at index " + std::to_string(i));
    return ClosedForm{s.with_period(m), q};
}

ClosedForm min_closed_form(const SimpleSeq& s) {
    require_S(s);
    ClosedForm dm = max_closed_form(dual_seq(s));
    std::vector<int> m(s.d());
    std::vector<long long> q(s.d());
    for (int i = 0; i < s.d(); ++i) {
        m[i] = s.er() - dm.m.n(i);
        q[i] = -dm.q[i];
    }
    return ClosedForm{s.with_period(m), q};
}

bool same_max_class(const SimpleSeq& a, const SimpleSeq& b) {
    if (!a.same_params(b)) throw ParameterMismatch("sequences have different parameters");
    if (a.d() != b.d()) return false;
    Rational t = a.t()[0];
    Rational tb = b.t()[0];
    for (int k = 0; k < a.d(); ++k) {
        if (t == tb) return true;
        tb = frac(tb * Rational(a.p()));
    }
    return false;
}

std::vector<int> tame_weights(const SimpleSeq& s) { return max_closed_form(s).m.period(); }

SimpleSeq dual_seq(const SimpleSeq& s) {
    std::vector<int> n(s.d());
    for (int i = 0; i < s.d(); ++i) n[i] = s.er() - s.n(i);
    return s.with_period(n);
}

std::vector<SimpleSeq> all_sequences(int p, int f, int e, int r, int d, bool necklaces) {
    std::vector<SimpleSeq> out;
    const int er = e * r;
    std::vector<int> n(d, 0);
    while (true) {
        if (minimal_period(n) == d) {
            bool keep = true;
            if (necklaces)
                for (int sh = 1; sh < d && keep; ++sh) {
                    std::vector<int> rot(n.begin() + sh, n.end());
                    rot.insert(rot.end(), n.begin(), n.begin() + sh);
                    if (rot < n) keep = false;
                }
            if (keep) out.emplace_back(p, f, e, r, n);
        }
        int i = d - 1;
        while (i >= 0 && ++n[i] > er) n[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::string classification_csv(const std::vector<SimpleSeq>& seqs) {
    std::ostringstream os;
    auto join = [](const auto& v) {
        std::ostringstream o;
        for (size_t i = 0; i < v.size(); ++i) o << (i ? " " : "") << v[i];
        return o.str();
    };
    os << "n,d,s,t,in_S,in_Smax,in_Smin,max_class,weights\n";
    for (const auto& s : seqs) {
        auto inv = seq_invariants(s);
        std::vector<std::string> ts;
        for (const auto& x : inv.t) ts.push_back(std::to_string(x.numerator()) + "/" + std::to_string(x.denominator()));
        os << join(s.period()) << "," << inv.d << "," << join(inv.s) << "," << join(ts) << "," << inv.in_S << ","
           << inv.in_Smax << "," << inv.in_Smin << ",";
        if (inv.in_S) {
            auto cf = max_closed_form(s);
            os << join(cf.m.period()) << "," << join(tame_weights(s));
        } else {
            os << ",";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace kisin
