#include "kisin/phi_module.hpp"

#include <algorithm>
#include <sstream>

#include "kisin/errors.hpp"
#include "kisin/smith.hpp"

namespace kisin {

PhiModule::PhiModule(FieldPtr k, int e, std::optional<int> r, SeriesMatrix frob)
    : k_(std::move(k)), e_(e), r_(r), frob_(std::move(frob)) {
    if (e_ < 1) throw ParseError("ramification index e must be >= 1");
    if (r_ && *r_ < 0) throw ParseError("height r must be >= 0");
    if (!frob_.is_square()) throw DimensionMismatch("Frobenius matrix must be square");
    if (frob_.rows() > 0) require_same_field(*k_, *frob_.field());
}

int PhiModule::er() const {
    if (!r_) throw UnboundedHeight("operation needs a finite height r");
    return e_ * *r_;
}

bool PhiModule::same_base(const PhiModule& o) const { return k_->same_as(*o.k_) && e_ == o.e_; }

bool PhiModule::same_category(const PhiModule& o) const { return same_base(o) && r_ == o.r_; }

PhiModule rank_one_module(const FieldPtr& k, int e, std::optional<int> r, int n) {
    return PhiModule(k, e, r, SeriesMatrix::diag_u(k, {n}));
}

PhiModule zero_module(const FieldPtr& k, int e, std::optional<int> r) {
    return PhiModule(k, e, r, SeriesMatrix(k, 0, 0));
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "pass" : "FAIL") << "  " << c.name;
        if (!c.witness.empty()) os << "  (" << c.witness << ")";
        os << "\n";
    }
    return os.str();
}

ValidationReport validate(const PhiModule& m) {
    ValidationReport rep;
    const SeriesMatrix& a = m.frob();
    const int d = m.rank();

    ValidationCheck integral{"integral", true, ""};
    for (int i = 0; i < d && integral.passed; ++i)
        for (int j = 0; j < d; ++j) {
            const USeries& x = a.at(i, j);
            if (!x.is_zero() && *x.valuation() < 0) {
                integral.passed = false;
                integral.witness = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") has valuation " +
                                   std::to_string(*x.valuation());
                break;
            }
        }
    rep.checks.push_back(integral);

    ValidationCheck nondeg{"nondegenerate", true, ""};
    USeries det = d > 0 ? determinant(a) : USeries::one(m.field());
    if (det.is_zero()) {
        nondeg.passed = false;
        nondeg.witness = det.is_exact() ? "determinant is 0" : "determinant is zero modulo u^" + std::to_string(det.precision());
    } else {
        nondeg.witness = "val det = " + std::to_string(*det.valuation());
    }
    rep.checks.push_back(nondeg);

    ValidationCheck height{"height", true, ""};
    if (!integral.passed || !nondeg.passed) {
        height.passed = false;
        height.witness = "not computed";
    } else if (d > 0) {
        try {
            rep.divisors = smith_divisors(a);
        } catch (const InsufficientPrecision& ex) {
            height.passed = false;
            height.witness = ex.what();
        }
        if (height.passed) {
            std::ostringstream w;
            w << "divisors (";
            for (size_t i = 0; i < rep.divisors.size(); ++i) w << (i ? "," : "") << rep.divisors[i];
            w << ")";
            if (m.bounded()) {
                int er = m.er();
                w << ", bound er = " << er;
                int worst = rep.divisors.back();
                if (worst > er) {
                    height.passed = false;
                    w << "; divisor " << worst << " exceeds it";
                }
            } else {
                w << ", r unbounded";
            }
            height.witness = w.str();
        }
    }
    rep.checks.push_back(height);
    return rep;
}

void require_valid(const PhiModule& m) {
    ValidationReport rep = validate(m);
    if (!rep.ok()) throw HeightViolation("module is not an object of the category:\n" + rep.to_string());
}

int frob_height(const PhiModule& m) {
    if (m.rank() == 0) return 0;
    auto div = smith_divisors(m.frob());
    return div.back();
}

int window_bound(const PhiModule& m) {
    int h = m.bounded() ? m.er() : frob_height(m);
    return window_bound(m.p(), h);
}

int working_precision(const PhiModule& m) {
    int h = m.bounded() ? m.er() : frob_height(m);
    int t = window_bound(m.p(), h);
    return h * (m.rank() + 1) + m.p() * (t + m.frob().max_degree()) + 8;
}

std::vector<USeries> apply_phi(const PhiModule& m, const std::vector<USeries>& v) {
    std::vector<USeries> w;
    w.reserve(v.size());
    for (const auto& x : v) w.push_back(x.phi());
    return m.frob() * w;
}

PhiMorphism::PhiMorphism(PhiModule source, PhiModule target, SeriesMatrix mat)
    : source_(std::move(source)), target_(std::move(target)), mat_(std::move(mat)) {
    if (!source_.same_base(target_)) throw ParameterMismatch("morphism between modules over different bases");
    if (mat_.rows() != target_.rank() || mat_.cols() != source_.rank())
        throw DimensionMismatch("morphism matrix must be target rank x source rank");
    if (mat_.rows() == 0 || mat_.cols() == 0) mat_ = SeriesMatrix(source_.field(), target_.rank(), source_.rank());
}

SeriesMatrix PhiMorphism::defect() const {
    return mat_ * source_.frob() - target_.frob() * mat_.phi();
}

bool PhiMorphism::commutes() const {
    if (mat_.rows() == 0 || mat_.cols() == 0) return true;
    if (!mat_.is_integral()) return false;
    SeriesMatrix d = defect();
    return d.is_zero();
}

PhiMorphism identity_morphism(const PhiModule& m) {
    return PhiMorphism(m, m, SeriesMatrix::identity(m.field(), m.rank()));
}

PhiMorphism zero_morphism(const PhiModule& source, const PhiModule& target) {
    return PhiMorphism(source, target, SeriesMatrix(source.field(), target.rank(), source.rank()));
}

PhiMorphism compose(const PhiMorphism& g, const PhiMorphism& f) {
    if (g.source().rank() != f.target().rank()) throw DimensionMismatch("composition of incompatible morphisms");
    return PhiMorphism(f.source(), g.target(), g.mat() * f.mat());
}

PhiModule dual(const PhiModule& m) {
    const int er = m.er();
    const int d = m.rank();
    if (d == 0) return m;
    require_valid(m);
    SeriesMatrix at = m.frob().transpose();
    SeriesMatrix inv = inverse_laurent(at, working_precision(m));
    SeriesMatrix b = inv.shifted(er);
    if (!b.is_integral()) throw HeightViolation("dual Frobenius is not integral");
    if (!b.is_exact()) b = b.truncated(working_precision(m));
    return m.with_frob(std::move(b));
}

PhiMorphism dual(const PhiMorphism& f) {
    return PhiMorphism(dual(f.target()), dual(f.source()), f.mat().transpose());
}

PhiModule direct_sum(const PhiModule& a, const PhiModule& b) {
    if (!a.same_category(b)) throw ParameterMismatch("direct sum of modules with different parameters");
    const int da = a.rank(), db = b.rank();
    SeriesMatrix s(a.field(), da + db, da + db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) s.at(i, j) = a.frob().at(i, j);
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j) s.at(da + i, da + j) = b.frob().at(i, j);
    return a.with_frob(std::move(s));
}

PhiModule extension_build(const PhiModule& sub, const PhiModule& quot, const SeriesMatrix& cocycle) {
    if (!sub.same_category(quot)) throw ParameterMismatch("extension of modules with different parameters");
    const int ds = sub.rank(), dq = quot.rank();
    if (cocycle.rows() != ds || cocycle.cols() != dq) throw DimensionMismatch("cocycle must be sub rank x quotient rank");
    if (ds > 0 && dq > 0 && !cocycle.is_integral()) throw MathError("cocycle must be integral");
    PhiModule sum = direct_sum(sub, quot);
    SeriesMatrix a = sum.frob();
    for (int i = 0; i < ds; ++i)
        for (int j = 0; j < dq; ++j) a.at(i, ds + j) = cocycle.at(i, j);
    PhiModule out = sub.with_frob(std::move(a));
    ValidationReport rep = validate(out);
    if (!rep.ok()) throw HeightViolation("height violated: extension is not an object of height r\n" + rep.to_string());
    return out;
}

}  // namespace kisin
