#include "kisin/maxmin.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "kisin/errors.hpp"
#include "kisin/hermite.hpp"
#include "kisin/morphism_ops.hpp"
#include "kisin/simple.hpp"

namespace kisin {

namespace {

// Smallest lattice containing z that is stable under v -> a phi(v) and under
// v -> the Frobenius components of c v; nullopt once it leaves u^{-t}.
std::optional<SeriesMatrix> close(const SeriesMatrix& a, const SeriesMatrix& c, SeriesMatrix z, int t, int p) {
    const int d = z.rows();
    const FieldPtr& k = z.field();
    while (true) {
        SeriesMatrix gens = SeriesMatrix::hconcat(z, a * z.phi());
        SeriesMatrix cz = c * z;
        for (int j = 0; j < p; ++j) {
            SeriesMatrix comp(k, d, d);
            for (int i = 0; i < d; ++i)
                for (int l = 0; l < d; ++l) comp.at(i, l) = cz.at(i, l).frobenius_component(j);
            gens = SeriesMatrix::hconcat(gens, comp);
        }
        SeriesMatrix next = hnf_lattice(gens, t);
        if (next.min_valuation() < -t) return std::nullopt;
        if (next == z) return z;
        z = std::move(next);
    }
}

SeriesMatrix dual_basis(const Lattice& l) { return hnf_lattice(l.inverse().transpose(), -l.ceiling()); }

SeriesMatrix undual_basis(const SeriesMatrix& h) {
    SeriesMatrix inv = hnf_inverse(h);
    return hnf_lattice(inv.transpose(), -h.min_valuation());
}

int default_level(int p, int er, int t) { return p * (t + 2) + t + er + 8; }

long long sat_mul(long long a, long long b, long long cap) {
    if (a == 0 || b == 0) return 0;
    if (a > cap / b) return cap + 1;
    return std::min(a * b, cap + 1);
}

long long sat_pow(long long q, int n, long long cap) {
    long long r = 1;
    for (int i = 0; i < n; ++i) r = sat_mul(r, q, cap);
    return r;
}

// All nonzero vectors of k^d with first nonzero coordinate 1.
std::vector<std::vector<Elem>> projective_points(int q, int d) {
    std::vector<std::vector<Elem>> out;
    for (int lead = 0; lead < d; ++lead) {
        int free = d - lead - 1;
        long long count = sat_pow(q, free, 1LL << 40);
        for (long long idx = 0; idx < count; ++idx) {
            std::vector<Elem> v(d, 0);
            v[lead] = 1;
            long long x = idx;
            for (int i = lead + 1; i < d; ++i) {
                v[i] = static_cast<Elem>(x % q);
                x /= q;
            }
            out.push_back(std::move(v));
        }
    }
    return out;
}

SeriesMatrix constant_matrix(const FieldPtr& k, const std::vector<std::vector<Elem>>& cols, int d) {
    SeriesMatrix m(k, d, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < d; ++i) m.at(i, static_cast<int>(j)) = USeries::constant(k, cols[j][i]);
    return m;
}

// Basis of the kernel of the functional lambda (first nonzero entry 1).
std::vector<std::vector<Elem>> hyperplane(const Field& k, const std::vector<Elem>& lambda) {
    int d = static_cast<int>(lambda.size());
    int s = 0;
    while (lambda[s] == 0) ++s;
    std::vector<std::vector<Elem>> out;
    for (int j = 0; j < d; ++j) {
        if (j == s) continue;
        std::vector<Elem> v(d, 0);
        v[j] = 1;
        v[s] = k.neg(lambda[j]);
        out.push_back(std::move(v));
    }
    return out;
}

void assemble(FrPoset& poset) {
    auto& el = poset.elements;
    std::sort(el.begin(), el.end(), canonical_less);
    const int n = poset.size();
    poset.leq.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                poset.leq[i][j] = 1;
                continue;
            }
            // strict inclusion forces a larger det valuation
            if (el[i].det_valuation() <= el[j].det_valuation()) continue;
            poset.leq[i][j] = el[j].contains(el[i]) ? 1 : 0;
        }
    poset.covers.assign(n, {});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !poset.leq[i][j]) continue;
            bool cover = true;
            for (int m = 0; m < n && cover; ++m)
                if (m != i && m != j && poset.leq[i][m] && poset.leq[m][j]) cover = false;
            if (cover) poset.covers[i].push_back(j);
        }
}

FrPoset walk_census(const FrClosure& cl, const CensusOptions& opts) {
    const ModulePtr& amb = cl.ambient();
    const FieldPtr& k = amb->field();
    const int d = amb->rank();
    const int q = static_cast<int>(k->size());
    FrPoset poset;
    poset.ambient = amb;
    poset.er = cl.er();
    poset.window = cl.window();
    poset.method = CensusMethod::Walk;

    auto points = projective_points(q, d);
    std::vector<std::vector<USeries>> lines;
    std::vector<SeriesMatrix> planes;
    for (const auto& c : points) {
        std::vector<USeries> v;
        for (Elem x : c) v.push_back(USeries::monomial(k, x, -1));
        lines.push_back(std::move(v));
        planes.push_back(constant_matrix(k, hyperplane(*k, c), d));
    }

    std::map<std::string, Lattice> seen;
    std::deque<Lattice> queue;
    Lattice start = Lattice::standard(amb);
    seen.emplace(start.key(), start);
    queue.push_back(start);
    auto visit = [&](const std::optional<Lattice>& l) {
        if (!l) return;
        if (seen.emplace(l->key(), *l).second) {
            if (static_cast<long long>(seen.size()) > opts.max_elements)
                throw CensusTooLarge("census walk exceeded " + std::to_string(opts.max_elements) + " lattices");
            queue.push_back(*l);
        }
    };
    while (!queue.empty()) {
        Lattice l = queue.front();
        queue.pop_front();
        const SeriesMatrix& b = l.basis();
        for (const auto& x : lines) {
            ++poset.candidates;
            SeriesMatrix gens = SeriesMatrix::hconcat(b, SeriesMatrix::column(b * x));
            visit(cl.up(Lattice::from_generators(amb, gens, l.floor())));
        }
        if (d == 0) continue;
        for (const auto& h : planes) {
            ++poset.candidates;
            SeriesMatrix gens = SeriesMatrix::hconcat(b.shifted(1), b * h);
            visit(cl.down(Lattice::from_generators(amb, gens, l.floor() + 1)));
        }
    }
    for (auto& [key, l] : seen) poset.elements.push_back(l);
    assemble(poset);
    return poset;
}

FrPoset exhaustive_census(const FrClosure& cl, const CensusOptions& opts) {
    const ModulePtr& amb = cl.ambient();
    const FieldPtr& k = amb->field();
    const int d = amb->rank();
    const int q = static_cast<int>(k->size());
    const int t = cl.window();
    long long total = exhaustive_candidate_count(d, t, q);
    if (total > opts.max_candidates)
        throw CensusTooLarge("instance too large for exhaustive census: " + std::to_string(total) +
                             " candidate bases (cap " + std::to_string(opts.max_candidates) + ")");
    FrPoset poset;
    poset.ambient = amb;
    poset.er = cl.er();
    poset.window = t;
    poset.method = CensusMethod::Exhaustive;

    std::vector<int> piv(d, -t);
    while (true) {
        // free coefficient slots: row i, column j > i, exponents [-t, piv[i])
        std::vector<std::pair<int, int>> slots;  // (row, col) per coefficient
        std::vector<int> slot_exp;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                for (int x = -t; x < piv[i]; ++x) {
                    slots.emplace_back(i, j);
                    slot_exp.push_back(x);
                }
        std::vector<Elem> coef(slots.size(), 0);
        while (true) {
            ++poset.candidates;
            SeriesMatrix h(k, d, d);
            for (int i = 0; i < d; ++i) h.at(i, i) = USeries::u_power(k, piv[i]);
            for (size_t s = 0; s < slots.size(); ++s) {
                if (coef[s] == 0) continue;
                auto [i, j] = slots[s];
                h.at(i, j) += USeries::monomial(k, coef[s], slot_exp[s]);
            }
            Lattice l = Lattice::from_canonical(amb, h);
            if (l.floor() <= t && lattice_in_fr(l, cl.er())) poset.elements.push_back(l);
            size_t s = 0;
            while (s < coef.size()) {
                if (++coef[s] < static_cast<Elem>(q)) break;
                coef[s] = 0;
                ++s;
            }
            if (s == coef.size()) break;
        }
        int i = 0;
        while (i < d && ++piv[i] > t) piv[i++] = -t;
        if (i == d) break;
    }
    assemble(poset);
    return poset;
}

FrPoset census_at(const ModulePtr& amb, int er, const CensusOptions& opts) {
    FrClosure cl(amb, er);
    CensusMethod method = opts.method;
    if (method == CensusMethod::Auto) {
        long long n = exhaustive_candidate_count(amb->rank(), cl.window(), static_cast<int>(amb->field()->size()));
        method = n <= opts.exhaustive_limit ? CensusMethod::Exhaustive : CensusMethod::Walk;
    }
    return method == CensusMethod::Exhaustive ? exhaustive_census(cl, opts) : walk_census(cl, opts);
}

Lattice diagonal_lattice(const ModulePtr& amb, const std::vector<long long>& q) {
    std::vector<int> ex;
    for (long long x : q) ex.push_back(static_cast<int>(-x));
    return Lattice::from_canonical(amb, SeriesMatrix::diag_u(amb->field(), ex));
}

struct Setup {
    ModulePtr amb;
    int er = 0;
};

Setup setup(const PhiModule& m, bool need_finite) {
    if (need_finite && !m.bounded()) throw UnboundedHeight("Min needs a finite height r");
    require_valid(m);
    Setup s;
    s.amb = std::make_shared<const PhiModule>(m);
    s.er = m.bounded() ? m.er() : effective_er(m);
    return s;
}

ExtremalResult finish(const PhiModule& m, Lattice l, ExtremalMethod method, bool is_max) {
    ExtremalResult r;
    r.module = module_of(l);
    if (is_max)
        r.inclusion = PhiMorphism(m, r.module, l.inverse());
    else
        r.inclusion = PhiMorphism(r.module, m, l.basis());
    r.lattice = std::move(l);
    r.method = method;
    return r;
}

ExtremalResult extremal(const PhiModule& m, const ExtremalOptions& opts, bool is_max) {
    if (m.rank() == 0) {
        auto amb = std::make_shared<const PhiModule>(m);
        return finish(m, Lattice::standard(amb), ExtremalMethod::Census, is_max);
    }
    Setup st = setup(m, !is_max);
    std::optional<Lattice> found;
    ExtremalMethod used = opts.method;

    auto by_census = [&]() {
        FrPoset poset = census_at(st.amb, st.er, opts.census);
        found = poset.elements[is_max ? poset.top() : poset.bottom()];
        used = ExtremalMethod::Census;
    };
    auto by_closed_form = [&]() -> bool {
        auto seq = recognize_simple(m);
        if (!seq || !seq->in_S()) return false;
        ClosedForm cf = is_max ? max_closed_form(*seq) : min_closed_form(*seq);
        found = diagonal_lattice(st.amb, cf.q);
        used = ExtremalMethod::ClosedForm;
        return true;
    };
    auto by_fixpoint = [&]() {
        FrClosure cl(st.amb, st.er);
        found = is_max ? cl.largest() : cl.smallest();
        used = ExtremalMethod::Fixpoint;
    };

    switch (opts.method) {
    case ExtremalMethod::Census:
        by_census();
        break;
    case ExtremalMethod::ClosedForm:
        if (!by_closed_form()) throw NotInS("closed form needs a simple module with sequence in S");
        break;
    case ExtremalMethod::Fixpoint:
        by_fixpoint();
        break;
    case ExtremalMethod::Auto:
        try {
            by_census();
        } catch (const CensusTooLarge&) {
            if (!by_closed_form()) by_fixpoint();
        }
        break;
    }

    if (opts.verify) {
        int t = window_bound(m.p(), st.er);
        FrClosure check(st.amb, st.er, 2 * default_level(m.p(), st.er, t));
        Lattice again = is_max ? check.largest() : check.smallest();
        if (!(again == *found))
            throw MathError(std::string(is_max ? "Max" : "Min") + ": " + method_name(used) +
                            " result differs from the fixpoint at doubled precision");
    }
    return finish(m, std::move(*found), used, is_max);
}

}  // namespace

FrClosure::FrClosure(ModulePtr m, int er, int level) : m_(std::move(m)), er_(er) {
    t_ = window_bound(m_->p(), er_);
    level_ = level > 0 ? level : default_level(m_->p(), er_, t_);
    a_ = m_->frob();
    if (a_.rows() == 0) {
        c_ = a_;
        return;
    }
    c_ = inverse_laurent(a_, level_).shifted(er_);
}

std::optional<Lattice> FrClosure::up(const Lattice& y) const {
    if (y.ceiling() < -t_) return std::nullopt;
    if (y.floor() > t_) throw DimensionMismatch("closure input does not contain u^t M");
    auto z = close(a_, c_, y.basis(), t_, m_->p());
    if (!z) return std::nullopt;
    return Lattice::from_canonical(m_, *z);
}

std::optional<Lattice> FrClosure::down(const Lattice& x) const {
    if (x.floor() > t_) return std::nullopt;
    if (x.ceiling() < -t_) throw DimensionMismatch("closure input is not inside u^{-t} M");
    // On the dual side the roles of A and u^{er} A^{-1} swap (transposed).
    auto z = close(c_.transpose(), a_.transpose(), dual_basis(x), t_, m_->p());
    if (!z) return std::nullopt;
    return Lattice::from_canonical(m_, undual_basis(*z));
}

Lattice FrClosure::largest() const {
    auto l = down(Lattice::standard(m_).scaled(-t_));
    if (!l) throw HeightViolation("no lattice of height er inside the window");
    return *l;
}

Lattice FrClosure::smallest() const {
    auto l = up(Lattice::standard(m_).scaled(t_));
    if (!l) throw HeightViolation("no lattice of height er inside the window");
    return *l;
}

int FrPoset::index_of(const Lattice& l) const {
    for (int i = 0; i < size(); ++i)
        if (elements[i] == l) return i;
    return -1;
}

int FrPoset::top() const {
    for (int j = 0; j < size(); ++j) {
        bool all = true;
        for (int i = 0; i < size() && all; ++i) all = leq[i][j];
        if (all) return j;
    }
    throw MathError("poset has no greatest element");
}

int FrPoset::bottom() const {
    for (int j = 0; j < size(); ++j) {
        bool all = true;
        for (int i = 0; i < size() && all; ++i) all = leq[j][i];
        if (all) return j;
    }
    throw MathError("poset has no smallest element");
}

int FrPoset::standard() const { return index_of(Lattice::standard(ambient)); }

int FrPoset::longest_chain() const {
    // elements are sorted by det valuation, so containers come first
    std::vector<int> len(size(), 1);
    int best = size() > 0 ? 1 : 0;
    for (int i = 0; i < size(); ++i) {
        for (int j = 0; j < i; ++j)
            if (leq[i][j] && i != j) len[i] = std::max(len[i], len[j] + 1);
        best = std::max(best, len[i]);
    }
    return best;
}

long long exhaustive_candidate_count(int d, int t, int q) {
    const long long cap = 1LL << 60;
    // sum over pivots of q^{sum_i (d-1-i)(a_i + t)}; the pivots are independent
    long long total = 1;
    for (int i = 0; i < d; ++i) {
        long long row = 0;
        for (int a = -t; a <= t; ++a) {
            row += sat_pow(q, (d - 1 - i) * (a + t), cap);
            if (row > cap) row = cap + 1;
        }
        total = sat_mul(total, row, cap);
    }
    return total;
}

FrPoset enumerate_fr(const PhiModule& m, const CensusOptions& opts) {
    if (!m.bounded()) throw UnboundedHeight("census needs a finite height r");
    require_valid(m);
    return census_at(std::make_shared<const PhiModule>(m), m.er(), opts);
}

std::string method_name(ExtremalMethod m) {
    switch (m) {
    case ExtremalMethod::Auto:
        return "auto";
    case ExtremalMethod::Census:
        return "census";
    case ExtremalMethod::ClosedForm:
        return "closed-form";
    case ExtremalMethod::Fixpoint:
        return "fixpoint";
    }
    return "?";
}

int effective_er(const PhiModule& m) {
    int h = frob_height(m);
    int t = window_bound(m.p(), h);
    int e = m.e();
    return e * ((h + t + e - 1) / e);
}

ExtremalResult max_r(const PhiModule& m, const ExtremalOptions& opts) { return extremal(m, opts, true); }
ExtremalResult min_r(const PhiModule& m, const ExtremalOptions& opts) { return extremal(m, opts, false); }

bool is_maximal(const PhiModule& m, const ExtremalOptions& opts) {
    if (m.rank() == 0) return true;
    auto r = max_r(m, opts);
    return r.lattice.basis() == SeriesMatrix::identity(m.field(), m.rank());
}

bool is_minimal(const PhiModule& m, const ExtremalOptions& opts) {
    if (m.rank() == 0) return true;
    auto r = min_r(m, opts);
    return r.lattice.basis() == SeriesMatrix::identity(m.field(), m.rank());
}

PhiModule module_of(const Lattice& l) {
    const PhiModule& m = l.ambient();
    return PhiModule(m.field(), m.e(), m.r(), phi_matrix_in(l));
}

namespace {

void require_maximal(const PhiMorphism& f) {
    if (!is_maximal(f.source())) throw NotMaximal("source is not maximal");
    if (!is_maximal(f.target())) throw NotMaximal("target is not maximal");
}

void require_minimal(const PhiMorphism& f) {
    if (!is_minimal(f.source())) throw NotMaximal("source is not minimal");
    if (!is_minimal(f.target())) throw NotMaximal("target is not minimal");
}

}  // namespace

PhiModule kernel_max(const PhiMorphism& f) {
    require_maximal(f);
    PhiModule k = kernel(f).module;
    if (!is_maximal(k)) throw MathError("kernel of a map of maximal objects is not maximal");
    return k;
}

PhiModule cokernel_max(const PhiMorphism& f) {
    require_maximal(f);
    return max_r(cokernel_mod_torsion(f).module).module;
}

PhiModule image_max(const PhiMorphism& f) {
    require_maximal(f);
    return max_r(image(f).module).module;
}

PhiModule kernel_min(const PhiMorphism& f) {
    require_minimal(f);
    return min_r(kernel(f).module).module;
}

PhiModule cokernel_min(const PhiMorphism& f) {
    require_minimal(f);
    PhiModule c = cokernel_mod_torsion(f).module;
    if (!is_minimal(c)) throw MathError("torsion-free cokernel of a map of minimal objects is not minimal");
    return c;
}

PhiMorphism LatticeMorphism::morphism() const {
    SeriesMatrix mat = target.inverse() * ambient_mat * source.basis();
    if (!mat.is_integral()) throw MathError("map does not send the source lattice into the target lattice");
    PhiMorphism f(module_of(source), module_of(target), mat);
    if (!f.commutes()) throw MathError("map does not commute with phi");
    return f;
}

LatticeMorphism sup_map(const std::vector<LatticeMorphism>& fs) {
    if (fs.empty()) throw DimensionMismatch("sup_map needs at least one map");
    LatticeMorphism out = fs.front();
    for (size_t i = 1; i < fs.size(); ++i) {
        if (!(fs[i].ambient_mat == out.ambient_mat))
            throw MathError("sup_map inputs are not restrictions of one ambient map");
        out.source = lattice_sum(out.source, fs[i].source);
        out.target = lattice_sum(out.target, fs[i].target);
    }
    out.morphism();
    return out;
}

std::string lattice_label(const Lattice& l) {
    std::ostringstream os;
    os << '(';
    auto div = l.elementary_divisors();
    for (size_t i = 0; i < div.size(); ++i) os << (i ? "," : "") << div[i];
    os << ')';
    return os.str();
}

std::string poset_dot(const FrPoset& p) {
    int top = p.top(), bottom = p.bottom(), std_idx = p.standard();
    std::ostringstream os;
    os << "digraph fr {\n  rankdir=BT;\n  node [shape=box];\n";
    for (int i = 0; i < p.size(); ++i) {
        std::string tags;
        if (i == top) tags += " max";
        if (i == bottom) tags += " min";
        if (i == std_idx) tags += " M";
        os << "  n" << i << " [label=\"" << lattice_label(p.elements[i]) << tags << "\"";
        if (i == top || i == bottom) os << ", peripheries=2";
        os << "];\n";
    }
    for (int i = 0; i < p.size(); ++i)
        for (int j : p.covers[i]) os << "  n" << i << " -> n" << j << ";\n";
    os << "}\n";
    return os.str();
}

std::string poset_csv(const FrPoset& p) {
    int top = p.top(), bottom = p.bottom(), std_idx = p.standard();
    std::ostringstream os;
    os << "index,divisors,det_valuation,in_fr,is_max,is_min,is_standard\n";
    for (int i = 0; i < p.size(); ++i) {
        std::string lab = lattice_label(p.elements[i]);
        std::replace(lab.begin(), lab.end(), ',', ' ');
        os << i << "," << lab << "," << p.elements[i].det_valuation() << ","
           << (lattice_in_fr(p.elements[i], p.er) ? 1 : 0) << "," << (i == top) << "," << (i == bottom) << ","
           << (i == std_idx) << "\n";
    }
    return os.str();
}

}  // namespace kisin
