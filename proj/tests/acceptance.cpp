// Acceptance run: one PASS/FAIL line per criterion.  With an argument N only
// criterion N runs.  Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "kisin/errors.hpp"
#include "kisin/hom.hpp"
#include "kisin/maxmin.hpp"
#include "kisin/morphism_ops.hpp"
#include "kisin/random.hpp"
#include "kisin/simple.hpp"
#include "test_helpers.hpp"

using namespace kisin;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        passed = false;
        if (failures.size() < 8) failures.push_back(what);
    }
};

bool is_identity(const Lattice& l) { return l.basis() == SeriesMatrix::identity(l.ambient().field(), l.rank()); }

ExtremalOptions census_opts() {
    ExtremalOptions o;
    o.method = ExtremalMethod::Census;
    return o;
}

struct CorpusEntry {
    PhiModule module;
    std::string label;
};

// 100 modules: p in {2,3}, e <= 2, er <= 4, d <= 2; p = 2 with er <= 2 also over F_4.
std::vector<CorpusEntry> main_corpus() {
    Rng rng(1009);
    struct Shape {
        int p, f, e, r;
    };
    std::vector<Shape> shapes;
    for (int p : {2, 3})
        for (int e = 1; e <= 2; ++e)
            for (int r = 1; e * r <= 4; ++r) {
                shapes.push_back({p, 1, e, r});
                if (p == 2 && e * r <= 2) shapes.push_back({p, 2, e, r});
            }
    std::vector<CorpusEntry> out;
    for (int i = 0; i < 100; ++i) {
        Shape s = shapes[i % shapes.size()];
        auto k = Field::make(FieldParams::standard(s.p, s.f));
        int d = 1 + (i / static_cast<int>(shapes.size())) % 2;
        if (i % 5 == 4) d = 2;
        std::ostringstream label;
        label << "#" << i << " p=" << s.p << " f=" << s.f << " e=" << s.e << " r=" << s.r << " d=" << d;
        out.push_back({random_valid_module(rng, k, s.e, s.r, d), label.str()});
    }
    return out;
}

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> c = main_corpus();
    return c;
}

Outcome rigidity() {
    Outcome o;
    Rng rng(2001);
    int ok = 0;
    for (int i = 0; i < 200; ++i) {
        int p = i % 2 ? 3 : 5;
        PhiModule m = random_valid_module(rng, Field::prime(p), 1, 1, 1 + i % 3);
        bool same = is_identity(max_r(m).lattice) && is_identity(min_r(m).lattice) && enumerate_fr(m).size() == 1;
        ok += same;
        o.require(same, "module " + std::to_string(i) + " moved: " + m.frob().to_string());
    }
    o.detail = std::to_string(ok) + "/200 modules with Max = Min = M";
    return o;
}

Outcome idempotence() {
    Outcome o;
    int ok = 0;
    for (const auto& [m, label] : corpus()) {
        auto mx = max_r(m, census_opts());
        auto mn = min_r(m, census_opts());
        bool a = is_identity(max_r(mx.module, census_opts()).lattice);
        bool b = is_identity(min_r(mn.module, census_opts()).lattice);
        o.require(a, label + ": Max(Max M) != Max M");
        o.require(b, label + ": Min(Min M) != Min M");
        ok += a && b;
    }
    o.detail = std::to_string(ok) + "/100 modules with Max and Min idempotent";
    return o;
}

Outcome duality() {
    Outcome o;
    int ok = 0;
    for (const auto& [m, label] : corpus()) {
        auto mp = std::make_shared<const PhiModule>(m);
        Lattice direct = min_r(m, census_opts()).lattice.with_ambient(mp);
        Lattice via = max_r(dual(m), census_opts()).lattice.dual_lattice(mp);
        bool ex = direct == via;
        bool dd = find_isomorphism(dual(dual(m)), m).verdict == IsoVerdict::Isomorphic;
        o.require(ex, label + ": Min differs from the dual of Max of the dual");
        o.require(dd, label + ": no isomorphism to the double dual");
        ok += ex && dd;
    }
    o.detail = std::to_string(ok) + "/100 modules with Min = dual Max dual and M isomorphic to its double dual";
    return o;
}

Outcome closed_form() {
    Outcome o;
    int total = 0, ok = 0;
    for (int p : {2, 3})
        for (int r = 1; r <= 3; ++r)
            for (int d = 1; d <= 3; ++d)
                for (const auto& s : all_sequences(p, 1, 1, r, d, false)) {
                    if (!s.in_S()) continue;
                    ++total;
                    PhiModule m = build_module(s);
                    ClosedForm cmax = max_closed_form(s);
                    ClosedForm cmin = min_closed_form(s);
                    bool rel = true;
                    for (int i = 0; i < s.d(); ++i)
                        rel = rel && p * cmax.q[i] + cmax.m.n(i) == cmax.q[(i + 1) % s.d()] + s.n(i);
                    auto mx = max_r(m, census_opts());
                    auto mn = min_r(m, census_opts());
                    bool a = mx.module.frob() == build_module(cmax.m).frob();
                    bool b = mn.module.frob() == build_module(cmin.m).frob();
                    std::string tag = "p=" + std::to_string(p) + " r=" + std::to_string(r) + " n=" + s.to_string();
                    o.require(rel, tag + ": relation fails");
                    o.require(a, tag + ": census Max " + mx.module.frob().to_string());
                    o.require(b, tag + ": census Min " + mn.module.frob().to_string());
                    ok += rel && a && b;
                }
    SimpleSeq w(2, 1, 1, 3, {2, 1});
    PhiModule m = build_module(w);
    bool wmax = max_r(m, census_opts()).module.frob() == build_module(w.with_period({1, 0})).frob();
    bool wmin = min_r(m, census_opts()).module.frob() == build_module(w.with_period({3, 2})).frob();
    o.require(wmax, "Max(M(2,1)) != M(1,0)");
    o.require(wmin, "Min(M(2,1)) != M(3,2)");
    o.detail = std::to_string(ok) + "/" + std::to_string(total) +
               " sequences in S agree with the census; Max(M(2,1)) = M(1,0): " + (wmax ? "yes" : "no") +
               ", Min(M(2,1)) = M(3,2): " + (wmin ? "yes" : "no");
    return o;
}

SeriesMatrix mono2(const FieldPtr& k, int a11, int a12, int a21, int a22) {
    auto m = [&](int x) { return x < 0 ? USeries::zero(k) : USeries::u_power(k, x); };
    return SeriesMatrix::from_rows(k, {{m(a11), m(a12)}, {m(a21), m(a22)}});
}

Outcome counter_examples() {
    Outcome o;
    // (a) phi(e1) = e1, phi(e2) = u e1 + u^{p-1} e2 and its sub <e1>
    bool a_ok = true;
    for (int p : {2, 3, 5}) {
        auto k = Field::prime(p);
        int r = p - 1;
        PhiModule total(k, 1, r, mono2(k, 0, 1, -1, p - 1));
        PhiModule sub = rank_one_module(k, 1, r, 0);
        PhiMorphism incl(sub, total, SeriesMatrix::from_rows(k, {{USeries::one(k)}, {USeries::zero(k)}}));
        PhiModule quot = cokernel_mod_torsion(incl).module;
        auto mq = max_r(quot);
        bool ok = incl.commutes() && is_maximal(sub) && is_maximal(total) && !is_maximal(quot) &&
                  mq.module.frob() == SeriesMatrix::identity(k, 1) && mq.lattice.basis().at(0, 0) == USeries::u_power(k, -1);
        o.require(ok, "(a) fails at p=" + std::to_string(p));
        a_ok = a_ok && ok;
    }
    // (b) phi(e1) = u e1 + u^{er} e2, phi(e2) = u^p e1
    const int p = 3, e = 2, r = 1;
    auto k = Field::prime(p);
    PhiModule m(k, e, r, mono2(k, 1, p, e * r, -1));
    ValidationReport v = validate(m);
    bool at_r = v.ok() && is_maximal(m);
    std::ostringstream div;
    for (size_t i = 0; i < v.divisors.size(); ++i) div << (i ? "," : "") << v.divisors[i];
    o.require(at_r, "(b) not maximal at r: " + std::string(v.ok() ? "a larger lattice exists" : "not an object of height r, divisors (" + div.str() + ") exceed er = " + std::to_string(e * r)));
    PhiModule m1 = m.with_height(r + 1);
    bool at_r1 = validate(m1).ok() && !is_maximal(m1) && max_r(m1).lattice.basis() == SeriesMatrix::diag_u(k, {0, -1});
    o.require(at_r1, "(b) at r+1: Max basis is not {e1, u^-1 e2}");
    o.detail = std::string("(a) ") + (a_ok ? "reproduced" : "failed") + "; (b) maximal at r: " + (at_r ? "yes" : "no") +
               ", non-maximal at r+1 with Max basis {e1, u^-1 e2}: " + (at_r1 ? "yes" : "no");
    return o;
}

Outcome poset_structure() {
    Outcome o;
    int posets = 0, pairs = 0, longest = 0;
    for (const auto& [m, label] : corpus()) {
        FrPoset p = enumerate_fr(m);
        ++posets;
        int bound = 1 + m.rank() * window_bound(m.p(), m.er());
        int len = p.longest_chain();
        longest = std::max(longest, len);
        o.require(len <= bound, label + ": chain of length " + std::to_string(len) + " exceeds " + std::to_string(bound));
        for (int a = 0; a < p.size(); ++a)
            for (int b = a; b < p.size(); ++b) {
                ++pairs;
                Lattice s = lattice_sum(p.elements[a], p.elements[b]);
                Lattice in = lattice_intersection(p.elements[a], p.elements[b]);
                o.require(lattice_in_fr(s) && lattice_in_fr(in), label + ": sup or inf outside F^r");
                int si = p.index_of(s), ii = p.index_of(in);
                o.require(si >= 0 && ii >= 0, label + ": sup or inf missing from the census");
                if (si < 0 || ii < 0) continue;
                for (int c = 0; c < p.size(); ++c) {
                    if (p.leq[a][c] && p.leq[b][c]) o.require(p.leq[si][c], label + ": sup is not least");
                    if (p.leq[c][a] && p.leq[c][b]) o.require(p.leq[c][ii], label + ": inf is not greatest");
                }
                o.require(p.leq[a][si] && p.leq[b][si] && p.leq[ii][a] && p.leq[ii][b], label + ": bounds fail");
            }
    }
    o.detail = std::to_string(posets) + " posets, " + std::to_string(pairs) + " pairs, longest chain " +
               std::to_string(longest);
    return o;
}

Outcome extensions() {
    Outcome o;
    Rng rng(3003);
    int built = 0, maximal = 0, attempts = 0;
    while (built < 50 && attempts < 2000) {
        ++attempts;
        int p = attempts % 2 ? 2 : 3;
        int e = 1 + attempts % 3 / 2;
        int r = e == 1 ? 2 : 1;
        auto k = Field::prime(p);
        PhiModule a = max_r(random_valid_module(rng, k, e, r, 1 + attempts % 2)).module;
        PhiModule b = max_r(random_valid_module(rng, k, e, r, 1)).module;
        SeriesMatrix c(k, a.rank(), b.rank());
        for (int i = 0; i < a.rank(); ++i)
            for (int j = 0; j < b.rank(); ++j) c.at(i, j) = random_poly(rng, k, 3);
        PhiModule ext;
        try {
            ext = extension_build(a, b, c);
        } catch (const HeightViolation&) {
            continue;
        }
        ++built;
        bool mx = is_maximal(ext, census_opts());
        maximal += mx;
        o.require(mx, "extension not maximal: " + ext.frob().to_string());
    }
    o.require(built == 50, "only " + std::to_string(built) + " height-passing extensions built");
    o.detail = std::to_string(maximal) + "/" + std::to_string(built) + " extensions maximal (" +
               std::to_string(attempts) + " attempts)";
    return o;
}

Outcome classification() {
    Outcome o;
    int total = 0, ok = 0;
    for (int p : {2, 3})
        for (int e = 1; e <= 2; ++e)
            for (int r = 1; e * r <= 3; ++r)
                for (int d = 1; d <= 3; ++d)
                    for (const auto& s : all_sequences(p, 1, e, r, d, false)) {
                        if (!s.in_S()) continue;
                        ++total;
                        PhiModule m = build_module(s);
                        bool a = is_maximal(m, census_opts()) == s.in_Smax();
                        bool b = is_minimal(m, census_opts()) == s.in_Smin();
                        o.require(a && b, "p=" + std::to_string(p) + " e=" + std::to_string(e) + " r=" +
                                              std::to_string(r) + " n=" + s.to_string());
                        ok += a && b;
                    }
    o.detail = std::to_string(ok) + "/" + std::to_string(total) + " sequences classified correctly";
    return o;
}

Outcome frob_equation() {
    Outcome o;
    int cases = 0, seqs = 0;
    for (int p : {2, 3})
        for (int f : {1, 2})
            for (int d = 1; d <= 2; ++d)
                for (const auto& s : all_sequences(p, f, 1, 10, d, false)) {
                    auto sv = s.s();
                    long long smax = *std::max_element(sv.begin(), sv.end());
                    if (!s.in_S() || smax > 10) continue;
                    ++seqs;
                    int bound = static_cast<int>(2 * smax);
                    for (bool laurent : {false, true})
                        for (long long ex = laurent ? -bound : 0; ex <= bound; ++ex) {
                            ++cases;
                            auto sol = solve_frob_eq(s, ex, laurent);
                            auto bf = test_util::brute_force_frob(s, ex, laurent, bound);
                            std::string tag = s.to_string() + " p=" + std::to_string(p) + " f=" + std::to_string(f) +
                                              " exp=" + std::to_string(ex) + (laurent ? " laurent" : "");
                            // the scan only sees valuations in [-bound, bound]
                            if (!sol || sol->v < -bound || sol->v > bound) {
                                o.require(bf.empty(), tag + ": brute force finds solutions");
                                continue;
                            }
                            long long q = 1;
                            for (int i = 0; i < sol->scalar_degree; ++i) q *= p;
                            o.require(static_cast<long long>(bf.size()) == q - 1, tag + ": scalar count differs");
                            for (const auto& x : bf)
                                o.require(x.index == sol->index && x.v == sol->v, tag + ": solution position differs");
                        }
                }
    o.detail = std::to_string(seqs) + " sequences, " + std::to_string(cases) + " equations agree with brute force";
    return o;
}

Outcome hom_sanity() {
    Outcome o;
    int pairs = 0;
    const auto& c = corpus();
    for (size_t i = 0; i < c.size(); ++i) {
        const PhiModule& a = c[i].module;
        std::vector<PhiModule> targets = {a, max_r(a).module};
        for (size_t j = i + 1; j < c.size() && targets.size() < 3; ++j)
            if (c[j].module.same_category(a)) targets.push_back(c[j].module);
        for (const auto& b : targets) {
            ++pairs;
            int f = a.field()->degree();
            HomOptions lo;
            lo.precision = working_precision(a) + working_precision(b);
            HomOptions hi = lo;
            hi.precision *= 2;
            auto h1 = hom_space(a, b, lo);
            auto h2 = hom_space(a, b, hi);
            int dim = static_cast<int>(h1.size());
            o.require(dim <= a.rank() * b.rank() * f, c[i].label + ": hom dimension above d d' f");
            o.require(h2.size() == h1.size(), c[i].label + ": hom dimension changes under doubling");
            for (size_t t = 0; t < h1.size() && t < h2.size(); ++t)
                o.require(h1[t].mat().agrees_with(h2[t].mat()), c[i].label + ": hom basis changes under doubling");
        }
    }
    int f2 = static_cast<int>(hom_space(build_module(SimpleSeq(2, 1, 1, 3, {1, 0})),
                                        build_module(SimpleSeq(2, 1, 1, 3, {1, 0}))).size());
    int f4 = static_cast<int>(hom_space(build_module(SimpleSeq(2, 2, 1, 3, {1, 0})),
                                        build_module(SimpleSeq(2, 2, 1, 3, {1, 0}))).size());
    o.require(f2 == 1, "End M(1,0) over F_2 has dimension " + std::to_string(f2));
    o.require(f4 == 2, "End M(1,0) over F_4 has dimension " + std::to_string(f4));
    o.detail = std::to_string(pairs) + " pairs within bound and stable; End M(1,0): " + std::to_string(f2) +
               " over F_2, " + std::to_string(f4) + " over F_4";
    return o;
}

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> all = {
        {1, "rigidity for er < p-1", 10, rigidity},
        {2, "idempotence of Max and Min", 120, idempotence},
        {3, "duality exchange", 120, duality},
        {4, "closed form against census", 300, closed_form},
        {5, "counter-examples", 10, counter_examples},
        {6, "poset structure and chain bound", 120, poset_structure},
        {7, "extension stability", 60, extensions},
        {8, "maximality classification", 60, classification},
        {9, "Frobenius equation oracle", 30, frob_equation},
        {10, "hom-space sanity", 60, hom_sanity},
    };
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool all_ok = true;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs < c.budget_s;
        bool ok = o.passed && in_time;
        all_ok = all_ok && ok;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", secs, c.budget_s);
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
                  << timing << "]\n";
        for (const auto& f : o.failures) std::cout << "     " << f << "\n";
        if (!in_time) std::cout << "     over the time budget\n";
    }
    return all_ok ? 0 : 1;
}
