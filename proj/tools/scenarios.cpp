#include "scenarios.hpp"

#include <sstream>

#include "kisin/errors.hpp"
#include "kisin/hom.hpp"
#include "kisin/maxmin.hpp"
#include "kisin/morphism_ops.hpp"
#include "kisin/random.hpp"
#include "kisin/simple.hpp"

namespace kisin::cli {

bool ScenarioReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return !checks.empty();
}

namespace {

std::string yesno(bool b) { return b ? "yes" : "no"; }

void expect(ScenarioReport& rep, const std::string& name, const std::string& expected, const std::string& actual) {
    rep.checks.push_back({name, expected, actual, expected == actual});
}

void expect_bool(ScenarioReport& rep, const std::string& name, bool expected, bool actual) {
    expect(rep, name, yesno(expected), yesno(actual));
}

std::string seq_text(const std::vector<int>& v) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

SeriesMatrix mono2(const FieldPtr& k, int a11, int a12, int a21, int a22) {
    auto m = [&](int x) { return x < 0 ? USeries::zero(k) : USeries::u_power(k, x); };
    return SeriesMatrix::from_rows(k, {{m(a11), m(a12)}, {m(a21), m(a22)}});
}

ScenarioReport quotient_not_maximal() {
    ScenarioReport rep{"quotient-not-maximal", {}, {}};
    for (int p : {2, 3, 5}) {
        auto k = Field::prime(p);
        int r = p - 1;  // e r >= p - 1 is needed for the total space to be of height r
        PhiModule total(k, 1, r, mono2(k, 0, 1, -1, p - 1));
        PhiModule sub = rank_one_module(k, 1, r, 0);
        PhiMorphism incl(sub, total, SeriesMatrix::from_rows(k, {{USeries::one(k)}, {USeries::zero(k)}}));
        std::string tag = "p=" + std::to_string(p) + ": ";
        expect_bool(rep, tag + "inclusion commutes", true, incl.commutes());
        expect_bool(rep, tag + "sub maximal", true, is_maximal(sub));
        expect_bool(rep, tag + "total maximal", true, is_maximal(total));
        CokernelResult q = cokernel_mod_torsion(incl);
        expect(rep, tag + "quotient Frobenius", USeries::u_power(k, p - 1).to_string(), q.module.frob().at(0, 0).to_string());
        expect_bool(rep, tag + "quotient maximal", false, is_maximal(q.module));
        auto mq = max_r(q.module);
        expect(rep, tag + "Max(quotient) Frobenius", "1", mq.module.frob().at(0, 0).to_string());
        expect(rep, tag + "Max(quotient) basis", "u^-1", mq.lattice.basis().at(0, 0).to_string());
        expect(rep, tag + "cokernel in Max", "1", cokernel_max(incl).frob().at(0, 0).to_string());
    }
    return rep;
}

ScenarioReport max_r_vs_r_plus_1() {
    ScenarioReport rep{"max-r-vs-r-plus-1", {}, {}};
    // phi(e1) = u e1 + u^{er} e2, phi(e2) = u^p e1, at p = 3, e = 2, r = 1
    const int p = 3, e = 2, r = 1, er = e * r;
    auto k = Field::prime(p);
    PhiModule m(k, e, r, mono2(k, 1, p, er, -1));
    ValidationReport v = validate(m);
    std::ostringstream div;
    div << seq_text(v.divisors);
    rep.notes.push_back("Smith divisors of the Frobenius: " + div.str() + ", er = " + std::to_string(er));
    expect_bool(rep, "object of height r", true, v.ok());
    if (v.ok())
        expect_bool(rep, "maximal at height r", true, is_maximal(m));
    else
        rep.checks.push_back({"maximal at height r", "yes", "undefined (not an object of height r)", false});
    PhiModule m1 = m.with_height(r + 1);
    expect_bool(rep, "object of height r+1", true, validate(m1).ok());
    expect_bool(rep, "maximal at height r+1", false, is_maximal(m1));
    auto mx = max_r(m1);
    expect(rep, "Max basis at height r+1", "[[1, 0], [0, u^-1]]", mx.lattice.basis().to_string());
    return rep;
}

ScenarioReport rigidity() {
    ScenarioReport rep{"rigidity-er-lt-p-1", {}, {}};
    Rng rng(20240501);
    auto k = Field::prime(5);
    int singletons = 0, fixed = 0;
    const int n = 50;
    for (int i = 0; i < n; ++i) {
        PhiModule m = random_valid_module(rng, k, 1, 2, 1 + i % 3);
        FrPoset poset = enumerate_fr(m);
        if (poset.size() == 1) ++singletons;
        SeriesMatrix id = SeriesMatrix::identity(k, m.rank());
        if (max_r(m).lattice.basis() == id && min_r(m).lattice.basis() == id) ++fixed;
    }
    expect(rep, "singleton posets (p=5, e=1, r=2)", std::to_string(n), std::to_string(singletons));
    expect(rep, "Max = Min = M", std::to_string(n), std::to_string(fixed));
    return rep;
}

ScenarioReport compmax_table() {
    ScenarioReport rep{"compmax-table", {}, {}};
    int total = 0, agree_max = 0, agree_min = 0, relation = 0, classified = 0;
    ExtremalOptions census;
    census.method = ExtremalMethod::Census;
    census.verify = false;
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
                    relation += rel;
                    auto mx = max_r(m, census);
                    auto mn = min_r(m, census);
                    agree_max += mx.module.frob() == build_module(cmax.m).frob();
                    agree_min += mn.module.frob() == build_module(cmin.m).frob();
                    bool is_max = mx.lattice.basis() == SeriesMatrix::identity(m.field(), m.rank());
                    bool is_min = mn.lattice.basis() == SeriesMatrix::identity(m.field(), m.rank());
                    classified += is_max == s.in_Smax() && is_min == s.in_Smin();
                }
    rep.notes.push_back("sequences in S with d <= 3, p in {2,3}, e = 1, r <= 3: " + std::to_string(total));
    expect(rep, "closed-form Max equals census Max", std::to_string(total), std::to_string(agree_max));
    expect(rep, "closed-form Min equals census Min", std::to_string(total), std::to_string(agree_min));
    expect(rep, "relation p q_i + m_i = q_{i+1} + n_i", std::to_string(total), std::to_string(relation));
    expect(rep, "maximal iff in S_max, minimal iff in S_min", std::to_string(total), std::to_string(classified));
    SimpleSeq w(2, 1, 1, 3, {2, 1});
    expect(rep, "Max(M(2,1)) at p=2, r=3", "(1,0)", max_closed_form(w).m.to_string());
    expect(rep, "Min(M(2,1)) at p=2, r=3", "(3,2)", min_closed_form(w).m.to_string());
    return rep;
}

ScenarioReport duality_exchange() {
    ScenarioReport rep{"duality-exchange", {}, {}};
    Rng rng(77);
    int n = 0, exch = 0, dd = 0;
    for (int p : {2, 3})
        for (int e = 1; e <= 2; ++e)
            for (int r = 1; e * r <= 4; ++r)
                for (int i = 0; i < 3; ++i) {
                    PhiModule m = random_valid_module(rng, Field::prime(p), e, r, 1 + i % 2);
                    auto mp = std::make_shared<const PhiModule>(m);
                    ++n;
                    Lattice direct = min_r(m).lattice.with_ambient(mp);
                    Lattice via = max_r(dual(m)).lattice.dual_lattice(mp);
                    exch += direct == via;
                    dd += find_isomorphism(dual(dual(m)), m).verdict == IsoVerdict::Isomorphic;
                }
    expect(rep, "min_r(M) = dual(max_r(dual M)) in ambient coordinates", std::to_string(n), std::to_string(exch));
    expect(rep, "double dual isomorphic to M", std::to_string(n), std::to_string(dd));
    return rep;
}

ScenarioReport extension_stability() {
    ScenarioReport rep{"extension-stability", {}, {}};
    Rng rng(4242);
    int built = 0, maximal = 0, attempts = 0;
    while (built < 20 && attempts < 400) {
        ++attempts;
        int p = attempts % 2 ? 2 : 3;
        auto k = Field::prime(p);
        int e = 1, r = 2;
        PhiModule a = max_r(random_valid_module(rng, k, e, r, 1)).module;
        PhiModule b = max_r(random_valid_module(rng, k, e, r, 1 + attempts % 2)).module;
        SeriesMatrix c(k, a.rank(), b.rank());
        for (int i = 0; i < a.rank(); ++i)
            for (int j = 0; j < b.rank(); ++j) c.at(i, j) = random_poly(rng, k, 2);
        PhiModule ext;
        try {
            ext = extension_build(a, b, c);
        } catch (const HeightViolation&) {
            continue;
        }
        ++built;
        maximal += is_maximal(ext);
    }
    expect(rep, "height-passing extensions of maximal by maximal that are maximal", std::to_string(built),
           std::to_string(maximal));
    expect_bool(rep, "enough extensions built", true, built == 20);
    return rep;
}

ScenarioReport chain_bound_audit() {
    ScenarioReport rep{"chain-bound-audit", {}, {}};
    Rng rng(31337);
    int posets = 0, within = 0, closed = 0, longest = 0;
    for (int p : {2, 3})
        for (int r = 1; r <= 3; ++r)
            for (int d = 1; d <= 2; ++d)
                for (int i = 0; i < 2; ++i) {
                    PhiModule m = random_valid_module(rng, Field::prime(p), 1, r, d);
                    FrPoset poset = enumerate_fr(m);
                    ++posets;
                    int bound = 1 + d * ((r + 1) / (p - 1));
                    int len = poset.longest_chain();
                    longest = std::max(longest, len);
                    within += len <= bound;
                    bool ok = true;
                    for (int a = 0; a < poset.size() && ok; ++a)
                        for (int b = a + 1; b < poset.size() && ok; ++b) {
                            ok = poset.index_of(lattice_sum(poset.elements[a], poset.elements[b])) >= 0 &&
                                 poset.index_of(lattice_intersection(poset.elements[a], poset.elements[b])) >= 0;
                        }
                    closed += ok;
                }
    rep.notes.push_back("longest chain seen: " + std::to_string(longest));
    expect(rep, "chains within 1 + d floor((er+1)/(p-1))", std::to_string(posets), std::to_string(within));
    expect(rep, "posets closed under sum and intersection", std::to_string(posets), std::to_string(closed));
    return rep;
}

}  // namespace

const std::vector<Scenario>& scenario_registry() {
    static const std::vector<Scenario> reg = {
        {"quotient-not-maximal", "a quotient of maximal objects that is not maximal", quotient_not_maximal},
        {"max-r-vs-r-plus-1", "a module maximal at height r but not at r+1", max_r_vs_r_plus_1},
        {"rigidity-er-lt-p-1", "er < p-1 forces Max = Min = M (50 random modules)", rigidity},
        {"compmax-table", "closed-form Max/Min against the census for simple modules", compmax_table},
        {"duality-exchange", "Min through duality against the direct Min", duality_exchange},
        {"extension-stability", "extensions of maximal objects stay maximal", extension_stability},
        {"chain-bound-audit", "chain lengths and sup/inf closure of censused posets", chain_bound_audit},
    };
    return reg;
}

const Scenario* find_scenario(const std::string& name) {
    for (const auto& s : scenario_registry())
        if (s.name == name) return &s;
    return nullptr;
}

}  // namespace kisin::cli
