#include <gtest/gtest.h>

#include "kisin/errors.hpp"
#include "kisin/hom.hpp"
#include "kisin/maxmin.hpp"
#include "kisin/morphism_ops.hpp"
#include "kisin/random.hpp"
#include "kisin/simple.hpp"
#include "test_helpers.hpp"

using namespace kisin;
using kisin::test_util::cyclic;
using kisin::test_util::M;

namespace {

ModulePtr ptr(const PhiModule& m) { return std::make_shared<const PhiModule>(m); }

Lattice diag_lattice(const ModulePtr& m, std::vector<int> ex) {
    return Lattice::from_canonical(m, SeriesMatrix::diag_u(m->field(), ex));
}

}  // namespace

TEST(Lattice, SumAndIntersectionOfDiagonalLattices) {
    auto f2 = Field::prime(2);
    auto m = ptr(cyclic(f2, 1, 3, {1, 1}));
    Lattice a = Lattice::standard(m);
    Lattice b = diag_lattice(m, {-1, 1});
    EXPECT_EQ(lattice_sum(a, b), diag_lattice(m, {-1, 0}));
    EXPECT_EQ(lattice_intersection(a, b), diag_lattice(m, {0, 1}));
    EXPECT_EQ(lattice_sum(b, b), b);
    EXPECT_EQ(lattice_intersection(b, b), b);
}

TEST(Lattice, IntersectionOfSkewLattices) {
    auto f3 = Field::prime(3);
    auto m = ptr(cyclic(f3, 1, 2, {0, 1}));
    Lattice a = Lattice::from_generators(m, M(f3, {{"u^-1", "0"}, {"u^-1", "u"}}));
    Lattice b = Lattice::from_generators(m, M(f3, {{"1", "u^-2"}, {"0", "1"}}));
    Lattice c = lattice_intersection(a, b);
    EXPECT_TRUE(a.contains(c));
    EXPECT_TRUE(b.contains(c));
    Lattice s = lattice_sum(a, b);
    EXPECT_TRUE(s.contains(a));
    EXPECT_TRUE(s.contains(b));
    // lengths add up: [s:a] = [b:c]
    EXPECT_EQ(a.det_valuation() - s.det_valuation(), c.det_valuation() - b.det_valuation());
}

TEST(Lattice, PhiMatrixExamples) {
    auto f3 = Field::prime(3);
    auto m = ptr(rank_one_module(f3, 1, 2, 2));
    EXPECT_EQ(phi_matrix_in(Lattice::standard(m)), m->frob());
    EXPECT_EQ(phi_matrix_in(Lattice::standard(m).scaled(-1)), M(f3, {{"1"}}));
    auto n = ptr(cyclic(f3, 1, 2, {1, 2}));
    EXPECT_EQ(phi_matrix_in(Lattice::standard(n).scaled(1)), n->frob().shifted(2));
}

TEST(Lattice, InFrExamples) {
    auto f3 = Field::prime(3);
    auto unit = ptr(rank_one_module(f3, 1, 1, 0));
    EXPECT_TRUE(lattice_in_fr(Lattice::standard(unit)));
    EXPECT_FALSE(lattice_in_fr(Lattice::standard(unit).scaled(-1)));
    auto s1 = ptr(rank_one_module(f3, 1, 2, 2));
    EXPECT_TRUE(lattice_in_fr(Lattice::standard(s1).scaled(-1)));
}

TEST(Lattice, DualLatticeRoundTrip) {
    auto f2 = Field::prime(2);
    auto m = ptr(cyclic(f2, 1, 3, {2, 1}));
    Lattice a = Lattice::from_generators(m, M(f2, {{"u^-1 + 1", "u"}, {"u^2", "1 + u"}}));
    Lattice back = a.dual_lattice(m).dual_lattice(m);
    EXPECT_EQ(back, a);
}

TEST(Census, RigidWhenErBelowPMinusOne) {
    auto f3 = Field::prime(3);
    Rng rng(7);
    for (int i = 0; i < 10; ++i) {
        PhiModule m = random_valid_module(rng, f3, 1, 1, 2);
        FrPoset p = enumerate_fr(m);
        ASSERT_EQ(p.size(), 1);
        EXPECT_EQ(p.standard(), 0);
    }
}

TEST(Census, CyclicTwoOnePoset) {
    auto f2 = Field::prime(2);
    PhiModule m = cyclic(f2, 1, 3, {2, 1});
    FrPoset p = enumerate_fr(m);
    EXPECT_GE(p.standard(), 0);
    EXPECT_EQ(p.elements[p.top()].basis(), SeriesMatrix::diag_u(f2, {-1, -1}));
    EXPECT_EQ(p.elements[p.bottom()].basis(), SeriesMatrix::diag_u(f2, {1, 1}));
    EXPECT_EQ(phi_matrix_in(p.elements[p.top()]), cyclic(f2, 1, 3, {1, 0}).frob());
    EXPECT_EQ(phi_matrix_in(p.elements[p.bottom()]), cyclic(f2, 1, 3, {3, 2}).frob());
    std::string dot = poset_dot(p);
    EXPECT_NE(dot.find("(-1,-1) max"), std::string::npos);
    EXPECT_NE(dot.find("(1,1) min"), std::string::npos);
}

TEST(Census, ScalarChain) {
    auto f2 = Field::prime(2);
    PhiModule m = rank_one_module(f2, 1, 1, 0);
    FrPoset p = enumerate_fr(m);
    ASSERT_EQ(p.size(), 2);
    EXPECT_EQ(p.longest_chain(), 2);
    EXPECT_EQ(p.elements[p.bottom()], Lattice::standard(p.ambient).scaled(1));
    std::string dot = poset_dot(p);
    EXPECT_NE(dot.find("n1 -> n0"), std::string::npos);

    // phi = 1 at p = 3, er = 4: u^v with 0 <= 2v <= 4
    FrPoset q = enumerate_fr(rank_one_module(Field::prime(3), 1, 4, 0));
    EXPECT_EQ(q.size(), 3);
}

TEST(Census, WalkMatchesExhaustive) {
    Rng rng(11);
    CensusOptions walk{CensusMethod::Walk};
    CensusOptions full{CensusMethod::Exhaustive};
    struct Case {
        int p, f, e, r, d;
    };
    for (Case c : {Case{2, 1, 1, 2, 2}, Case{2, 1, 2, 1, 2}, Case{3, 1, 1, 2, 2}, Case{2, 2, 1, 1, 2},
                   Case{2, 1, 1, 1, 3}, Case{3, 1, 1, 3, 1}}) {
        auto k = Field::make(FieldParams::standard(c.p, c.f));
        for (int i = 0; i < 4; ++i) {
            PhiModule m = random_valid_module(rng, k, c.e, c.r, c.d);
            FrPoset a = enumerate_fr(m, walk);
            FrPoset b = enumerate_fr(m, full);
            ASSERT_EQ(a.size(), b.size()) << m.frob();
            for (int j = 0; j < a.size(); ++j) EXPECT_EQ(a.elements[j], b.elements[j]);
            EXPECT_EQ(a.covers, b.covers);
        }
    }
}

TEST(Census, GuardThrows) {
    auto f4 = Field::make(FieldParams::standard(2, 2));
    CensusOptions full{CensusMethod::Exhaustive};
    full.max_candidates = 1000;
    EXPECT_THROW(enumerate_fr(cyclic(f4, 1, 4, {1, 0}), full), CensusTooLarge);
    EXPECT_THROW(enumerate_fr(cyclic(f4, 1, std::nullopt, {1, 0})), UnboundedHeight);
}

TEST(MaxMin, RankOneExamples) {
    auto f3 = Field::prime(3);
    auto r = max_r(rank_one_module(f3, 1, 2, 2));
    EXPECT_EQ(r.lattice.basis(), M(f3, {{"u^-1"}}));
    EXPECT_EQ(r.module.frob(), M(f3, {{"1"}}));
    EXPECT_TRUE(r.inclusion.commutes());

    auto mn = min_r(rank_one_module(Field::prime(2), 1, 1, 0));
    EXPECT_EQ(mn.lattice.basis(), M(Field::prime(2), {{"u"}}));
}

TEST(MaxMin, CyclicTwoOneAllMethods) {
    auto f2 = Field::prime(2);
    PhiModule m = cyclic(f2, 1, 3, {2, 1});
    for (auto method : {ExtremalMethod::Census, ExtremalMethod::ClosedForm, ExtremalMethod::Fixpoint}) {
        ExtremalOptions o;
        o.method = method;
        auto mx = max_r(m, o);
        auto mn = min_r(m, o);
        EXPECT_EQ(mx.module.frob(), cyclic(f2, 1, 3, {1, 0}).frob()) << method_name(method);
        EXPECT_EQ(mn.module.frob(), cyclic(f2, 1, 3, {3, 2}).frob()) << method_name(method);
        EXPECT_EQ(mx.method, method);
    }
}

TEST(MaxMin, MethodsAgreeOnRandomModules) {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        int p = i % 2 ? 2 : 3;
        PhiModule m = random_valid_module(rng, Field::prime(p), 1 + i % 2, 1 + (i / 2) % 2, 2);
        ExtremalOptions census, fix;
        census.method = ExtremalMethod::Census;
        fix.method = ExtremalMethod::Fixpoint;
        EXPECT_EQ(max_r(m, census).lattice, max_r(m, fix).lattice);
        EXPECT_EQ(min_r(m, census).lattice, min_r(m, fix).lattice);
    }
}

TEST(MaxMin, DualityExchange) {
    Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        PhiModule m = random_valid_module(rng, Field::prime(2), 1, 2, 2);
        auto mp = ptr(m);
        Lattice mn = min_r(m).lattice;
        PhiModule dm = dual(m);
        Lattice dmax = max_r(dm).lattice;
        EXPECT_EQ(dmax.dual_lattice(mp), mn.with_ambient(mp));
    }
}

TEST(MaxMin, UnboundedHeight) {
    auto f2 = Field::prime(2);
    auto r = max_r(rank_one_module(f2, 1, std::nullopt, 5));
    EXPECT_EQ(r.lattice.basis(), M(f2, {{"u^-5"}}));
    auto f3 = Field::prime(3);
    EXPECT_EQ(max_r(rank_one_module(f3, 1, std::nullopt, 5)).lattice.basis(), M(f3, {{"u^-2"}}));
    EXPECT_THROW(min_r(rank_one_module(f3, 1, std::nullopt, 5)), UnboundedHeight);
}

TEST(MaxMin, QuotientNotMaximal) {
    auto f2 = Field::prime(2);
    PhiModule m(f2, 1, 1, M(f2, {{"1", "u"}, {"0", "u"}}));
    PhiModule sub = rank_one_module(f2, 1, 1, 0);
    PhiMorphism incl(sub, m, M(f2, {{"1"}, {"0"}}));
    ASSERT_TRUE(incl.commutes());
    EXPECT_TRUE(is_maximal(m));
    EXPECT_TRUE(is_maximal(sub));
    CokernelResult q = cokernel_mod_torsion(incl);
    EXPECT_FALSE(is_maximal(q.module));
    PhiModule cm = cokernel_max(incl);
    EXPECT_EQ(cm.frob(), M(f2, {{"1"}}));
}

TEST(MaxMin, AbelianOperationsTrivialCases) {
    auto f2 = Field::prime(2);
    PhiModule m = cyclic(f2, 1, 3, {1, 0});
    ASSERT_TRUE(is_maximal(m));
    EXPECT_EQ(kernel_max(identity_morphism(m)).rank(), 0);
    EXPECT_EQ(image_max(zero_morphism(m, m)).rank(), 0);
    PhiModule mn = cyclic(f2, 1, 3, {3, 2});
    ASSERT_TRUE(is_minimal(mn));
    EXPECT_EQ(kernel_min(identity_morphism(mn)).rank(), 0);
    PhiModule z = zero_module(f2, 1, 3);
    EXPECT_EQ(cokernel_min(zero_morphism(z, mn)).frob(), mn.frob());
    EXPECT_THROW(kernel_max(identity_morphism(cyclic(f2, 1, 3, {2, 1}))), NotMaximal);
}

TEST(MaxMin, KernelMinDualityOnQuotientPair) {
    auto f2 = Field::prime(2);
    PhiModule m(f2, 1, 1, M(f2, {{"1", "u"}, {"0", "u"}}));
    PhiModule sub = rank_one_module(f2, 1, 1, 0);
    PhiMorphism incl(sub, m, M(f2, {{"1"}, {"0"}}));
    // dual of the inclusion is a surjection of minimal objects
    PhiMorphism dincl = dual(incl);
    ASSERT_TRUE(is_minimal(dincl.source()));
    ASSERT_TRUE(is_minimal(dincl.target()));
    PhiModule km = kernel_min(dincl);
    PhiModule expect = dual(cokernel_max(incl));
    EXPECT_EQ(find_isomorphism(km, expect).verdict, IsoVerdict::Isomorphic);
}

TEST(MaxMin, SupMap) {
    auto f2 = Field::prime(2);
    auto m = ptr(cyclic(f2, 1, 3, {2, 1}));
    FrPoset p = enumerate_fr(*m);
    SeriesMatrix id = SeriesMatrix::identity(f2, 2);
    // identity restricted to pairs (L, L') with L inside L'
    std::vector<LatticeMorphism> fs;
    for (int i = 0; i < p.size() && fs.size() < 3; ++i)
        for (int j = 0; j < p.size() && fs.size() < 3; ++j)
            if (i != j && p.leq[i][j]) fs.push_back({p.elements[i], p.elements[j], id});
    ASSERT_GE(fs.size(), 2u);
    LatticeMorphism one = sup_map({fs[0]});
    EXPECT_EQ(one.source, fs[0].source);
    LatticeMorphism same = sup_map({fs[0], fs[0]});
    EXPECT_EQ(same.target, fs[0].target);
    LatticeMorphism s = sup_map(fs);
    EXPECT_EQ(s.source, lattice_sum(lattice_sum(fs[0].source, fs[1].source), fs[2].source));
    EXPECT_TRUE(s.morphism().commutes());
}

TEST(MaxMin, ExtensionOfMaximalIsMaximal) {
    auto f3 = Field::prime(3);
    PhiModule a = cyclic(f3, 1, 2, {1});
    PhiModule b = cyclic(f3, 1, 2, {0});
    ASSERT_TRUE(is_maximal(a));
    ASSERT_TRUE(is_maximal(b));
    // phi = u at p = 2 is the excluded constant sequence p - 1
    EXPECT_FALSE(is_maximal(cyclic(Field::prime(2), 1, 2, {1})));
    PhiModule ext = extension_build(a, b, M(f3, {{"u + u^2"}}));
    EXPECT_TRUE(is_maximal(ext));
}

TEST(MaxMin, MinCounterExampleByDuality) {
    auto f2 = Field::prime(2);
    PhiModule m(f2, 1, 1, M(f2, {{"1", "u"}, {"0", "u"}}));
    PhiModule sub = rank_one_module(f2, 1, 1, 0);
    PhiMorphism incl(sub, m, M(f2, {{"1"}, {"0"}}));
    PhiModule q = cokernel_mod_torsion(incl).module;
    // the sub of the dual with quotient dual(sub) is dual(q)
    PhiMorphism dincl = dual(incl);
    ASSERT_TRUE(is_minimal(dual(m)));
    ASSERT_TRUE(is_minimal(dual(sub)));
    EXPECT_FALSE(is_minimal(dual(q)));
    EXPECT_EQ(kernel(dincl).module.rank(), 1);
    EXPECT_EQ(find_isomorphism(kernel(dincl).module, dual(q)).verdict, IsoVerdict::Isomorphic);
}
