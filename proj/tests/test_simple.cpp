#include <gtest/gtest.h>

#include <numeric>

#include "kisin/errors.hpp"
#include "kisin/hom.hpp"
#include "kisin/maxmin.hpp"
#include "kisin/simple.hpp"
#include "test_helpers.hpp"

using namespace kisin;
using kisin::test_util::brute_force_frob;
using kisin::test_util::M;

namespace {

SimpleSeq seq(std::vector<int> n, int p = 2, int r = 3, int e = 1, int f = 1) { return SimpleSeq(p, f, e, r, n); }

}  // namespace

TEST(Simple, BuildModule) {
    auto k = Field::prime(2);
    EXPECT_EQ(build_module(seq({2, 1})).frob(), M(k, {{"0", "u"}, {"u^2", "0"}}));
    EXPECT_EQ(build_module(seq({0})).frob(), M(k, {{"1"}}));
    EXPECT_EQ(build_module(seq({2}, 3, 2)).frob(), M(Field::prime(3), {{"u^2"}}));
    EXPECT_EQ(build_module(seq({1, 1})).rank(), 1);
}

TEST(Simple, Invariants) {
    auto inv = seq_invariants(seq({2, 1}));
    EXPECT_EQ(inv.d, 2);
    EXPECT_EQ(inv.s, (std::vector<long long>{5, 4}));
    EXPECT_EQ(inv.t, (std::vector<Rational>{Rational(2, 3), Rational(1, 3)}));
    EXPECT_TRUE(inv.in_S);
    EXPECT_FALSE(inv.in_Smax);
    EXPECT_FALSE(inv.in_Smin);
    EXPECT_FALSE(seq({1}).in_Smax());
    EXPECT_FALSE(seq({2, 2, 2}, 3).in_Smax());
    EXPECT_TRUE(seq({1, 0}).in_Smax());
    EXPECT_TRUE(seq({3, 2}).in_Smin());
    EXPECT_FALSE(seq({3, 0}).in_S());
    EXPECT_THROW(seq({4}), HeightViolation);
}

TEST(Simple, Isomorphism) {
    EXPECT_EQ(iso_simple(seq({2, 1}), seq({1, 2})), 1);
    EXPECT_EQ(iso_simple(seq({2, 1}), seq({2, 1})), 0);
    EXPECT_EQ(iso_simple(seq({2, 1}), seq({3, 0})), std::nullopt);
    EXPECT_THROW(iso_simple(seq({2, 1}), seq({2, 1}, 3)), ParameterMismatch);
}

TEST(Simple, FrobEquation) {
    auto a = solve_frob_eq(seq({0}), 0, false);
    ASSERT_TRUE(a);
    EXPECT_EQ(a->index, 0);
    EXPECT_EQ(a->v, 0);
    EXPECT_EQ(a->scalar_degree, 1);
    auto b = solve_frob_eq(seq({1, 0}, 2, 3, 1, 2), 2, false);
    ASSERT_TRUE(b);
    EXPECT_EQ(b->index, 0);
    EXPECT_EQ(b->v, 0);
    EXPECT_EQ(b->scalar_degree, 2);
    EXPECT_FALSE(solve_frob_eq(seq({1, 0}), 0, false));
    EXPECT_FALSE(solve_frob_eq(seq({1, 0}), 0, true));
    auto c = solve_frob_eq(seq({1, 0}), -1, true);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->index, 0);
    EXPECT_EQ(c->v, -1);
}

TEST(Simple, FrobEquationMatchesBruteForce) {
    for (int f : {1, 2})
        for (auto n : {std::vector<int>{1, 0}, {2, 1}, {0, 2}, {1}})
            for (bool laurent : {false, true})
                for (long long ex = -4; ex <= 10; ++ex) {
                    SimpleSeq s = seq(n, 2, 3, 1, f);
                    auto sol = solve_frob_eq(s, ex, laurent);
                    auto bf = brute_force_frob(s, ex, laurent, 20);
                    if (!sol) {
                        EXPECT_TRUE(bf.empty());
                        continue;
                    }
                    long long expect = (1LL << sol->scalar_degree) - 1;
                    ASSERT_EQ(static_cast<long long>(bf.size()), expect) << s.to_string() << " " << ex;
                    for (auto& x : bf) {
                        EXPECT_EQ(x.index, sol->index);
                        EXPECT_EQ(x.v, sol->v);
                    }
                }
}

TEST(Simple, ClosedForms) {
    auto a = max_closed_form(seq({2, 1}));
    EXPECT_EQ(a.m.period(), (std::vector<int>{1, 0}));
    EXPECT_EQ(a.q, (std::vector<long long>{1, 1}));
    auto b = max_closed_form(seq({1, 2}));
    EXPECT_EQ(b.m.period(), (std::vector<int>{0, 1}));
    EXPECT_EQ(b.q, (std::vector<long long>{1, 1}));
    auto c = max_closed_form(seq({1, 0}));
    EXPECT_EQ(c.m.period(), (std::vector<int>{1, 0}));
    EXPECT_EQ(c.q, (std::vector<long long>{0, 0}));
    EXPECT_EQ(min_closed_form(seq({2, 1})).m.period(), (std::vector<int>{3, 2}));
    EXPECT_EQ(min_closed_form(seq({3, 2})).m.period(), (std::vector<int>{3, 2}));
    EXPECT_EQ(min_closed_form(seq({1}, 3, 3)).m.period(), (std::vector<int>{3}));
    EXPECT_THROW(max_closed_form(seq({3, 0})), NotInS);
}

TEST(Simple, MaxClassAndWeights) {
    EXPECT_TRUE(same_max_class(seq({2, 1}), seq({3, 2})));
    EXPECT_TRUE(same_max_class(seq({2, 1}), seq({1, 2})));
    EXPECT_FALSE(same_max_class(seq({2, 1}), seq({3, 0})));
    EXPECT_EQ(tame_weights(seq({1, 0})), (std::vector<int>{1, 0}));
    EXPECT_EQ(tame_weights(seq({2, 1})), (std::vector<int>{1, 0}));
    EXPECT_EQ(tame_weights(seq({0, 0, 0})), (std::vector<int>{0}));
    EXPECT_EQ(dual_seq(seq({2, 1})).period(), (std::vector<int>{1, 2}));
    EXPECT_EQ(dual_seq(seq({0})).period(), (std::vector<int>{3}));
    EXPECT_EQ(dual_seq(seq({2, 2}, 2, 4)).period(), (std::vector<int>{2}));
}

TEST(Simple, DualSeqMatchesDualModule) {
    for (auto n : {std::vector<int>{2, 1}, {0}, {3, 1, 0}}) {
        SimpleSeq s = seq(n);
        auto r = find_isomorphism(build_module(dual_seq(s)), dual(build_module(s)));
        EXPECT_EQ(r.verdict, IsoVerdict::Isomorphic);
    }
}

TEST(Simple, ClosedFormMatchesCensus) {
    for (int p : {2, 3})
        for (int r = 1; r <= 2; ++r)
            for (int d = 1; d <= 2; ++d)
                for (const auto& s : all_sequences(p, 1, 1, r, d, false)) {
                    if (!s.in_S()) continue;
                    PhiModule m = build_module(s);
                    ExtremalOptions o;
                    o.method = ExtremalMethod::Census;
                    auto mx = max_r(m, o);
                    auto cf = max_closed_form(s);
                    EXPECT_EQ(mx.module.frob(), build_module(cf.m).frob()) << s.to_string();
                    auto mn = min_r(m, o);
                    EXPECT_EQ(mn.module.frob(), build_module(min_closed_form(s).m).frob()) << s.to_string();
                    EXPECT_EQ(is_maximal(m, o), s.in_Smax()) << s.to_string();
                    EXPECT_EQ(is_minimal(m, o), s.in_Smin()) << s.to_string();
                }
}

TEST(Simple, SequenceListing) {
    auto all = all_sequences(2, 1, 1, 1, 2, false);
    EXPECT_EQ(all.size(), 2u);  // (0,1) and (1,0)
    auto neck = all_sequences(2, 1, 1, 1, 2, true);
    ASSERT_EQ(neck.size(), 1u);
    EXPECT_EQ(neck[0].period(), (std::vector<int>{0, 1}));
    std::string csv = classification_csv(neck);
    EXPECT_NE(csv.find("0 1,2,1 2,1/3 2/3,1,1,1,0 1,0 1"), std::string::npos) << csv;
}

TEST(Simple, ExtremalSetsInsideS) {
    int checked = 0;
    for (int p : {2, 3, 5})
        for (int e = 1; e <= 2; ++e)
            for (int r = 1; e * r <= 4; ++r)
                for (int d = 1; d <= 4; ++d)
                    for (const auto& s : all_sequences(p, 1, e, r, d, false)) {
                        if (s.in_Smax()) EXPECT_TRUE(s.in_S()) << s.to_string();
                        if (s.in_Smin()) EXPECT_TRUE(s.in_S()) << s.to_string();
                        ++checked;
                    }
    EXPECT_GT(checked, 1000);
}

TEST(Simple, EndomorphismDimension) {
    for (int f : {1, 2, 3})
        for (auto n : {std::vector<int>{1}, {1, 0}, {1, 0, 0}, {2, 1}}) {
            SimpleSeq s = seq(n, 2, 3, 1, f);
            if (!s.in_S()) continue;
            PhiModule m = build_module(s);
            EXPECT_EQ(static_cast<int>(hom_space(m, m).size()), std::gcd(f, s.d())) << s.to_string() << " f=" << f;
        }
}
