#include <gtest/gtest.h>

#include "kisin/errors.hpp"
#include "kisin/field.hpp"

using namespace kisin;

namespace {

void check_axioms(const FieldPtr& k) {
    const Elem q = k->size();
    for (Elem a = 0; a < q; ++a) {
        ASSERT_EQ(k->add(a, 0), a);
        ASSERT_EQ(k->mul(a, 1), a);
        ASSERT_EQ(k->add(a, k->neg(a)), 0u);
        ASSERT_EQ(k->pow(a, q), a);
        ASSERT_EQ(k->frob_inv(k->frob(a)), a);
        if (a != 0) ASSERT_EQ(k->mul(a, k->inv(a)), 1u);
        for (Elem b = 0; b < q; ++b) {
            ASSERT_EQ(k->add(a, b), k->add(b, a));
            ASSERT_EQ(k->mul(a, b), k->mul(b, a));
            for (Elem c = 0; c < q; ++c) {
                ASSERT_EQ(k->mul(a, k->add(b, c)), k->add(k->mul(a, b), k->mul(a, c)));
                ASSERT_EQ(k->mul(k->mul(a, b), c), k->mul(a, k->mul(b, c)));
                ASSERT_EQ(k->add(k->add(a, b), c), k->add(a, k->add(b, c)));
            }
        }
    }
}

}  // namespace

TEST(Field, AxiomsExhaustiveUpTo81) {
    const int cases[][2] = {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {7, 2}, {3, 4}, {2, 6}};
    for (auto& c : cases) {
        SCOPED_TRACE(std::to_string(c[0]) + "^" + std::to_string(c[1]));
        check_axioms(Field::make(FieldParams::standard(c[0], c[1])));
    }
}

TEST(Field, StandardModuli) {
    EXPECT_EQ(FieldParams::standard(2, 2).modulus_string(), "x^2 + x + 1");
    EXPECT_EQ(FieldParams::standard(2, 3).modulus_string(), "x^3 + x + 1");
    EXPECT_EQ(FieldParams::standard(3, 2).modulus_string(), "x^2 + x + 2");
}

TEST(Field, RejectsBadParameters) {
    EXPECT_THROW(Field::prime(4), ParseError);
    FieldParams bad;
    bad.p = 2;
    bad.f = 2;
    bad.modulus = {1, 0, 1};  // x^2 + 1 = (x + 1)^2
    EXPECT_THROW(Field::make(bad), ParseError);
    bad.modulus = {1, 1, 1};
    EXPECT_NO_THROW(Field::make(bad));
}

TEST(Field, FrobeniusFixesPrimeField) {
    auto k = Field::make(FieldParams::standard(3, 2));
    int fixed = 0;
    for (Elem a = 0; a < k->size(); ++a)
        if (k->frob(a) == a) ++fixed;
    EXPECT_EQ(fixed, 3);
}

TEST(Field, ElementWrapper) {
    auto k = Field::make(FieldParams::standard(2, 2));
    FieldElement a(k, k->gen());
    EXPECT_EQ(a * a, a + FieldElement(k, 1));  // a^2 = a + 1
    EXPECT_EQ((a / a).raw(), 1u);
    EXPECT_EQ(a.frobenius(), a * a);
    auto other = Field::prime(2);
    EXPECT_THROW(a + FieldElement(other, 1), ParameterMismatch);
}
