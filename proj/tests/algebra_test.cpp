#include <gtest/gtest.h>

#include <nclf/algebra.hpp>

#include "support.hpp"

using namespace nclf;
using nclf::test::mat;

TEST(Algebra, InverseOfTwoByTwo)
{
    RingValue a = mat(2, 2, {1, 2, 3, 4});
    EXPECT_EQ(ring_inv(a), mat(2, 2, {-2, 1, mpq_class(3, 2), mpq_class(-1, 2)}));
    EXPECT_EQ(a * ring_inv(a), RingValue::one(Backend::Rational, 2));
}

TEST(Algebra, ZeroIsNotInvertible)
{
    EXPECT_THROW(ring_inv(RingValue::zero(Backend::Rational, 2)), NotInvertible);
    EXPECT_THROW(ring_inv(RingValue(mpq_class(0))), NotInvertible);
    EXPECT_THROW(ring_inv(mat(2, 2, {1, 2, 2, 4})), NotInvertible);
}

TEST(Algebra, StarIsTranspose)
{
    EXPECT_EQ(ring_star(mat(2, 2, {1, 2, 3, 4})), mat(2, 2, {1, 3, 2, 4}));
    RingValue x(mpq_class(5, 7));
    EXPECT_EQ(ring_star(x), x);
}

TEST(Algebra, StarReversesProducts)
{
    Sampler s(3);
    for (int i = 0; i < 10; i++) {
        RingValue a = random_generic(s, 3, Backend::Rational), b = random_generic(s, 3, Backend::Rational);
        EXPECT_EQ((a * b).star(), b.star() * a.star());
    }
}

TEST(Algebra, RandomGenericIsDeterministic)
{
    for (Backend b : {Backend::Rational, Backend::Float, Backend::Scalar}) {
        RingValue x = random_generic(17, 3, b), y = random_generic(17, 3, b);
        EXPECT_EQ(x, y);
        EXPECT_TRUE(x.is_invertible());
    }
    EXPECT_NE(random_generic(17, 3, Backend::Rational), random_generic(18, 3, Backend::Rational));
}

TEST(Algebra, BackendsDoNotMix)
{
    RingValue a = RingValue::one(Backend::Rational, 2), b = RingValue::one(Backend::Float, 2);
    EXPECT_THROW(a + b, BackendMismatch);
    EXPECT_THROW(a * RingValue::one(Backend::Rational, 3), BackendMismatch);
}

TEST(Algebra, CentralScalarCommutes)
{
    Sampler s(5);
    RingValue a = random_generic(s, 2, Backend::Rational);
    CentralScalar c{mpq_class(-3, 4)};
    EXPECT_EQ(c * a, a * c);
    EXPECT_EQ(c * a, a.scaled(mpq_class(-3, 4)));
}

TEST(Algebra, RationalArithmeticStaysExact)
{
    RingValue a = mat(2, 2, {mpq_class(1, 3), 0, 0, mpq_class(1, 3)});
    RingValue three = a + a + a;
    EXPECT_EQ(three, RingValue::one(Backend::Rational, 2));
    EXPECT_EQ(mat(2, 2, {1, 2, 3, 4}).rat().det(), -2);
}

TEST(Algebra, FloatInverseUsesConditionThreshold)
{
    Eigen::MatrixXd m(2, 2);
    m << 1, 1, 1, 1 + 1e-14;
    EXPECT_FALSE(RingValue(m).is_invertible());
    m << 2, 1, 1, 3;
    RingValue x(m);
    EXPECT_LT((x * x.inv() - RingValue::one(Backend::Float, 2)).norm(), 1e-14);
}

TEST(Algebra, Kronecker)
{
    RingValue a = mat(1, 1, {2}), b = mat(2, 2, {1, 2, 3, 4});
    EXPECT_EQ(a.kron(b), b.scaled(2));
    EXPECT_EQ(b.kron(RingValue::one(Backend::Rational, 1)), b);
}

TEST(Algebra, ParseBackend)
{
    EXPECT_EQ(parse_backend("float"), Backend::Float);
    EXPECT_EQ(to_string(Backend::Scalar), "scalar");
    EXPECT_THROW(parse_backend("complex"), std::invalid_argument);
}

TEST(Algebra, InvolutionLaws)
{
    Sampler s(8);
    for (Backend b : {Backend::Rational, Backend::Float}) {
        RingValue x = random_generic(s, 3, b), y = random_generic(s, 3, b);
        EXPECT_EQ(x.star().star(), x);
        EXPECT_LE(((x + y).star() - x.star() - y.star()).norm(), 1e-12 * (x.norm() + y.norm()));
        EXPECT_LE(((x * y).star() - y.star() * x.star()).norm(), 1e-12 * x.norm() * y.norm());
    }
}
