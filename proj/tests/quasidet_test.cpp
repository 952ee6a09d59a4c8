#include <gtest/gtest.h>

#include <nclf/quasidet.hpp>

#include "support.hpp"

using namespace nclf;
using nclf::test::random_qmatrix;

namespace {

RingValue sc(mpq_class x) { return RingValue(x); }

RatMatrix flatten_scalar(const QMatrix &a)
{
    std::vector<mpq_class> e;
    for (int i = 0; i < a.rows(); i++)
        for (int j = 0; j < a.cols(); j++)
            e.push_back(a(i, j).sca());
    return RatMatrix::from_entries(a.rows(), a.cols(), e);
}

bool is_identity(const QMatrix &a)
{
    return a == QMatrix::identity(a.rows(), a.backend(), a.dim());
}

}

TEST(QuasiDet, OneByOne)
{
    RingValue a = random_generic(4, 2, Backend::Rational);
    EXPECT_EQ(quasi_det(QMatrix::from_rows({{a}}), 0, 0), a);
}

TEST(QuasiDet, CommutativeTwoByTwo)
{
    QMatrix a = QMatrix::from_rows({{sc(1), sc(2)}, {sc(3), sc(4)}});
    EXPECT_EQ(quasi_det(a, 1, 1), sc(-2));
}

TEST(QuasiDet, MatchesDeterminantRatio)
{
    Sampler s(11);
    for (int t = 0; t < 10; t++) {
        QMatrix a = random_qmatrix(s, 4, Backend::Scalar, 1);
        RatMatrix m = flatten_scalar(a);
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) {
                mpq_class sign = (i + j) % 2 ? -1 : 1;
                mpq_class expect = sign * m.det() / flatten_scalar(a.without(i, j)).det();
                EXPECT_EQ(quasi_det(a, i, j), sc(expect));
            }
    }
}

TEST(QuasiDet, SingularSubmatrixThrows)
{
    QMatrix a = QMatrix::from_rows({{sc(1), sc(2), sc(0)}, {sc(2), sc(4), sc(0)}, {sc(1), sc(1), sc(1)}});
    EXPECT_THROW(quasi_det(a, 2, 2), SingularSubmatrix);
}

TEST(NcInverse, Identity)
{
    QMatrix id = QMatrix::identity(3, Backend::Rational, 2);
    EXPECT_EQ(nc_inverse(id), id);
}

TEST(NcInverse, Diagonal)
{
    Sampler s(2);
    RingValue a = random_generic(s, 2, Backend::Rational), b = random_generic(s, 2, Backend::Rational);
    RingValue z = RingValue::zero(Backend::Rational, 2);
    QMatrix inv = nc_inverse(QMatrix::from_rows({{a, z}, {z, b}}));
    EXPECT_EQ(inv, QMatrix::from_rows({{a.inv(), z}, {z, b.inv()}}));
}

TEST(NcInverse, MultipliesBack)
{
    Sampler s(7);
    for (int t = 0; t < 5; t++) {
        QMatrix a = random_qmatrix(s, 3, Backend::Rational, 2);
        QMatrix inv = nc_inverse(a);
        EXPECT_TRUE(is_identity(a * inv));
        EXPECT_TRUE(is_identity(inv * a));
    }
}

TEST(NcInverse, Singular)
{
    RingValue one = RingValue::one(Backend::Rational, 2);
    EXPECT_THROW(nc_inverse(QMatrix::from_rows({{one, one}, {one, one}})), SingularMatrix);
}

TEST(NcSolve, IdentityAndScalarCases)
{
    Sampler s(9);
    std::vector<RingValue> xi{random_generic(s, 2, Backend::Rational), random_generic(s, 2, Backend::Rational)};
    EXPECT_EQ(nc_solve(QMatrix::identity(2, Backend::Rational, 2), xi), xi);
    RingValue a = random_generic(s, 2, Backend::Rational);
    EXPECT_EQ(nc_solve(QMatrix::from_rows({{a}}), {xi[0]})[0], a.inv() * xi[0]);
    EXPECT_EQ(nc_solve_left(QMatrix::from_rows({{a}}), {xi[0]})[0], xi[0] * a.inv());
}

TEST(NcSolve, ResidualIsZero)
{
    Sampler s(13);
    for (int t = 0; t < 5; t++) {
        QMatrix a = random_qmatrix(s, 3, Backend::Rational, 2);
        std::vector<RingValue> xi;
        for (int i = 0; i < 3; i++)
            xi.push_back(random_generic(s, 2, Backend::Rational, false));
        EXPECT_EQ(a.apply(nc_solve(a, xi)), xi);
        EXPECT_EQ(a.apply_left(nc_solve_left(a, xi)), xi);
    }
}

TEST(QuasiDetIdentities, Jacobi)
{
    Sampler s(21);
    for (auto [b, d] : {std::pair{Backend::Scalar, 1}, {Backend::Rational, 2}, {Backend::Rational, 3}}) {
        for (int t = 0; t < 5; t++) {
            EXPECT_TRUE(jacobi_residual(random_qmatrix(s, 3, b, d)).is_zero());
            EXPECT_TRUE(jacobi_residual(random_qmatrix(s, 4, b, d)).is_zero());
        }
    }
}

TEST(QuasiDetIdentities, JacobiSingularInnerBlock)
{
    Sampler s(22);
    QMatrix m = random_qmatrix(s, 3, Backend::Rational, 2);
    m(0, 0) = RingValue::zero(Backend::Rational, 2);
    EXPECT_THROW(jacobi_residual(m), SingularSubmatrix);
}

TEST(QuasiDetIdentities, Homological)
{
    Sampler s(23);
    for (auto [b, d] : {std::pair{Backend::Scalar, 1}, {Backend::Rational, 2}}) {
        for (int t = 0; t < 5; t++) {
            auto [r1, r2] = homological_residuals(random_qmatrix(s, 3, b, d));
            EXPECT_TRUE(r1.is_zero());
            EXPECT_TRUE(r2.is_zero());
        }
    }
}

TEST(QuasiDetIdentities, HomologicalDegenerate)
{
    Sampler s(24);
    QMatrix m = random_qmatrix(s, 3, Backend::Rational, 2);
    m(1, 0) = m(0, 0);
    m(1, 1) = m(0, 1);
    EXPECT_THROW(homological_residuals(m), SingularSubmatrix);
}

TEST(RowDependence, ConstructedDependence)
{
    Sampler s(31);
    QMatrix a = random_qmatrix(s, 3, Backend::Rational, 2);
    RingValue l = random_generic(s, 2, Backend::Rational);
    for (int j = 0; j < 3; j++)
        a(2, j) = l * a(0, j);
    EXPECT_TRUE(row_dependence_check(a, 2, 1));
    EXPECT_FALSE(row_dependence_check(random_qmatrix(s, 3, Backend::Rational, 2), 2, 1));
}

TEST(RowDependence, SingularCommutative)
{
    QMatrix a = QMatrix::from_rows({{sc(1), sc(2)}, {sc(2), sc(4)}});
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++)
            EXPECT_TRUE(row_dependence_check(a, i, j));
}
