#include <gtest/gtest.h>

#include <nclf/network.hpp>

using namespace nclf;

namespace {

RingValue sc(mpq_class x) { return RingValue(x); }

NetworkWeights single(RingValue a, RingValue b, RingValue c, RingValue d) { return {{a}, {b}, {c}, {d}}; }

}

TEST(Network, SquareMoveCommutative)
{
    NetworkWeights m = square_move(single(sc(1), sc(1), sc(1), sc(1)), 0);
    EXPECT_EQ(m.a[0], sc(mpq_class(1, 2)));
    EXPECT_EQ(m.b[0], sc(2));
}

TEST(Network, SquareMoveKeepsBoundary)
{
    for (auto [b, d] : {std::pair{Backend::Scalar, 1}, {Backend::Rational, 2}}) {
        Sampler s(100);
        NetworkWeights w = random_weights(s, b, d, 3);
        NetworkWeights m = square_move_all(w);
        for (int i = 0; i < 3; i++) {
            EXPECT_EQ(m.b[i], square_f(w, i));
            EXPECT_EQ(square_boundary(w.a[i], w.b[i], w.c[i], w.d[i]), moved_square_boundary(m.a[i], m.b[i], m.c[i], m.d[i]));
        }
    }
}

TEST(Network, SingularF)
{
    NetworkWeights w = single(sc(1), sc(-1), sc(1), sc(1));
    EXPECT_THROW(square_move(w, 0), SingularF);
}

TEST(Network, GaugeSingleSquare)
{
    Sampler s(101);
    NetworkWeights w = random_weights(s, Backend::Rational, 2, 1);
    XYWeights xy = xy_weights(w);
    RingValue ci = w.c[0].inv();
    EXPECT_EQ(xy.X[0], ci * w.a[0]);
    EXPECT_EQ(xy.Y[0], ci * w.b[0] * ci * w.d[0].inv());
    EXPECT_EQ(xy.Z, w.d[0] * w.c[0]);
}

TEST(Network, GaugeCommutative)
{
    Sampler s(102);
    NetworkWeights w = random_weights(s, Backend::Scalar, 1, 3);
    XYWeights xy = xy_weights(w);
    for (int i = 0; i < 3; i++)
        EXPECT_EQ(xy.X[i], w.a[i] * w.c[(i + 2) % 3].inv());
}

TEST(Network, Twist)
{
    Sampler s(103);
    NetworkWeights w = random_weights(s, Backend::Rational, 2, 3);
    EXPECT_TRUE(twist_residual(w).is_zero());
    XYWeights xy = xy_weights(w);
    EXPECT_EQ(xy.x(4), xy.Z * xy.X[1] * xy.Z.inv());
    EXPECT_EQ(xy.y(-1), xy.Z.inv() * xy.Y[2] * xy.Z);
}

TEST(Network, StepXY)
{
    Sampler s(104);
    NetworkWeights w = random_weights(s, Backend::Rational, 2, 3);
    XYWeights xy = xy_weights(w);
    XYWeights t = step_xy(xy);
    EXPECT_EQ(t.Z, xy.Z);
    EXPECT_EQ(moved_xy_weights(square_move_all(w)), t);
    XYWeights u = xy;
    u.Z = RingValue::one(Backend::Rational, 2);
    EXPECT_EQ(step_xy(u), xy_from_ab(step_ab(ab_from_xy(u))));
}

TEST(Network, BoundaryMatrixAtZero)
{
    Sampler s(105);
    XYWeights xy = xy_weights(random_weights(s, Backend::Rational, 2, 1));
    QMatrix b = boundary_matrix(xy, CentralScalar{0});
    RingValue zero = RingValue::zero(Backend::Rational, 2);
    EXPECT_EQ(b(0, 0), xy.X[0]);
    EXPECT_EQ(b(0, 1), zero);
    EXPECT_EQ(b(1, 0), zero);
    EXPECT_EQ(b(1, 1), zero);
}

TEST(Network, CommutativePathSums)
{
    XYWeights xy{{sc(2), sc(3)}, {sc(5), sc(7)}, sc(1)};
    auto t = spectral_invariants(xy, 1);
    // [[2, 7m],[m, m^2]] [[3, 10m],[m, m^2]]
    ASSERT_EQ(t.size(), 1u);
    std::vector<mpq_class> expect{6, 0, 17, 0, 1};
    for (size_t j = 0; j < expect.size(); j++)
        EXPECT_EQ(j < t[0].size() ? t[0][j] : mpq_class(0), expect[j]) << j;
}

TEST(Network, ConjugationInvariance)
{
    Sampler s(106);
    XYWeights xy = xy_weights(random_weights(s, Backend::Rational, 2, 2));
    RingValue g = random_generic(s, 2, Backend::Rational), gi = g.inv();
    XYWeights c = xy;
    for (auto &x : c.X)
        x = g * x * gi;
    for (auto &y : c.Y)
        y = g * y * gi;
    c.Z = g * c.Z * gi;
    EXPECT_EQ(spectral_invariants(c, 4), spectral_invariants(xy, 4));
}

TEST(Network, LaxFactorization)
{
    Sampler s(107);
    XYWeights xy = xy_weights(random_weights(s, Backend::Rational, 2, 3));
    for (int mu = 1; mu <= 3; mu++)
        for (int i = 0; i < 3; i++)
            EXPECT_TRUE(lax_factorization_residual(xy, i, CentralScalar{mu}).is_zero());
    EXPECT_THROW(lax_factorization_residual(xy, 0, CentralScalar{0}), Error);
}

TEST(Network, InvariantsConserved)
{
    Sampler s(108);
    XYWeights xy = xy_weights(random_weights(s, Backend::Rational, 2, 3));
    ConservationReport r = invariants_conservation(xy, 3, 6);
    EXPECT_EQ(r.steps_done, 3);
    EXPECT_EQ(r.changed, 0);
    EXPECT_EQ(r.degenerate_step, -1);
}

TEST(Network, PerturbationChangesInvariants)
{
    Sampler s(109);
    XYWeights xy = xy_weights(random_weights(s, Backend::Rational, 2, 3));
    XYWeights p = xy;
    p.X[1] = p.X[1] + RingValue::one(Backend::Rational, 2);
    EXPECT_NE(spectral_invariants(p, 6), spectral_invariants(xy, 6));
}

TEST(Network, InvariantsInvolutive)
{
    GTEST_SKIP() << "the Poisson bracket of two spectral invariants is not computed; symbolic expansion of tr(B^i) "
                    "is out of reach for N >= 3, so only conservation is checked";
}
