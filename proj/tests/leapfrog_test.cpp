#include <gtest/gtest.h>

#include <nclf/leapfrog.hpp>

#include "support.hpp"

using namespace nclf;

namespace {

RingValue sc(mpq_class x) { return RingValue(x); }

LeapfrogState small_scalar_state(mpq_class vm1)
{
    return {Seq::window(0, {sc(5), sc(vm1), sc(7)}), Seq::window(0, {sc(0), sc(1), sc(3)})};
}

bool all_zero(const Seq &s)
{
    for (auto &x : s.values())
        if (!x.is_zero())
            return false;
    return true;
}

bool is_zero(const PointP1 &p) { return p.x1.is_zero() && p.x2.is_zero(); }

std::vector<ABCoords> ab_layers(const LeapfrogState &s0, int n)
{
    std::vector<ABCoords> l{ab_from_vertices(s0).ab};
    while (int(l.size()) < n)
        l.push_back(step_ab(l.back()));
    return l;
}

}

TEST(Leapfrog, PQScalarExample)
{
    PQCoords pq = pq_from_vertices(small_scalar_state(2));
    EXPECT_EQ(pq.p[1], sc(-2));
    EXPECT_EQ(pq.q[1], sc(-1));
}

TEST(Leapfrog, PQDegenerate)
{
    EXPECT_THROW(pq_from_vertices(small_scalar_state(3)), DegenerateConfiguration);
}

TEST(Leapfrog, PQSatisfiesVertexRecurrence)
{
    Sampler s(50);
    LeapfrogState st = random_state(s, Backend::Rational, 2, 5, Mode::Periodic);
    PQCoords pq = pq_from_vertices(st);
    RingValue one = RingValue::one(Backend::Rational, 2);
    for (int i = 0; i < 5; i++)
        EXPECT_EQ(st.v[i + 1], st.v[i - 1] * pq.p[i] + st.v[i] * (one - pq.p[i]));
}

TEST(Leapfrog, StepScalarExample)
{
    LeapfrogState next = step_vertices(small_scalar_state(2));
    EXPECT_EQ(next.v[1], sc(mpq_class(1, 3)));
    EXPECT_EQ(next.v_minus[1], sc(1));
}

TEST(Leapfrog, StepChangesGenericState)
{
    Sampler s(51);
    LeapfrogState st = random_state(s, Backend::Rational, 2, 5, Mode::Periodic);
    LeapfrogState next = step_vertices(st);
    EXPECT_EQ(next.v_minus, st.v);
    EXPECT_FALSE(next.v == st.v_minus);
    EXPECT_EQ(next.v.size(), 5);
}

TEST(Leapfrog, WindowShrinks)
{
    Sampler s(52);
    LeapfrogState st = random_state(s, Backend::Rational, 1, 6, Mode::Windowed, 4);
    LeapfrogState next = step_vertices(st);
    EXPECT_EQ(next.v.lo(), st.v.lo() + 1);
    EXPECT_EQ(next.v.hi(), st.v.hi() - 1);
}

TEST(Leapfrog, GMatrixContract)
{
    LeapfrogState sc_state = small_scalar_state(2);
    QMatrix g = g_matrix(sc_state, 1);
    EXPECT_EQ(g(1, 0), sc(mpq_class(-1, 2)));
    for (auto &r : g_contract_residuals(sc_state, 1))
        EXPECT_TRUE(is_zero(r));

    Sampler s(53);
    LeapfrogState st = random_state(s, Backend::Rational, 2, 5, Mode::Periodic);
    for (int i = 0; i < 5; i++) {
        EXPECT_EQ(g_matrix(st, i).flat_rank(), 4);
        for (auto &r : g_contract_residuals(st, i))
            EXPECT_TRUE(is_zero(r));
    }
}

TEST(Leapfrog, StepPQMatchesVertexRoute)
{
    for (auto [b, d] : {std::pair{Backend::Scalar, 1}, {Backend::Rational, 2}}) {
        Sampler s(54);
        LeapfrogState st = random_state(s, b, d, 5, Mode::Periodic);
        PQCoords lhs = step_pq(pq_from_vertices(st)), rhs = pq_from_vertices(step_vertices(st));
        EXPECT_EQ(lhs.p, rhs.p);
        EXPECT_EQ(lhs.q, rhs.q);
    }
}

TEST(Leapfrog, StepPQConstantFixedPoint)
{
    PQCoords pq{Seq::periodic({sc(3), sc(3), sc(3), sc(3)}), Seq::periodic({sc(-5), sc(-5), sc(-5), sc(-5)})};
    PQCoords t = step_pq(pq);
    EXPECT_EQ(t.p, pq.p);
    EXPECT_EQ(t.q, pq.q);
}

TEST(Leapfrog, LaxResiduals)
{
    for (auto [b, d] : {std::pair{Backend::Scalar, 1}, {Backend::Rational, 2}}) {
        Sampler s(55);
        LeapfrogState st = random_state(s, b, d, 5, Mode::Periodic);
        PQCoords pq = pq_from_vertices(st);
        for (auto &[i, r] : lax_residual(pq, st, CentralScalar{1})) {
            EXPECT_TRUE(r.spatial.is_zero());
            EXPECT_TRUE(r.temporal.is_zero());
        }
        for (auto &[i, r] : lax_residual(pq, st, CentralScalar{2})) {
            EXPECT_EQ(r.spatial, -lax_coefficient(pq, st, i));
            EXPECT_FALSE(r.spatial.is_zero());
            EXPECT_TRUE(r.temporal.is_zero());
        }
    }
}

TEST(Leapfrog, ABSolvesLinearRelations)
{
    for (auto [b, d] : {std::pair{Backend::Scalar, 1}, {Backend::Rational, 2}}) {
        Sampler s(56);
        LeapfrogState st = random_state(s, b, d, 6, Mode::Windowed, 3);
        ABResult r = ab_from_vertices(st);
        auto um = u_lifts(st.v_minus, r.scal.v_minus), u = u_lifts(st.v, r.scal.v);
        int lo = st.v.lo();
        for (int i : r.ab.a.indices()) {
            int k = i - lo;
            PointP1 lhs{u[k].x1 - um[k + 1].x1, u[k].x2 - um[k + 1].x2};
            PointP1 rhs = um[k] * r.ab.a[i];
            EXPECT_EQ(lhs.x1, rhs.x1);
            EXPECT_EQ(lhs.x2, rhs.x2);
            PointP1 lhs2{u[k + 1].x1 - um[k + 1].x1, u[k + 1].x2 - um[k + 1].x2};
            PointP1 rhs2 = um[k] * -r.ab.b[i];
            EXPECT_EQ(lhs2.x1, rhs2.x1);
            EXPECT_EQ(lhs2.x2, rhs2.x2);
        }
    }
}

TEST(Leapfrog, ABCrossRatioAndConstraints)
{
    Sampler s(57);
    LeapfrogState st = random_state(s, Backend::Rational, 2, 6, Mode::Windowed, 3);
    ABResult r = ab_from_vertices(st);
    ABCoords x = ab_cross_ratio(st, r.scal);
    Seq c = c_coords(st, r.scal);
    for (int i : x.a.indices()) {
        EXPECT_EQ(x.a[i], r.ab.a[i]);
        EXPECT_EQ(x.b[i], r.ab.b[i]);
    }
    for (int i : c.indices())
        EXPECT_TRUE((r.ab.a[i] + r.ab.b[i] + c[i]).is_zero());
    for (auto &[i, res] : con_det_residuals(st, r.scal)) {
        EXPECT_TRUE(res.first.is_zero());
        EXPECT_TRUE(res.second.is_zero());
    }
}

TEST(Leapfrog, ABNeedsWindow)
{
    Sampler s(58);
    EXPECT_THROW(ab_from_vertices(random_state(s, Backend::Rational, 2, 5, Mode::Periodic)), Error);
}

TEST(Leapfrog, StepABConstantFixedPoint)
{
    ABCoords ab{Seq::window(0, std::vector<RingValue>(5, sc(2))), Seq::window(0, std::vector<RingValue>(5, sc(-7)))};
    ABCoords t = step_ab(ab);
    for (int i : t.a.indices()) {
        EXPECT_EQ(t.a[i], sc(2));
        EXPECT_EQ(t.b[i], sc(-7));
    }
}

TEST(Leapfrog, StepABMatchesVertexRoute)
{
    for (auto [b, d] : {std::pair{Backend::Scalar, 1}, {Backend::Rational, 2}}) {
        Sampler s(59);
        LeapfrogState st = random_state(s, b, d, 6, Mode::Windowed, 4);
        Scalings scal = initial_scalings(st);
        LeapfrogState next = step_vertices(st);
        ABCoords lhs = step_ab(ab_with_scalings(st, scal));
        ABCoords rhs = ab_with_scalings(next, step_scalings(st, scal, next));
        EXPECT_EQ(lhs.a, rhs.a);
        EXPECT_EQ(lhs.b, rhs.b);
    }
}

TEST(Leapfrog, CrossRatioDefiningProperty)
{
    Sampler s(60);
    LeapfrogState st = random_state(s, Backend::Rational, 2, 5, Mode::Periodic);
    LeapfrogState next = step_vertices(st);
    for (int i = 0; i < 5; i++)
        EXPECT_TRUE(eq_k_residual(st, next, i).is_zero());
}

TEST(Leapfrog, PeriodicStepStaysPeriodic)
{
    Sampler s(61);
    LeapfrogState st = random_state(s, Backend::Rational, 2, 4, Mode::Periodic);
    LeapfrogState next = step_vertices(step_vertices(st));
    EXPECT_EQ(next.mode(), Mode::Periodic);
    EXPECT_EQ(next.v[-1], next.v[3]);
    EXPECT_EQ(next.v[7], next.v[3]);
}

TEST(YSystem, ScalarTrajectory)
{
    Sampler s(62);
    auto l = ab_layers(random_state(s, Backend::Scalar, 1, 6, Mode::Windowed, 4), 3);
    EXPECT_TRUE(all_zero(y_system_residual(l)));
    EXPECT_TRUE(all_zero(y_commutative_residual(l)));
}

TEST(YSystem, MatrixTrajectory)
{
    Sampler s(63);
    auto l = ab_layers(random_state(s, Backend::Rational, 2, 6, Mode::Windowed, 4), 3);
    EXPECT_TRUE(all_zero(y_system_residual(l)));
    auto [r1, r2] = aij_residuals(l);
    EXPECT_TRUE(all_zero(r1));
    EXPECT_TRUE(all_zero(r2));
}

TEST(YSystem, PerturbationIsDetected)
{
    Sampler s(64);
    auto l = ab_layers(random_state(s, Backend::Rational, 2, 6, Mode::Windowed, 4), 3);
    int i = l[2].b.indices()[2];
    l[2].b[i] = l[2].b[i] + RingValue::one(Backend::Rational, 2);
    EXPECT_FALSE(all_zero(y_system_residual(l)));
}

TEST(YSystem, CrossRatioForm)
{
    Sampler s(65);
    LeapfrogState st = random_state(s, Backend::Rational, 2, 6, Mode::Windowed, 3);
    ABResult r = ab_from_vertices(st);
    Seq y = y_from_ab(r.ab), yc = y_cross_ratio(st, r.scal, r.ab);
    for (int i : yc.indices())
        EXPECT_EQ(yc[i], y[i]);
}
