#include <gtest/gtest.h>

#include <nclf/ncnet.hpp>

using namespace nclf;

namespace {

struct Ctx : ::testing::Test {
    NCContext ctx{2};
    Word w(char k, int exp = 1) { return {Letter{ctx.gen(k, 1), exp}}; }
};

}

TEST_F(Ctx, BaseRule)
{
    TensorExpr expect;
    expect.add(w('b'), w('a'), mpq_class(1, 2));
    EXPECT_EQ(ctx.bracket(ctx.g('b', 1), ctx.g('a', 1)), expect);
    EXPECT_EQ(ctx.bracket(ctx.g('a', 1), ctx.g('b', 1)), expect.flip().scaled(-1));
    EXPECT_TRUE(ctx.bracket(ctx.g('a', 1), ctx.g('a', 1)).is_zero());
    EXPECT_TRUE(ctx.bracket(ctx.g('a', 1), ctx.g('b', 2)).is_zero());
}

TEST_F(Ctx, InverseRule)
{
    TensorExpr expect;
    expect.add({Letter{ctx.gen('a', 1), -1}, Letter{ctx.gen('b', 1), 1}}, {}, mpq_class(-1, 2));
    EXPECT_EQ(ctx.bracket(ctx.g('b', 1), ctx.g('a', 1, -1)), expect);
}

TEST_F(Ctx, InducedBracket)
{
    NCExpr ba = ctx.g('b', 1) * ctx.g('a', 1);
    EXPECT_EQ(ctx.induced(ctx.g('b', 1), ctx.g('a', 1)), ba.scaled(mpq_class(1, 2)));
    EXPECT_TRUE(ctx.induced(ctx.g('a', 1), ctx.g('a', 1)).is_zero());
    NCExpr aib = ctx.g('a', 1, -1) * ctx.g('b', 1);
    EXPECT_EQ(ctx.induced(ctx.g('b', 1), ctx.g('a', 1, -1)), aib.scaled(mpq_class(-1, 2)));
}

TEST_F(Ctx, NaturalForm)
{
    NCExpr ab = ctx.g('a', 1) * ctx.g('b', 1), ba = ctx.g('b', 1) * ctx.g('a', 1);
    EXPECT_EQ(natural_form(ab), natural_form(ba));
    EXPECT_TRUE(natural_form(ab - ba).is_zero());
    NCExpr abc = ab * ctx.g('c', 1), acb = ctx.g('a', 1) * ctx.g('c', 1) * ctx.g('b', 1);
    EXPECT_FALSE(natural_form(abc - acb).is_zero());
}

TEST_F(Ctx, WordReduction)
{
    EXPECT_EQ(ctx.g('a', 1) * ctx.g('a', 1, -1), NCExpr::one());
    EXPECT_EQ(ctx.inv(ctx.g('a', 1) * ctx.g('b', 1)), ctx.g('b', 1, -1) * ctx.g('a', 1, -1));
}

TEST_F(Ctx, Evaluation)
{
    Sampler s(90);
    Evaluator ev(ctx, random_point(ctx, s, 3));
    RingValue one = RingValue::one(Backend::Rational, 3);
    EXPECT_EQ(ev.expr(ctx.g('a', 1) * ctx.g('a', 1, -1)), one);
    EXPECT_EQ(ev.expr(ctx.F(1)) * ev.expr(ctx.definition(ctx.atom(1))), one);
    NCExpr a = ctx.g('a', 1), b = ctx.g('b', 1);
    NCExpr lhs = ctx.induced(b, a * a);
    NCExpr rhs = (b * a * a).scaled(mpq_class(1, 2)) + (a * b * a).scaled(mpq_class(1, 2));
    EXPECT_EQ(ev.expr(lhs), ev.expr(rhs));
}

TEST_F(Ctx, UnregisteredInverse)
{
    EXPECT_THROW(ctx.inv(ctx.g('a', 1) + ctx.g('b', 1)), UnregisteredInverse);
}

TEST_F(Ctx, MovedWeightIsAtomDefinition)
{
    NetworkWords m = moved_network_words(ctx);
    Sampler s(91);
    Evaluator ev(ctx, random_point(ctx, s, 3));
    EXPECT_EQ(ev.expr(ctx.F(1, -1)), ev.expr(ctx.g('b', 1) + ctx.g('a', 1) * ctx.g('d', 1) * ctx.g('c', 1)));
    EXPECT_EQ(ev.expr(m.Z), ev.expr(network_words(ctx).Z));
}

TEST(Ncnet, DoubleJacobiFailsForBaseTable)
{
    NCContext ctx(1);
    Sampler s(92);
    Evaluator ev(ctx, random_point(ctx, s, 3));
    TripleExpr j = ctx.jacobi(ctx.g('b', 1), ctx.g('c', 1), ctx.g('b', 1));
    Word b{Letter{ctx.gen('b', 1), 1}}, c{Letter{ctx.gen('c', 1), 1}};
    ASSERT_EQ(j.terms().size(), 1u);
    auto &[key, coef] = *j.terms().begin();
    EXPECT_EQ(coef, mpq_class(1, 4));
    EXPECT_EQ(key, (TripleKey{b, b, c}));
}

TEST(Ncnet, InducedJacobiHoldsInCyclicSpace)
{
    NCContext ctx(1);
    std::vector<NCExpr> g{ctx.g('a', 1), ctx.g('b', 1), ctx.g('c', 1), ctx.g('d', 1)};
    Sampler s(93);
    Evaluator ev(ctx, random_point(ctx, s, 3));
    for (auto &x : g)
        for (auto &y : g)
            for (auto &z : g) {
                NCExpr r = ctx.induced(x, ctx.induced(y, z)) - ctx.induced(ctx.induced(x, y), z) - ctx.induced(y, ctx.induced(x, z));
                EXPECT_EQ(ev.trace(r), 0);
            }
}

TEST(Ncnet, RelationSuite)
{
    auto r = bracket_relation_suite(2, {4, 3, 1});
    ASSERT_FALSE(r.empty());
    for (auto &x : r)
        EXPECT_TRUE(x.pass) << x.id;
}

TEST(Ncnet, WrongRelationIsRejected)
{
    NCContext ctx(2);
    NetworkWords w = network_words(ctx);
    Sampler s(94);
    Evaluator ev(ctx, random_point(ctx, s, 3));
    NCExpr lhs = ctx.induced(w.Y[0], w.X[0]);
    EXPECT_EQ(ev.trace(lhs - expected_relation(w, "YX", 1, 1)), 0);
    EXPECT_NE(ev.trace(lhs - expected_relation(w, "YX", 1, 1).scaled(2)), 0);
}
