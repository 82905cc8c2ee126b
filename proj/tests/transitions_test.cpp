#include <gtest/gtest.h>

#include "jetdiff/error.hpp"
#include "jetdiff/linalg.hpp"
#include "jetdiff/parse.hpp"
#include "jetdiff/transitions.hpp"
#include "test_support.hpp"

namespace jetdiff {
namespace {

const TargetMap& witness() {
    static const TargetMap psi = parse_map("w1 = z1; w2 = z2 + z1^2", 2);
    return psi;
}

const InvariantSpace& e23() {
    static const InvariantSpace space = invariant_basis(JetSpec(2, 2), 3);
    return space;
}

const std::vector<Rational> kOrigin = {Rational(0), Rational(0)};

RationalMatrix diag(std::vector<Rational> d) {
    RationalMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
}

/// Random polynomial map of the given degree with an invertible Jacobian at x.
TargetMap invertible_map(testing::Random& rng, int degree, const std::vector<Rational>& x) {
    while (true) {
        TargetMap psi = rng.polynomial_map(2, degree);
        if (!psi.is_singular_at(x)) return psi;
    }
}

TEST(DifferentialTransition, WitnessColumn) {
    const auto t = differential_transition(e23(), witness(), kOrigin);
    RationalMatrix expected = RationalMatrix::identity(5);
    expected.set(0, 4, Rational(2));
    EXPECT_EQ(t.matrix, expected);
}

TEST(DifferentialTransition, IdentityAndLinear) {
    EXPECT_EQ(differential_transition(e23(), TargetMap::identity(2), kOrigin).matrix, RationalMatrix::identity(5));
    const auto t = differential_transition(e23(), TargetMap::linear(diag({Rational(1), Rational(2)})), kOrigin);
    EXPECT_EQ(t.matrix.column(4), (RationalVector{0, 0, 0, 0, 2}));
}

TEST(DifferentialTransition, SingularJacobianIsRejected) {
    EXPECT_THROW(differential_transition(e23(), parse_map("w1 = z1^2; w2 = z2", 2), kOrigin), MathError);
}

TEST(AssociatedAction, Examples) {
    EXPECT_EQ(associated_action(RationalMatrix::identity(2), e23()).matrix, RationalMatrix::identity(5));
    const Rational t1(2);
    const Rational t2(-3, 2);
    EXPECT_EQ(associated_action(diag({t1, t2}), e23()).matrix,
              diag({t1.pow(3), t1.pow(2) * t2, t1 * t2.pow(2), t2.pow(3), t1 * t2}));
    EXPECT_THROW(associated_action(diag({Rational(1), Rational(0)}), e23()), MathError);
}

TEST(AssociatedAction, AgreesWithLinearTransitionsEverywhere) {
    testing::Random rng(41);
    const InvariantSpace e34 = invariant_basis(JetSpec(2, 3), 4);
    for (int trial = 0; trial < 25; ++trial) {
        const RationalMatrix g = rng.invertible_matrix(2);
        const auto x = rng.point(2);
        const InvariantSpace& space = trial % 2 == 0 ? e23() : e34;
        EXPECT_EQ(associated_action(g, space).matrix, differential_transition(space, TargetMap::linear(g), x).matrix);
    }
}

TEST(AssociatedAction, DivergesFromWitnessTransition) {
    const RationalMatrix jac = witness().jacobian_at(kOrigin);
    EXPECT_NE(associated_action(jac, e23()).matrix, differential_transition(e23(), witness(), kOrigin).matrix);
}

TEST(DifferentialTransition, CocycleOnRandomPairs) {
    testing::Random rng(42);
    const InvariantSpace e34 = invariant_basis(JetSpec(2, 3), 4);
    for (int trial = 0; trial < 25; ++trial) {
        const InvariantSpace& space = trial % 2 == 0 ? e23() : e34;
        const auto x = rng.point(2);
        const TargetMap psi1 = invertible_map(rng, 2, x);
        const auto y = psi1.evaluate(x);
        const TargetMap psi2 = invertible_map(rng, 2, y);
        const auto m1 = differential_transition(space, psi1, x).matrix;
        const auto m2 = differential_transition(space, psi2, y).matrix;
        const auto composite = differential_transition(space, psi2.compose(psi1).taylor_truncation(x, 3), x).matrix;
        EXPECT_EQ(composite, m1 * m2);
    }
}

TEST(SplittingCheck, WitnessIsNonSplit) {
    const auto partition = isotypic_partition(e23());
    ASSERT_TRUE(partition.has_value());
    const auto v = splitting_check(differential_transition(e23(), witness(), kOrigin), *partition);
    EXPECT_FALSE(v.splits);
    ASSERT_EQ(v.witnesses.size(), 1u);
    EXPECT_EQ(v.witnesses[0].row, 0u);
    EXPECT_EQ(v.witnesses[0].column, 4u);
    EXPECT_EQ(v.witnesses[0].value, Rational(2));
}

TEST(SplittingCheck, LinearMapsAndIdentitySplit) {
    testing::Random rng(43);
    const auto partition = *isotypic_partition(e23());
    EXPECT_TRUE(splitting_check(differential_transition(e23(), TargetMap::identity(2), kOrigin), partition).splits);
    const auto [adapted, blocks] = adapted_space(invariant_basis(JetSpec(2, 3), 5));
    for (int trial = 0; trial < 10; ++trial) {
        const RationalMatrix g = rng.invertible_matrix(2);
        EXPECT_TRUE(splitting_check(differential_transition(e23(), TargetMap::linear(g), rng.point(2)), partition).splits);
        EXPECT_TRUE(splitting_check(associated_action(g, adapted), blocks).splits);
    }
}

TEST(SplittingCheck, RejectsBadPartition) {
    const auto t = differential_transition(e23(), witness(), kOrigin);
    EXPECT_THROW(splitting_check(t, {IsotypicBlock{{{3, 0}, 1}, {0, 1, 2}}}), UsageError);
}

TEST(SBlockClosure, WitnessKeepsSBlockButComplementLeaks) {
    const auto v = s_block_closure(e23(), witness(), kOrigin);
    EXPECT_EQ(v.first_order_indices, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_TRUE(v.closed);
    EXPECT_TRUE(v.offending.empty());
    EXPECT_TRUE(v.complement_leaks);
}

TEST(SBlockClosure, HoldsForRandomQuadraticMaps) {
    testing::Random rng(44);
    const InvariantSpace e34 = invariant_basis(JetSpec(2, 3), 4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = rng.point(2);
        const InvariantSpace& space = trial % 2 == 0 ? e23() : e34;
        EXPECT_TRUE(s_block_closure(space, invertible_map(rng, 2, x), x).closed);
        const auto lin = s_block_closure(space, TargetMap::linear(rng.invertible_matrix(2)), x);
        EXPECT_TRUE(lin.closed);
        EXPECT_FALSE(lin.complement_leaks);
    }
}

/// Independent V1 frame transition: push 2-jets of curves tangent to
/// (1, xi) through psi and read the lifted velocity from the Wronskian.
RationalMatrix v1_oracle(const TargetMap& psi, const std::vector<Rational>& z, const Rational& xi) {
    const JetSpec spec(2, 2);
    const std::vector<Polynomial> base(z.begin(), z.end());
    auto image = [&](const Rational& s) {
        return act_target(JetPoint(spec, base, {Polynomial(1), Polynomial(xi), Polynomial(), Polynomial(s)}), psi);
    };
    auto wr = [](const JetPoint& g) {
        return (g.entry(1, 1) * g.entry(2, 2) - g.entry(1, 2) * g.entry(2, 1)).constant_term();
    };
    const JetPoint g0 = image(Rational(0));
    const JetPoint g1 = image(Rational(1));
    const Rational d = g0.entry(1, 1).constant_term();
    RationalMatrix m(2, 2);
    m.set(0, 0, (wr(g1) - wr(g0)) / (d * d));
    m.set(0, 1, wr(g0) / (d * d));
    m.set(1, 1, d);
    return m;
}

TEST(V1FrameTransition, Examples) {
    const auto w = v1_frame_transition(witness(), kOrigin, Rational(0));
    EXPECT_EQ(w.matrix, RationalMatrix::from_rows({{1, 2}, {0, 1}}));
    EXPECT_TRUE(w.second_derivatives_involved);

    const auto id = v1_frame_transition(TargetMap::identity(2), {Rational(3), Rational(-1)}, Rational(5, 2));
    EXPECT_EQ(id.matrix, RationalMatrix::identity(2));
    EXPECT_FALSE(id.second_derivatives_involved);
    EXPECT_EQ(id.target_slope, Rational(5, 2));

    EXPECT_THROW(v1_frame_transition(parse_map("w1 = z2; w2 = z1", 2), kOrigin, Rational(0)), MathError);
    EXPECT_THROW(v1_frame_transition(parse_map("w1 = z1^2; w2 = z2", 2), kOrigin, Rational(0)), MathError);
}

TEST(V1FrameTransition, MatchesCurveOracleAndHessianFlag) {
    testing::Random rng(45);
    int linear = 0;
    int quadratic = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto z = rng.point(2);
        const Rational xi = rng.small_rational(3);
        const bool is_linear = trial % 2 == 0;
        const TargetMap psi = is_linear ? TargetMap::linear(rng.invertible_matrix(2)) : invertible_map(rng, 2, z);
        V1Transition v;
        try {
            v = v1_frame_transition(psi, z, xi);
        } catch (const MathError&) {
            continue;  // image direction left the chart
        }
        EXPECT_EQ(v.matrix, v1_oracle(psi, z, xi));
        if (is_linear) {
            EXPECT_FALSE(v.second_derivatives_involved);
            ++linear;
        } else {
            EXPECT_TRUE(v.second_derivatives_involved);
            ++quadratic;
        }
    }
    EXPECT_GE(linear, 20);
    EXPECT_GE(quadratic, 20);
}

TEST(ThetaLowerBound, Examples) {
    EXPECT_EQ(theta_lower_bound(6, 3), Rational(1, 4));
    EXPECT_EQ(theta_lower_bound(5, 3), Rational(2, 3));
    EXPECT_THROW(theta_lower_bound(4, 3), MathError);
    EXPECT_THROW(theta_lower_bound(3, 3), UsageError);
    EXPECT_THROW(theta_lower_bound(6, 6), UsageError);
}

TEST(ThetaLowerBound, StrictlyDecreasingInDegree) {
    for (int m = 3; m <= 5; ++m) {
        for (int d = 5; d < 200; ++d) EXPECT_GT(theta_lower_bound(d, m), theta_lower_bound(d + 1, m));
    }
}

TEST(ContradictionAudit, EveryDegreeContradicts) {
    const auto rows = contradiction_audit(6, 200, 3);
    ASSERT_EQ(rows.size(), 195u);
    EXPECT_EQ(rows.front().lower_bound, Rational(1, 4));
    for (const auto& row : rows) {
        EXPECT_TRUE(row.contradiction);
        EXPECT_GT(row.lower_bound, Rational(-1, 6));
        EXPECT_EQ(row.upper_bound, Rational(-1, 3));
    }
    EXPECT_THROW(contradiction_audit(5, 10, 3), UsageError);
}

TEST(ContradictionAudit, LooserBoundControl) {
    const auto rows = contradiction_audit(6, 6, 3, Rational(1, 3));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_FALSE(rows[0].contradiction);
}

}  // namespace
}  // namespace jetdiff
