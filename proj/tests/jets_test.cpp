#include <gtest/gtest.h>

#include "jetdiff/error.hpp"
#include "jetdiff/jets.hpp"
#include "jetdiff/parse.hpp"
#include "test_support.hpp"

namespace jetdiff {
namespace {

Polynomial jet(int i, int j) { return Polynomial(Variable::jet(i, j)); }

ReparamJet numeric(std::vector<long> coeffs) {
    std::vector<Polynomial> c;
    for (long v : coeffs) c.emplace_back(Rational(v));
    return ReparamJet(std::move(c));
}

JetPoint numeric_jet(const JetSpec& spec, std::vector<long> entries) {
    std::vector<Polynomial> e;
    for (long v : entries) e.emplace_back(Rational(v));
    return JetPoint(spec, std::vector<Polynomial>(static_cast<std::size_t>(spec.rank())), std::move(e));
}

// Independent oracle: partial Bell polynomials B_{n,l}(x_1, ..., x_{n-l+1})
// written out by hand for n <= 4, with x_i = phi^(i)(0) = i! a_i.
Polynomial bell(int n, int l, const std::vector<Polynomial>& x) {
    auto X = [&](int i) { return x.at(static_cast<std::size_t>(i - 1)); };
    switch (n * 10 + l) {
        case 11: return X(1);
        case 21: return X(2);
        case 22: return X(1).pow(2);
        case 31: return X(3);
        case 32: return X(1) * X(2) * Rational(3);
        case 33: return X(1).pow(3);
        case 41: return X(4);
        case 42: return X(1) * X(3) * Rational(4) + X(2).pow(2) * Rational(3);
        case 43: return X(1).pow(2) * X(2) * Rational(6);
        case 44: return X(1).pow(4);
        default: throw std::logic_error("bell table covers n <= 4");
    }
}

JetPoint faa_di_bruno_oracle(const JetPoint& f, const ReparamJet& phi) {
    const int k = f.spec().order();
    const int r = f.spec().rank();
    std::vector<Polynomial> x;
    for (int i = 1; i <= k; ++i) x.push_back(phi.coefficient(i) * factorial(static_cast<unsigned>(i)));
    std::vector<Polynomial> entries;
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= r; ++j) {
            Polynomial g;
            for (int l = 1; l <= i; ++l) g += f.entry(l, j) * bell(i, l, x);
            entries.push_back(g);
        }
    }
    return JetPoint(f.spec(), f.base(), entries);
}

TEST(JetSpec, Guardrail) {
    EXPECT_NO_THROW(JetSpec(4, 4));
    EXPECT_THROW(JetSpec(5, 2), UsageError);
    EXPECT_THROW(JetSpec(2, 5), UsageError);
    EXPECT_NO_THROW(JetSpec(2, 5, true));
    EXPECT_THROW(JetSpec(0, 2), UsageError);
}

TEST(ComposeReparam, Examples) {
    EXPECT_EQ(compose_reparam(numeric({1, 1}), numeric({1, 1})), numeric({1, 2}));
    const ReparamJet a{{Polynomial(Variable::group(1))}};
    const ReparamJet b{{Polynomial(Variable::group(2))}};
    EXPECT_EQ(compose_reparam(a, b).coefficient(1), Polynomial(Variable::group(1)) * Polynomial(Variable::group(2)));
    const ReparamJet phi = numeric({3, -2, 5});
    EXPECT_EQ(compose_reparam(phi, ReparamJet::identity(3)), phi);
    EXPECT_EQ(compose_reparam(ReparamJet::identity(3), phi), phi);
    EXPECT_THROW(compose_reparam(numeric({1, 1}), numeric({1, 1, 1})), UsageError);
}

TEST(InvertReparam, Examples) {
    EXPECT_EQ(invert_reparam(numeric({1, 1})), numeric({1, -1}));
    EXPECT_EQ(invert_reparam(ReparamJet({Polynomial(Rational(4))})), ReparamJet({Polynomial(Rational(1, 4))}));
    EXPECT_EQ(invert_reparam(ReparamJet::identity(4)), ReparamJet::identity(4));
    EXPECT_THROW(ReparamJet({Polynomial(), Polynomial(1)}), MathError);
}

TEST(ActReparam, Examples) {
    const JetSpec spec(1, 2);
    EXPECT_EQ(act_reparam(numeric_jet(spec, {1, 0}), numeric({1, 1})), numeric_jet(spec, {1, 2}));

    const JetPoint f = JetPoint::formal(JetSpec(2, 3));
    EXPECT_EQ(act_reparam(f, ReparamJet::identity(3)), f);

    const Polynomial a1(Variable::group(1));
    const JetPoint g = act_reparam(JetPoint::formal(spec), ReparamJet({a1, Polynomial()}));
    EXPECT_EQ(g.entry(1, 1), a1 * jet(1, 1));
    EXPECT_EQ(g.entry(2, 1), a1.pow(2) * jet(2, 1));
    EXPECT_THROW(act_reparam(JetPoint::formal(spec), ReparamJet::identity(3)), UsageError);
}

TEST(ActReparam, MatchesBellPolynomialTable) {
    testing::Random rng(21);
    for (int k = 1; k <= 4; ++k) {
        for (int r = 1; r <= 2; ++r) {
            const JetSpec spec(r, k);
            // Fully formal on both sides.
            const JetPoint f = JetPoint::formal(spec);
            const ReparamJet formal = ReparamJet::formal(k, false);
            EXPECT_EQ(act_reparam(f, formal), faa_di_bruno_oracle(f, formal)) << "k=" << k << " r=" << r;
            for (int trial = 0; trial < 10; ++trial) {
                const ReparamJet phi = rng.reparam(k);
                EXPECT_EQ(act_reparam(f, phi), faa_di_bruno_oracle(f, phi));
            }
        }
    }
}

TEST(ReparamGroup, AxiomsOnRandomInstances) {
    testing::Random rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 1 + trial % 4;
        const ReparamJet p = rng.reparam(k);
        const ReparamJet q = rng.reparam(k);
        const ReparamJet s = rng.reparam(k);
        EXPECT_EQ(compose_reparam(compose_reparam(p, q), s), compose_reparam(p, compose_reparam(q, s)));
        EXPECT_EQ(compose_reparam(p, invert_reparam(p)), ReparamJet::identity(k));
        EXPECT_EQ(compose_reparam(invert_reparam(p), p), ReparamJet::identity(k));
        EXPECT_EQ(compose_reparam(p, q).coefficient(1), p.coefficient(1) * q.coefficient(1));
    }
    // Associativity with formal parameters.
    const ReparamJet formal = ReparamJet::formal(4, false);
    const ReparamJet p = rng.reparam(4);
    const ReparamJet q = rng.reparam(4);
    EXPECT_EQ(compose_reparam(compose_reparam(formal, p), q), compose_reparam(formal, compose_reparam(p, q)));
}

TEST(ActReparam, LeftActionLawOnFormalJets) {
    testing::Random rng(23);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int k = 1 + trial % 4;
        const int r = 1 + (trial / 4) % 2;
        const JetPoint f = JetPoint::formal(JetSpec(r, k));
        const ReparamJet phi = rng.reparam(k);
        const ReparamJet psi = rng.reparam(k);
        EXPECT_EQ(act_reparam(act_reparam(f, phi), psi), act_reparam(f, compose_reparam(phi, psi)));
        ++checked;
    }
    EXPECT_GE(checked, 100);
}

TEST(ActReparam, ScalingWeights) {
    const Polynomial a1(Variable::group(1));
    for (int k = 1; k <= 4; ++k) {
        std::vector<Polynomial> c(static_cast<std::size_t>(k));
        c[0] = a1;
        const JetPoint g = act_reparam(JetPoint::formal(JetSpec(2, k)), ReparamJet(c));
        for (int i = 1; i <= k; ++i) {
            for (int j = 1; j <= 2; ++j) EXPECT_EQ(g.entry(i, j), a1.pow(static_cast<unsigned>(i)) * jet(i, j));
        }
    }
}

TEST(ActTarget, QuadraticWitness) {
    const JetSpec spec(2, 2);
    const TargetMap psi = parse_map("w1 = z1; w2 = z2 + z1^2", 2);
    const JetPoint g = act_target(JetPoint::formal(spec), psi);
    EXPECT_EQ(g.entry(2, 2), jet(2, 2) + jet(1, 1).pow(2) * Rational(2));
    EXPECT_EQ(g.entry(1, 2), jet(1, 2));
    EXPECT_EQ(g.entry(2, 1), jet(2, 1));

    // With a formal base point the 2 f1 f1'' term survives.
    const Polynomial z1(Variable::base(1));
    const JetPoint h = act_target(JetPoint::formal(spec, {z1, Polynomial(Variable::base(2))}), psi);
    EXPECT_EQ(h.entry(2, 2), jet(2, 2) + jet(1, 1).pow(2) * Rational(2) + z1 * jet(2, 1) * Rational(2));
    EXPECT_EQ(h.entry(1, 2), jet(1, 2) + z1 * jet(1, 1) * Rational(2));
}

TEST(ActTarget, LinearMapActsBlockwise) {
    testing::Random rng(24);
    const RationalMatrix g = rng.invertible_matrix(2);
    const JetSpec spec(2, 3);
    const JetPoint out = act_target(JetPoint::formal(spec), TargetMap::linear(g));
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 2; ++j) {
            Polynomial expected;
            for (int l = 1; l <= 2; ++l) expected += jet(i, l) * g.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(l - 1));
            EXPECT_EQ(out.entry(i, j), expected);
        }
    }
    EXPECT_EQ(act_target(JetPoint::formal(spec), TargetMap::identity(2)), JetPoint::formal(spec));
}

TEST(ActTarget, FunctorialityOnRandomMaps) {
    testing::Random rng(25);
    for (int trial = 0; trial < 25; ++trial) {
        const int k = 1 + trial % 3;
        const JetSpec spec(2, k);
        const auto x = rng.point(2);
        std::vector<Polynomial> base(x.begin(), x.end());
        const JetPoint f = JetPoint::formal(spec, base);
        const TargetMap psi1 = rng.polynomial_map(2, 2);
        const TargetMap psi2 = rng.polynomial_map(2, 2);
        EXPECT_EQ(act_target(act_target(f, psi1), psi2), act_target(f, psi2.compose(psi1)));
    }
}

TEST(ActTarget, CommutesWithReparametrization) {
    testing::Random rng(26);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 1 + trial % 4;
        const JetSpec spec(2, k);
        const auto x = rng.point(2);
        const JetPoint f = JetPoint::formal(spec, {x.begin(), x.end()});
        const TargetMap psi = rng.polynomial_map(2, k == 4 ? 2 : 3);
        const ReparamJet phi = rng.reparam(k);
        EXPECT_EQ(act_target(act_reparam(f, phi), psi), act_reparam(act_target(f, psi), phi));
    }
}

TEST(ActTarget, TaylorTruncationAtBasepointIsExact) {
    testing::Random rng(27);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + trial % 3;
        const auto x = rng.point(2);
        const JetPoint f = JetPoint::formal(JetSpec(2, k), {x.begin(), x.end()});
        const TargetMap psi = rng.polynomial_map(2, 4);
        EXPECT_EQ(act_target(f, psi), act_target(f, psi.taylor_truncation(x, static_cast<unsigned>(k))));
    }
}

TEST(TargetMap, JacobianAndSingularity) {
    const TargetMap psi = parse_map("w1 = z1^2; w2 = z2", 2);
    EXPECT_TRUE(psi.is_singular_at({Rational(0), Rational(0)}));
    EXPECT_FALSE(psi.is_singular_at({Rational(1), Rational(0)}));
    EXPECT_EQ(psi.jacobian_at({Rational(3), Rational(0)}).at(0, 0), Rational(6));
    EXPECT_THROW(TargetMap({Polynomial(Variable::jet(1, 1))}), UsageError);
}

}  // namespace
}  // namespace jetdiff
