#include <cmath>

#include "momentlab/arith.hpp"
#include "momentlab/bessel.hpp"
#include "momentlab/modforms.hpp"
#include "momentlab/zeta.hpp"
#include "momentlab/errors.hpp"
#include "support.hpp"

using namespace momentlab;
using momentlab::test::close;
using momentlab::test::R;
using momentlab::test::rel_close;

namespace {

std::vector<int> desk_weights(int hi = 100) {
    std::vector<int> w;
    for (int x = 12; x <= hi; x += 2)
        if (cusp_dimension(x) > 0) w.push_back(x);
    return w;
}

}  // namespace

TEST(MillerBasis, DeltaExpansion) {
    auto b = miller_basis(12, 3);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].coeffs[1], 1);
    EXPECT_EQ(b[0].coeffs[2], -24);
    EXPECT_EQ(b[0].coeffs[3], 252);
}

TEST(MillerBasis, Dimensions) {
    EXPECT_TRUE(miller_basis(14, 20).empty());
    EXPECT_EQ(cusp_dimension(26), 1);
    EXPECT_EQ(miller_basis(26, 20).size(), 1u);
    auto b = miller_basis(24, 20);
    ASSERT_EQ(b.size(), 2u);
    EXPECT_EQ(b[0].coeffs[1], 1);
    EXPECT_EQ(b[0].coeffs[2], 0);
    EXPECT_EQ(b[1].coeffs[1], 0);
    EXPECT_EQ(b[1].coeffs[2], 1);
    for (int w = 12; w <= 100; w += 2) {
        int expect = (w % 12 == 2) ? w / 12 - 1 : w / 12;
        EXPECT_EQ(cusp_dimension(w), expect) << w;
    }
}

TEST(Eigenforms, DeltaEigenvalue) {
    auto f = hecke_eigenforms(12);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_TRUE(close(f[0].lambda[1], Real(1), tail_tol()));
    EXPECT_TRUE(close(f[0].lambda[2], Real(-24) / pow(Real(2), Real(5.5)), tail_tol()));
}

TEST(Eigenforms, HeckeRelationsAndDeligne) {
    Real tol = from_exp2(16 - working_prec());
    for (int w : desk_weights()) {
        auto forms = hecke_eigenforms(w, 900);
        for (const auto& f : forms) {
            Real scale = max(Real(1), abs(f.lambda[1]));
            for (int m = 1; m <= 30; ++m)
                for (int n = 1; n <= 30; ++n) {
                    Real rhs(0);
                    for (int d = 1; d <= std::min(m, n); ++d)
                        if (m % d == 0 && n % d == 0) rhs += f.lambda[static_cast<std::size_t>(m * n / (d * d))];
                    Real lhs = f.lambda[static_cast<std::size_t>(m)] * f.lambda[static_cast<std::size_t>(n)];
                    ASSERT_TRUE(close(lhs, rhs, tol * 64)) << "weight " << w << " m " << m << " n " << n;
                }
            for (std::size_t n = 1; n < f.lambda.size(); ++n)
                ASSERT_LE(abs(f.lambda[n]).to_double(), tau0(n) * (1 + 1e-10)) << w << " " << n;
        }
    }
}

TEST(Eigenforms, Weight24SquareRelation) {
    for (const auto& f : hecke_eigenforms(24))
        EXPECT_TRUE(close(f.lambda[2] * f.lambda[2], f.lambda[4] + 1, from_exp2(16 - working_prec())));
}

TEST(HarmonicWeights, DeltaFromPetersson) {
    Real two_pi = 2 * const_pi();
    Real direct(1);
    for (long c = 1; c <= 100; ++c) direct += two_pi * kloosterman(1, 1, c) / Real(c) * bessel_j(Real(11), 2 * two_pi / Real(c));
    const auto& fs = form_space(12, 0, 100);
    EXPECT_TRUE(close(fs.weights.omega[0], direct, R("1e-25")));
    EXPECT_TRUE(close(fs.weights.omega[0], R("2.8402873751675"), R("1e-12")));
}

TEST(HarmonicWeights, HeldOutPair) {
    auto r100 = petersson_residual(12, 2, 3, 100);
    EXPECT_LE(r100.residual, r100.certified_tail);
    auto r200 = petersson_residual(12, 2, 3, 200);
    EXPECT_LE(r200.residual, r200.certified_tail);
    EXPECT_LE(r200.residual, 1e-20);
}

TEST(HarmonicWeights, SizeBand) {
    for (int w : desk_weights()) {
        const auto& fs = form_space(w);
        for (const auto& om : fs.weights.omega) {
            double scaled = (om * (w - 1)).to_double();
            EXPECT_GE(scaled, 1.0) << w;
            EXPECT_LE(scaled, 100.0) << w;
        }
    }
}

TEST(HarmonicWeights, DisjointPairSetsAgree) {
    for (int w : desk_weights(40)) {
        const auto& fs = form_space(w);
        int d = static_cast<int>(fs.forms.size());
        std::vector<IndexPair> p2;
        for (int m = d + 1; m <= 2 * d + 1; ++m)
            for (int n = m; n <= 2 * d + 1; ++n) p2.emplace_back(m, n);
        auto alt = harmonic_weights(fs.forms, 200, p2);
        for (int i = 0; i < d; ++i)
            EXPECT_TRUE(close(alt.omega[static_cast<std::size_t>(i)], fs.weights.omega[static_cast<std::size_t>(i)], R("1e-15")))
                << w;
    }
}

TEST(HarmonicWeights, SumMatchesTraceFormula) {
    for (int w : {12, 16, 24, 36}) {
        const auto& fs = form_space(w);
        Real sum(0);
        for (const auto& om : fs.weights.omega) sum += om;
        auto rhs = petersson_rhs(w, {{1, 1}}, 200);
        EXPECT_TRUE(close(sum, rhs[0].value, R("1e-15"))) << w;
    }
}

TEST(CentralValue, OddWeightVanishes) {
    for (const auto& f : form_space(18).forms) EXPECT_TRUE(central_value(f).is_zero());
}

TEST(CentralValue, DeltaValueAndSplitInvariance) {
    const auto& f = form_space(12).forms[0];
    Real v = central_value(f);
    EXPECT_TRUE(close(v, R("0.79212283864603056936"), R("1e-19")));
    for (double X : {0.8, 1.25}) {
        AFEConfig cfg;
        cfg.split = Real(X);
        EXPECT_TRUE(close(central_value(f, cfg), v, R("1e-25"))) << X;
    }
    auto longer = hecke_eigenforms(12, 80).at(0);
    for (double X : {0.5, 2.0}) {
        AFEConfig cfg;
        cfg.split = Real(X);
        EXPECT_TRUE(close(central_value(longer, cfg), v, R("1e-25"))) << X;
        EXPECT_THROW(central_value(f, cfg), ConvergenceError) << X;
    }
}

TEST(CentralValue, NonnegativeForEvenK) {
    for (int w : desk_weights())
        if ((w / 2) % 2 == 0)
            for (const auto& f : form_space(w).forms) EXPECT_GE(f.central_value, 0.0) << w;
}

TEST(CentralValue, TruncationError) {
    auto f = hecke_eigenforms(40, 20).at(0);
    EXPECT_THROW(central_value(f), ConvergenceError);
}

TEST(LValue, CentralConsistency) {
    const auto& f = form_space(12).forms[0];
    EXPECT_TRUE(close(l_value(f, Complex(0.5)), Complex(central_value(f)), R("1e-25")));
}

TEST(LValue, RankinProductIdentity) {
    // Σ τ_v(n)λ(n) n^{-s} = L(s+v)L(s-v)/ζ(2s)
    auto f = hecke_eigenforms(12, 3000).at(0);
    Complex v(0.0, 0.3);
    auto series = [&](const Complex& s, std::size_t n_max) {
        Complex sum(0);
        for (std::size_t n = 1; n <= n_max; ++n) sum += divisor_tau(n, v) * f.lambda[n] * pow(Real(static_cast<long>(n)), -s);
        return sum;
    };
    Complex s_far(4.5);
    Complex prod = l_value(f, s_far + v) * l_value(f, s_far - v) / riemann_zeta(2 * s_far);
    EXPECT_TRUE(close(series(s_far, 3000), prod, R("1e-8")));

    Complex s(1.25);
    Complex target = l_value(f, s + v) * l_value(f, s - v) / riemann_zeta(2 * s);
    Real e1 = abs(series(s, 750) - target);
    Real e2 = abs(series(s, 3000) - target);
    EXPECT_LT(e2, e1);
    EXPECT_LT(e2, 0.05);
}

TEST(LValue, DirichletAgreementWithinCertifiedTail) {
    auto f = hecke_eigenforms(12, 2000).at(0);
    auto dir = dirichlet_series(f, Complex(2));
    Real diff = abs(l_value(f, Complex(2)) - dir.value);
    EXPECT_LE(diff, dir.tail_bound);
    EXPECT_THROW(dirichlet_series(f, Complex(1)), DomainError);
}

TEST(Sym2, RoundTripAndConsistency) {
    Real zeta2 = const_pi() * const_pi() / 6;
    for (int w : desk_weights(60)) {
        const auto& fs = form_space(w);
        for (std::size_t i = 0; i < fs.forms.size(); ++i) {
            const Real& om = fs.weights.omega[i];
            Real s2 = fs.forms[i].sym2_at_1;
            EXPECT_GT(s2, 0.0);
            EXPECT_TRUE(close(12 * zeta2 / ((w - 1) * s2), om, tail_tol() * 16 * om));
            EXPECT_TRUE(close(sym2_at_1(w, om), s2, tail_tol() * 16 * s2));
        }
    }
    const auto& fs = form_space(12);
    Real s2 = fs.forms[0].sym2_at_1;
    Real resid = abs(1 / fs.weights.omega[0] - s2 * Real(1) / zeta2);
    EXPECT_LE(resid, 2 * abs(Real(1) - Real(11) / 12) * s2 / zeta2);
}

TEST(Petersson, ResidualWithinTail) {
    auto a = petersson_residual(16, 2, 2, 200);
    EXPECT_LE(a.residual, a.certified_tail);
    EXPECT_LE(a.certified_tail, 1e-15);
    auto b = petersson_residual(12, 1, 4, 200);
    EXPECT_LE(b.residual, b.certified_tail);
    EXPECT_LE(b.certified_tail, 1e-15);
}

TEST(Petersson, TailShape) {
    // ν = 11: halving c scales the leading J term by 2^11 and the c-sum by about 2^{-1/2}
    auto t20 = petersson_rhs(12, {{1, 1}}, 20)[0];
    auto t10 = petersson_rhs(12, {{1, 1}}, 10)[0];
    ASSERT_EQ(t20.c_used, 20);
    ASSERT_EQ(t10.c_used, 10);
    double ratio = (t10.certified_tail / t20.certified_tail).to_double();
    EXPECT_GT(ratio, std::pow(2.0, 9.5));
    EXPECT_LT(ratio, std::pow(2.0, 12.5));
}
