#include <cmath>

#include "momentlab/errors.hpp"
#include "momentlab/kernels.hpp"
#include "momentlab/lgreen.hpp"
#include "support.hpp"

using namespace momentlab;
using momentlab::test::close;
using momentlab::test::R;

namespace {

double fitted_exponent(const std::vector<int>& ks, const std::function<double(int)>& f) {
    double n = static_cast<double>(ks.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k : ks) {
        double x = std::log(static_cast<double>(k)), y = std::log(std::abs(f(k)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<int> cj_grid() {
    std::vector<int> ks;
    for (int k = 12; k <= 96; k += 4) ks.push_back(k);
    return ks;
}

}  // namespace

TEST(LGTransform, Oscillatory) {
    Real pi = const_pi();
    EXPECT_TRUE(close(lg_transform(LGCase::oscillatory, Real(0.5)).xi, pi * pi / 4, tail_tol()));
    for (double t : {0.5, 1.0}) {
        Real s = sin(Real(t) / 2);
        Real x = s * s;
        EXPECT_TRUE(close(lg_transform(LGCase::oscillatory, x).xi, Real(t * t), tail_tol() * 4));
        EXPECT_TRUE(close(lg_inverse_transform(LGCase::oscillatory, Real(t * t)), x, tail_tol() * 4));
    }
}

TEST(LGTransform, Exponential) {
    for (double t : {0.5, 2.0}) {
        Real c = cosh(Real(t) / 2);
        Real x = 1 / (c * c);
        EXPECT_TRUE(close(lg_transform(LGCase::exponential, x).xi, Real(t * t), tail_tol() * 4));
        EXPECT_TRUE(close(lg_inverse_transform(LGCase::exponential, Real(t * t)), x, tail_tol() * 4));
    }
    EXPECT_THROW(lg_transform(LGCase::exponential, Real(1)), DomainError);
    EXPECT_THROW(lg_transform(LGCase::oscillatory, Real(0)), DomainError);
}

TEST(LGPotential, Limits) {
    EXPECT_NEAR(lg_potential(LGCase::oscillatory, Real(1e-8)).to_double(), 1.0 / 48, 1e-6);
    EXPECT_NEAR(lg_potential(LGCase::exponential, Real(1e-8)).to_double(), 1.0 / 48, 1e-6);
    Real xi(100);
    EXPECT_TRUE(close(lg_potential(LGCase::exponential, xi), 1 / (16 * xi), R("1e-8")));
    EXPECT_LT(lg_potential(LGCase::exponential, xi), 1 / (16 * xi));
    Real pi = const_pi();
    EXPECT_THROW(lg_potential(LGCase::oscillatory, pi * pi), PoleError);
}

TEST(LGCoefficients, OscillatoryAtTurningPoint) {
    Real pi = const_pi();
    Real lam = lg_lambda1();
    auto c = lg_coefficients(LGCase::oscillatory, lam, pi * pi / 4);
    EXPECT_TRUE(close(c.A0, Real(1), tail_tol()));
    EXPECT_TRUE(close(c.B0, 1 / (2 * pi * pi), tail_tol() * 16));
    EXPECT_TRUE(close(c.A1, Real(-1) / 16 + Real(15) / (32 * pi * pi) + lam, tail_tol() * 16));
}

TEST(LGCoefficients, Limits) {
    Real lam = lg_lambda1();
    auto small = lg_coefficients(LGCase::oscillatory, lam, Real(1e-10));
    EXPECT_NEAR(small.B0.to_double(), 1.0 / 24, 1e-9);
    Real big(1e8);
    auto large = lg_coefficients(LGCase::exponential, lam, big);
    EXPECT_NEAR((sqrt(big) * large.B0).to_double(), 1.0 / 8, 1e-3);
    EXPECT_NEAR((large.A1 - lam).to_double(), 1.0 / 128, 1e-3);
    auto with_var = lg_coefficients(LGCase::exponential, lam, Real(1), true);
    EXPECT_GT(with_var.B1_variation_bound, 0.0);
    EXPECT_TRUE(with_var.B1_variation_bound.is_finite());
}

TEST(LGBessel, DerivativeRelationsByFiniteDifference) {
    Real u(19.5), h(1e-20);
    for (LGBessel kind : {LGBessel::Y, LGBessel::J, LGBessel::K})
        for (double xd : {0.3, 1.0, 2.2}) {
            Real xi(xd);
            auto p = lg_bessel_pair(kind, xi, u);
            auto pp = lg_bessel_pair(kind, xi + h, u);
            auto pm = lg_bessel_pair(kind, xi - h, u);
            Real fd_w = (pp.W - pm.W) / (2 * h);
            Real fd_v = (pp.V - pm.V) / (2 * h);
            EXPECT_TRUE(close(fd_w, p.dW, R("1e-30") * max(Real(1), abs(p.dW))));
            EXPECT_TRUE(close(fd_v, p.dV, R("1e-30") * max(Real(1), abs(p.dV))));
            Real sgn = kind == LGBessel::K ? Real(1) : Real(-1);
            EXPECT_TRUE(close(p.dW, p.W / (2 * xi) + sgn * u / (2 * xi) * p.V, tail_tol() * 64 * max(Real(1), abs(p.dW))));
        }
}

TEST(LGPartialSum, DerivativeByFiniteDifference) {
    Real h(1e-20);
    for (LGBessel kind : {LGBessel::Y, LGBessel::J, LGBessel::K}) {
        Real xi(kind == LGBessel::K ? 1.7 : 1.1);
        auto p = lg_partial_sum(kind, xi, 20, 1, lg_lambda1());
        auto pp = lg_partial_sum(kind, xi + h, 20, 1, lg_lambda1());
        auto pm = lg_partial_sum(kind, xi - h, 20, 1, lg_lambda1());
        EXPECT_TRUE(close((pp.Z - pm.Z) / (2 * h), p.dZ, R("1e-30") * max(Real(1), abs(p.dZ))));
    }
}

TEST(LGConstants, Limits) {
    EXPECT_NEAR(lg_constants(6).C_K.to_double(), 4.0, 0.2);
    EXPECT_NEAR(lg_constants(60).C_K.to_double(), 4.0, 0.02);
    EXPECT_LE(std::abs(lg_constants(80).C_Y.to_double() + 2 * M_PI), 1.0);
}

TEST(LGConstants, ZYLeadingTerm) {
    Real target = lg_lambda1() - Real(1) / 16;
    double prev = 1e300;
    for (int k : {20, 40, 80}) {
        Real u = Real(k) - Real(0.5);
        Real sign = (k / 2) % 2 ? Real(1) : Real(-1);
        Real lead = sign * lg_constants(k).Z_Y_at_xi2 * sqrt(u);
        double err = abs((lead - 1) * u * u - target).to_double();
        EXPECT_LT(err, prev) << k;
        prev = err;
    }
    EXPECT_LT(prev, 0.01);
}

TEST(LGConstants, CKWithinFittedOverK) {
    double c = 0;
    for (int k : {20, 40, 80}) c = std::max(c, k * std::abs((lg_constants(k).C_K - 4).to_double()));
    c *= 1.25;
    for (int k : {30, 60, 120, 240}) EXPECT_LE(k * std::abs((lg_constants(k).C_K - 4).to_double()), c) << k;
}

TEST(LGConstants, CJDecay) {
    double e = fitted_exponent(cj_grid(), [](int k) { return lg_constants(k).C_J.to_double(); });
    EXPECT_LE(e, -4.5);
}

TEST(LGConstants, PrintedLambdaDegradesCJ) {
    momentlab::testing::Lambda1Override hook(lg_lambda1_printed());
    double e = fitted_exponent(cj_grid(), [](int k) { return lg_constants(k).C_J.to_double(); });
    EXPECT_GT(e, -4.0);
}

TEST(LGConstants, PerturbedLambdaDegradesCJ) {
    momentlab::testing::Lambda1Override hook(lg_lambda1() + Real(0.01));
    double e = fitted_exponent(cj_grid(), [](int k) { return lg_constants(k).C_J.to_double(); });
    EXPECT_GT(e, -4.0);
}

TEST(LGApprox, ExactAtTurningPoint) {
    Real pi = const_pi();
    Real x2 = pi * pi / 4;
    for (int k = 2; k <= 200; k += 2) {
        auto c = lg_constants(k);
        // ξ₂^{1/4} (sin √ξ₂)^{1/2} φ_k(1/2) with sin √ξ₂ = 1
        Real lhs = sqrt(sqrt(x2)) * phi_k_series(Real(0.5), k).value.re;
        EXPECT_TRUE(close(c.C_Y * c.Z_Y_at_xi2, lhs, tail_tol() * 64 * abs(lhs))) << k;
    }
    for (int k : {2, 20, 40, 100}) {
        auto a = lg_approx_phi(Real(0.5), k, 1);
        EXPECT_LE(abs(a.value - phi_k_half_closed_form(k)), a.error_envelope) << k;
    }
}

TEST(LGApprox, PhiWithinEnvelope) {
    auto a = lg_approx_phi(Real(0.25), 40, 1);
    EXPECT_LE(abs(a.value - phi_k(Real(0.25), 40).value.re), a.error_envelope);
    EXPECT_FALSE(a.exact_fallback);
}

TEST(LGApprox, CapitalPhiWithinEnvelope) {
    KernelParams p;
    p.k = 40;
    auto a = lg_approx_Phi(Real(0.5), 40, 1);
    EXPECT_LE(abs(a.value - Phi_k(Real(0.5), p).value.re), a.error_envelope);
    for (double xd : {0.05, 0.2, 0.5, 0.8, 0.95}) EXPECT_GT(lg_approx_Phi(Real(xd), 40, 1).value, 0.0) << xd;
}

TEST(LGApprox, DecayShape) {
    // l/(l+1) with l = 4 against exp(-c k/√l)
    Real v4 = lg_approx_Phi(Real(0.8), 40, 1).value;
    Real v1 = lg_approx_Phi(Real(0.5), 40, 1).value;
    double c_hat = -std::log((v4 / v1).to_double()) / (40 * (1 / std::sqrt(4.0) - 1.0));
    EXPECT_GT(c_hat, 0.0);
}

TEST(LGApprox, RegimeError) {
    EXPECT_THROW(error_order_fit(LGCase::oscillatory, 1, {2, 4, 6}, Real(1e-3)), DomainError);
    EXPECT_THROW(error_order_fit(LGCase::oscillatory, 1, {20, 40}, Real(0.3)), DomainError);
}

TEST(LGErrorOrder, Slopes) {
    EXPECT_NEAR(error_order_fit(LGCase::oscillatory, 1, {20, 40, 80, 160}, Real(0.3)), -3.0, 0.3);
    EXPECT_NEAR(error_order_fit(LGCase::oscillatory, 0, {20, 40, 80, 160}, Real(0.3)), -1.0, 0.3);
    EXPECT_NEAR(error_order_fit(LGCase::exponential, 1, {20, 40, 80}, Real(0.5)), -3.0, 0.3);
    EXPECT_NEAR(error_order_fit(LGCase::exponential, 0, {20, 40, 80}, Real(0.6)), -1.0, 0.3);
}
