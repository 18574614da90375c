#include "momentlab/errors.hpp"
#include "momentlab/kernels.hpp"
#include "momentlab/modforms.hpp"
#include "momentlab/moments.hpp"
#include "support.hpp"

using namespace momentlab;
using momentlab::test::close;
using momentlab::test::R;

TEST(SecondMomentMain, Instances) {
    Real two_pi = 2 * const_pi();
    Real g = const_euler();
    EXPECT_TRUE(close(second_moment_main(1, 12), 2 * (2 * log(Real(6)) - 2 * log(two_pi) + 2 * g), tail_tol()));
    EXPECT_TRUE(close(second_moment_main(4, 20),
                      Real(2) * 3 / 2 * (2 * log(Real(10)) - log(Real(4)) - 2 * log(two_pi) + 2 * g), tail_tol()));
}

TEST(SecondMoment, OracleEqualityWeight12) {
    auto m = second_moment_exact(1, 12);
    EXPECT_LE(m.residual, m.certified_tail);
    EXPECT_LE(m.residual, 1e-20);
    EXPECT_TRUE(close(m.exact, m.main_term + m.phi_sum + m.Phi_sum, tail_tol()));
    Real L = form_space(12).forms[0].central_value;
    EXPECT_TRUE(close(m.oracle, form_space(12).weights.omega[0] * L * L, tail_tol()));
}

TEST(SecondMoment, OddKVanishes) {
    auto m = second_moment_exact(1, 18);
    EXPECT_TRUE(m.exact.is_zero());
    EXPECT_TRUE(m.oracle.is_zero());
}

TEST(SecondMoment, SinglePhiTermAtL2) {
    auto m = second_moment_exact(2, 12);
    // (1+(-1)^k) · ½ · 2^{-1/2} · τ(1)τ(1) φ_6(1/2)
    Real expect = phi_k_half_closed_form(6) / sqrt(Real(2));
    EXPECT_TRUE(close(m.phi_sum, expect, tail_tol() * 16));
    EXPECT_LE(m.residual, m.certified_tail);
}

TEST(SecondMoment, SummationOrderIndependence) {
    SecondMomentConfig fwd, rev;
    rev.reverse_order = true;
    for (int l : {1, 3}) {
        auto a = second_moment_exact(l, 16, fwd);
        auto b = second_moment_exact(l, 16, rev);
        EXPECT_TRUE(close(a.exact, b.exact, R("1e-30"))) << l;
    }
}

TEST(SecondMoment, GridMatchesSerial) {
    std::vector<std::pair<int, int>> pts{{1, 12}, {2, 16}, {3, 20}};
    auto grid = second_moment_grid(pts, {}, 3);
    ASSERT_EQ(grid.size(), 3u);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto s = second_moment_exact(pts[i].first, pts[i].second);
        EXPECT_EQ(grid[i].l, pts[i].first);
        EXPECT_TRUE(close(grid[i].exact, s.exact, Real(0)));
    }
}

TEST(SecondMoment, ShrinkingAsymptoticGap) {
    double prev = 1e300;
    for (int w : {12, 16, 20, 24, 28, 32, 36, 40}) {
        if ((w / 2) % 2) continue;
        double gap = abs(second_moment_exact(1, w).exact - second_moment_main(1, w)).to_double();
        EXPECT_LT(gap, prev) << w;
        prev = gap;
    }
}

TEST(SecondMomentUV, Identity) {
    auto m = second_moment_exact_uv(1, 12, Complex(0.1), Complex(0.0, 0.2));
    EXPECT_LE(m.residual, 1e-10);
}

TEST(SecondMomentUV, ConjugateSymmetry) {
    Complex u(0.1, 0.05), v(0.0, 0.2);
    auto a = second_moment_exact_uv(1, 12, u, v);
    auto b = second_moment_exact_uv(1, 12, conj(u), -conj(v));
    EXPECT_TRUE(close(a.rhs, conj(b.rhs), R("1e-12")));
    EXPECT_TRUE(close(a.lhs, conj(b.lhs), R("1e-20")));
}

TEST(SecondMomentUV, RichardsonLimit) {
    auto at = [](double h) { return second_moment_exact_uv(1, 12, Complex(h), Complex(0.0, h)).rhs; };
    double h = 0.004;
    Complex lim = (8 * at(h / 4) - 6 * at(h / 2) + at(h)) / 3;
    EXPECT_TRUE(close(lim, Complex(second_moment_exact(1, 12).exact), R("1e-6")));
}

TEST(SecondMomentUV, RejectsRealV) {
    EXPECT_THROW(second_moment_exact_uv(1, 12, Complex(0.1), Complex(0.2)), DomainError);
    EXPECT_THROW(second_moment_exact_uv(1, 12, Complex(0.1), Complex(0)), DomainError);
}

TEST(FirstMoment, ExactFormula) {
    auto fm = first_moment_exact(1, 12, Complex(0), Complex(0));
    EXPECT_LE(fm.residual, 1e-10);
    EXPECT_GT(fm.cn_max, 0);
}

TEST(FirstMoment, Weight80Envelope) {
    const auto& fs = form_space(80);
    Real sum(0);
    for (std::size_t i = 0; i < fs.forms.size(); ++i) sum += fs.weights.omega[i] * fs.forms[i].central_value;
    EXPECT_TRUE(close(first_moment_main(1, 80), Real(2), Real(0)));
    EXPECT_LE(abs(sum - 2), first_moment_envelope(1, 80));
}

TEST(FirstMoment, V1BelowShape) {
    auto fm = first_moment_exact(2, 80, Complex(0), Complex(0));
    EXPECT_LE(abs(fm.V1), first_moment_v1_shape(2, 80));
}

TEST(TestWeightBump, QuadratureSelfConsistency) {
    auto a = bump_weight(Real(1), Real(2));
    auto b = bump_weight(Real(1), Real(2), R("1e-40"));
    EXPECT_TRUE(close(a.H, b.H, R("1e-20")));
    EXPECT_TRUE(close(a.H1, b.H1, R("1e-20")));
    EXPECT_GT(a.H, 0.0);
    EXPECT_TRUE(a.evaluate(Real(1)).is_zero());
    EXPECT_TRUE(a.evaluate(Real(2.5)).is_zero());
    EXPECT_GT(a.evaluate(Real(1.5)), 0.0);
}

TEST(Averaged, FirstMomentAndRatio) {
    auto h = bump_weight(Real(1), Real(2));
    Real K(32);
    auto a1 = averaged_moments(1, K, h);
    auto a4 = averaged_moments(4, K, h);
    EXPECT_LT(abs(a1.A1_direct / a1.A1_predicted - 1).to_double(), 0.10);
    std::vector<int> expect{36, 40, 44, 48, 52, 56, 60};
    EXPECT_EQ(a1.weights, expect);
    Real c = 2 * log(K) + 2 * const_euler() + 2 * h.H1 / h.H - 2 * log(8 * const_pi());
    Real ratio = c / (Real(3) / 2 * (c - log(Real(4))));
    EXPECT_TRUE(close(a1.A2_predicted / a4.A2_predicted, ratio, tail_tol() * 16));
    EXPECT_THROW(averaged_moments(1, Real(2), h), DomainError);
}

TEST(Mollifier, Coefficients) {
    MollifierConfig cfg;
    cfg.M = Real(10.5);
    auto x = mollifier_coeffs(cfg);
    EXPECT_TRUE(close(x.at(1), Real(1), tail_tol()));
    for (long m : {4L, 8L, 9L}) EXPECT_TRUE(x.at(m).is_zero()) << m;
    Real r = log(Real(10.5) / 2) / log(Real(10.5));
    EXPECT_TRUE(close(x.at(2), -Real(2) / 3 * r * r, tail_tol()));
    for (const auto& [m, v] : x) EXPECT_LE(abs(v), 1.0) << m;
    EXPECT_EQ(x.rbegin()->first, 10);
    cfg.M = Real(10);
    EXPECT_THROW(mollifier_coeffs(cfg), DomainError);
    cfg.M = Real(0.5);
    EXPECT_THROW(mollifier_coeffs(cfg), DomainError);
}

TEST(Mollifier, TrivialLimitIsFirstMoment) {
    MollifierConfig cfg;
    cfg.M = Real(1.5);
    auto mm = mollified_moments(12, cfg);
    const auto& fs = form_space(12);
    Real first = fs.weights.omega[0] * fs.forms[0].central_value;
    EXPECT_TRUE(close(mm.M1, first, tail_tol() * 16));
}

TEST(Mollifier, Weight12Positive) {
    MollifierConfig cfg;
    auto mm = mollified_moments(12, cfg);
    EXPECT_GT(mm.M1, 0.0);
    EXPECT_GT(mm.M2, 0.0);
    EXPECT_GT(mm.M, 1.0);
}

TEST(Nonvanishing, Reports) {
    MollifierConfig cfg;
    auto r12 = nonvanishing_report(12, cfg);
    EXPECT_TRUE(close(r12.proportion_observed, Real(1), Real(0)));
    for (int w : {12, 16, 20, 24, 28}) {
        auto r = nonvanishing_report(w, cfg);
        EXPECT_LE(r.lower_bound, r.proportion_observed) << w;
        EXPECT_GT(r.lower_bound, 0.0);
        EXPECT_LE(r.lower_bound, 1.0);
    }
    EXPECT_TRUE(close(nonvanishing_target(Real(0.25)), Real(1) / 5, tail_tol()));
    EXPECT_TRUE(close(nonvanishing_target(Real(1)), Real(1) / 2, tail_tol()));
}

TEST(ErrorTerms, Weight40Grid) {
    for (int l = 1; l <= 8; ++l) {
        auto b = error_term_bounds(l, 40);
        EXPECT_LE(b.Phi_observed, b.Phi_bound) << l;
        EXPECT_LE(b.phi_observed, b.phi_bound) << l;
    }
}

TEST(ErrorTerms, PhiSumScaledBounded) {
    auto scaled = [](int w) { return (error_term_bounds(1, w).Phi_observed * sqrt(Real(w / 2))).to_double(); };
    double c = 0;
    for (int w : {12, 16, 20, 24, 28}) c = std::max(c, scaled(w));
    for (int w : {32, 40, 48}) EXPECT_LE(scaled(w), 1.25 * c) << w;
}
