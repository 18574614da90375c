#include "momentlab/errors.hpp"
#include "momentlab/gamma.hpp"
#include "momentlab/kernels.hpp"
#include "support.hpp"

using namespace momentlab;
using momentlab::test::C;
using momentlab::test::close;
using momentlab::test::R;
using momentlab::test::rel_close;

namespace {

KernelParams params(int k, const Complex& u = Complex(0), const Complex& v = Complex(0)) {
    KernelParams p;
    p.k = k;
    p.u = u;
    p.v = v;
    return p;
}

}  // namespace

TEST(PhiK, HalfClosedForm) {
    EXPECT_TRUE(close(phi_k(Real(0.5), 2).value, Complex(-4), tail_tol()));
    for (int k : {2, 4, 6, 12, 20}) {
        Real closed = 2 * sqrt(const_pi()) * ((k / 2) % 2 ? Real(-1) : Real(1)) * gamma(Real(k) / 2) / gamma(Real(k + 1) / 2);
        EXPECT_TRUE(close(phi_k_half_closed_form(k), closed, tail_tol() * abs(closed)));
        EXPECT_TRUE(close(phi_k(Real(0.5), k).value, Complex(closed), tail_tol() * abs(closed))) << k;
    }
}

TEST(PhiK, ReferenceValues) {
    EXPECT_TRUE(close(phi_k(R("0.3"), 6).value, Complex(R("1.43889205253705223869567365779616627731303420")), R("1e-42")));
    EXPECT_TRUE(close(phi_k(R("0.1"), 8).value, Complex(R("1.81249241531519301433057064728035820283010467")), R("1e-42")));
    EXPECT_TRUE(close(phi_k(1 - R("0.3"), 6).value, phi_k(R("0.3"), 6).value, tail_tol()));
}

TEST(PhiK, Errors) {
    EXPECT_THROW(phi_k(Real(0.3), 7), DomainError);
    EXPECT_THROW(phi_k(Real(0), 6), DomainError);
    EXPECT_THROW(phi_k(Real(1.2), 6), DomainError);
}

TEST(PhiK, FunctionalEquationFromSeries) {
    Real worst(0);
    for (int k : {2, 4, 6, 12})
        for (int i = 1; i <= 19; ++i) {
            Real x = Real(i) / 20;
            worst = max(worst, abs(phi_k_series(x, k).value - phi_k_series(1 - x, k).value));
        }
    EXPECT_LE(worst, from_exp2(16 - working_prec()));
}

TEST(PhiK, DerivativeVanishesAtHalf) {
    for (int k : {2, 6, 12, 20}) EXPECT_LE(abs(phi_k_derivatives(Real(0.5), k).d1).to_double(), 1e-30) << k;
}

TEST(PhiK, LegendreHypergeometricExact) {
    for (int k = 2; k <= 40; k += 2) EXPECT_EQ(legendre_hypergeometric_exact(k, mpq_class(1, 2)), mpq_class(0)) << k;
    EXPECT_NE(legendre_hypergeometric_exact(3, mpq_class(1, 2)), mpq_class(0));
}

TEST(PhiUV, ReferenceValue) {
    Complex val = phi_k_uv(R("0.3"), params(6, Complex(R("0.1")), Complex(Real(0), R("0.2"))));
    EXPECT_TRUE(close(val, Complex(R("1.49677557892903239864483932992591892831011817")), R("1e-42")));
}

TEST(PhiUV, SymmetricInV) {
    const double pts[][4] = {{0.2, 0.1, 0.0, 0.3}, {0.45, -0.2, 0.1, 0.15}, {0.8, 0.05, -0.3, -0.4}};
    for (const auto& p : pts) {
        Complex u(p[1], p[2]), v(0.0, p[3]);
        Complex a = phi_k_uv(Real(p[0]), params(6, u, v));
        Complex b = phi_k_uv(Real(p[0]), params(6, u, -v));
        EXPECT_TRUE(close(a, b, tail_tol() * 64 * max(Real(1), abs(a))));
    }
}

TEST(PhiUV, RichardsonLimitMatchesCentral) {
    for (int k : {6, 8})
        for (int i = 1; i <= 5; ++i) {
            Real x = Real(i) / 10;
            Real h(1e-3);
            Complex f1 = phi_k_uv(x, params(k, Complex(0), Complex(Real(0), h)));
            Complex f2 = phi_k_uv(x, params(k, Complex(0), Complex(Real(0), h / 2)));
            Complex lim = (4 * f2 - f1) / 3;
            EXPECT_TRUE(close(lim, phi_k(x, k).value, R("1e-8"))) << k << " " << i;
        }
}

TEST(PhiUV, RejectsZeroV) { EXPECT_THROW(phi_k_uv(Real(0.3), params(6)), DomainError); }

TEST(PhiUV, SmallXPrefactor) {
    Complex u(0.1), v(0.0, 0.25);
    Real x(1e-12);
    int k = 6;
    Complex lead = pow(Complex(2 * const_pi()), 2 * u + 1) / (2 * cos(Complex(const_pi()) * (Complex(0.5) + v))) *
                   gamma_fn(Complex(k) - u + v) / (gamma_fn(2 * v + 1) * gamma_fn(Complex(k) + u - v)) * pow(x, v);
    Complex val = phi_tilde(x, params(k, u, v));
    EXPECT_TRUE(rel_close(val, lead, R("1e-8")));
}

TEST(PhiCapital, ReferenceValues) {
    EXPECT_TRUE(close(Phi_k(Real(0.5), params(6)).value, Complex(R("0.00007643144257816506998749488899480880011892")),
                      R("1e-42")));
    EXPECT_TRUE(close(Phi_k(R("0.9"), params(10)).value, Complex(R("0.00377102169738688249426447246550086895827520044")),
                      R("1e-44")));
    // prefactor 2(2π)^{2u}Γ(k-u+v)Γ(k-u-v)/Γ(2k) sin π(1/2+u)
    EXPECT_TRUE(close(Phi_k(Real(0.5), params(6, Complex(R("0.1")), Complex(Real(0), R("0.2")))).value,
                      Complex(R("0.0000744150701546630129652442702119418991058873")), R("1e-44")));
}

TEST(PhiCapital, LeadingTerm) {
    Real x(1e-3);
    Real lead = exp(log_Phi_prefactor(6)) * pow(x, 6L);
    EXPECT_LT(abs(Phi_k(x, params(6)).value.re / lead - 1).to_double(), 0.005);
    EXPECT_LT(abs(psi_k(x, params(6)).value.re / lead - 1).to_double(), 0.01);
}

TEST(PhiCapital, PrecisionConsistency) {
    Complex lo, hi;
    {
        ContextGuard g(128);
        lo = Phi_k(Real(0.5), params(6)).value;
    }
    hi = Phi_k(Real(0.5), params(6)).value;
    EXPECT_TRUE(close(lo, hi, R("1e-28") * abs(hi)));
}

TEST(PhiCapital, PsiRelation) {
    for (int k : {6, 10})
        for (double xd : {0.1, 1.0, 10.0}) {
            Real x(xd);
            Complex a = psi_k(x, params(k)).value;
            Complex b = Phi_k(x / (1 + x), params(k)).value;
            EXPECT_TRUE(close(a, b, tail_tol() * max(Real(1), abs(a)))) << k << " " << xd;
        }
    const int pairs[][2] = {{1, 1}, {2, 3}, {5, 7}};
    for (const auto& p : pairs) {
        Real l(p[0]), n(p[1]);
        Complex a = psi_k(l / n, params(6)).value;
        Complex b = Phi_k(l / (n + l), params(6)).value;
        EXPECT_TRUE(close(a, b, tail_tol() * max(Real(1), abs(a))));
    }
}

TEST(PhiCapital, DecreasingInK) {
    for (double xd : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        Real prev(1e300);
        for (int k = 6; k <= 30; k += 2) {
            Real cur = Phi_k(Real(xd), params(k)).value.re;
            EXPECT_LT(cur, prev) << xd << " " << k;
            prev = cur;
        }
    }
}

TEST(Kernels, CentralValuesAreReal) {
    for (double xd : {0.2, 0.5, 0.8}) {
        EXPECT_LE(abs(phi_k(Real(xd), 8).value.im), tail_tol());
        EXPECT_LE(abs(Phi_k(Real(xd), params(8)).value.im), tail_tol());
        EXPECT_LE(abs(psi_k(Real(xd), params(8)).value.im), tail_tol());
    }
}

TEST(Kernels, TailBoundShrinks) {
    auto a = Phi_k(Real(0.5), params(6));
    EXPECT_GE(a.tail_bound, 0.0);
    EXPECT_LE(a.tail_bound, tail_tol());
}

TEST(Ode, SpecExamples) {
    EXPECT_LE(ode_residual(OdeForm::phi, Real(0.3), 6), 1e-60);
    EXPECT_LE(ode_residual(OdeForm::Y_form, Real(0.25), 8), 1e-60);
    EXPECT_LE(ode_residual(OdeForm::Phi_form, Real(0.5), 6), 1e-60);
}

TEST(Ode, EndpointProximity) {
    EXPECT_THROW(ode_residual(OdeForm::phi, Real(1e-4), 6), DomainError);
    EXPECT_THROW(ode_residual(OdeForm::Phi_form, Real(1) - Real(1e-4), 6), DomainError);
}
