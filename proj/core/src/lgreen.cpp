#include "momentlab/lgreen.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <optional>

#include "momentlab/bessel.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/kernels.hpp"
#include "momentlab/quadrature.hpp"

namespace momentlab {

namespace {

thread_local std::optional<Real> g_lambda1_override;

// Cancels the u^{-5/2} term of Z_Y'(ξ₂) - Z_Y(ξ₂)/π².
Real lambda1_exact() {
    Real pi = const_pi();
    return Real(1) / 16 + Real(75) / (32 * pi * pi);
}

Real xi2() {
    Real pi = const_pi();
    return pi * pi / 4;
}

// Extra bits lost to cancellation of the 1/ξ-type terms as ξ → 0.
int small_xi_bits(const Real& xi) {
    double l = -std::log2(xi.to_double());
    return l > 0 ? static_cast<int>(2 * l) + 16 : 16;
}

// t-derivatives (t = √ξ) of B0 and A1 without the constant of integration.
struct TForms {
    Real B0, A1, dB0_dt, dA1_dt;
};

TForms t_forms(LGCase which, const Real& t) {
    TForms f;
    Real t2 = t * t;
    Real t3 = t2 * t;
    if (which == LGCase::oscillatory) {
        Real c = cot(t);
        Real s = sin(t);
        Real csc2 = Real(1) / (s * s);
        Real d = c - Real(1) / t;
        f.B0 = -d / (8 * t);
        f.A1 = (Real(1) / t2 - c / (2 * t) - csc2 / 2) / 8 - d * d / 128;
        f.dB0_dt = (c / t2 + csc2 / t - Real(2) / t3) / 8;
        f.dA1_dt = (Real(-2) / t3 + c / (2 * t2) + csc2 / (2 * t) + csc2 * c) / 8 -
                   d * (Real(1) / t2 - csc2) / 64;
    } else {
        Real c = coth(t);
        Real s = sinh(t);
        Real csch2 = Real(1) / (s * s);
        Real d = c - Real(1) / t;
        f.B0 = d / (8 * t);
        f.A1 = -(Real(1) / t2 - c / (2 * t) - csch2 / 2) / 8 + d * d / 128;
        f.dB0_dt = (-csch2 / t - c / t2 + Real(2) / t3) / 8;
        f.dA1_dt = -(Real(-2) / t3 + c / (2 * t2) + csch2 / (2 * t) + csch2 * c) / 8 +
                   d * (Real(1) / t2 - csch2) / 64;
    }
    return f;
}

// ξA₁'' + A₁' - ψA₁, whose quotient by √ξ is ± (√ξ B₁)'.
Real b1_integrand(LGCase which, const Real& lambda1, const Real& xi) {
    int prec = working_prec();
    PrecisionGuard guard(prec + small_xi_bits(xi) + 64);
    Real h = xi * from_exp2(-40);
    auto dA1 = [&](const Real& z) {
        Real t = sqrt(z);
        return t_forms(which, t).dA1_dt / (2 * t);
    };
    Real t = sqrt(xi);
    Real a1 = t_forms(which, t).A1 + lambda1;
    Real d1 = dA1(xi);
    Real d2 = (dA1(xi + h) - dA1(xi - h)) / (2 * h);
    Real r = xi * d2 + d1 - lg_potential(which, xi) * a1;
    return r.rounded(prec);
}

Real b1_variation(LGCase which, const Real& lambda1, const Real& xi) {
    // ∫ |(√x B₁)'| dx over (ξ, ξ₂) or (ξ, ∞) on log-spaced Gauss–Legendre panels
    ContextGuard ctx(96);
    Real lo = log(Real(xi));
    Real hi = which == LGCase::oscillatory ? log(xi2()) : lo + Real(48);
    if (hi <= lo) return Real(0);
    const int panels = 96;
    Real step = (hi - lo) / panels;
    Real total(0);
    for (int p = 0; p < panels; ++p) {
        Real a = lo + step * p;
        Real b = a + step;
        RealIntegrand f = [&](const Real& s) {
            Real x = exp(s);
            return Complex(abs(b1_integrand(which, lambda1, x)) * x / sqrt(x));
        };
        total += gauss_legendre_integrate(f, a, b, 8).re;
    }
    return total;
}

Real bessel_modulus(LGBessel kind, const Real& z) {
    if (kind == LGBessel::K) return bessel_k(0, z);
    Real j = bessel_j0_mpfr(z);
    Real y = bessel_y0_mpfr(z);
    return sqrt(j * j + y * y);
}

void check_even(int k, const char* what) {
    if (k < 2 || k % 2 != 0) throw DomainError(std::string(what) + ": k must be an even integer ≥ 2");
}

void check_order(int N, const char* what) {
    if (N != 0 && N != 1) throw DomainError(std::string(what) + ": N must be 0 or 1");
}

// ξ^{1/4}(sin√ξ)^{1/2} resp. (ξ sinh²√ξ)^{1/4}
Real lg_amplitude(LGCase which, const Real& xi) {
    Real t = sqrt(xi);
    if (which == LGCase::oscillatory) return sqrt(sqrt(xi) * sin(t));
    Real s = sinh(t);
    return sqrt(sqrt(xi * s * s));
}

struct Raw {
    Real value;
    Real shape;  // envelope before the fitted constant
};

Raw approx_phi_raw(const Real& xi, int k, int N, const LGConstants& c) {
    Real u = Real(k) - Real(0.5);
    Real lam = lg_lambda1();
    LGPartialSum zy = lg_partial_sum(LGBessel::Y, xi, k, N, lam);
    LGPartialSum zj = lg_partial_sum(LGBessel::J, xi, k, N, Real(0));
    Real amp = lg_amplitude(LGCase::oscillatory, xi);
    Raw r;
    r.value = (c.C_Y * zy.Z + c.C_J * zj.Z) / amp;
    Real sx = sqrt(xi);
    Real m = bessel_modulus(LGBessel::Y, u * sx);
    Real un = pow(u, static_cast<long>(2 * N + 1));
    Real ey = abs(c.C_Y) * sx * m * sqrt(max(xi2() - xi, Real(0)));
    Real ej = abs(c.C_J) * sx * m * min(sx, Real(1));
    r.shape = (ey + ej) / (un * amp);
    return r;
}

Raw approx_Phi_raw(const Real& xi, int k, int N, const LGConstants& c) {
    Real u = Real(k) - Real(0.5);
    LGPartialSum zk = lg_partial_sum(LGBessel::K, xi, k, N, lg_lambda1());
    Real amp = lg_amplitude(LGCase::exponential, xi);
    Raw r;
    r.value = c.C_K * zk.Z / amp;
    Real sx = sqrt(xi);
    Real un = pow(u, static_cast<long>(2 * N + 1));
    Real shape;
    if (N == 0) {
        // Var_{ξ,∞}(√x B₀) = 1/8 - √ξ B₀(ξ)
        Real b0 = lg_coefficients(LGCase::exponential, Real(0), xi).B0;
        shape = Real(1) / 8 - sx * b0;
    } else {
        shape = min(sx, Real(1) / xi);
    }
    r.shape = abs(c.C_K) * sx * bessel_k(0, u * sx) * shape / (un * amp);
    return r;
}

// Round-off floor added to every envelope.
Real roundoff(const Real& v) { return abs(v) * from_exp2(32 - working_prec()) + from_exp2(-working_prec()); }

struct Calibration {
    std::array<std::array<double, 2>, 2> c{};
};

const Calibration& calibration() {
    static Calibration cal;
    static std::once_flag once;
    std::call_once(once, [] {
        ContextGuard ctx(128);
        std::optional<Real> saved = std::move(g_lambda1_override);
        g_lambda1_override.reset();
        const int ks[] = {20, 40};
        for (int N = 0; N <= 1; ++N) {
            double worst_phi = 0, worst_Phi = 0;
            for (int k : ks) {
                LGConstants c = lg_constants(k, N);
                for (int j = 0; j < 20; ++j) {
                    Real x = Real(0.025) * (j + 1);
                    Real xi = lg_transform(LGCase::oscillatory, x).xi;
                    Raw r = approx_phi_raw(xi, k, N, c);
                    Real exact = phi_k(x, k).value.re;
                    Real err = abs(r.value - exact);
                    if (r.shape.sign() > 0) worst_phi = std::max(worst_phi, (err / r.shape).to_double());

                    Real y = Real(0.05) + Real(0.9) * Real(j) / 19;
                    Real eta = lg_transform(LGCase::exponential, y).xi;
                    Raw s = approx_Phi_raw(eta, k, N, c);
                    KernelParams p;
                    p.k = k;
                    Real exact_Phi = Phi_k(y, p).value.re;
                    Real err_Phi = abs(s.value - exact_Phi);
                    if (s.shape.sign() > 0) worst_Phi = std::max(worst_Phi, (err_Phi / s.shape).to_double());
                }
            }
            cal.c[0][N] = 4 * worst_phi;
            cal.c[1][N] = 4 * worst_Phi;
        }
        g_lambda1_override = std::move(saved);
    });
    return cal;
}

}  // namespace

Real lg_lambda1() {
    if (g_lambda1_override) return *g_lambda1_override;
    return lambda1_exact();
}

Real lg_lambda1_printed() {
    Real pi = const_pi();
    return Real(1) / 16 + Real(405) / (32 * pi * pi);
}

namespace testing {
Lambda1Override::Lambda1Override(const Real& value) { g_lambda1_override = value; }
Lambda1Override::~Lambda1Override() { g_lambda1_override.reset(); }
}  // namespace testing

LGTransform lg_transform(LGCase which, const Real& x) {
    if (x.sign() <= 0 || x >= Real(1)) throw DomainError("lg_transform: x must lie in (0,1)");
    LGTransform r;
    Real om = Real(1) - x;
    if (which == LGCase::oscillatory) {
        Real a = asin(sqrt(x));
        r.xi = 4 * a * a;
        r.alpha = sqrt(sqrt(x * om)) / (2 * sqrt(a));
    } else {
        Real a = atanh(sqrt(om));
        r.xi = 4 * a * a;
        r.alpha = sqrt(sqrt(x * x * om)) / (2 * sqrt(a));
    }
    return r;
}

Real lg_inverse_transform(LGCase which, const Real& xi) {
    if (xi.sign() <= 0) throw DomainError("lg_inverse_transform: xi must be positive");
    Real h = sqrt(xi) / 2;
    if (which == LGCase::oscillatory) {
        if (xi >= 4 * xi2()) throw DomainError("lg_inverse_transform: xi must lie below pi^2");
        Real s = sin(h);
        return s * s;
    }
    Real c = cosh(h);
    return Real(1) / (c * c);
}

Real lg_potential(LGCase which, const Real& xi) {
    if (xi.sign() <= 0) throw DomainError("lg_potential: xi must be positive");
    Real pi = const_pi();
    if (which == LGCase::oscillatory && xi >= pi * pi) throw PoleError("lg_potential: pole at xi = pi^2");
    int prec = working_prec();
    Real r;
    {
        PrecisionGuard guard(prec + small_xi_bits(xi));
        Real t = sqrt(xi);
        if (which == LGCase::oscillatory) {
            Real s = sin(t);
            r = (Real(1) / (s * s) - Real(1) / xi) / 16;
        } else {
            Real s = sinh(t);
            r = (Real(1) / xi - Real(1) / (s * s)) / 16;
        }
    }
    return r.rounded(prec);
}

LGCoefficients lg_coefficients(LGCase which, const Real& lambda1, const Real& xi, bool with_variation) {
    if (xi.sign() <= 0) throw DomainError("lg_coefficients: xi must be positive");
    Real pi = const_pi();
    if (which == LGCase::oscillatory && xi >= pi * pi) throw PoleError("lg_coefficients: pole at xi = pi^2");
    int prec = working_prec();
    LGCoefficients c;
    {
        PrecisionGuard guard(prec + small_xi_bits(xi));
        Real t = sqrt(xi);
        TForms f = t_forms(which, t);
        c.A0 = Real(1);
        c.B0 = f.B0.rounded(prec);
        c.A1 = (f.A1 + lambda1).rounded(prec);
        c.dB0 = (f.dB0_dt / (2 * t)).rounded(prec);
        c.dA1 = (f.dA1_dt / (2 * t)).rounded(prec);
    }
    c.B1_variation_bound = with_variation ? b1_variation(which, lambda1, xi).rounded(prec) : Real(-1);
    return c;
}

LGBesselPair lg_bessel_pair(LGBessel kind, const Real& xi, const Real& u) {
    Real sx = sqrt(xi);
    Real z = u * sx;
    LGBesselPair p;
    if (kind == LGBessel::Y) {
        p.W = sx * bessel_y0_mpfr(z);
        p.V = xi * bessel_y1_mpfr(z);
    } else if (kind == LGBessel::J) {
        p.W = sx * bessel_j0_mpfr(z);
        p.V = xi * bessel_j1_mpfr(z);
    } else {
        p.W = sx * bessel_k(0, z);
        p.V = -xi * bessel_k(1, z);
    }
    if (kind == LGBessel::K)
        p.dW = p.W / (2 * xi) + u * p.V / (2 * xi);
    else
        p.dW = p.W / (2 * xi) - u * p.V / (2 * xi);
    p.dV = p.V / (2 * xi) + u * p.W / 2;
    return p;
}

LGPartialSum lg_partial_sum(LGBessel kind, const Real& xi, int k, int N, const Real& lambda1) {
    check_order(N, "lg_partial_sum");
    Real u = Real(k) - Real(0.5);
    LGCase which = kind == LGBessel::K ? LGCase::exponential : LGCase::oscillatory;
    LGBesselPair wv = lg_bessel_pair(kind, xi, u);
    Real SA(1), dSA(0), SB(0), dSB(0);
    if (N == 1) {
        LGCoefficients c = lg_coefficients(which, lambda1, xi);
        Real u2 = u * u;
        SA += c.A1 / u2;
        dSA = c.dA1 / u2;
        SB = c.B0;
        dSB = c.dB0;
    }
    // oscillatory: Z = W ΣA - (V/u) ΣB; K: Z = W ΣA + (V/u) ΣB with V = -ξK₁
    Real sgn = kind == LGBessel::K ? Real(1) : Real(-1);
    LGPartialSum r;
    r.Z = wv.W * SA + sgn * wv.V * SB / u;
    r.dZ = wv.dW * SA + wv.W * dSA + sgn * (wv.dV * SB + wv.V * dSB) / u;
    return r;
}

LGConstants lg_constants(int k, int N) {
    check_even(k, "lg_constants");
    check_order(N, "lg_constants");
    LGConstants c;
    Real pi = const_pi();
    Real x2 = xi2();
    Real lam = lg_lambda1();
    LGPartialSum zy = lg_partial_sum(LGBessel::Y, x2, k, N, lam);
    c.Z_Y_at_xi2 = zy.Z;
    c.Z_Y_prime_at_xi2 = zy.dZ;
    Real kk(k);
    // Γ(k/2)/Γ(k/2+1/2) in log space
    Real lratio = lngamma(kk / 2) - lngamma(kk / 2 + Real(0.5));
    Real ratio = exp(lratio);
    Real sgn = (k / 2) % 2 == 0 ? Real(1) : Real(-1);
    c.C_Y = sgn * 2 * sqrt(pi) * ratio * sqrt(sqrt(x2)) / zy.Z;
    c.C_J = -pi * pi * ratio * ratio / zy.Z * (zy.dZ - zy.Z / (pi * pi));

    Real u = kk - Real(0.5);
    Real bracket(1);
    if (N == 1) bracket = Real(1) + (Real(1) / 128 + lam) / (u * u) - Real(1) / (8 * u);
    Real lpre = log_Phi_prefactor(k) + 2 * kk * const_log2() + log(u) / 2 - log(pi) / 2;
    c.C_K = exp(lpre) / bracket;
    return c;
}

LGApprox lg_approx_phi(const Real& x, int k, int N) {
    check_even(k, "lg_approx_phi");
    check_order(N, "lg_approx_phi");
    if (x.sign() <= 0 || x >= Real(1)) throw DomainError("lg_approx_phi: x must lie in (0,1)");
    Real y = x > Real(0.5) ? Real(1) - x : x;
    Real xi = lg_transform(LGCase::oscillatory, y).xi;
    Real u = Real(k) - Real(0.5);
    LGApprox out;
    if (u * sqrt(xi) < Real(1)) {
        KernelValue kv = phi_k(y, k);
        out.value = kv.value.re;
        out.error_envelope = kv.tail_bound + roundoff(out.value);
        out.exact_fallback = true;
        return out;
    }
    LGConstants c = lg_constants(k, N);
    Raw r = approx_phi_raw(xi, k, N, c);
    out.value = r.value;
    out.error_envelope = Real(lg_envelope_constant(LGCase::oscillatory, N)) * r.shape + roundoff(r.value);
    return out;
}

LGApprox lg_approx_Phi(const Real& x, int k, int N) {
    check_even(k, "lg_approx_Phi");
    check_order(N, "lg_approx_Phi");
    if (x.sign() <= 0 || x >= Real(1)) throw DomainError("lg_approx_Phi: x must lie in (0,1)");
    Real xi = lg_transform(LGCase::exponential, x).xi;
    Real u = Real(k) - Real(0.5);
    LGApprox out;
    if (u * sqrt(xi) < Real(1)) {
        KernelParams p;
        p.k = k;
        KernelValue kv = Phi_k(x, p);
        out.value = kv.value.re;
        out.error_envelope = kv.tail_bound + roundoff(out.value);
        out.exact_fallback = true;
        return out;
    }
    LGConstants c = lg_constants(k, N);
    Raw r = approx_Phi_raw(xi, k, N, c);
    out.value = r.value;
    out.error_envelope = Real(lg_envelope_constant(LGCase::exponential, N)) * r.shape + roundoff(r.value);
    return out;
}

double lg_envelope_constant(LGCase which, int N) {
    check_order(N, "lg_envelope_constant");
    return calibration().c[which == LGCase::oscillatory ? 0 : 1][static_cast<std::size_t>(N)];
}

Real lg_windowed_error(LGCase which, int N, int k, const Real& x) {
    check_even(k, "lg_windowed_error");
    check_order(N, "lg_windowed_error");
    Real u = Real(k) - Real(0.5);
    Real t0 = sqrt(lg_transform(which, x).xi);
    Real pi = const_pi();
    LGConstants cn = lg_constants(k, N);
    Real worst(0);
    const int points = 16;
    for (int j = 0; j < points; ++j) {
        Real t = t0 + (2 * pi / u) * (Real(j) / (points - 1) - Real(0.5));
        Real xi = t * t;
        Real xj = lg_inverse_transform(which, xi);
        Real amp = lg_amplitude(which, xi);
        Real err, scale;
        if (which == LGCase::oscillatory) {
            Raw r = approx_phi_raw(xi, k, N, cn);
            err = abs(r.value - phi_k(xj, k).value.re);
            scale = abs(cn.C_Y) * t * bessel_modulus(LGBessel::Y, u * t) / amp;
        } else {
            Raw r = approx_Phi_raw(xi, k, N, cn);
            KernelParams p;
            p.k = k;
            err = abs(r.value - Phi_k(xj, p).value.re);
            scale = abs(cn.C_K) * t * bessel_modulus(LGBessel::K, u * t) / amp;
        }
        worst = max(worst, err / scale);
    }
    return worst;
}

double error_order_fit(LGCase which, int N, const std::vector<int>& k_list, const Real& x) {
    if (k_list.size() < 3) throw DomainError("error_order_fit: at least three weights are required");
    std::vector<double> lx, ly;
    for (int k : k_list) {
        Real u = Real(k) - Real(0.5);
        Real xi = lg_transform(which, x).xi;
        if (u * sqrt(xi) < Real(1)) throw DomainError("error_order_fit: weight outside the valid regime");
        lx.push_back(std::log(u.to_double()));
        ly.push_back(log(lg_windowed_error(which, N, k, x)).to_double());
    }
    double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace momentlab
