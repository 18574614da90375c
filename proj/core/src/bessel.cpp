#include "momentlab/bessel.hpp"

#include <cmath>

#include "momentlab/errors.hpp"
#include "momentlab/gamma.hpp"

namespace momentlab {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kKSeriesMax = 8.0;

int oscillation_bits(const Real& x) { return static_cast<int>(std::ceil(x.to_double() / kLn2)) + 64; }

void check_positive(const Real& x, const char* what) {
    if (x.sign() <= 0) throw DomainError(std::string(what) + ": x must be positive");
}

// Σ_m sign^m (x/2)^{2m} / (m! (m+ν)_m...) with leading factor supplied.
Complex power_series(const Complex& lead, const Complex& nu, const Real& x, int sign) {
    Real q = x * x / 4;
    if (sign < 0) q = -q;
    Complex term = lead;
    Complex sum = term;
    Real tol = from_exp2(-working_prec() - 8);
    Real xd = x / 2;
    for (long m = 1; m < 100000; ++m) {
        term = term * q / (Complex(Real(m)) * (nu + Real(m)));
        sum += term;
        if (m > xd.to_double() + 2 && abs(term) <= tol * abs(sum)) break;
    }
    return sum;
}

Real j_series_real(const Real& nu, const Real& x) {
    Complex lead = pow(x / 2, Complex(nu)) * rgamma(Complex(nu + Real(1)));
    if (lead.is_zero()) {
        // negative integer order: J_{-n} = (-1)^n J_n
        long n = -nu.to_long();
        Real v = j_series_real(Real(n), x);
        return (n % 2 == 0) ? v : -v;
    }
    return power_series(lead, Complex(nu), x, -1).re;
}

// Σ_{m≥0} c_m (±x²/4)^m/(m!(m+n)!) with c_m = ψ(m+1)+ψ(m+n+1) + 2γ = H_m + H_{m+n}.
Real harmonic_series(int n, const Real& x, int sign) {
    Real q = x * x / 4;
    if (sign < 0) q = -q;
    Real tol = from_exp2(-working_prec() - 8);
    Real base = Real(1) / factorial(static_cast<unsigned long>(n));
    Real hm(0), hmn(0);
    for (int i = 1; i <= n; ++i) hmn += Real(1) / Real(i);
    Real sum = base * (hm + hmn);
    Real xd = x / 2;
    for (long m = 1; m < 100000; ++m) {
        base = base * q / (Real(m) * Real(m + n));
        hm += Real(1) / Real(m);
        hmn += Real(1) / Real(m + n);
        Real term = base * (hm + hmn);
        sum += term;
        if (m > xd.to_double() + 2 && abs(term) <= tol * max(abs(sum), Real(1e-300))) break;
    }
    return sum;
}

Real y_series(int n, const Real& x) {
    Real pi = const_pi();
    Real gamma_e = const_euler();
    Real lx = log(x / 2);
    if (n == 0) {
        Real j0 = j_series_real(Real(0), x);
        // Σ (H_m) (-x²/4)^m/(m!)²: harmonic_series gives H_m + H_m = 2H_m
        Real s = harmonic_series(0, x, -1) / 2;
        return 2 / pi * ((lx + gamma_e) * j0 - s);
    }
    Real j1 = j_series_real(Real(1), x);
    // Σ (ψ(m+1)+ψ(m+2)) (-x²/4)^m /(m!(m+1)!) = Σ (H_m + H_{m+1} - 2γ)(...)
    Real s_h = harmonic_series(1, x, -1);
    Real s_plain = j1 * 2 / x;  // Σ (-x²/4)^m/(m!(m+1)!) = J_1(x)/(x/2)
    Real s = s_h - 2 * gamma_e * s_plain;
    return -2 / (pi * x) + 2 / pi * lx * j1 - x / (2 * pi) * s;
}

Real i_series_real(const Real& nu, const Real& x) {
    Complex lead = pow(x / 2, Complex(nu)) * rgamma(Complex(nu + Real(1)));
    return power_series(lead, Complex(nu), x, +1).re;
}

Real k_series(int n, const Real& x) {
    Real gamma_e = const_euler();
    Real lx = log(x / 2);
    if (n == 0) {
        Real i0 = i_series_real(Real(0), x);
        Real s = harmonic_series(0, x, +1) / 2;
        return -(lx + gamma_e) * i0 + s;
    }
    Real i1 = i_series_real(Real(1), x);
    Real s_h = harmonic_series(1, x, +1);
    Real s_plain = i1 * 2 / x;
    Real s = s_h - 2 * gamma_e * s_plain;
    return Real(1) / x + lx * i1 - x / 4 * s;
}

Complex cosh_complex_arg(const Complex& nu, const Real& t) {
    if (nu.im.is_zero()) return Complex(cosh(nu.re * t));
    Complex z = nu * t;
    return (exp(z) + exp(-z)) / 2;
}

// K_ν(x) = ∫_0^∞ e^{-x cosh t} cosh(νt) dt by the trapezoid rule, which is
// spectrally accurate for this even, entire integrand.
Complex k_integral(const Complex& nu, const Real& x) {
    int prec = working_prec();
    double xd = x.to_double();
    double budget = prec * kLn2 + 64 + xd / 2;
    Real h = Real(2.0 / 3.0) * const_pi() * const_pi() / Real(budget);
    double nu_re = std::abs(nu.re.to_double());
    Complex sum = Complex(exp(-x)) / 2;
    Real hd = h;
    for (long j = 1; j < 1000000; ++j) {
        Real t = hd * j;
        Real ct = cosh(t);
        double decay = xd * (ct.to_double() - 1) - nu_re * t.to_double();
        Complex c = cosh_complex_arg(nu, t);
        sum += c * exp(-x * ct);
        if (decay > budget) break;
    }
    return sum * h;
}

}  // namespace

Real bessel_j(const Real& order, const Real& x) {
    check_positive(x, "bessel_j");
    int prec = working_prec();
    Real r;
    {
        PrecisionGuard guard(prec + oscillation_bits(x));
        r = j_series_real(order, x);
    }
    return r.rounded(prec);
}

Real bessel_y(int order, const Real& x) {
    check_positive(x, "bessel_y");
    if (order != 0 && order != 1) throw DomainError("bessel_y: order must be 0 or 1");
    int prec = working_prec();
    Real r;
    {
        PrecisionGuard guard(prec + oscillation_bits(x));
        r = y_series(order, x);
    }
    return r.rounded(prec);
}

Real bessel_i(const Real& order, const Real& x) {
    check_positive(x, "bessel_i");
    int prec = working_prec();
    Real r;
    {
        PrecisionGuard guard(prec + 32);
        r = i_series_real(order, x);
    }
    return r.rounded(prec);
}

Real bessel_k(int order, const Real& x) {
    check_positive(x, "bessel_k");
    if (order != 0 && order != 1) throw DomainError("bessel_k: order must be 0 or 1");
    int prec = working_prec();
    Real r;
    if (x.to_double() <= kKSeriesMax) {
        PrecisionGuard guard(prec + 2 * oscillation_bits(x));
        r = k_series(order, x);
    } else {
        PrecisionGuard guard(prec + 32);
        r = k_integral(Complex(Real(order)), x).re;
    }
    return r.rounded(prec);
}

Real bessel(BesselKind kind, const Real& order, const Real& x) {
    switch (kind) {
        case BesselKind::J: return bessel_j(order, x);
        case BesselKind::Y:
        case BesselKind::K: {
            if (order != Real(0) && order != Real(1)) throw DomainError("bessel: Y and K support orders 0 and 1");
            int n = static_cast<int>(order.to_long());
            return kind == BesselKind::Y ? bessel_y(n, x) : bessel_k(n, x);
        }
    }
    throw DomainError("bessel: unknown kind");
}

Complex bessel_j_complex(const Complex& order, const Real& x) {
    check_positive(x, "bessel_j_complex");
    int prec = working_prec();
    Complex r;
    {
        PrecisionGuard guard(prec + oscillation_bits(x));
        Complex lead = pow(x / 2, order) * rgamma(order + Real(1));
        r = power_series(lead, order, x, -1);
    }
    return rounded(r, prec);
}

Complex bessel_k_complex(const Complex& order, const Real& x) {
    check_positive(x, "bessel_k_complex");
    if (order.im.is_zero() && (order.re == Real(0) || order.re == Real(1) || order.re == Real(-1)))
        return Complex(bessel_k(static_cast<int>(std::abs(order.re.to_long())), x));
    int prec = working_prec();
    Complex r;
    if (x.to_double() <= kKSeriesMax) {
        double mag = to_double_abs(order);
        int extra = 2 * oscillation_bits(x) + (mag < 1 ? static_cast<int>(std::ceil(-std::log2(mag))) : 0);
        PrecisionGuard guard(prec + extra);
        // K_ν = π/(2 sin νπ) (I_{-ν} - I_ν)
        Complex neg = -order;
        Complex ip = power_series(pow(x / 2, order) * rgamma(order + Real(1)), order, x, +1);
        Complex im = power_series(pow(x / 2, neg) * rgamma(neg + Real(1)), neg, x, +1);
        Real pi = const_pi();
        r = pi / 2 * (im - ip) / sin(pi * order);
    } else {
        PrecisionGuard guard(prec + 32);
        r = k_integral(order, x);
    }
    return rounded(r, prec);
}

}  // namespace momentlab
