#include "momentlab/kernels.hpp"

#include <cmath>
#include <vector>

#include "momentlab/errors.hpp"
#include "momentlab/gamma.hpp"
#include "momentlab/hypergeometric.hpp"

namespace momentlab {

namespace {

void check_unit_interval(const Real& x, const char* what) {
    if (x.sign() <= 0 || x >= Real(1)) throw DomainError(std::string(what) + ": x must lie in (0,1)");
}

// Exact polynomial data of the φ_k series: A(n) and c_n = H_{k+n-1} + H_{k-n-1} - 2H_n.
struct PhiPoly {
    std::vector<mpz_class> A;
    std::vector<mpq_class> c;
};

PhiPoly phi_poly(int k) {
    PhiPoly p;
    std::vector<mpq_class> H(static_cast<std::size_t>(2 * k + 1));
    H[0] = 0;
    for (int i = 1; i <= 2 * k; ++i) {
        H[static_cast<std::size_t>(i)] = H[static_cast<std::size_t>(i - 1)] + mpq_class(1, i);
        H[static_cast<std::size_t>(i)].canonicalize();
    }
    for (int n = 0; n < k; ++n) {
        // (k+n-1)! / ((k-n-1)! n!²)
        mpz_class num(1);
        for (int i = k - n; i <= k + n - 1; ++i) num *= i;
        mpz_class nf(1);
        for (int i = 2; i <= n; ++i) nf *= i;
        mpz_class a = num / (nf * nf);
        if (n % 2 == 1) a = -a;
        p.A.push_back(a);
        mpq_class cn = H[static_cast<std::size_t>(k + n - 1)] + H[static_cast<std::size_t>(k - n - 1)] -
                       2 * H[static_cast<std::size_t>(n)];
        cn.canonicalize();
        p.c.push_back(cn);
    }
    return p;
}

double log2_abs(const mpq_class& q) {
    if (q == 0) return -1e300;
    long e1, e2;
    double m1 = mpz_get_d_2exp(&e1, q.get_num_mpz_t());
    double m2 = mpz_get_d_2exp(&e2, q.get_den_mpz_t());
    return std::log2(std::abs(m1)) - std::log2(std::abs(m2)) + static_cast<double>(e1 - e2);
}

// φ_k and derivatives up to `order` straight from the series (no reflection).
PhiDerivatives phi_series_core(const Real& x, int k, int order, Real* tail_bound) {
    int prec = working_prec();
    mpq_class xq = to_mpq(x);
    PhiPoly poly = phi_poly(k);

    // exact polynomial parts and derivatives: P1 = Σ A xⁿ, P2 = Σ A c xⁿ
    mpq_class P1[3], P2[3];
    mpq_class xpow(1);
    std::vector<mpq_class> xp(static_cast<std::size_t>(k + 1));
    for (int n = 0; n <= k; ++n) {
        xp[static_cast<std::size_t>(n)] = xpow;
        xpow *= xq;
    }
    double maxlog = 0;
    for (int n = 0; n < k; ++n) {
        const mpz_class& a = poly.A[static_cast<std::size_t>(n)];
        const mpq_class& cn = poly.c[static_cast<std::size_t>(n)];
        for (int d = 0; d <= order; ++d) {
            if (n < d) continue;
            mpz_class fall(1);
            for (int i = 0; i < d; ++i) fall *= (n - i);
            mpq_class t = mpq_class(a * fall) * xp[static_cast<std::size_t>(n - d)];
            P1[d] += t;
            P2[d] += t * cn;
        }
        maxlog = std::max(maxlog, log2_abs(mpq_class(a) * cn * xp[static_cast<std::size_t>(n)]));
        maxlog = std::max(maxlog, log2_abs(mpq_class(a) * xp[static_cast<std::size_t>(n)]) + 8);
    }
    for (int d = 0; d <= order; ++d) {
        P1[d].canonicalize();
        P2[d].canonicalize();
    }
    // C(k) x^k = (2k-1)!/(k!)² x^k bounds the tail terms
    double xd = x.to_double();
    double lck = (std::lgamma(2.0 * k) - 2 * std::lgamma(k + 1.0)) / std::log(2.0) + k * std::log2(xd);
    maxlog = std::max(maxlog, lck);
    int extra = 32 + static_cast<int>(std::ceil(std::max(0.0, maxlog))) + 8 * order;

    PhiDerivatives out;
    {
        PrecisionGuard guard(prec + extra);
        Real xr(xq);
        Real lx = log(xr);
        Real tail_sum[3] = {Real(0), Real(0), Real(0)};
        // C(n) xⁿ, n ≥ k, ratio (n+k)(n-k+1)/(n+1)² · x
        Real cterm = exp(lngamma(Real(2 * k)) - 2 * lngamma(Real(k + 1))) * pow(xr, static_cast<long>(k));
        Real abs_tol = min(tail_tol() * from_exp2(-16), from_exp2(-(prec + 8)));
        Real bound(0);
        for (long n = k; n < kSeriesLengthCap; ++n) {
            Real rn(n);
            tail_sum[0] += cterm;
            if (order >= 1) tail_sum[1] += cterm * rn / xr;
            if (order >= 2) tail_sum[2] += cterm * rn * (rn - Real(1)) / (xr * xr);
            // majorant of the ratio of consecutive terms across all requested orders
            double nd = static_cast<double>(n);
            double rho = xd * (order >= 2 ? (nd + 1) / (nd - 1) : order >= 1 ? (nd + 1) / nd : 1.0);
            if (nd <= 1) rho = 2;
            Real next = cterm * (rn + Real(k)) * (rn - Real(k) + Real(1)) / ((rn + Real(1)) * (rn + Real(1))) * xr;
            if (rho < 1.0) {
                double scale = order >= 2 ? (nd + 1) * nd / (xd * xd) : order >= 1 ? (nd + 1) / xd : 1.0;
                bound = next * Real(scale / (1.0 - rho));
                if (bound <= abs_tol) break;
            }
            cterm = next;
        }
        Real sgn = (k % 2 == 0) ? Real(2) : Real(-2);
        Real p1_0(P1[0]), p2_0(P2[0]);
        out.value = -2 * lx * p1_0 - 2 * p2_0 + sgn * tail_sum[0];
        if (order >= 1) {
            Real p1_1(P1[1]), p2_1(P2[1]);
            out.d1 = -2 * p1_0 / xr - 2 * lx * p1_1 - 2 * p2_1 + sgn * tail_sum[1];
            if (order >= 2) {
                Real p1_2(P1[2]), p2_2(P2[2]);
                out.d2 = 2 * p1_0 / (xr * xr) - 4 * p1_1 / xr - 2 * lx * p1_2 - 2 * p2_2 + sgn * tail_sum[2];
            }
        }
        if (tail_bound) *tail_bound = (2 * bound).rounded(prec);
    }
    out.value = out.value.rounded(prec);
    out.d1 = out.d1.rounded(prec);
    out.d2 = out.d2.rounded(prec);
    return out;
}

bool is_central(const KernelParams& p) { return p.u.is_zero() && p.v.is_zero(); }

}  // namespace

Real log_Phi_prefactor(int k) {
    return const_log2() + 2 * lngamma(Real(k)) - lngamma(Real(2 * k));
}

KernelValue phi_k_series(const Real& x, int k) {
    check_unit_interval(x, "phi_k");
    if (k < 1) throw DomainError("phi_k: k must be positive");
    KernelValue kv;
    kv.x = x;
    Real tb;
    PhiDerivatives d = phi_series_core(x, k, 0, &tb);
    kv.value = Complex(d.value);
    kv.tail_bound = tb;
    return kv;
}

KernelValue phi_k(const Real& x, int k) {
    check_unit_interval(x, "phi_k");
    if (k % 2 != 0) throw DomainError("phi_k: k must be even at the central point");
    if (x > Real(0.5)) {
        KernelValue kv = phi_k_series(Real(1) - x, k);
        kv.x = x;
        return kv;
    }
    return phi_k_series(x, k);
}

PhiDerivatives phi_k_derivatives(const Real& x, int k) {
    check_unit_interval(x, "phi_k_derivatives");
    return phi_series_core(x, k, 2, nullptr);
}

Real phi_k_half_closed_form(int k) {
    if (k % 2 != 0) throw DomainError("phi_k_half_closed_form: k must be even");
    Real r = 2 * sqrt(const_pi()) * exp(lngamma(Real(k) / 2) - lngamma(Real(k + 1) / 2));
    return (k / 2) % 2 == 0 ? r : -r;
}

mpq_class legendre_hypergeometric_exact(int k, const mpq_class& x) {
    return *gauss_2f1_exact(mpq_class(k), mpq_class(1 - k), mpq_class(1), x);
}

Complex phi_tilde(const Real& x, const KernelParams& p) {
    check_unit_interval(x, "phi_tilde");
    int prec = working_prec();
    Complex r;
    {
        PrecisionGuard guard(prec + 32);
        const Complex& u = p.u;
        const Complex& v = p.v;
        Real k(p.k);
        Real pi = const_pi();
        Complex one(Real(1));
        Complex a = k - u + v;
        Complex b = one - k - u + v;
        Complex c = one + 2 * v;
        Complex lg = log_gamma(a) - log_gamma(k + u - v) + (2 * u + one) * log(2 * pi) + v * log(x) -
                     u * log(Real(1) - x);
        Complex pref = exp(lg) * rgamma(c) / (2 * cos(pi * (Complex(Real(0.5)) + v)));
        r = pref * gauss_2f1(a, b, c, x);
    }
    return rounded(r, prec);
}

Complex phi_k_uv(const Real& x, const KernelParams& p) {
    if (p.v.is_zero()) throw DomainError("phi_k_uv: v must be nonzero");
    KernelParams q = p;
    q.v = -p.v;
    return phi_tilde(x, p) + phi_tilde(x, q);
}

KernelValue Phi_k(const Real& x, const KernelParams& p) {
    check_unit_interval(x, "Phi_k");
    int prec = working_prec();
    KernelValue kv;
    kv.x = x;
    {
        PrecisionGuard guard(prec + 32);
        Real k(p.k);
        Complex a = k - p.u + p.v;
        Complex b = k - p.u - p.v;
        Complex c(Real(2 * p.k));
        SeriesValue f = gauss_2f1_series(a, b, c, x);
        Complex pref;
        if (is_central(p)) {
            pref = Complex(exp(log_Phi_prefactor(p.k) + k * log(x)));
        } else {
            Real pi = const_pi();
            Complex lg = const_log2() + 2 * p.u * log(2 * pi) + log_gamma(a) + log_gamma(b) -
                         lngamma(Real(2 * p.k)) + k * log(x) - p.u * log(Real(1) - x);
            pref = exp(lg) * sin(pi * (Complex(Real(0.5)) + p.u));
        }
        kv.value = rounded(pref * f.value, prec);
        kv.tail_bound = f.slow ? Real(-1) : (abs(pref) * f.tail_bound).rounded(prec);
        kv.slow = f.slow;
    }
    return kv;
}

KernelValue psi_k(const Real& x, const KernelParams& p) {
    if (x.sign() <= 0) throw DomainError("psi_k: x must be positive");
    int prec = working_prec();
    KernelValue kv;
    kv.x = x;
    {
        PrecisionGuard guard(prec + 32);
        Real k(p.k);
        Complex a = k - p.u + p.v;
        Complex b = k - p.u - p.v;
        Complex c(Real(2 * p.k));
        Real pi = const_pi();
        Complex lg = const_log2() + 2 * p.u * log(2 * pi) + log_gamma(a) + log_gamma(b) - lngamma(Real(2 * p.k)) +
                     k * log(x) - p.u * log1p(x);
        Complex pref = exp(lg) * sin(pi * (Complex(Real(0.5)) + p.v));
        SeriesValue f;
        if (x <= Real(0.5)) {
            f = gauss_2f1_series(a, b, c, -x);
        } else {
            // Pfaff: ₂F₁(a,b;c;-x) = (1+x)^{-a} ₂F₁(a, c-b; c; x/(1+x))
            Real y = x / (Real(1) + x);
            f = gauss_2f1_series(a, c - b, c, y);
            Complex scale = exp(-a * log1p(x));
            f.value = f.value * scale;
            f.tail_bound = f.tail_bound * abs(scale);
        }
        kv.value = rounded(pref * f.value, prec);
        kv.tail_bound = f.slow ? Real(-1) : (abs(pref) * f.tail_bound).rounded(prec);
        kv.slow = f.slow;
    }
    return kv;
}

Real ode_residual(OdeForm which, const Real& x, int k) {
    if (x < 1e-3 || x > Real(1) - Real(1e-3))
        throw DomainError("ode_residual: x too close to an endpoint");
    int prec = working_prec();
    Real out;
    {
        PrecisionGuard guard(prec + 32);
        Real kk(k);
        Real kk1 = kk * (kk - Real(1));
        Real p = x - x * x;
        if (which == OdeForm::phi || which == OdeForm::Y_form) {
            PhiDerivatives d = phi_k_derivatives(x, k);
            if (which == OdeForm::phi) {
                Real t1 = p * d.d2;
                Real t2 = (Real(1) - 2 * x) * d.d1;
                Real t3 = kk1 * d.value;
                Real scale = max(abs(t1), max(abs(t2), abs(t3)));
                out = abs(t1 + t2 + t3) / scale;
            } else {
                // Y = √p φ, Y'' + (1/(4p²) + k(k-1)/p) Y = 0
                Real s = sqrt(p);
                Real dp = Real(1) - 2 * x;
                Real s1 = dp / (2 * s);
                Real s2 = Real(-2) / (2 * s) - dp * dp / (4 * p * s);
                Real y = s * d.value;
                Real y2 = s2 * d.value + 2 * s1 * d.d1 + s * d.d2;
                Real q = Real(1) / (4 * p * p) + kk1 / p;
                Real t2 = q * y;
                Real scale = max(abs(y2), abs(t2));
                out = abs(y2 + t2) / scale;
            }
        } else {
            // y = F x^k √(1-x) with F = ₂F₁(k,k;2k;x); y'' - (u² f + g) y = 0
            Complex ka(kk), c2(Real(2 * k));
            Real F0 = gauss_2f1(ka, ka, c2, x).re;
            Real F1 = (kk * kk / (2 * kk)) * gauss_2f1(ka + Real(1), ka + Real(1), c2 + Real(1), x).re;
            Real F2 = (kk * kk * (kk + Real(1)) * (kk + Real(1)) / (2 * kk * (2 * kk + Real(1)))) *
                      gauss_2f1(ka + Real(2), ka + Real(2), c2 + Real(2), x).re;
            // g(x) = x^k (1-x)^{1/2}
            Real om = Real(1) - x;
            Real g0 = pow(x, kk) * sqrt(om);
            Real g1 = g0 * (kk / x - Real(1) / (2 * om));
            Real g2 = g0 * ((kk / x - Real(1) / (2 * om)) * (kk / x - Real(1) / (2 * om)) - kk / (x * x) -
                            Real(1) / (2 * om * om));
            Real y = F0 * g0;
            Real y2 = F2 * g0 + 2 * F1 * g1 + F0 * g2;
            Real u = kk - Real(0.5);
            Real f = Real(1) / (x * x * om);
            Real gg = Real(-1) / (4 * x * x * om * om) + Real(1) / (4 * x * om);
            Real t2 = (u * u * f + gg) * y;
            Real scale = max(abs(y2), abs(t2));
            out = abs(y2 - t2) / scale;
        }
    }
    return out.rounded(prec);
}

}  // namespace momentlab
