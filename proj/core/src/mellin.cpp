#include "momentlab/mellin.hpp"

#include <cmath>
#include <vector>

#include "momentlab/bessel.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/gamma.hpp"
#include "momentlab/quadrature.hpp"

namespace momentlab {

namespace {

constexpr int kMellinPrec = 96;
constexpr int kHalfPeriods = 24;
constexpr int kNodesPerPeriod = 20;

}  // namespace

Complex bessel_kernel_k0(const Real& x, const Complex& v) {
    if (v.is_zero()) return Complex(-bessel_y(0, x));
    Real pi = const_pi();
    Complex nu = 2 * v;
    Complex num = bessel_j_complex(nu, x) - bessel_j_complex(-nu, x);
    Complex den = 2 * cos(pi * (Complex(Real(0.5)) + v));
    return num / den;
}

Complex bessel_kernel_k1(const Real& x, const Complex& v) {
    Real pi = const_pi();
    Complex s = sin(pi * (Complex(Real(0.5)) + v));
    return Real(2) / pi * s * bessel_k_complex(2 * v, x);
}

MellinCheck mellin_kernel_check(BesselKernel kind, const Complex& w, const Complex& v) {
    double rv = std::abs(v.re.to_double());
    double rw = w.re.to_double();
    if (kind == BesselKernel::k0 && !(2 * rv < rw && rw < 1.5))
        throw DomainError("mellin_kernel_check: k0 requires 2|Re v| < Re w < 3/2");
    if (kind == BesselKernel::k1 && !(rw > 2 * rv))
        throw DomainError("mellin_kernel_check: k1 requires Re w > 2|Re v|");

    int caller_prec = working_prec();
    MellinCheck out;
    {
        ContextGuard ctx(kMellinPrec);
        Real pi = const_pi();
        Complex wm1 = w - Real(1);
        Complex half_w = w / 2;
        Complex gam = gamma_pair_factor(half_w, v);
        if (kind == BesselKernel::k0)
            out.closed_form = gam * cos(pi * w / 2);
        else
            out.closed_form = gam * sin(pi * (Complex(Real(0.5)) + v));

        Real tol = from_exp2(-64);
        if (kind == BesselKernel::k1) {
            RealIntegrand f = [&](const Real& x) { return bessel_kernel_k1(x, v) * pow(x, wm1); };
            QuadResult q = exp_sinh(f, Real(0), tol, 10);
            out.quadrature = q.value;
            out.quadrature_error = q.error_estimate;
        } else {
            // [0, x0] by tanh-sinh (algebraic endpoint singularity), then half periods of
            // length π whose partial sums are accelerated by the ε-algorithm.
            RealIntegrand f = [&](const Real& x) { return bessel_kernel_k0(x, v) * pow(x, wm1); };
            Real x0 = pi;
            QuadResult head = tanh_sinh(f, Real(0), x0, tol, 10);
            std::vector<Complex> partial;
            Complex acc = head.value;
            partial.push_back(acc);
            for (int j = 0; j < kHalfPeriods; ++j) {
                Real lo = x0 + pi * j;
                Real hi = lo + pi;
                acc += gauss_legendre_integrate(f, lo, hi, kNodesPerPeriod);
                partial.push_back(acc);
            }
            Real err;
            out.quadrature = wynn_epsilon(partial, &err);
            out.quadrature_error = err + head.error_estimate;
        }
    }
    out.quadrature = rounded(out.quadrature, caller_prec);
    out.closed_form = rounded(out.closed_form, caller_prec);
    out.quadrature_error = out.quadrature_error.rounded(caller_prec);
    return out;
}

}  // namespace momentlab
