#include "momentlab/incgamma.hpp"

#include <cmath>

#include "momentlab/errors.hpp"
#include "momentlab/gamma.hpp"

namespace momentlab {

namespace {

constexpr double kSeriesCutoff = 2.0;

Complex seed_continued_fraction(const Complex& b, const Real& x, const Complex& xb_ex) {
    int prec = working_prec();
    Real eps = from_exp2(-prec + 2);
    Real tiny = from_exp2(-4 * prec);
    Complex bb = x + Real(1) - b;
    Complex c = Complex(Real(1)) / tiny;
    Complex d = Complex(Real(1)) / bb;
    Complex h = d;
    for (long i = 1; i < 200000; ++i) {
        Complex an = -(Real(i) * (Real(i) - b));
        bb += Real(2);
        d = an * d + bb;
        if (d.is_zero()) d = Complex(tiny);
        c = bb + an / c;
        if (c.is_zero()) c = Complex(tiny);
        d = Complex(Real(1)) / d;
        Complex del = d * c;
        h *= del;
        if (abs(del - Real(1)) < eps) return xb_ex * h;
    }
    throw ConvergenceError("incomplete_gamma: continued fraction did not converge");
}

Complex seed_series(const Complex& b, const Real& x, const Complex& xb_ex) {
    int prec = working_prec();
    Real tol = from_exp2(-prec - 4);
    if (b.is_zero()) {
        // E_1(x) = -γ - log x - Σ (-x)^n/(n n!)
        Real sum(0);
        Real term(1);
        for (long n = 1; n < 100000; ++n) {
            term *= -x;
            term /= n;
            Real t = term / n;
            sum += t;
            if (abs(t) < tol) break;
        }
        return Complex(-const_euler() - log(x) - sum);
    }
    // γ(b,x) = x^b e^{-x} Σ x^n / (b)_{n+1}
    Complex term = Complex(Real(1)) / b;
    Complex sum = term;
    for (long n = 1; n < 100000; ++n) {
        term = term * x / (b + Real(n));
        sum += term;
        if (abs(term) < tol * abs(sum)) break;
    }
    return gamma_fn(b) - xb_ex * sum;
}

Complex seed(const Complex& b, const Real& x) {
    Complex xb_ex = pow(x, b) * exp(-x);
    if (x.to_double() >= kSeriesCutoff) return seed_continued_fraction(b, x, xb_ex);
    return seed_series(b, x, xb_ex);
}

int guard_bits_for(const Complex& b) {
    double mag = to_double_abs(b);
    int extra = 32;
    if (mag > 0 && mag < 1) extra += static_cast<int>(std::ceil(-std::log2(mag)));
    return extra;
}

}  // namespace

std::vector<Complex> incomplete_gamma_ladder(const Complex& a0, const Real& x, int count) {
    if (x.sign() <= 0) throw DomainError("incomplete_gamma: x must be positive");
    int prec = working_prec();
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    {
        Real fl = floor(a0.re);
        Complex b = a0 - fl;
        long m = fl.to_long();
        PrecisionGuard guard(prec + guard_bits_for(b) + 16);
        Complex g = seed(b, x);
        Real ex = exp(-x);
        Complex xb = pow(x, b);
        Complex cur_a = b;
        // walk from b to a0
        if (m >= 0) {
            for (long j = 0; j < m; ++j) {
                g = cur_a * g + xb * ex;
                xb *= x;
                cur_a += Real(1);
            }
        } else {
            for (long j = 0; j < -m; ++j) {
                cur_a -= Real(1);
                xb /= x;
                if (cur_a.is_zero()) throw PoleError("incomplete_gamma: recurrence through a = 0");
                g = (g - xb * ex) / cur_a;
            }
        }
        for (int j = 0; j < count; ++j) {
            out.push_back(rounded(g, prec));
            g = cur_a * g + xb * ex;
            xb *= x;
            cur_a += Real(1);
        }
    }
    return out;
}

Complex incomplete_gamma_upper(const Complex& a, const Real& x) {
    return incomplete_gamma_ladder(a, x, 1).front();
}

}  // namespace momentlab
