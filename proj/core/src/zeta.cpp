#include "momentlab/zeta.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "momentlab/arith.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/gamma.hpp"

namespace momentlab {

namespace {

long default_split(const Complex& s, int prec) {
    double sa = to_double_abs(s);
    return static_cast<long>(std::ceil(prec * 0.6931471805599453 / (2 * M_PI) * 1.15 + sa)) + 10;
}

void check_pole(const Complex& s, const char* what) {
    if (s.im.is_zero() && s.re == Real(1)) throw PoleError(std::string(what) + ": pole at s = 1");
}

}  // namespace

Complex lerch_zeta(const Real& alpha, const Complex& s, long split) {
    if (alpha.sign() <= 0 || alpha > Real(1)) throw DomainError("lerch_zeta: alpha must lie in (0,1]");
    check_pole(s, "lerch_zeta");
    if (s.re < -0.5) throw DomainError("lerch_zeta: Re s below the supported range -1/2");
    int prec = working_prec();
    Complex result;
    {
        PrecisionGuard guard(prec + 32);
        long n = split > 0 ? split : default_split(s, prec);
        Complex sum(Real(0));
        for (long j = 0; j < n; ++j) sum += pow(alpha + Real(j), -s);
        Real w = alpha + Real(n);
        Complex w_ms = pow(w, -s);
        sum += w * w_ms / (s - Real(1));
        sum += w_ms / 2;
        // Bernoulli corrections B_{2j}/(2j)! (s)_{2j-1} w^{-s-2j+1}
        Complex poch = s;
        Complex wp = w_ms / w;
        Real w2 = w * w;
        Real fact(2);
        Real tol = from_exp2(-prec - 8) * max(Real(1), abs(sum));
        Real prev_mag;
        bool converged = false;
        for (int j = 1; j < 10 * prec; ++j) {
            Complex term = poch * wp * (bernoulli_b2n(j) / fact);
            Real mag = abs(term);
            if (j > 2 && mag > prev_mag) break;
            sum += term;
            if (mag < tol) {
                converged = true;
                break;
            }
            prev_mag = mag;
            poch *= (s + Real(2 * j - 1)) * (s + Real(2 * j));
            wp /= w2;
            fact *= static_cast<long>((2 * j + 1) * (2 * j + 2));
        }
        if (!converged) throw ConvergenceError("lerch_zeta: split point too small for the requested tolerance");
        result = sum;
    }
    return rounded(result, prec);
}

Complex riemann_zeta(const Complex& s) {
    check_pole(s, "riemann_zeta");
    if (s.re >= -0.5) return lerch_zeta(Real(1), s);
    int prec = working_prec();
    Complex r;
    {
        PrecisionGuard guard(prec + 32);
        Complex one_minus = Complex(Real(1)) - s;
        Real pi = const_pi();
        r = pow(Real(2), s) * pow(pi, s - Real(1)) * sin(pi * s / 2) * gamma_fn(one_minus) *
            lerch_zeta(Real(1), one_minus);
    }
    return rounded(r, prec);
}

Complex estermann_D(const Complex& s, const Complex& v, long d, long c) {
    if (c < 1) throw DomainError("estermann_D: c must be positive");
    if (std::gcd(d, c) != 1) throw DomainError("estermann_D: d and c must be coprime");
    Complex a1 = s - v;
    Complex a2 = s + v;
    check_pole(a1, "estermann_D");
    check_pole(a2, "estermann_D");
    int prec = working_prec();
    Complex result;
    {
        PrecisionGuard guard(prec + 32);
        std::vector<Complex> z1, z2;
        z1.reserve(static_cast<std::size_t>(c));
        z2.reserve(static_cast<std::size_t>(c));
        for (long a = 1; a <= c; ++a) {
            Real alpha = Real(a) / Real(c);
            z1.push_back(lerch_zeta(alpha, a1));
            z2.push_back(lerch_zeta(alpha, a2));
        }
        RootsOfUnity roots(c);
        Complex sum(Real(0));
        for (long a = 1; a <= c; ++a) {
            Complex inner(Real(0));
            for (long b = 1; b <= c; ++b) {
                long idx = static_cast<long>((static_cast<__int128>(a) * b % c * ((d % c + c) % c)) % c);
                inner += roots.at(idx) * z2[static_cast<std::size_t>(b - 1)];
            }
            sum += z1[static_cast<std::size_t>(a - 1)] * inner;
        }
        result = sum * pow(Real(c), -2 * s);
    }
    return rounded(result, prec);
}

Complex estermann_D_series(const Complex& s, const Complex& v, long d, long c, long n_max) {
    if (c < 1) throw DomainError("estermann_D_series: c must be positive");
    if (std::gcd(d, c) != 1) throw DomainError("estermann_D_series: d and c must be coprime");
    int prec = working_prec();
    Complex sum(Real(0));
    {
        PrecisionGuard guard(prec + 16);
        RootsOfUnity roots(c);
        for (long n = 1; n <= n_max; ++n) {
            Complex t = divisor_tau(static_cast<std::uint64_t>(n), v) * pow(Real(n), -s);
            long idx = static_cast<long>((static_cast<__int128>(n) * d) % c);
            sum += t * roots.at(idx);
        }
    }
    return rounded(sum, prec);
}

Complex estermann_functional_rhs(const Complex& s, const Complex& v, long d, long c) {
    long dstar = mod_inverse(d, c);
    int prec = working_prec();
    Complex r;
    {
        PrecisionGuard guard(prec + 32);
        Complex one_minus = Complex(Real(1)) - s;
        Real pi = const_pi();
        Complex pref = pow(4 * pi / Real(c), 2 * s - Real(1)) * gamma_pair_factor(one_minus, v);
        Complex minus = estermann_D(one_minus, v, -dstar, c);
        Complex plus = estermann_D(one_minus, v, dstar, c);
        Complex half_plus_v = Complex(Real(0.5)) + v;
        r = pref * (-(cos(pi * s) * minus) + sin(pi * half_plus_v) * plus);
    }
    return rounded(r, prec);
}

ResidueCheck estermann_residue(const Complex& v, long d, long c, double eps1, double eps2) {
    int prec = working_prec();
    ResidueCheck out;
    {
        PrecisionGuard guard(prec + 32);
        Real e1(eps1), e2(eps2);
        Complex base = Complex(Real(1)) + v;
        Complex r1 = estermann_D(base + e1, v, d, c) * e1;
        Complex r2 = estermann_D(base + e2, v, d, c) * e2;
        // R(ε) = res + aε + O(ε²): eliminate the linear term
        out.numeric = (r2 * e1 - r1 * e2) / (e1 - e2);
        out.predicted = pow(Real(c), -(Complex(Real(1)) + 2 * v)) * riemann_zeta(Complex(Real(1)) + 2 * v);
    }
    out.numeric = rounded(out.numeric, prec);
    out.predicted = rounded(out.predicted, prec);
    return out;
}

}  // namespace momentlab
