#include "momentlab/gamma.hpp"

#include <cmath>
#include <deque>
#include <map>

#include "momentlab/errors.hpp"

namespace momentlab {

namespace {

// Radius beyond which the Stirling series reaches 2^{-prec}.
double stirling_radius(int prec) { return (prec * 0.6931471805599453 + 16.0) / (2 * M_PI) + 2.0; }

long shift_needed(const Complex& z, double radius) {
    double re = z.re.to_double();
    double im = z.im.to_double();
    double need = radius * radius - im * im;
    if (need <= 0) return re >= 0 ? 0 : static_cast<long>(std::ceil(-re));
    double target = std::sqrt(need);
    return re >= target ? 0 : static_cast<long>(std::ceil(target - re));
}

bool is_real_positive(const Complex& z) { return z.im.is_zero() && z.re.sign() > 0; }

Complex log_gamma_stirling(const Complex& w) {
    int prec = working_prec();
    Complex lw = log(w);
    Complex result = (w - Real(0.5)) * lw - w + log(2 * const_pi()) / 2;
    Complex inv = Complex(Real(1)) / w;
    Complex inv2 = inv * inv;
    Complex pw = inv;
    Real tol = from_exp2(-prec - 4) * max(Real(1), abs(result));
    for (int j = 1; j < 4 * prec; ++j) {
        Complex term = pw * (bernoulli_b2n(j) / (static_cast<long>(2 * j) * (2 * j - 1)));
        result += term;
        if (abs(term) < tol) break;
        pw *= inv2;
    }
    return result;
}

Complex digamma_stirling(const Complex& w) {
    int prec = working_prec();
    Complex inv = Complex(Real(1)) / w;
    Complex result = log(w) - inv / 2;
    Complex inv2 = inv * inv;
    Complex pw = inv2;
    Real tol = from_exp2(-prec - 4) * max(Real(1), abs(result));
    for (int j = 1; j < 4 * prec; ++j) {
        Complex term = pw * (bernoulli_b2n(j) / static_cast<long>(2 * j));
        result -= term;
        if (abs(term) < tol) break;
        pw *= inv2;
    }
    return result;
}

Complex cot_pi(const Complex& z) {
    Complex pz = const_pi() * z;
    return cos(pz) / sin(pz);
}

}  // namespace

bool is_nonpositive_integer(const Complex& z) {
    if (!z.im.is_zero()) return false;
    if (z.re.sign() > 0) return false;
    return floor(z.re) == z.re;
}

const Real& bernoulli_b2n(int j) {
    thread_local std::map<int, std::deque<Real>> cache;
    int prec = working_prec();
    auto& table = cache[prec];
    while (static_cast<int>(table.size()) < j) {
        int m = static_cast<int>(table.size()) + 1;
        Real b;
        {
            PrecisionGuard guard(prec + 32);
            Real two_pi = 2 * const_pi();
            Real v = 2 * factorial(static_cast<unsigned long>(2 * m)) * zeta(Real(2 * m)) / pow(two_pi, 2L * m);
            if (m % 2 == 0) v = -v;
            b = v.rounded(prec);
        }
        table.push_back(b.rounded(prec));
    }
    return table[static_cast<std::size_t>(j - 1)];
}

mpq_class harmonic_exact(unsigned long n) {
    mpq_class h(0);
    for (unsigned long i = 1; i <= n; ++i) h += mpq_class(1, i);
    h.canonicalize();
    return h;
}

Complex log_gamma(const Complex& z) {
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at non-positive integer");
    int prec = working_prec();
    if (is_real_positive(z)) return Complex(lngamma(z.re));
    Complex result;
    {
        PrecisionGuard guard(prec + 32);
        long n = shift_needed(z, stirling_radius(prec + 32));
        result = log_gamma_stirling(z + Real(n));
        if (n > 0) {
            // Σ log(z+j) taken as one log of the product, then moved onto the
            // branch given by the sum of individual arguments.
            Complex prod(Real(1));
            double arg_sum = 0;
            for (long j = 0; j < n; ++j) {
                Complex t = z + Real(j);
                prod *= t;
                arg_sum += std::atan2(t.im.to_double(), t.re.to_double());
            }
            Complex lp = log(prod);
            double turns = std::round((arg_sum - lp.im.to_double()) / (2 * M_PI));
            lp.im += 2 * const_pi() * Real(turns);
            result -= lp;
        }
    }
    return rounded(result, prec);
}

Complex gamma_fn(const Complex& z) {
    if (is_nonpositive_integer(z)) throw PoleError("gamma: pole at non-positive integer");
    if (z.im.is_zero()) return Complex(gamma(z.re));
    int prec = working_prec();
    Complex r;
    {
        PrecisionGuard guard(prec + 16);
        r = exp(log_gamma(z));
    }
    return rounded(r, prec);
}

Complex rgamma(const Complex& z) {
    if (is_nonpositive_integer(z)) return Complex(Real(0));
    if (z.im.is_zero()) return Complex(Real(1) / gamma(z.re));
    int prec = working_prec();
    Complex r;
    {
        PrecisionGuard guard(prec + 16);
        r = exp(-log_gamma(z));
    }
    return rounded(r, prec);
}

Complex digamma(const Complex& z) {
    if (is_nonpositive_integer(z)) throw PoleError("digamma: pole at non-positive integer");
    if (is_real_positive(z)) return Complex(digamma(z.re));
    int prec = working_prec();
    Complex result;
    {
        PrecisionGuard guard(prec + 32);
        if (z.re < 0.5) {
            result = digamma(Complex(Real(1)) - z) - const_pi() * cot_pi(z);
        } else {
            long n = shift_needed(z, stirling_radius(prec + 32));
            result = digamma_stirling(z + Real(n));
            for (long j = 0; j < n; ++j) result -= Complex(Real(1)) / (z + Real(j));
        }
    }
    return rounded(result, prec);
}

GammaSuite gamma_suite(const Complex& z) { return GammaSuite{log_gamma(z), digamma(z)}; }

Complex gamma_pair_factor(const Complex& u, const Complex& v) {
    int prec = working_prec();
    Complex r;
    {
        PrecisionGuard guard(prec + 16);
        Complex a = u + v;
        Complex b = u - v;
        if (a.im.is_zero() && b.im.is_zero())
            r = gamma_fn(a) * gamma_fn(b) * pow(Real(2), 2 * u - Real(1)) / const_pi();
        else
            r = exp(log_gamma(a) + log_gamma(b) + (2 * u - Real(1)) * const_log2()) / const_pi();
    }
    return rounded(r, prec);
}

}  // namespace momentlab
