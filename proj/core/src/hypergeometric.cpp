#include "momentlab/hypergeometric.hpp"

#include <climits>
#include <cmath>

#include "momentlab/errors.hpp"
#include "momentlab/gamma.hpp"

namespace momentlab {

namespace {

constexpr double kLn2 = 0.6931471805599453;

bool is_nonpos_int(const Complex& z) { return is_nonpositive_integer(z); }

double mag(const Complex& z) { return to_double_abs(z); }

template <typename T>
struct RawSum {
    T sum;
    Real tail;
    long terms;
    bool slow;
    double cancel_bits;
};

// Generic hypergeometric-type summation with ratio t_{n+1}/t_n = num(n)/den(n) * z
// and the monotone ratio majorant supplied by `rho`.
template <typename T, typename Ratio, typename Rho>
RawSum<T> sum_series(Ratio ratio, Rho rho, bool terminating) {
    RawSum<T> out{T(Real(0)), Real(0), 0, false, 0.0};
    T term(Real(1));
    T sum(Real(1));
    Real maxterm(1);
    Real tol = tail_tol();
    long n = 0;
    for (; n < kSeriesLengthCap; ++n) {
        term = term * ratio(n);
        ++out.terms;
        if (term.is_zero()) {
            out.tail = Real(0);
            break;
        }
        sum += term;
        Real at = abs(term);
        if (at > maxterm) maxterm = at;
        if (terminating) continue;
        double r = rho(n + 1);
        if (r < 1.0) {
            Real bound = at * Real(r / (1.0 - r));
            if (bound <= tol * abs(sum)) {
                out.tail = bound;
                break;
            }
        }
    }
    if (n >= kSeriesLengthCap) {
        out.slow = true;
        out.tail = Real(-1);
    }
    out.sum = sum;
    Real as = abs(sum);
    out.cancel_bits = as.is_zero() ? static_cast<double>(working_prec())
                                   : std::max(0.0, (log2(maxterm) - log2(as)).to_double());
    return out;
}

}  // namespace

SeriesValue gauss_2f1_series(const Complex& a, const Complex& b, const Complex& c, const Real& x) {
    if (abs(x) >= Real(1)) throw ConvergenceError("gauss_2f1: |x| must be below 1");
    bool term_a = is_nonpos_int(a);
    bool term_b = is_nonpos_int(b);
    bool terminating = term_a || term_b;
    if (is_nonpos_int(c)) {
        // allowed only if the series stops before the zero denominator
        long cn = -c.re.to_long();
        long stop = LONG_MAX;
        if (term_a) stop = std::min(stop, -a.re.to_long());
        if (term_b) stop = std::min(stop, -b.re.to_long());
        if (stop > cn) throw PoleError("gauss_2f1: c is a non-positive integer");
    }
    int prec = working_prec();
    double xa = std::abs(x.to_double());
    double aa = mag(a), ba = mag(b), ca = mag(c);
    auto rho = [=](long n) -> double {
        double nn = static_cast<double>(n);
        if (nn <= ca) return 2.0;
        return xa * (nn + aa) / (nn - ca) * std::max(1.0, (nn + ba) / (nn + 1));
    };
    bool real_params = a.is_real() && b.is_real() && c.is_real();
    int extra = 32;
    for (int attempt = 0; attempt < 4; ++attempt) {
        PrecisionGuard guard(prec + extra);
        SeriesValue out;
        double cancel_bits;
        if (real_params) {
            auto ratio = [&](long n) {
                Real rn(n);
                return (a.re + rn) * (b.re + rn) / ((c.re + rn) * (rn + Real(1))) * x;
            };
            RawSum<Real> r = sum_series<Real>(ratio, rho, terminating);
            out.value = Complex(r.sum.rounded(prec));
            out.tail_bound = r.tail.rounded(prec);
            out.terms = r.terms;
            out.slow = r.slow;
            cancel_bits = r.cancel_bits;
        } else {
            auto ratio = [&](long n) {
                Real rn(n);
                return (a + rn) * (b + rn) / ((c + rn) * (rn + Real(1))) * x;
            };
            RawSum<Complex> r = sum_series<Complex>(ratio, rho, terminating);
            out.value = rounded(r.sum, prec);
            out.tail_bound = r.tail.rounded(prec);
            out.terms = r.terms;
            out.slow = r.slow;
            cancel_bits = r.cancel_bits;
        }
        if (cancel_bits + 24 <= extra || attempt == 3) return out;
        extra = static_cast<int>(std::ceil(cancel_bits)) + 48;
    }
    throw ConvergenceError("gauss_2f1: precision escalation failed");
}

Complex gauss_2f1(const Complex& a, const Complex& b, const Complex& c, const Real& x) {
    SeriesValue v = gauss_2f1_series(a, b, c, x);
    if (v.slow) throw ConvergenceError("gauss_2f1: series length cap reached");
    return v.value;
}

std::optional<mpq_class> gauss_2f1_exact(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                                         const mpq_class& x) {
    auto nonpos_int = [](const mpq_class& q) { return q.get_den() == 1 && q <= 0; };
    if (!nonpos_int(a) && !nonpos_int(b)) return std::nullopt;
    long stop = LONG_MAX;
    if (nonpos_int(a)) stop = std::min(stop, -a.get_num().get_si());
    if (nonpos_int(b)) stop = std::min(stop, -b.get_num().get_si());
    if (nonpos_int(c) && -c.get_num().get_si() < stop) throw PoleError("gauss_2f1_exact: c is a non-positive integer");
    mpq_class term(1), sum(1);
    for (long n = 0; n < stop; ++n) {
        mpq_class nn(n);
        term *= (a + nn) * (b + nn) / ((c + nn) * (nn + 1)) * x;
        term.canonicalize();
        sum += term;
    }
    sum.canonicalize();
    return sum;
}

SeriesValue kummer_1f1_series(const Complex& a, const Complex& b, const Complex& z) {
    if (is_nonpos_int(b)) throw PoleError("kummer_1f1: b is a non-positive integer");
    int prec = working_prec();
    double za = mag(z), aa = mag(a), ba = mag(b);
    bool terminating = is_nonpos_int(a);
    auto rho = [=](long n) -> double {
        double nn = static_cast<double>(n);
        if (nn <= ba) return 2.0;
        return za * (nn + aa) / ((nn - ba) * (nn + 1));
    };
    int extra = static_cast<int>(std::ceil(za / kLn2)) + 32;
    for (int attempt = 0; attempt < 4; ++attempt) {
        PrecisionGuard guard(prec + extra);
        auto ratio = [&](long n) {
            Real rn(n);
            return (a + rn) / ((b + rn) * (rn + Real(1))) * z;
        };
        RawSum<Complex> r = sum_series<Complex>(ratio, rho, terminating);
        if (r.cancel_bits + 24 <= extra || attempt == 3) {
            SeriesValue out;
            out.value = rounded(r.sum, prec);
            out.tail_bound = r.tail.rounded(prec);
            out.terms = r.terms;
            out.slow = r.slow;
            return out;
        }
        extra = static_cast<int>(std::ceil(r.cancel_bits)) + 48;
    }
    throw ConvergenceError("kummer_1f1: precision escalation failed");
}

Complex kummer_1f1(const Complex& a, const Complex& b, const Complex& z) {
    SeriesValue v = kummer_1f1_series(a, b, z);
    if (v.slow) throw ConvergenceError("kummer_1f1: series length cap reached");
    return v.value;
}

mpq_class hankel_a(unsigned j, const mpq_class& v) {
    mpq_class num(1);
    mpq_class four_v2 = 4 * v * v;
    for (unsigned i = 1; i <= j; ++i) {
        mpq_class odd(2 * static_cast<long>(i) - 1);
        num *= four_v2 - odd * odd;
    }
    mpz_class den(1);
    for (unsigned i = 1; i <= j; ++i) den *= 8 * static_cast<long>(i);
    mpq_class r = num / mpq_class(den);
    r.canonicalize();
    return r;
}

}  // namespace momentlab
