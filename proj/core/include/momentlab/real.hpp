#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace momentlab {

// Working precision and truncation target shared by every module.
struct PrecisionContext {
    int prec_bits = 256;
    long tail_exp2 = -224;  // tail_tol = 2^tail_exp2

    static PrecisionContext with_bits(int bits);
    double tail_tol_log2() const { return static_cast<double>(tail_exp2); }
};

const PrecisionContext& current_context();
int working_prec();

// Installs a context for the current thread until destroyed.
class ContextGuard {
public:
    explicit ContextGuard(const PrecisionContext& ctx);
    explicit ContextGuard(int prec_bits);
    ~ContextGuard();
    ContextGuard(const ContextGuard&) = delete;
    ContextGuard& operator=(const ContextGuard&) = delete;

private:
    PrecisionContext saved_;
};

// Raises only the working precision (local escalation); tail_tol is kept.
class PrecisionGuard {
public:
    explicit PrecisionGuard(int prec_bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    int saved_;
};

class Real {
public:
    Real();
    Real(int x);
    Real(long x);
    Real(long long x);
    Real(unsigned long x);
    Real(double x);
    explicit Real(const mpz_class& x);
    explicit Real(const mpq_class& x);
    explicit Real(std::string_view decimal);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    struct Uninit {};
    Real(Uninit, int prec);

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    int precision() const { return static_cast<int>(mpfr_get_prec(value_)); }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(value_, MPFR_RNDN); }
    std::string to_string(int digits = 0) const;

    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }
    long exponent2() const;  // floor(log2|x|)+1, very negative for zero

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real& operator+=(long o);
    Real& operator-=(long o);
    Real& operator*=(long o);
    Real& operator/=(long o);

    Real rounded(int prec) const;

private:
    mpfr_t value_;
};

Real operator-(const Real& a);
Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(long a, const Real& b);
Real operator*(long a, const Real& b);
Real operator/(long a, const Real& b);
Real operator+(const Real& a, int b);
Real operator-(const Real& a, int b);
Real operator*(const Real& a, int b);
Real operator/(const Real& a, int b);
Real operator+(int a, const Real& b);
Real operator-(int a, const Real& b);
Real operator*(int a, const Real& b);
Real operator/(int a, const Real& b);
Real operator+(const Real& a, double b);
Real operator-(const Real& a, double b);
Real operator*(const Real& a, double b);
Real operator/(const Real& a, double b);
Real operator+(double a, const Real& b);
Real operator-(double a, const Real& b);
Real operator*(double a, const Real& b);
Real operator/(double a, const Real& b);

int compare(const Real& a, const Real& b);
inline bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }
inline bool operator==(const Real& a, const Real& b) { return compare(a, b) == 0; }
inline bool operator!=(const Real& a, const Real& b) { return compare(a, b) != 0; }
bool operator<(const Real& a, double b);
bool operator>(const Real& a, double b);
bool operator<=(const Real& a, double b);
bool operator>=(const Real& a, double b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real log2(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real cot(const Real& x);
Real asin(const Real& x);
Real acos(const Real& x);
Real atan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real coth(const Real& x);
Real asinh(const Real& x);
Real atanh(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real ceil(const Real& x);
Real round(const Real& x);
Real frac(const Real& x);
Real square(const Real& x);
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
Real hypot(const Real& a, const Real& b);

// MPFR-native special functions (real arguments).
Real lngamma(const Real& x);  // log|Γ(x)|
Real gamma(const Real& x);
Real digamma(const Real& x);
Real zeta(const Real& x);
Real bessel_j0_mpfr(const Real& x);
Real bessel_j1_mpfr(const Real& x);
Real bessel_jn_mpfr(long n, const Real& x);
Real bessel_y0_mpfr(const Real& x);
Real bessel_y1_mpfr(const Real& x);

Real const_pi();
Real const_euler();
Real const_log2();
Real factorial(unsigned long n);
Real from_exp2(long e);  // 2^e
Real epsilon();           // 2^{1-prec}
Real tail_tol();

void sin_cos(Real& s, Real& c, const Real& x);
void sinh_cosh(Real& s, Real& c, const Real& x);

struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(const Real& r) : re(r), im(0) {}
    Complex(Real&& r) : re(std::move(r)), im(0) {}
    Complex(int r) : re(r), im(0) {}
    Complex(long r) : re(r), im(0) {}
    Complex(double r) : re(r), im(0) {}
    Complex(const Real& r, const Real& i) : re(r), im(i) {}
    Complex(double r, double i) : re(r), im(i) {}

    static Complex i_unit() { return Complex(Real(0), Real(1)); }
    bool is_real() const { return im.is_zero(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    std::string to_string(int digits = 0) const;

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& o);
    Complex& operator/=(const Real& o);
};

Complex operator-(const Complex& a);
Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator+(const Complex& a, const Real& b);
Complex operator-(const Complex& a, const Real& b);
Complex operator+(const Real& a, const Complex& b);
Complex operator-(const Real& a, const Complex& b);
Complex operator*(const Complex& a, long b);
Complex operator/(const Complex& a, long b);
Complex operator+(const Complex& a, long b);
Complex operator-(const Complex& a, long b);
Complex operator-(long a, const Complex& b);
Complex operator+(long a, const Complex& b);
Complex operator*(long a, const Complex& b);
Complex operator/(long a, const Complex& b);
Complex operator*(const Complex& a, int b);
Complex operator/(const Complex& a, int b);
Complex operator+(const Complex& a, int b);
Complex operator-(const Complex& a, int b);
Complex operator-(int a, const Complex& b);
Complex operator+(int a, const Complex& b);
Complex operator*(int a, const Complex& b);
Complex operator*(const Complex& a, double b);
Complex operator+(const Complex& a, double b);
Complex operator-(const Complex& a, double b);
Complex operator-(double a, const Complex& b);
Complex operator+(double a, const Complex& b);
Complex operator*(double a, const Complex& b);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex pow(const Complex& z, const Complex& w);
Complex pow(const Real& x, const Complex& w);  // x > 0, real log
Complex pow(const Complex& z, long n);
Complex expi(const Real& theta);  // e^{iθ}
Complex e_twopi(const Real& t);   // e(t) = e^{2πit}
Complex i_pow(long n);            // i^n exactly
Complex mul_i(const Complex& z);

double to_double_abs(const Complex& z);
Complex rounded(const Complex& z, int prec);

// Exact rational value of a finite Real.
mpq_class to_mpq(const Real& x);

}  // namespace momentlab
