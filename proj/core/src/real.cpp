#include "momentlab/real.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace momentlab {

namespace {

thread_local PrecisionContext tls_context{};
thread_local int tls_prec = 256;

constexpr mpfr_rnd_t RND = MPFR_RNDN;

}  // namespace

PrecisionContext PrecisionContext::with_bits(int bits) {
    if (bits < 64) throw std::invalid_argument("prec_bits must be at least 64");
    PrecisionContext c;
    c.prec_bits = bits;
    c.tail_exp2 = -static_cast<long>(bits) + 32;
    return c;
}

const PrecisionContext& current_context() { return tls_context; }
int working_prec() { return tls_prec; }

ContextGuard::ContextGuard(const PrecisionContext& ctx) : saved_(tls_context) {
    if (ctx.prec_bits < 64) throw std::invalid_argument("prec_bits must be at least 64");
    saved_.prec_bits = tls_prec;
    tls_context = ctx;
    tls_prec = ctx.prec_bits;
}

ContextGuard::ContextGuard(int prec_bits) : ContextGuard(PrecisionContext::with_bits(prec_bits)) {}

ContextGuard::~ContextGuard() {
    int p = saved_.prec_bits;
    tls_context = saved_;
    tls_context.prec_bits = p;
    tls_prec = p;
}

PrecisionGuard::PrecisionGuard(int prec_bits) : saved_(tls_prec) { tls_prec = prec_bits; }
PrecisionGuard::~PrecisionGuard() { tls_prec = saved_; }

// ---------------------------------------------------------------- Real

Real::Real() {
    mpfr_init2(value_, tls_prec);
    mpfr_set_zero(value_, 1);
}
Real::Real(int x) {
    mpfr_init2(value_, tls_prec);
    mpfr_set_si(value_, x, RND);
}
Real::Real(long x) {
    mpfr_init2(value_, tls_prec);
    mpfr_set_si(value_, x, RND);
}
Real::Real(long long x) {
    mpfr_init2(value_, tls_prec);
    mpfr_set_si(value_, static_cast<long>(x), RND);
}
Real::Real(unsigned long x) {
    mpfr_init2(value_, tls_prec);
    mpfr_set_ui(value_, x, RND);
}
Real::Real(double x) {
    mpfr_init2(value_, tls_prec);
    mpfr_set_d(value_, x, RND);
}
Real::Real(const mpz_class& x) {
    mpfr_init2(value_, tls_prec);
    mpfr_set_z(value_, x.get_mpz_t(), RND);
}
Real::Real(const mpq_class& x) {
    mpfr_init2(value_, tls_prec);
    mpfr_set_q(value_, x.get_mpq_t(), RND);
}
Real::Real(std::string_view decimal) {
    mpfr_init2(value_, tls_prec);
    std::string s(decimal);
    if (mpfr_set_str(value_, s.c_str(), 10, RND) != 0) {
        mpfr_clear(value_);
        throw std::invalid_argument("not a decimal number: " + s);
    }
}
Real::Real(Uninit, int prec) { mpfr_init2(value_, prec); }

Real::Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, RND);
}

Real::Real(Real&& other) noexcept {
    value_[0] = other.value_[0];
    other.value_[0]._mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
    if (this == &other) return *this;
    if (value_[0]._mpfr_d == nullptr) {
        mpfr_init2(value_, mpfr_get_prec(other.value_));
    } else if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    }
    mpfr_set(value_, other.value_, RND);
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this == &other) return *this;
    if (value_[0]._mpfr_d == nullptr) {
        value_[0] = other.value_[0];
        other.value_[0]._mpfr_d = nullptr;
    } else {
        mpfr_swap(value_, other.value_);
    }
    return *this;
}

Real::~Real() {
    if (value_[0]._mpfr_d != nullptr) mpfr_clear(value_);
}

std::string Real::to_string(int digits) const {
    if (digits <= 0) digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 1;
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

long Real::exponent2() const {
    if (mpfr_zero_p(value_)) return -(1L << 40);
    if (!mpfr_number_p(value_)) return 1L << 40;
    return mpfr_get_exp(value_);
}

Real& Real::operator+=(const Real& o) { mpfr_add(value_, value_, o.value_, RND); return *this; }
Real& Real::operator-=(const Real& o) { mpfr_sub(value_, value_, o.value_, RND); return *this; }
Real& Real::operator*=(const Real& o) { mpfr_mul(value_, value_, o.value_, RND); return *this; }
Real& Real::operator/=(const Real& o) { mpfr_div(value_, value_, o.value_, RND); return *this; }
Real& Real::operator+=(long o) { mpfr_add_si(value_, value_, o, RND); return *this; }
Real& Real::operator-=(long o) { mpfr_sub_si(value_, value_, o, RND); return *this; }
Real& Real::operator*=(long o) { mpfr_mul_si(value_, value_, o, RND); return *this; }
Real& Real::operator/=(long o) { mpfr_div_si(value_, value_, o, RND); return *this; }

Real Real::rounded(int prec) const {
    Real r(Uninit{}, prec);
    mpfr_set(r.value_, value_, RND);
    return r;
}

namespace {
inline Real fresh() { return Real(Real::Uninit{}, tls_prec); }
}  // namespace

Real operator-(const Real& a) { Real r = fresh(); mpfr_neg(r.get(), a.get(), RND); return r; }
Real operator+(const Real& a, const Real& b) { Real r = fresh(); mpfr_add(r.get(), a.get(), b.get(), RND); return r; }
Real operator-(const Real& a, const Real& b) { Real r = fresh(); mpfr_sub(r.get(), a.get(), b.get(), RND); return r; }
Real operator*(const Real& a, const Real& b) { Real r = fresh(); mpfr_mul(r.get(), a.get(), b.get(), RND); return r; }
Real operator/(const Real& a, const Real& b) { Real r = fresh(); mpfr_div(r.get(), a.get(), b.get(), RND); return r; }
Real operator+(const Real& a, long b) { Real r = fresh(); mpfr_add_si(r.get(), a.get(), b, RND); return r; }
Real operator-(const Real& a, long b) { Real r = fresh(); mpfr_sub_si(r.get(), a.get(), b, RND); return r; }
Real operator*(const Real& a, long b) { Real r = fresh(); mpfr_mul_si(r.get(), a.get(), b, RND); return r; }
Real operator/(const Real& a, long b) { Real r = fresh(); mpfr_div_si(r.get(), a.get(), b, RND); return r; }
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(long a, const Real& b) { Real r = fresh(); mpfr_si_sub(r.get(), a, b.get(), RND); return r; }
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(long a, const Real& b) { Real r = fresh(); mpfr_si_div(r.get(), a, b.get(), RND); return r; }
Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }
Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
Real operator+(int a, const Real& b) { return static_cast<long>(a) + b; }
Real operator-(int a, const Real& b) { return static_cast<long>(a) - b; }
Real operator*(int a, const Real& b) { return static_cast<long>(a) * b; }
Real operator/(int a, const Real& b) { return static_cast<long>(a) / b; }
Real operator+(const Real& a, double b) { Real r = fresh(); mpfr_add_d(r.get(), a.get(), b, RND); return r; }
Real operator-(const Real& a, double b) { Real r = fresh(); mpfr_sub_d(r.get(), a.get(), b, RND); return r; }
Real operator*(const Real& a, double b) { Real r = fresh(); mpfr_mul_d(r.get(), a.get(), b, RND); return r; }
Real operator/(const Real& a, double b) { Real r = fresh(); mpfr_div_d(r.get(), a.get(), b, RND); return r; }
Real operator+(double a, const Real& b) { return b + a; }
Real operator-(double a, const Real& b) { Real r = fresh(); mpfr_d_sub(r.get(), a, b.get(), RND); return r; }
Real operator*(double a, const Real& b) { return b * a; }
Real operator/(double a, const Real& b) { Real r = fresh(); mpfr_d_div(r.get(), a, b.get(), RND); return r; }

int compare(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }
bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }
bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) <= 0; }
bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) >= 0; }

#define MOMENTLAB_UNARY(name, fn)                 \
    Real name(const Real& x) {                    \
        Real r = fresh();                         \
        fn(r.get(), x.get(), RND);                \
        return r;                                 \
    }

MOMENTLAB_UNARY(abs, mpfr_abs)
MOMENTLAB_UNARY(sqrt, mpfr_sqrt)
MOMENTLAB_UNARY(cbrt, mpfr_cbrt)
MOMENTLAB_UNARY(exp, mpfr_exp)
MOMENTLAB_UNARY(expm1, mpfr_expm1)
MOMENTLAB_UNARY(log, mpfr_log)
MOMENTLAB_UNARY(log1p, mpfr_log1p)
MOMENTLAB_UNARY(log2, mpfr_log2)
MOMENTLAB_UNARY(sin, mpfr_sin)
MOMENTLAB_UNARY(cos, mpfr_cos)
MOMENTLAB_UNARY(tan, mpfr_tan)
MOMENTLAB_UNARY(cot, mpfr_cot)
MOMENTLAB_UNARY(asin, mpfr_asin)
MOMENTLAB_UNARY(acos, mpfr_acos)
MOMENTLAB_UNARY(atan, mpfr_atan)
MOMENTLAB_UNARY(sinh, mpfr_sinh)
MOMENTLAB_UNARY(cosh, mpfr_cosh)
MOMENTLAB_UNARY(tanh, mpfr_tanh)
MOMENTLAB_UNARY(coth, mpfr_coth)
MOMENTLAB_UNARY(asinh, mpfr_asinh)
MOMENTLAB_UNARY(atanh, mpfr_atanh)
MOMENTLAB_UNARY(frac, mpfr_frac)
MOMENTLAB_UNARY(square, mpfr_sqr)
MOMENTLAB_UNARY(gamma, mpfr_gamma)
MOMENTLAB_UNARY(digamma, mpfr_digamma)
MOMENTLAB_UNARY(zeta, mpfr_zeta)
MOMENTLAB_UNARY(bessel_j0_mpfr, mpfr_j0)
MOMENTLAB_UNARY(bessel_j1_mpfr, mpfr_j1)
MOMENTLAB_UNARY(bessel_y0_mpfr, mpfr_y0)
MOMENTLAB_UNARY(bessel_y1_mpfr, mpfr_y1)

#undef MOMENTLAB_UNARY

Real floor(const Real& x) { Real r = fresh(); mpfr_floor(r.get(), x.get()); return r; }
Real ceil(const Real& x) { Real r = fresh(); mpfr_ceil(r.get(), x.get()); return r; }
Real round(const Real& x) { Real r = fresh(); mpfr_round(r.get(), x.get()); return r; }

Real lngamma(const Real& x) {
    Real r = fresh();
    int sgn = 0;
    mpfr_lgamma(r.get(), &sgn, x.get(), RND);
    return r;
}

Real atan2(const Real& y, const Real& x) { Real r = fresh(); mpfr_atan2(r.get(), y.get(), x.get(), RND); return r; }
Real pow(const Real& x, const Real& y) { Real r = fresh(); mpfr_pow(r.get(), x.get(), y.get(), RND); return r; }
Real pow(const Real& x, long n) { Real r = fresh(); mpfr_pow_si(r.get(), x.get(), n, RND); return r; }
Real ldexp(const Real& x, long e) { Real r = fresh(); mpfr_mul_2si(r.get(), x.get(), e, RND); return r; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return a < b ? a : b; }
Real hypot(const Real& a, const Real& b) { Real r = fresh(); mpfr_hypot(r.get(), a.get(), b.get(), RND); return r; }

Real bessel_jn_mpfr(long n, const Real& x) { Real r = fresh(); mpfr_jn(r.get(), n, x.get(), RND); return r; }

Real const_pi() { Real r = fresh(); mpfr_const_pi(r.get(), RND); return r; }
Real const_euler() { Real r = fresh(); mpfr_const_euler(r.get(), RND); return r; }
Real const_log2() { Real r = fresh(); mpfr_const_log2(r.get(), RND); return r; }
Real factorial(unsigned long n) { Real r = fresh(); mpfr_fac_ui(r.get(), n, RND); return r; }
Real from_exp2(long e) { Real r = fresh(); mpfr_set_ui_2exp(r.get(), 1, e, RND); return r; }
Real epsilon() { return from_exp2(1 - tls_prec); }
Real tail_tol() { return from_exp2(tls_context.tail_exp2); }

void sin_cos(Real& s, Real& c, const Real& x) {
    s = fresh();
    c = fresh();
    mpfr_sin_cos(s.get(), c.get(), x.get(), RND);
}

void sinh_cosh(Real& s, Real& c, const Real& x) {
    s = fresh();
    c = fresh();
    mpfr_sinh_cosh(s.get(), c.get(), x.get(), RND);
}

// ---------------------------------------------------------------- Complex

std::string Complex::to_string(int digits) const {
    return "(" + re.to_string(digits) + ", " + im.to_string(digits) + ")";
}

Complex& Complex::operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
Complex& Complex::operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
Complex& Complex::operator*=(const Complex& o) { *this = *this * o; return *this; }
Complex& Complex::operator/=(const Complex& o) { *this = *this / o; return *this; }
Complex& Complex::operator*=(const Real& o) { re *= o; im *= o; return *this; }
Complex& Complex::operator/=(const Real& o) { re /= o; im /= o; return *this; }

Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }

Complex operator*(const Complex& a, const Complex& b) {
    if (a.im.is_zero()) return Complex(a.re * b.re, a.re * b.im);
    if (b.im.is_zero()) return Complex(a.re * b.re, a.im * b.re);
    Real r = fresh(), i = fresh(), t = fresh();
    mpfr_mul(r.get(), a.re.get(), b.re.get(), RND);
    mpfr_mul(t.get(), a.im.get(), b.im.get(), RND);
    mpfr_sub(r.get(), r.get(), t.get(), RND);
    mpfr_mul(i.get(), a.re.get(), b.im.get(), RND);
    mpfr_mul(t.get(), a.im.get(), b.re.get(), RND);
    mpfr_add(i.get(), i.get(), t.get(), RND);
    return Complex(std::move(r), std::move(i));
}

Complex operator/(const Complex& a, const Complex& b) {
    if (b.im.is_zero()) return Complex(a.re / b.re, a.im / b.re);
    // Smith's algorithm keeps intermediate magnitudes bounded.
    if (abs(b.re) >= abs(b.im)) {
        Real r = b.im / b.re;
        Real d = b.re + b.im * r;
        return Complex((a.re + a.im * r) / d, (a.im - a.re * r) / d);
    }
    Real r = b.re / b.im;
    Real d = b.re * r + b.im;
    return Complex((a.re * r + a.im) / d, (a.im * r - a.re) / d);
}

Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }
Complex operator*(const Real& a, const Complex& b) { return Complex(a * b.re, a * b.im); }
Complex operator/(const Complex& a, const Real& b) { return Complex(a.re / b, a.im / b); }
Complex operator+(const Complex& a, const Real& b) { return Complex(a.re + b, a.im); }
Complex operator-(const Complex& a, const Real& b) { return Complex(a.re - b, a.im); }
Complex operator+(const Real& a, const Complex& b) { return Complex(a + b.re, b.im); }
Complex operator-(const Real& a, const Complex& b) { return Complex(a - b.re, -b.im); }
Complex operator*(const Complex& a, long b) { return Complex(a.re * b, a.im * b); }
Complex operator/(const Complex& a, long b) { return Complex(a.re / b, a.im / b); }
Complex operator+(const Complex& a, long b) { return Complex(a.re + b, a.im); }
Complex operator-(const Complex& a, long b) { return Complex(a.re - b, a.im); }
Complex operator-(long a, const Complex& b) { return Complex(a - b.re, -b.im); }
Complex operator+(long a, const Complex& b) { return Complex(a + b.re, b.im); }
Complex operator*(long a, const Complex& b) { return b * a; }
Complex operator/(long a, const Complex& b) { return Complex(Real(a)) / b; }
Complex operator*(const Complex& a, int b) { return a * static_cast<long>(b); }
Complex operator/(const Complex& a, int b) { return a / static_cast<long>(b); }
Complex operator+(const Complex& a, int b) { return a + static_cast<long>(b); }
Complex operator-(const Complex& a, int b) { return a - static_cast<long>(b); }
Complex operator-(int a, const Complex& b) { return static_cast<long>(a) - b; }
Complex operator+(int a, const Complex& b) { return static_cast<long>(a) + b; }
Complex operator*(int a, const Complex& b) { return b * static_cast<long>(a); }
Complex operator*(const Complex& a, double b) { return Complex(a.re * b, a.im * b); }
Complex operator+(const Complex& a, double b) { return Complex(a.re + b, a.im); }
Complex operator-(const Complex& a, double b) { return Complex(a.re - b, a.im); }
Complex operator-(double a, const Complex& b) { return Complex(a - b.re, -b.im); }
Complex operator+(double a, const Complex& b) { return Complex(a + b.re, b.im); }
Complex operator*(double a, const Complex& b) { return b * a; }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex exp(const Complex& z) {
    if (z.im.is_zero()) return Complex(exp(z.re));
    Real m = exp(z.re);
    Real s, c;
    sin_cos(s, c, z.im);
    return Complex(m * c, m * s);
}

Complex log(const Complex& z) {
    if (z.im.is_zero() && z.re.sign() > 0) return Complex(log(z.re));
    return Complex(log(abs(z)), arg(z));
}

Complex sqrt(const Complex& z) {
    if (z.im.is_zero()) {
        if (z.re.sign() >= 0) return Complex(sqrt(z.re));
        return Complex(Real(0), sqrt(-z.re));
    }
    Real m = abs(z);
    Real a = sqrt((m + abs(z.re)) / 2);
    if (z.re.sign() >= 0) return Complex(a, z.im / (2 * a));
    Real b = z.im.sign() >= 0 ? a : -a;
    return Complex(abs(z.im) / (2 * a), b);
}

Complex sin(const Complex& z) {
    Real s, c, sh, ch;
    sin_cos(s, c, z.re);
    sinh_cosh(sh, ch, z.im);
    return Complex(s * ch, c * sh);
}

Complex cos(const Complex& z) {
    Real s, c, sh, ch;
    sin_cos(s, c, z.re);
    sinh_cosh(sh, ch, z.im);
    return Complex(c * ch, -(s * sh));
}

Complex pow(const Complex& z, const Complex& w) {
    if (z.is_zero()) {
        if (w.re.sign() > 0) return Complex(Real(0));
        throw std::domain_error("0 raised to a power with non-positive real part");
    }
    if (z.im.is_zero() && z.re.sign() > 0) return pow(z.re, w);
    return exp(w * log(z));
}

Complex pow(const Real& x, const Complex& w) {
    if (w.im.is_zero()) return Complex(pow(x, w.re));
    Real lx = log(x);
    Real m = exp(w.re * lx);
    Real s, c;
    sin_cos(s, c, w.im * lx);
    return Complex(m * c, m * s);
}

Complex pow(const Complex& z, long n) {
    if (n < 0) return Complex(Real(1)) / pow(z, -n);
    Complex result(Real(1));
    Complex base = z;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

Complex expi(const Real& theta) {
    Real s, c;
    sin_cos(s, c, theta);
    return Complex(std::move(c), std::move(s));
}

Complex e_twopi(const Real& t) {
    // reduce t mod 1 before multiplying by 2π
    Real f = t - floor(t);
    return expi(2 * const_pi() * f);
}

Complex i_pow(long n) {
    long r = ((n % 4) + 4) % 4;
    switch (r) {
        case 0: return Complex(Real(1), Real(0));
        case 1: return Complex(Real(0), Real(1));
        case 2: return Complex(Real(-1), Real(0));
        default: return Complex(Real(0), Real(-1));
    }
}

Complex mul_i(const Complex& z) { return Complex(-z.im, z.re); }

double to_double_abs(const Complex& z) { return std::hypot(z.re.to_double(), z.im.to_double()); }

Complex rounded(const Complex& z, int prec) { return Complex(z.re.rounded(prec), z.im.rounded(prec)); }

mpq_class to_mpq(const Real& x) {
    if (!x.is_finite()) throw std::domain_error("to_mpq: value is not finite");
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x.get());
    mpq_class q(m);
    if (e >= 0) {
        mpz_class s(1);
        s <<= static_cast<unsigned long>(e);
        q *= s;
    } else {
        mpz_class s(1);
        s <<= static_cast<unsigned long>(-e);
        q /= s;
    }
    q.canonicalize();
    return q;
}

}  // namespace momentlab
