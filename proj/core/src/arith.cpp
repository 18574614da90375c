#include "momentlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "momentlab/errors.hpp"

namespace momentlab {

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw DomainError("factorize: n must be positive");
    Factorization out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> ds{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = ds.size();
        std::uint64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

long mod_inverse(long a, long c) {
    if (c == 1) return 0;
    long t = 0, new_t = 1;
    long r = c, new_r = ((a % c) + c) % c;
    while (new_r != 0) {
        long q = r / new_r;
        long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw DomainError("mod_inverse: not invertible");
    return t < 0 ? t + c : t;
}

Complex divisor_tau(std::uint64_t n, const Complex& v) {
    if (n == 0) throw DomainError("divisor_tau: n must be positive");
    Complex sum(Real(0));
    if (v.is_zero()) return Complex(Real(static_cast<long>(divisors(n).size())));
    Real ln = log(Real(static_cast<unsigned long>(n)));
    for (auto d : divisors(n)) {
        Real t = 2 * log(Real(static_cast<unsigned long>(d))) - ln;  // log(d²/n)
        sum += exp(v * t);
    }
    return sum;
}

std::uint64_t tau0(std::uint64_t n) {
    std::uint64_t t = 1;
    for (auto [p, e] : factorize(n)) t *= static_cast<std::uint64_t>(e + 1);
    return t;
}

Complex divisor_sigma(std::uint64_t n, const Complex& s) {
    Complex sum(Real(0));
    for (auto d : divisors(n)) sum += pow(Real(static_cast<unsigned long>(d)), s);
    return sum;
}

MultiplicativeBasics multiplicative_basics(std::uint64_t n) {
    MultiplicativeBasics r{1, n, mpq_class(1)};
    for (auto [p, e] : factorize(n)) {
        r.mu = (e > 1) ? 0 : -r.mu;
        r.phi = r.phi / p * (p - 1);
        r.rho *= mpq_class(static_cast<unsigned long>(p + 1), static_cast<unsigned long>(p));
    }
    r.rho.canonicalize();
    return r;
}

int moebius(std::uint64_t n) { return multiplicative_basics(n).mu; }

std::vector<std::uint32_t> tau_table(std::size_t n) {
    std::vector<std::uint32_t> t(n + 1, 0);
    for (std::size_t d = 1; d <= n; ++d)
        for (std::size_t m = d; m <= n; m += d) ++t[m];
    return t;
}

double tau_power_constant(double theta) {
    if (theta <= 0) throw DomainError("tau_power_constant: theta must be positive");
    // For p ≥ 2^{1/theta} every factor (a+1)/p^{a theta} is ≤ 1.
    double limit = std::pow(2.0, 1.0 / theta);
    double c = 1.0;
    for (std::uint64_t p = 2; static_cast<double>(p) < limit; ++p) {
        if (factorize(p).size() != 1 || factorize(p)[0].second != 1) continue;
        double best = 1.0;
        for (int a = 1; a < 200; ++a) {
            double f = (a + 1) / std::pow(static_cast<double>(p), a * theta);
            best = std::max(best, f);
        }
        c *= best;
    }
    return c * (1 + 1e-12);
}

RootsOfUnity::RootsOfUnity(long c) : c_(c) {
    if (c < 1) throw DomainError("RootsOfUnity: modulus must be positive");
    cos_.resize(static_cast<std::size_t>(c));
    sin_.resize(static_cast<std::size_t>(c));
    Real two_pi_over_c = 2 * const_pi() / c;
    for (long j = 0; 2 * j <= c; ++j) {
        Real s, co;
        sin_cos(s, co, two_pi_over_c * j);
        cos_[j] = co;
        sin_[j] = s;
        if (j > 0 && j < c) {
            cos_[c - j] = co;
            sin_[c - j] = -s;
        }
    }
}

Complex RootsOfUnity::at(long j) const { return Complex(cos_at(j), sin_at(j)); }

Real kloosterman(long m, long n, const RootsOfUnity& roots) {
    long c = roots.modulus();
    Real re(0), im(0);
    long count = 0;
    for (long a = 0; a < c; ++a) {
        if (std::gcd(a, c) != 1) continue;
        long ai = mod_inverse(a, c);
        long idx = static_cast<long>((static_cast<__int128>(a) * m + static_cast<__int128>(ai) * n) % c);
        re += roots.cos_at(idx);
        im += roots.sin_at(idx);
        ++count;
    }
    Real bound = tail_tol() * std::max<long>(1, count);
    if (abs(im) > bound)
        throw std::logic_error("kloosterman: imaginary part exceeds tolerance");
    return re;
}

Real kloosterman(long m, long n, long c) {
    if (c <= 0) throw DomainError("kloosterman: c must be positive");
    RootsOfUnity roots(c);
    return kloosterman(m, n, roots);
}

double weil_bound(long m, long n, long c) {
    std::uint64_t g = std::gcd(std::gcd(static_cast<std::uint64_t>(std::labs(m)),
                                        static_cast<std::uint64_t>(std::labs(n))),
                               static_cast<std::uint64_t>(c));
    if (g == 0) g = static_cast<std::uint64_t>(c);
    return static_cast<double>(tau0(static_cast<std::uint64_t>(c))) * std::sqrt(static_cast<double>(g)) *
           std::sqrt(static_cast<double>(c));
}

}  // namespace momentlab
