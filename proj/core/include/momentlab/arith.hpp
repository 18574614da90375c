#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "momentlab/real.hpp"

namespace momentlab {

using Factorization = std::vector<std::pair<std::uint64_t, int>>;

Factorization factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
long mod_inverse(long a, long c);

// τ_v(n) = Σ_{d|n} (d²/n)^v
Complex divisor_tau(std::uint64_t n, const Complex& v);
std::uint64_t tau0(std::uint64_t n);
// σ_s(n) = Σ_{d|n} d^s
Complex divisor_sigma(std::uint64_t n, const Complex& s);

struct MultiplicativeBasics {
    int mu;
    std::uint64_t phi;
    mpq_class rho;
};

MultiplicativeBasics multiplicative_basics(std::uint64_t n);
int moebius(std::uint64_t n);

// Divisor counts 0..n (entry 0 unused).
std::vector<std::uint32_t> tau_table(std::size_t n);

// sup_n τ(n)/n^theta, exact over the finitely many contributing primes.
double tau_power_constant(double theta);

// Tables of cos(2πj/c), sin(2πj/c) for 0 ≤ j < c.
class RootsOfUnity {
public:
    explicit RootsOfUnity(long c);
    long modulus() const { return c_; }
    const Real& cos_at(long j) const { return cos_[static_cast<std::size_t>(reduce(j))]; }
    const Real& sin_at(long j) const { return sin_[static_cast<std::size_t>(reduce(j))]; }
    Complex at(long j) const;

private:
    long reduce(long j) const { long r = j % c_; return r < 0 ? r + c_ : r; }
    long c_;
    std::vector<Real> cos_;
    std::vector<Real> sin_;
};

Real kloosterman(long m, long n, long c);
Real kloosterman(long m, long n, const RootsOfUnity& roots);
double weil_bound(long m, long n, long c);

}  // namespace momentlab
