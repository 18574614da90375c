#pragma once

#include "momentlab/real.hpp"

namespace momentlab {

struct GammaSuite {
    Complex log_gamma;
    Complex digamma;
};

GammaSuite gamma_suite(const Complex& z);

// Principal branch of log Γ.
Complex log_gamma(const Complex& z);
Complex gamma_fn(const Complex& z);
// 1/Γ(z), entire: exactly zero at the poles of Γ.
Complex rgamma(const Complex& z);
Complex digamma(const Complex& z);

// 2^{2u-1}/π · Γ(u+v)Γ(u-v)
Complex gamma_pair_factor(const Complex& u, const Complex& v);

// B_{2j} at the working precision, j ≥ 1 (cached per thread).
const Real& bernoulli_b2n(int j);

// Exact harmonic number H_n = 1 + 1/2 + ... + 1/n.
mpq_class harmonic_exact(unsigned long n);

bool is_nonpositive_integer(const Complex& z);

}  // namespace momentlab
