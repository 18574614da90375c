#pragma once

#include "momentlab/real.hpp"

namespace momentlab {

// Hurwitz-type ζ(α, s) = Σ_{n≥0} (n+α)^{-s}, α ∈ (0,1], Re s ≥ -1/2.
// Euler–Maclaurin continuation split at N terms (0 picks N from the precision).
Complex lerch_zeta(const Real& alpha, const Complex& s, long split = 0);

Complex riemann_zeta(const Complex& s);

// D_v(s, d/c) = Σ τ_v(n) e(nd/c) n^{-s}, continued through the Lerch representation.
Complex estermann_D(const Complex& s, const Complex& v, long d, long c);

// Plain truncated Dirichlet series Σ_{n ≤ n_max}; meant as an oracle for Re s large.
Complex estermann_D_series(const Complex& s, const Complex& v, long d, long c, long n_max);

// Right side of the s ↔ 1-s functional equation for D_v(s, d/c).
Complex estermann_functional_rhs(const Complex& s, const Complex& v, long d, long c);

struct ResidueCheck {
    Complex numeric;
    Complex predicted;
};

// Residue of D_v(s, d/c) at s = 1+v: ε·D(1+v+ε) extrapolated from ε ∈ {eps1, eps2}.
ResidueCheck estermann_residue(const Complex& v, long d, long c, double eps1 = 1e-6, double eps2 = 1e-8);

}  // namespace momentlab
