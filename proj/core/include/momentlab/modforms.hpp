#pragma once

#include <utility>
#include <vector>

#include "momentlab/real.hpp"

namespace momentlab {

// Integral q-expansion a(0..n_max) of a level-1 form.
struct QExpansion {
    int weight = 0;
    int n_max = 0;
    std::vector<mpz_class> coeffs;
};

int cusp_dimension(int weight);

// max(2·dim + 10, ⌈k/2π⌉ + ⌈8√k⌉ + 16) with k = weight/2.
int default_n_max(int weight);

// Echelonized integral basis f_i = q^i + O(q^{d+1}) of S_weight.
std::vector<QExpansion> miller_basis(int weight, int n_max);

// Matrix of T_p (p = 2 or 3) on the Miller basis: column j holds T_p f_j in basis coordinates.
std::vector<std::vector<mpz_class>> hecke_matrix(const std::vector<QExpansion>& basis, int p);

// Characteristic polynomial, coefficients c_0..c_d (monic, c_d = 1).
std::vector<mpz_class> characteristic_polynomial(const std::vector<std::vector<mpz_class>>& m);

struct HeckeEigenform {
    int weight = 0;
    std::vector<Real> lambda;  // λ(0..n_max), λ(0) = 0, λ(1) = 1
    Real omega;
    Real central_value;
    Real sym2_at_1;
};

// Normalized eigenforms with λ(n) = a(n)/n^{(weight-1)/2}; omega etc. left unset.
std::vector<HeckeEigenform> hecke_eigenforms(int weight, int n_max = 0);

using IndexPair = std::pair<int, int>;

// {(m,n): 1 ≤ m ≤ n ≤ dim}
std::vector<IndexPair> default_petersson_pairs(int dim);

struct PeterssonSum {
    Real value;           // δ_{m,n} + 2π i^{weight} Σ_{c ≤ c_used} S(m,n;c)/c J_{weight-1}(4π√(mn)/c)
    Real certified_tail;  // bound on the omitted c > c_used
    long c_used = 0;
};

// Several pairs at once; c stops early once every certified tail is below tail_tol·2^-16.
std::vector<PeterssonSum> petersson_rhs(int weight, const std::vector<IndexPair>& pairs, long c_max);

struct HarmonicWeights {
    std::vector<Real> omega;
    Real condition;
    std::vector<Real> omega_error_bound;  // propagated from the Petersson tails
    long c_used = 0;
};

// Solves Σ_f ω_f λ_f(m)λ_f(n) = RHS(m,n) over the pairs (least squares if overdetermined).
HarmonicWeights harmonic_weights(const std::vector<HeckeEigenform>& forms, long c_max,
                                 const std::vector<IndexPair>& pairs = {});

struct PeterssonResidual {
    Real residual;
    Real certified_tail;
};

PeterssonResidual petersson_residual(int weight, int m, int n, long c_max);

struct AFEConfig {
    Real split = Real(1);
    int n_terms = 0;   // 0: all available coefficients
    Real target_tol;   // 0: tail_tol
};

// L_f(1/2); exactly 0 when weight/2 is odd.
Real central_value(const HeckeEigenform& f, const AFEConfig& cfg = {});
Complex l_value(const HeckeEigenform& f, const Complex& s, const AFEConfig& cfg = {});

// Σ_{n ≤ N} λ(n) n^{-s} with the bound Σ_{n>N} τ(n) n^{-Re s} on the rest (Re s > 1).
struct DirichletSum {
    Complex value;
    Real tail_bound;
};
DirichletSum dirichlet_series(const HeckeEigenform& f, const Complex& s);

// 12ζ(2)/((weight-1)·ω)
Real sym2_at_1(int weight, const Real& omega);

struct FormSpace {
    int weight = 0;
    int n_max = 0;
    long c_max = 0;
    std::vector<HeckeEigenform> forms;
    HarmonicWeights weights;
};

// Eigenforms with ω, L(1/2) and L(sym²,1) filled in; memoized per (weight, n_max, c_max, precision).
const FormSpace& form_space(int weight, int n_max = 0, long c_max = 200);

}  // namespace momentlab
