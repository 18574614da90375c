#pragma once

#include "momentlab/real.hpp"

namespace momentlab {

struct KernelParams {
    int k = 6;
    Complex u;
    Complex v;
};

struct KernelValue {
    Real x;
    Complex value;
    Real tail_bound;
    bool slow = false;
};

// Central kernel φ_k(x), k even; x > 1/2 handled by φ_k(x) = φ_k(1-x).
KernelValue phi_k(const Real& x, int k);
// The defining series evaluated directly for any x in (0,1) and any k ≥ 1 (no reflection).
KernelValue phi_k_series(const Real& x, int k);

// φ_k(x;u,v) = φ̃_k(x;u,v) + φ̃_k(x;u,-v), v ≠ 0.
Complex phi_k_uv(const Real& x, const KernelParams& p);
// One half of the symmetrized sum.
Complex phi_tilde(const Real& x, const KernelParams& p);

// Φ_k(x;u,v) on (0,1); the central case is 2Γ²(k)/Γ(2k) x^k ₂F₁(k,k;2k;x).
KernelValue Phi_k(const Real& x, const KernelParams& p);
// ψ_k(x;u,v) for x > 0.
KernelValue psi_k(const Real& x, const KernelParams& p);

// Derivatives of φ_k from the term-wise differentiated series (orders 0..2).
struct PhiDerivatives {
    Real value;
    Real d1;
    Real d2;
};
PhiDerivatives phi_k_derivatives(const Real& x, int k);

enum class OdeForm { phi, Y_form, Phi_form };

// |residual| / largest term of the ODE satisfied by the chosen form.
Real ode_residual(OdeForm which, const Real& x, int k);

// Closed form of φ_k(1/2) for even k: 2√π(-1)^{k/2} Γ(k/2)/Γ((k+1)/2).
Real phi_k_half_closed_form(int k);

// Exact ₂F₁(k, 1-k; 1; x) at rational x.
mpq_class legendre_hypergeometric_exact(int k, const mpq_class& x);

// log(2Γ²(k)/Γ(2k)).
Real log_Phi_prefactor(int k);

}  // namespace momentlab
