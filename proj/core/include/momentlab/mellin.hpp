#pragma once

#include "momentlab/real.hpp"

namespace momentlab {

enum class BesselKernel { k0, k1 };

// k0(x,v) = (J_{2v}(x) - J_{-2v}(x)) / (2 cos π(1/2+v)), with the v → 0 limit -Y_0(x).
Complex bessel_kernel_k0(const Real& x, const Complex& v);
// k1(x,v) = (2/π) sin π(1/2+v) K_{2v}(x).
Complex bessel_kernel_k1(const Real& x, const Complex& v);

struct MellinCheck {
    Complex quadrature;
    Complex closed_form;
    Real quadrature_error;
};

// ∫_0^∞ kernel(x,v) x^{w-1} dx by quadrature, next to γ(w/2,v)cos(πw/2) (k0)
// or γ(w/2,v) sin π(1/2+v) (k1).
MellinCheck mellin_kernel_check(BesselKernel kind, const Complex& w, const Complex& v);

}  // namespace momentlab
