#pragma once

#include "momentlab/real.hpp"

namespace momentlab {

enum class BesselKind { J, Y, K };

// J of real order; Y and K of order 0 or 1. x > 0.
Real bessel(BesselKind kind, const Real& order, const Real& x);

Real bessel_j(const Real& order, const Real& x);
Real bessel_y(int order, const Real& x);
Real bessel_k(int order, const Real& x);
Real bessel_i(const Real& order, const Real& x);

// Complex order, used by the Mellin kernel checks (|Im order| ≤ 1).
Complex bessel_j_complex(const Complex& order, const Real& x);
Complex bessel_k_complex(const Complex& order, const Real& x);

}  // namespace momentlab
