#pragma once

#include <vector>

#include "momentlab/real.hpp"

namespace momentlab {

// Γ(a, x) = ∫_x^∞ t^{a-1} e^{-t} dt for x > 0.
Complex incomplete_gamma_upper(const Complex& a, const Real& x);

// Γ(a0 + j, x) for j = 0..count-1, one continued-fraction seed and the upward recurrence.
std::vector<Complex> incomplete_gamma_ladder(const Complex& a0, const Real& x, int count);

}  // namespace momentlab
