#pragma once

#include <functional>
#include <vector>

#include "momentlab/real.hpp"

namespace momentlab {

struct QuadResult {
    Complex value;
    Real error_estimate;
    int levels = 0;
    long evaluations = 0;
};

using RealIntegrand = std::function<Complex(const Real&)>;

// Integrand receiving both the abscissa and its distances to the two endpoints,
// so endpoint singularities can be evaluated without cancellation.
using EndpointIntegrand = std::function<Complex(const Real& x, const Real& from_a, const Real& to_b)>;

// Double-exponential (tanh-sinh) rule on [a, b].
QuadResult tanh_sinh(const EndpointIntegrand& f, const Real& a, const Real& b, const Real& tol, int max_level = 12);
QuadResult tanh_sinh(const RealIntegrand& f, const Real& a, const Real& b, const Real& tol, int max_level = 12);

// Double-exponential (exp-sinh) rule on [a, ∞) for integrands decaying at infinity.
QuadResult exp_sinh(const RealIntegrand& f, const Real& a, const Real& tol, int max_level = 12);

// Gauss–Legendre nodes and weights on [-1, 1] at the working precision.
struct GaussLegendre {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};
const GaussLegendre& gauss_legendre(int n);
Complex gauss_legendre_integrate(const RealIntegrand& f, const Real& a, const Real& b, int n);

// Wynn ε-algorithm limit estimate of a sequence of partial sums.
Complex wynn_epsilon(const std::vector<Complex>& partial_sums, Real* error_estimate = nullptr);

}  // namespace momentlab
