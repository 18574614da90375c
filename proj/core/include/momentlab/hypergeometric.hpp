#pragma once

#include <optional>

#include "momentlab/real.hpp"

namespace momentlab {

struct SeriesValue {
    Complex value;
    Real tail_bound;       // bound on the omitted tail
    long terms = 0;
    bool slow = false;     // series length cap reached before tail_tol
};

constexpr long kSeriesLengthCap = 1000000;

// ₂F₁(a, b; c; x) for real |x| < 1.
SeriesValue gauss_2f1_series(const Complex& a, const Complex& b, const Complex& c, const Real& x);
Complex gauss_2f1(const Complex& a, const Complex& b, const Complex& c, const Real& x);

// Terminating ₂F₁ with rational data, evaluated exactly; empty if neither a nor b
// is a non-positive integer.
std::optional<mpq_class> gauss_2f1_exact(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                                         const mpq_class& x);

// ₁F₁(a; b; z).
SeriesValue kummer_1f1_series(const Complex& a, const Complex& b, const Complex& z);
Complex kummer_1f1(const Complex& a, const Complex& b, const Complex& z);

// Hankel expansion coefficient a_j(v) = Γ(v+j+1/2)/(2^j j! Γ(v-j+1/2)).
mpq_class hankel_a(unsigned j, const mpq_class& v);

}  // namespace momentlab
