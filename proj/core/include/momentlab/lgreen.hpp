#pragma once

#include <vector>

#include "momentlab/real.hpp"

namespace momentlab {

// Oscillatory: φ_k side, ξ = 4 arcsin²√x on (0, π²/4].
// Exponential: Φ_k side, ξ = 4 artanh²√(1-x) on (0, ∞).
enum class LGCase { oscillatory, exponential };

struct LGTransform {
    Real xi;
    Real alpha;
};

LGTransform lg_transform(LGCase which, const Real& x);
Real lg_inverse_transform(LGCase which, const Real& xi);

Real lg_potential(LGCase which, const Real& xi);

// Closed forms through n = 1 and their ξ-derivatives.
struct LGCoefficients {
    Real A0;
    Real B0;
    Real A1;
    Real dB0;
    Real dA1;
    Real B1_variation_bound;  // Var √x B(1;x) over (ξ, ξ₂) resp. (ξ, ∞); only when requested
};

LGCoefficients lg_coefficients(LGCase which, const Real& lambda1, const Real& xi, bool with_variation = false);

// 1/16 + 75/(32π²), or the test override when one is installed.
Real lg_lambda1();
// 1/16 + 405/(32π²), the value stated alongside the O(k^-5) claim for C_J; it does not
// cancel the leading term and leaves C_J = O(k^-3).
Real lg_lambda1_printed();

namespace testing {
// Replaces λ₁ for the current thread while alive.
class Lambda1Override {
public:
    explicit Lambda1Override(const Real& value);
    ~Lambda1Override();
    Lambda1Override(const Lambda1Override&) = delete;
    Lambda1Override& operator=(const Lambda1Override&) = delete;
};
}  // namespace testing

enum class LGBessel { Y, J, K };

// Truncated Z_C(ξ) and its ξ-derivative for C ∈ {Y, J, K}; J uses the constant of
// integration 0, Y and K use lambda1.
struct LGPartialSum {
    Real Z;
    Real dZ;
};
LGPartialSum lg_partial_sum(LGBessel kind, const Real& xi, int k, int N, const Real& lambda1);

// W = √ξ C₀(u√ξ), V = ξ C₁(u√ξ) (V = -ξ K₁ for K) with derivatives from the
// first-order relations.
struct LGBesselPair {
    Real W;
    Real V;
    Real dW;
    Real dV;
};
LGBesselPair lg_bessel_pair(LGBessel kind, const Real& xi, const Real& u);

struct LGConstants {
    Real C_Y;
    Real C_J;
    Real C_K;
    Real Z_Y_at_xi2;
    Real Z_Y_prime_at_xi2;
};

LGConstants lg_constants(int k, int N = 1);

struct LGApprox {
    Real value;
    Real error_envelope;
    bool exact_fallback = false;  // u√ξ < 1: value is the exact series
};

LGApprox lg_approx_phi(const Real& x, int k, int N);
LGApprox lg_approx_Phi(const Real& x, int k, int N);

// Envelope constants fitted on k ∈ {20, 40} and 20 x-points, index [case][N].
double lg_envelope_constant(LGCase which, int N);

// Normalized approximation error at (k, x), maximized over one Bessel period in √ξ.
Real lg_windowed_error(LGCase which, int N, int k, const Real& x);

// Least-squares slope of log(windowed error) against log u.
double error_order_fit(LGCase which, int N, const std::vector<int>& k_list, const Real& x);

}  // namespace momentlab
