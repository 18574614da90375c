#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "momentlab/real.hpp"

namespace momentlab {

struct MomentReport {
    int l = 1;
    int weight = 12;
    Real exact;
    Real oracle;
    Real residual;
    Real main_term;
    Real phi_sum;
    Real Phi_sum;
    Real certified_tail;  // Φ-sum truncation + oracle budget
    double wall_time_ms = 0;
};

struct SecondMomentConfig {
    Real phi_tail_target = Real(1e-24);  // certified bound on the omitted Φ-sum
    long max_terms = 4000000;
    bool reverse_order = false;          // sum the Φ head from the small end
    long c_max = 200;
};

// Exact second moment via the pre-limited u = v = 0 formula, plus the oracle Σ ω λ(l) L(1/2)².
MomentReport second_moment_exact(int l, int weight, const SecondMomentConfig& cfg = {});

// Independent (l, weight) points evaluated on worker threads in the caller's precision context.
std::vector<MomentReport> second_moment_grid(const std::vector<std::pair<int, int>>& points,
                                             const SecondMomentConfig& cfg = {}, int threads = 0);

// 2τ(l)/√l (2 log k − log l − 2 log 2π + 2γ) with k = weight/2.
Real second_moment_main(int l, int weight);

struct UVMoment {
    Complex lhs;
    Complex rhs;
    Real residual;
    Complex main_terms;
    Complex error_term;  // E(l;u,v)
    Real certified_tail;
};

// General (u, v) convolution identity: both sides of the second moment twisted by λ(l).
UVMoment second_moment_exact_uv(int l, int weight, const Complex& u, const Complex& v,
                                const Real& tail_target = Real(1e-14));

struct FirstMoment {
    Complex lhs;
    Complex rhs;
    Real residual;
    Complex V1;
    Real certified_tail;
    long cn_max = 0;  // V₁ summed over c·n ≤ cn_max
};

// First moment Σ ω λ(l) L(1/2+u+v) against its exact expansion with the V₁ double series.
FirstMoment first_moment_exact(int l, int weight, const Complex& u, const Complex& v,
                               const Real& tail_target = Real(1e-14));

// l^{-1/2}(1 + i^{2k}) and the envelope (2πe l/k)^k / √l.
Real first_moment_main(int l, int weight);
Real first_moment_envelope(int l, int weight);

// V₁ bound shape (1/√(lT))(2πe lT/k)^k at T = 1.
Real first_moment_v1_shape(int l, int weight);

struct TestWeight {
    Real theta1 = Real(1);
    Real theta2 = Real(2);
    Real H;
    Real H1;
    Real evaluate(const Real& y) const;
};

// exp(-1/((y-θ₁)(θ₂-y))) on (θ₁, θ₂), with H and H₁ integrated to the given tolerance.
TestWeight bump_weight(const Real& theta1, const Real& theta2, const Real& tol = Real(0));

struct AveragedMoments {
    Real A1_direct;
    Real A1_predicted;
    Real A2_direct;
    Real A2_predicted;         // with −2 log 8π
    Real A2_predicted_4pi;     // the same bracket with −2 log 4π
    std::vector<int> weights;  // 4k with h(4k/K) > 0
};

AveragedMoments averaged_moments(int l, const Real& K, const TestWeight& h);

struct MollifierConfig {
    Real Delta = Real(0.2);
    Real M;                       // set from k^Δ by mollified_moments
    Real b_exponent = Real(-1.5);
};

// x_m = μ(m)/ρ(m) (log(M/m)/log M)² for m ≤ M; M must not be an integer.
std::map<long, Real> mollifier_coeffs(const MollifierConfig& cfg);

struct MollifiedMoments {
    Real M;
    Real M1;
    Real M1_pred;
    Real M2;
    Real M2_pred;
    Real M1_tilde_bound;
    bool outside_lemma_cap = false;  // M² ≥ k²/10⁴
};

MollifiedMoments mollified_moments(int weight, const MollifierConfig& cfg);

struct NonvanishingReport {
    int weight = 0;
    Real proportion_observed;           // plain count over the dimension
    Real proportion_observed_harmonic;  // Σ ω over the same forms
    Real lower_bound;
    Real threshold;                     // (log k)^{-2}
    Real best_Delta;
};

// Lower bound maximized over the configured Δ and the grid {0.05, 0.1, 0.15, 0.2, 0.24}.
NonvanishingReport nonvanishing_report(int weight, const MollifierConfig& cfg);

// Δ/(1+Δ)
Real nonvanishing_target(const Real& Delta);

struct ErrorTermBounds {
    Real Phi_bound;
    Real phi_bound;
    Real Phi_observed;
    Real phi_observed;
};

// Constants of the error-term envelopes, fitted on a calibration set and frozen.
struct ErrorEnvelopeFit {
    double Phi_C = 0;
    double Phi_c = 0;
    double phi_C = 0;
    std::vector<std::pair<int, int>> calibration;  // (l, weight)
};

ErrorEnvelopeFit fit_error_envelopes(const std::vector<std::pair<int, int>>& calibration);
const ErrorEnvelopeFit& default_error_envelopes();

// C exp(-c k/√l) max(l^{-1/4}k^{-1/2}, l^{1/2}k^{-3/2}) and C' l^{1/2}/√k, k = weight/2.
ErrorTermBounds error_term_bounds(int l, int weight, const ErrorEnvelopeFit& fit = default_error_envelopes());

}  // namespace momentlab
