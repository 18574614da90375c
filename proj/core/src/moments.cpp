#include "momentlab/moments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "momentlab/arith.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/gamma.hpp"
#include "momentlab/hypergeometric.hpp"
#include "momentlab/kernels.hpp"
#include "momentlab/lgreen.hpp"
#include "momentlab/modforms.hpp"
#include "momentlab/quadrature.hpp"
#include "momentlab/zeta.hpp"

namespace momentlab {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void check_weight(int weight, const char* where) {
    if (weight < 12 || weight % 2 != 0) throw DomainError(std::string(where) + ": weight must be even and at least 12");
}

Real tau_real(long n) { return Real(static_cast<long>(tau0(static_cast<std::uint64_t>(n)))); }

// Unscaled pieces of the u = v = 0 formula: main = τ(l)/√l [...], phi = l^{-1/2} Σ_{n<l},
// Phi = l^{-1/2} Σ_{n≥1}; tail bounds the omitted Φ terms and the long-double rounding.
struct Parts {
    Real main;
    Real phi;
    Real Phi;
    Real tail;
};

long double ld_Phi(long double x, int k, long double log_pref) {
    long double t = 1, s = 1;
    for (int j = 0; j < 400; ++j) {
        t *= static_cast<long double>(k + j) * (k + j) / ((2.0L * k + j) * (j + 1)) * x;
        s += t;
        if (t < 1e-22L * s) break;
    }
    return std::exp(log_pref + k * std::log(x)) * s;
}

// P l^k Σ_{n'>n} 4(n'+l) n'^{-k} with Φ_k(l/(n+l)) ≤ P (l/n)^k and τ(m) ≤ 2√m.
double Phi_tail_log(double log_pref, int k, int l, double n) {
    double s = std::pow(n, 2.0 - k) / (k - 2) + l * std::pow(n, 1.0 - k) / (k - 1);
    return log_pref + k * std::log(static_cast<double>(l)) + std::log(4.0 * s);
}

Parts second_moment_parts(int l, int k, const SecondMomentConfig& cfg) {
    Parts out;
    Real sl = sqrt(Real(l));
    Real pi = const_pi();
    out.main = tau_real(l) / sl * (2 * digamma(Real(k)) - log(Real(l)) - 2 * log(2 * pi) + 2 * const_euler());

    Real phi(0);
    for (int n = 1; n < l; ++n) {
        Real x = Real(n) / l;
        Real v = k % 2 == 0 ? phi_k(x, k).value.re : phi_k_series(x, k).value.re;
        phi += tau_real(n) * tau_real(l - n) * v;
    }
    out.phi = phi / sl;

    double log_pref = log_Phi_prefactor(k).to_double();
    double log_target = std::log(cfg.phi_tail_target.to_double());
    // head at full precision until the crude term bound drops below 2^-40
    long n_switch = 1;
    while (log_pref + k * std::log(static_cast<double>(l) / n_switch) + std::log(4.0 * (n_switch + l)) > -40 * std::log(2.0))
        ++n_switch;
    long n_end = n_switch;
    while (Phi_tail_log(log_pref, k, l, static_cast<double>(n_end)) > log_target && n_end < cfg.max_terms)
        n_end = std::min(cfg.max_terms, n_end * 2);
    {
        long lo = n_switch, hi = n_end;
        while (lo < hi) {
            long mid = lo + (hi - lo) / 2;
            if (Phi_tail_log(log_pref, k, l, static_cast<double>(mid)) <= log_target)
                hi = mid;
            else
                lo = mid + 1;
        }
        n_end = lo;
    }
    std::vector<std::uint32_t> tau = tau_table(static_cast<std::size_t>(n_end + l + 1));
    auto tt = [&](long n) { return static_cast<long>(tau[static_cast<std::size_t>(n)]); };

    KernelParams p;
    p.k = k;
    std::vector<Real> head;
    Real extra(0);
    for (long n = 1; n <= n_switch; ++n) {
        Real x = Real(l) / (n + l);
        KernelValue kv = Phi_k(x, p);
        Real v = kv.value.re;
        if (kv.slow) {
            LGApprox a = lg_approx_Phi(x, k, 1);
            v = a.value;
            extra += Real(tt(n) * tt(n + l)) * a.error_envelope;
        } else {
            extra += Real(tt(n) * tt(n + l)) * kv.tail_bound;
        }
        head.push_back(Real(tt(n) * tt(n + l)) * v);
    }
    Real Phi(0);
    if (cfg.reverse_order)
        for (std::size_t i = head.size(); i-- > 0;) Phi += head[i];
    else
        for (const Real& t : head) Phi += t;

    // compensated long-double tail
    long double s = 0, comp = 0, mag = 0;
    auto add = [&](long n) {
        long double x = static_cast<long double>(l) / static_cast<long double>(n + l);
        long double t = static_cast<long double>(tt(n) * tt(n + l)) * ld_Phi(x, k, log_pref);
        mag += t;
        long double y = t - comp;
        long double z = s + y;
        comp = (z - s) - y;
        s = z;
    };
    if (cfg.reverse_order)
        for (long n = n_end; n > n_switch; --n) add(n);
    else
        for (long n = n_switch + 1; n <= n_end; ++n) add(n);
    Phi += Real(static_cast<double>(s)) + Real(static_cast<double>(s - static_cast<long double>(static_cast<double>(s))));
    out.Phi = Phi / sl;
    out.tail = (exp(Real(Phi_tail_log(log_pref, k, l, static_cast<double>(n_end)))) +
                Real(static_cast<double>(mag)) * Real(1e-16) + extra) /
               sl;
    return out;
}

}  // namespace

Real second_moment_main(int l, int weight) {
    check_weight(weight, "second_moment_main");
    if (l < 1) throw DomainError("second_moment_main: l must be positive");
    Real k(weight / 2);
    Real pi = const_pi();
    return 2 * tau_real(l) / sqrt(Real(l)) *
           (2 * log(k) - log(Real(l)) - 2 * log(2 * pi) + 2 * const_euler());
}

MomentReport second_moment_exact(int l, int weight, const SecondMomentConfig& cfg) {
    check_weight(weight, "second_moment_exact");
    if (l < 1) throw DomainError("second_moment_exact: l must be positive");
    auto t0 = std::chrono::steady_clock::now();
    int k = weight / 2;
    MomentReport r;
    r.l = l;
    r.weight = weight;
    int n_max = std::max(default_n_max(weight), l);
    const FormSpace& fs = form_space(weight, n_max, cfg.c_max);

    Real oracle(0), budget(0);
    for (std::size_t i = 0; i < fs.forms.size(); ++i) {
        const HeckeEigenform& f = fs.forms[i];
        Real lam = f.lambda[static_cast<std::size_t>(l)];
        Real L2 = f.central_value * f.central_value;
        oracle += fs.weights.omega[i] * lam * L2;
        budget += abs(lam) * L2 * fs.weights.omega_error_bound[i] +
                  4 * tail_tol() * abs(lam) * abs(f.central_value) * fs.weights.omega[i];
    }
    r.oracle = oracle;
    if (k % 2 != 0) {
        // (1 + (-1)^k) = 0 and every central value is 0
        r.exact = Real(0);
        r.main_term = Real(0);
        r.phi_sum = Real(0);
        r.Phi_sum = Real(0);
        r.certified_tail = budget;
    } else {
        Parts p = second_moment_parts(l, k, cfg);
        r.main_term = 2 * p.main;
        r.phi_sum = p.phi;  // 2 · ½ l^{-1/2} Σ
        r.Phi_sum = 2 * p.Phi;
        r.exact = r.main_term + r.phi_sum + r.Phi_sum;
        r.certified_tail = 2 * p.tail + budget;
    }
    r.residual = abs(r.exact - r.oracle);
    r.wall_time_ms = elapsed_ms(t0);
    return r;
}

std::vector<MomentReport> second_moment_grid(const std::vector<std::pair<int, int>>& points,
                                             const SecondMomentConfig& cfg, int threads) {
    std::vector<MomentReport> out(points.size());
    if (points.empty()) return out;
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<int>(threads, static_cast<int>(points.size()));
    PrecisionContext ctx = current_context();
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(points.size());
    auto work = [&] {
        ContextGuard guard(ctx);
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                out[i] = second_moment_exact(points[i].first, points[i].second, cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

UVMoment second_moment_exact_uv(int l, int weight, const Complex& u, const Complex& v, const Real& tail_target) {
    check_weight(weight, "second_moment_exact_uv");
    int k = weight / 2;
    if (l < 1) throw DomainError("second_moment_exact_uv: l must be positive");
    if (!v.re.is_zero() || v.im.is_zero()) throw DomainError("second_moment_exact_uv: v must be purely imaginary and nonzero");
    if (abs(u.re) >= Real(k - 1)) throw DomainError("second_moment_exact_uv: |Re u| must be below k-1");
    if (u.re.is_zero() && u.im.is_zero()) throw PoleError("second_moment_exact_uv: ζ(1±2u) has a pole at u = 0");
    int prec = working_prec();
    UVMoment out;
    {
        PrecisionGuard guard(prec + 32);
        Real pi = const_pi();
        Real two_pi = 2 * pi;
        Real sgn = k % 2 == 0 ? Real(1) : Real(-1);
        Real L(l);
        Real logl = log(L);
        Complex one(Real(1));
        Complex half(Real(0.5));
        Complex K{Real(k)};
        Complex tv_l = divisor_tau(static_cast<std::uint64_t>(l), v);
        Complex tu_l = divisor_tau(static_cast<std::uint64_t>(l), u);
        Complex lg_kmu_pv = log_gamma(K - u + v), lg_kmu_mv = log_gamma(K - u - v);
        Complex lg_kpu_pv = log_gamma(K + u + v), lg_kpu_mv = log_gamma(K + u - v);
        Complex lt = log(two_pi);

        Complex m1 = riemann_zeta(one + 2 * u) * exp(-(half + u) * logl) +
                     exp(4 * u * lt - (half - u) * logl + lg_kmu_pv + lg_kmu_mv - lg_kpu_pv - lg_kpu_mv) *
                         riemann_zeta(one - 2 * u);
        Complex m2 = sgn * riemann_zeta(one + 2 * v) *
                     exp((2 * u - 2 * v) * lt - (half + v) * logl + lg_kmu_pv - lg_kpu_mv);
        Complex m3 = sgn * riemann_zeta(one - 2 * v) *
                     exp((2 * u + 2 * v) * lt - (half - v) * logl + lg_kmu_mv - lg_kpu_pv);
        out.main_terms = tv_l * m1 + tu_l * (m2 + m3);

        KernelParams kp;
        kp.k = k;
        kp.u = u;
        kp.v = v;
        Complex phi_part(Real(0));
        for (int n = 1; n < l; ++n)
            phi_part += divisor_tau(static_cast<std::uint64_t>(n), v) * divisor_tau(static_cast<std::uint64_t>(l - n), u) *
                        phi_k_uv(Real(n) / l, kp);

        // tail constant for n > N: see the term bound below
        Real rho = abs(u.re);
        Real delta = abs(u) + abs(v);
        Real amp = max(abs(sin(pi * (half + u))), abs(sin(pi * (half + v))));
        Real A = 2 * exp(2 * u.re * log(two_pi) + (lg_kmu_pv + lg_kmu_mv).re - lngamma(Real(2 * k))) * amp;
        auto tail_at = [&](long N) {
            Real x = L / N;
            Real R = exp(-(Real(k) + delta + rho) * log1p(-x));
            Real e = Real(2) + rho - k;
            Real b = A * exp(Real(k) * logl) * 4 * exp((1 + 2 * rho) * const_log2()) * R *
                     exp(e * log(Real(N))) / (Real(k - 2) - rho);
            return 2 * b / sqrt(L);
        };
        Complex Phi_part(Real(0)), psi_part(Real(0));
        long N = 0;
        for (long n = 1;; ++n) {
            Complex tv = divisor_tau(static_cast<std::uint64_t>(n), v);
            if (n >= l + 1) {
                KernelValue kv = Phi_k(L / n, kp);
                Phi_part += tv * divisor_tau(static_cast<std::uint64_t>(n - l), u) * kv.value;
            }
            KernelValue kv = psi_k(L / n, kp);
            psi_part += tv * divisor_tau(static_cast<std::uint64_t>(n + l), u) * kv.value;
            if (n >= 2 * l && tail_at(n) <= tail_target) {
                N = n;
                break;
            }
            if (n > 1000000) throw ConvergenceError("second_moment_exact_uv: kernel sums did not reach the target");
        }
        out.error_term = (sgn * phi_part + Phi_part + sgn * psi_part) / sqrt(L);
        out.rhs = out.main_terms + out.error_term;
        out.certified_tail = tail_at(N);

        const FormSpace& fs = form_space(weight, std::max(default_n_max(weight), l));
        AFEConfig cfg;
        cfg.target_tol = Real(1e-30);
        Complex s1 = half + u + v, s2 = half + u - v;
        Complex lhs(Real(0));
        Real budget(0);
        for (std::size_t i = 0; i < fs.forms.size(); ++i) {
            const HeckeEigenform& f = fs.forms[i];
            Real lam = f.lambda[static_cast<std::size_t>(l)];
            Complex prod = l_value(f, s1, cfg) * l_value(f, s2, cfg);
            lhs += fs.weights.omega[i] * lam * prod;
            budget += abs(lam) * abs(prod) * fs.weights.omega_error_bound[i];
        }
        out.lhs = lhs;
        out.certified_tail += budget;
        out.residual = abs(out.lhs - out.rhs);
    }
    out.lhs = rounded(out.lhs, prec);
    out.rhs = rounded(out.rhs, prec);
    out.main_terms = rounded(out.main_terms, prec);
    out.error_term = rounded(out.error_term, prec);
    out.residual = out.residual.rounded(prec);
    out.certified_tail = out.certified_tail.rounded(prec);
    return out;
}

Real first_moment_main(int l, int weight) {
    check_weight(weight, "first_moment_main");
    int k = weight / 2;
    return k % 2 == 0 ? Real(2) / sqrt(Real(l)) : Real(0);
}

Real first_moment_envelope(int l, int weight) {
    check_weight(weight, "first_moment_envelope");
    Real k(weight / 2);
    Real e = exp(Real(1));
    return exp(k * log(2 * const_pi() * e * l / k)) / sqrt(Real(l));
}

Real first_moment_v1_shape(int l, int weight) { return first_moment_envelope(l, weight); }

FirstMoment first_moment_exact(int l, int weight, const Complex& u, const Complex& v, const Real& tail_target) {
    check_weight(weight, "first_moment_exact");
    int k = weight / 2;
    if (l < 1) throw DomainError("first_moment_exact: l must be positive");
    if (!v.re.is_zero()) throw DomainError("first_moment_exact: v must be purely imaginary");
    if (abs(u.re) >= Real(k - 1)) throw DomainError("first_moment_exact: |Re u| must be below k-1");
    int prec = working_prec();
    FirstMoment out;
    {
        PrecisionGuard guard(prec + 32);
        Real pi = const_pi();
        Real two_pi = 2 * pi;
        Real sgn = k % 2 == 0 ? Real(1) : Real(-1);
        Complex half(Real(0.5));
        Complex s = u + v;
        Complex K{Real(k)};
        Real L(l);
        Real logl = log(L);
        Complex lg_a = log_gamma(K - s);
        Real lg_2k = lngamma(Real(2 * k));
        Complex a = K - s;
        Complex b(Real(2 * k));

        Complex main = exp(-(half + s) * logl) +
                       sgn * exp(2 * s * log(two_pi) - (half - s) * logl + lg_a - log_gamma(K + s));

        Complex pre = exp((s - half) * log(two_pi));
        Complex rot_minus = exp(mul_i(two_pi * (half - s) / 4));      // e((1/2 - s)/4)
        Complex rot_plus = exp(-mul_i(two_pi * (half - s) / 4));                        // e(-(1/2 - s)/4)
        Complex ph_minus = e_twopi(Real(-1) / 8 + Real(k) / 4);                         // e(-1/8 + k/4)
        Complex ph_plus = e_twopi(Real(1) / 8 - Real(k) / 4);                           // e(1/8 - k/4)
        Complex ga = exp(lg_a - lg_2k);
        Complex z_unit_minus = Complex(Real(0), Real(-1));  // -e(1/4) = -i
        Complex z_unit_plus = Complex(Real(0), Real(1));    // -e(-1/4) = i

        // |term| ≤ G (cn)^{|σ|-k} e^{2πl/(cn)}; Σ_{cn>T} τ(m) m^{|σ|-k} ≤ 2 T^{3/2+|σ|-k}/(k-3/2-|σ|)
        Real sigma = abs(s.re);
        Real G = abs(pre) * (abs(rot_minus) + abs(rot_plus)) * exp((Real(k) - Real(0.5)) * log(two_pi * L)) * abs(ga);
        Real denom = Real(k) - Real(1.5) - sigma;
        if (denom.sign() <= 0) throw DomainError("first_moment_exact: weight too small for the V1 tail bound");
        auto tail_at = [&](long T) {
            Real t(T);
            return 2 * pi * G * exp(two_pi * L / t) * 2 * exp((Real(1.5) + sigma - k) * log(t)) / denom;
        };
        long T = 4;
        while (tail_at(T) > tail_target) {
            T = T + T / 4 + 1;
            if (T > 200000) throw ConvergenceError("first_moment_exact: truncation insufficient for V1");
        }
        Complex V1(Real(0));
        for (long c = 1; c <= T; ++c) {
            Complex pc = exp(-(half + s) * log(Real(c)));
            for (long n = 1; c * n <= T; ++n) {
                if (gcd_u64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(c)) != 1) continue;
                long ns = c == 1 ? 0 : mod_inverse(n % c, c);
                long r = (ns * (l % c)) % c;
                Complex em = e_twopi(Real(r) / c);
                Complex ep = conj(em);
                Real x = Real(c * n) / (two_pi * L);
                Complex xp = exp((Real(0.5) - Real(k)) * log(x));
                Complex Iminus = ph_minus * xp * ga * kummer_1f1(a, b, z_unit_minus / x);
                Complex Iplus = ph_plus * xp * ga * kummer_1f1(a, b, z_unit_plus / x);
                Complex pn = exp((s - half) * log(Real(n)));
                V1 += pc * pn * pre * (em * rot_minus * Iminus + ep * rot_plus * Iplus);
            }
        }
        out.V1 = V1;
        out.cn_max = T;
        out.rhs = main + 2 * pi * sgn * V1;
        out.certified_tail = tail_at(T);

        const FormSpace& fs = form_space(weight, std::max(default_n_max(weight), l));
        AFEConfig cfg;
        cfg.target_tol = Real(1e-30);
        Complex s1 = half + s;
        Complex lhs(Real(0));
        Real budget(0);
        bool central = s.re.is_zero() && s.im.is_zero();
        for (std::size_t i = 0; i < fs.forms.size(); ++i) {
            const HeckeEigenform& f = fs.forms[i];
            Real lam = f.lambda[static_cast<std::size_t>(l)];
            Complex Lv = central ? Complex(f.central_value) : l_value(f, s1, cfg);
            lhs += fs.weights.omega[i] * lam * Lv;
            budget += abs(lam) * abs(Lv) * fs.weights.omega_error_bound[i];
        }
        out.lhs = lhs;
        out.certified_tail += budget;
        out.residual = abs(out.lhs - out.rhs);
    }
    out.lhs = rounded(out.lhs, prec);
    out.rhs = rounded(out.rhs, prec);
    out.V1 = rounded(out.V1, prec);
    out.residual = out.residual.rounded(prec);
    out.certified_tail = out.certified_tail.rounded(prec);
    return out;
}

Real TestWeight::evaluate(const Real& y) const {
    if (y <= theta1 || y >= theta2) return Real(0);
    return exp(Real(-1) / ((y - theta1) * (theta2 - y)));
}

TestWeight bump_weight(const Real& theta1, const Real& theta2, const Real& tol_in) {
    if (!(theta1.sign() > 0 && theta1 < theta2)) throw DomainError("bump_weight: need 0 < θ₁ < θ₂");
    TestWeight h;
    h.theta1 = theta1;
    h.theta2 = theta2;
    Real tol = tol_in.is_zero() ? tail_tol() : tol_in;
    auto w = [](const Real&, const Real& from_a, const Real& to_b) {
        return Complex(exp(Real(-1) / (from_a * to_b)));
    };
    auto wl = [](const Real& y, const Real& from_a, const Real& to_b) {
        return Complex(exp(Real(-1) / (from_a * to_b)) * log(y));
    };
    h.H = tanh_sinh(EndpointIntegrand(w), theta1, theta2, tol, 16).value.re;
    h.H1 = tanh_sinh(EndpointIntegrand(wl), theta1, theta2, tol, 16).value.re;
    return h;
}

AveragedMoments averaged_moments(int l, const Real& K, const TestWeight& h) {
    if (l < 1) throw DomainError("averaged_moments: l must be positive");
    if (K.sign() <= 0) throw DomainError("averaged_moments: K must be positive");
    AveragedMoments out;
    long k_lo = static_cast<long>(floor(h.theta1 * K / 4).to_double());
    long k_hi = static_cast<long>(ceil(h.theta2 * K / 4).to_double());
    Real A1(0), A2(0);
    for (long k = std::max(3L, k_lo); k <= k_hi; ++k) {
        Real hk = h.evaluate(Real(4 * k) / K);
        if (hk.sign() <= 0) continue;
        int weight = static_cast<int>(4 * k);
        out.weights.push_back(weight);
        const FormSpace& fs = form_space(weight, std::max(default_n_max(weight), l));
        Real s1(0), s2(0);
        for (std::size_t i = 0; i < fs.forms.size(); ++i) {
            const HeckeEigenform& f = fs.forms[i];
            Real t = fs.weights.omega[i] * f.lambda[static_cast<std::size_t>(l)] * f.central_value;
            s1 += t;
            s2 += t * f.central_value;
        }
        A1 += hk * s1;
        A2 += hk * s2;
    }
    if (out.weights.size() < 2) throw DomainError("averaged_moments: fewer than two weights in the support of h");
    Real pi = const_pi();
    Real sl = sqrt(Real(l));
    Real hk4 = h.H * K / 4;
    out.A1_direct = A1;
    out.A2_direct = A2;
    out.A1_predicted = 2 / sl * hk4;
    Real common = 2 * log(K) - log(Real(l)) + 2 * const_euler() + 2 * h.H1 / h.H;
    Real pref = 2 * tau_real(l) / sl * hk4;
    out.A2_predicted = pref * (common - 2 * log(8 * pi));
    out.A2_predicted_4pi = pref * (common - 2 * log(4 * pi));
    return out;
}

std::map<long, Real> mollifier_coeffs(const MollifierConfig& cfg) {
    const Real& M = cfg.M;
    if (M <= Real(1)) throw DomainError("mollifier_coeffs: M must exceed 1");
    if (floor(M) == M) throw DomainError("mollifier_coeffs: M must not be an integer");
    Real logM = log(M);
    long top = static_cast<long>(floor(M).to_double());
    std::map<long, Real> x;
    for (long m = 1; m <= top; ++m) {
        MultiplicativeBasics mb = multiplicative_basics(static_cast<std::uint64_t>(m));
        if (mb.mu == 0) {
            x[m] = Real(0);
            continue;
        }
        Real p = log(M / m) / logM;
        x[m] = Real(mb.mu) / Real(mb.rho) * p * p;
    }
    return x;
}

namespace {

struct MollifierSums {
    Real M1, M2, Msq;
};

MollifierSums mollifier_sums(const FormSpace& fs, const std::map<long, Real>& x) {
    MollifierSums s{Real(0), Real(0), Real(0)};
    for (std::size_t i = 0; i < fs.forms.size(); ++i) {
        const HeckeEigenform& f = fs.forms[i];
        Real Mf(0);
        for (const auto& [m, xm] : x) {
            if (xm.is_zero()) continue;
            Mf += xm * f.lambda[static_cast<std::size_t>(m)] / sqrt(Real(m));
        }
        const Real& w = fs.weights.omega[i];
        s.M1 += w * Mf * f.central_value;
        s.M2 += w * Mf * Mf * f.central_value * f.central_value;
        s.Msq += w * Mf * Mf;
    }
    return s;
}

}  // namespace

MollifiedMoments mollified_moments(int weight, const MollifierConfig& cfg_in) {
    check_weight(weight, "mollified_moments");
    if (!(cfg_in.Delta.sign() > 0 && cfg_in.Delta < Real(1))) throw DomainError("mollified_moments: Δ must lie in (0,1)");
    int k = weight / 2;
    MollifierConfig cfg = cfg_in;
    if (cfg.M.is_zero()) cfg.M = exp(cfg.Delta * log(Real(k)));
    std::map<long, Real> x = mollifier_coeffs(cfg);
    const FormSpace& fs = form_space(weight);
    if (static_cast<long>(x.size()) > fs.n_max)
        throw DomainError("mollified_moments: mollifier length exceeds the computed coefficients");
    MollifiedMoments out;
    out.M = cfg.M;
    out.outside_lemma_cap = cfg.M * cfg.M >= Real(static_cast<long>(k) * k) / 10000;
    MollifierSums s = mollifier_sums(fs, x);
    out.M1 = s.M1;
    out.M2 = s.M2;
    Real pi = const_pi();
    Real z2 = pi * pi / 6;
    Real logM = log(cfg.M);
    out.M1_pred = 4 * z2 / logM;
    out.M2_pred = 16 * z2 * z2 / (logM * logM) * (1 + 1 / cfg.Delta);
    Real b = exp(cfg.b_exponent * log(log(Real(k))));
    out.M1_tilde_bound = b * sqrt(s.Msq);
    return out;
}

Real nonvanishing_target(const Real& Delta) { return Delta / (1 + Delta); }

NonvanishingReport nonvanishing_report(int weight, const MollifierConfig& cfg) {
    check_weight(weight, "nonvanishing_report");
    int k = weight / 2;
    NonvanishingReport r;
    r.weight = weight;
    r.threshold = exp(Real(-2) * log(log(Real(k))));
    r.proportion_observed = Real(0);
    r.proportion_observed_harmonic = Real(0);
    r.lower_bound = Real(0);
    r.best_Delta = cfg.Delta;
    if (k % 2 != 0) return r;
    const FormSpace& fs = form_space(weight);
    long count = 0;
    for (std::size_t i = 0; i < fs.forms.size(); ++i)
        if (fs.forms[i].central_value >= r.threshold) {
            ++count;
            r.proportion_observed_harmonic += fs.weights.omega[i];
        }
    r.proportion_observed = Real(count) / Real(static_cast<long>(fs.forms.size()));
    std::vector<Real> grid{cfg.Delta, Real(0.05), Real(0.1), Real(0.15), Real(0.2), Real(0.24)};
    for (const Real& d : grid) {
        MollifierConfig c = cfg;
        c.Delta = d;
        c.M = exp(d * log(Real(k)));
        if (floor(c.M) == c.M) continue;
        MollifiedMoments mm = mollified_moments(weight, c);
        if (mm.M2.sign() <= 0 || mm.M1 <= mm.M1_tilde_bound) continue;
        Real gap = mm.M1 - mm.M1_tilde_bound;
        Real lb = min(Real(1), gap * gap / mm.M2);
        if (lb > r.lower_bound) {
            r.lower_bound = lb;
            r.best_Delta = d;
        }
    }
    return r;
}

namespace {

double Phi_shape(int l, int k) {
    return std::max(std::pow(l, -0.25) / std::sqrt(k), std::sqrt(static_cast<double>(l)) * std::pow(k, -1.5));
}

Parts raw_parts(int l, int weight) {
    SecondMomentConfig cfg;
    return second_moment_parts(l, weight / 2, cfg);
}

}  // namespace

ErrorEnvelopeFit fit_error_envelopes(const std::vector<std::pair<int, int>>& calibration) {
    ErrorEnvelopeFit fit;
    fit.calibration = calibration;
    std::vector<double> xs, ys, phi_ratio;
    std::vector<std::pair<double, double>> pts;
    for (auto [l, weight] : calibration) {
        check_weight(weight, "fit_error_envelopes");
        int k = weight / 2;
        Parts p = raw_parts(l, weight);
        double Phi = std::fabs(p.Phi.to_double());
        double phi = std::fabs(p.phi.to_double());
        if (Phi > 0) {
            xs.push_back(k / std::sqrt(static_cast<double>(l)));
            ys.push_back(std::log(Phi / Phi_shape(l, k)));
        }
        if (phi > 0) phi_ratio.push_back(phi / (std::sqrt(static_cast<double>(l)) / std::sqrt(k)));
    }
    if (xs.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= xs.size();
        my /= xs.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        fit.Phi_c = sxx > 0 ? std::max(0.0, -sxy / sxx) : 0.0;
        double worst = -1e300;
        for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, ys[i] + fit.Phi_c * xs[i]);
        fit.Phi_C = 2 * std::exp(worst);
    }
    for (double r : phi_ratio) fit.phi_C = std::max(fit.phi_C, 2 * r);
    return fit;
}

const ErrorEnvelopeFit& default_error_envelopes() {
    static const ErrorEnvelopeFit fit = [] {
        ContextGuard guard(PrecisionContext{});
        std::vector<std::pair<int, int>> cal;
        for (int w : {12, 16, 20, 24, 28})
            for (int l : {1, 2, 3, 4}) cal.emplace_back(l, w);
        return fit_error_envelopes(cal);
    }();
    return fit;
}

ErrorTermBounds error_term_bounds(int l, int weight, const ErrorEnvelopeFit& fit) {
    check_weight(weight, "error_term_bounds");
    if (l < 1) throw DomainError("error_term_bounds: l must be positive");
    int k = weight / 2;
    Parts p = raw_parts(l, weight);
    ErrorTermBounds b;
    b.Phi_observed = abs(p.Phi);
    b.phi_observed = abs(p.phi);
    double sl = std::sqrt(static_cast<double>(l));
    b.Phi_bound = Real(fit.Phi_C) * exp(Real(-fit.Phi_c * k / sl)) * Real(Phi_shape(l, k));
    b.phi_bound = Real(fit.phi_C * sl / std::sqrt(k));
    return b;
}

}  // namespace momentlab
