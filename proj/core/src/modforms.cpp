#include "momentlab/modforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "linalg.hpp"
#include "momentlab/arith.hpp"
#include "momentlab/bessel.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/gamma.hpp"
#include "momentlab/incgamma.hpp"
#include "momentlab/zeta.hpp"

namespace momentlab {

namespace {

using Series = std::vector<mpz_class>;
using Poly = std::vector<mpq_class>;  // ascending coefficients

Series multiply(const Series& a, const Series& b, int n_max) {
    Series c(static_cast<std::size_t>(n_max + 1), mpz_class(0));
    for (int i = 0; i <= n_max; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; i + j <= n_max; ++j)
            c[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
    return c;
}

Series power(const Series& a, int e, int n_max) {
    Series r(static_cast<std::size_t>(n_max + 1), mpz_class(0));
    r[0] = 1;
    for (int i = 0; i < e; ++i) r = multiply(r, a, n_max);
    return r;
}

Series eisenstein(int which, int n_max) {
    // E4 = 1 + 240 Σ σ₃(n) qⁿ, E6 = 1 - 504 Σ σ₅(n) qⁿ
    Series e(static_cast<std::size_t>(n_max + 1), mpz_class(0));
    e[0] = 1;
    int s = which == 4 ? 3 : 5;
    long scale = which == 4 ? 240 : -504;
    for (int n = 1; n <= n_max; ++n) {
        mpz_class sigma(0);
        for (std::uint64_t d : divisors(static_cast<std::uint64_t>(n))) {
            mpz_class t;
            mpz_ui_pow_ui(t.get_mpz_t(), d, static_cast<unsigned long>(s));
            sigma += t;
        }
        e[static_cast<std::size_t>(n)] = scale * sigma;
    }
    return e;
}

Series discriminant(const Series& e4, const Series& e6, int n_max) {
    Series a = power(e4, 3, n_max);
    Series b = multiply(e6, e6, n_max);
    Series d(static_cast<std::size_t>(n_max + 1));
    for (int n = 0; n <= n_max; ++n) {
        mpz_class t = a[static_cast<std::size_t>(n)] - b[static_cast<std::size_t>(n)];
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), 1728);
        d[static_cast<std::size_t>(n)] = t;
    }
    return d;
}

// Polynomial helpers over Q.
void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

Poly remainder(Poly a, const Poly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

Poly gcd_poly(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

mpq_class eval(const Poly& p, const mpq_class& x) {
    mpq_class r(0);
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain{p, derivative(p)};
    while (chain.back().size() > 1) {
        Poly r = remainder(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(r);
    }
    return chain;
}

int sign_changes(const std::vector<Poly>& chain, const mpq_class& x) {
    int changes = 0, last = 0;
    for (const Poly& q : chain) {
        int s = sgn(eval(q, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// Roots of a square-free polynomial with only real roots, each to absolute width 2^-bits.
std::vector<mpq_class> real_roots(const Poly& p, long bits) {
    std::vector<Poly> chain = sturm_chain(p);
    mpq_class bound(1);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        mpq_class r = abs(p[i] / p.back());
        if (r + 1 > bound) bound = r + 1;
    }
    std::vector<mpq_class> roots;
    struct Interval {
        mpq_class a, b;
    };
    std::vector<Interval> work{{-bound, bound}};
    std::vector<Interval> isolated;
    while (!work.empty()) {
        Interval iv = work.back();
        work.pop_back();
        int count = sign_changes(chain, iv.a) - sign_changes(chain, iv.b);
        if (count == 0) continue;
        if (count == 1) {
            isolated.push_back(iv);
            continue;
        }
        mpq_class mid = (iv.a + iv.b) / 2;
        if (eval(p, mid) == 0) {
            roots.push_back(mid);
            // step away from the exact root until the neighbourhood holds only it
            mpq_class delta = (iv.b - iv.a) / 4;
            while (sign_changes(chain, mid - delta) - sign_changes(chain, mid + delta) != 1 ||
                   eval(p, mid - delta) == 0 || eval(p, mid + delta) == 0)
                delta /= 2;
            work.push_back({iv.a, mid - delta});
            work.push_back({mid + delta, iv.b});
        } else {
            work.push_back({iv.a, mid});
            work.push_back({mid, iv.b});
        }
    }
    mpq_class width(1);
    mpz_class den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    width = mpq_class(mpz_class(1), den);
    for (Interval iv : isolated) {
        if (eval(p, iv.b) == 0) {
            roots.push_back(iv.b);
            continue;
        }
        int sb = sgn(eval(p, iv.b));
        while (iv.b - iv.a > width) {
            mpq_class mid = (iv.a + iv.b) / 2;
            int sm = sgn(eval(p, mid));
            if (sm == 0) {
                iv.a = iv.b = mid;
                break;
            }
            if (sm == sb)
                iv.b = mid;
            else
                iv.a = mid;
        }
        roots.push_back((iv.a + iv.b) / 2);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

long max_bits(const std::vector<QExpansion>& basis) {
    long bits = 1;
    for (const auto& f : basis)
        for (const auto& a : f.coeffs) bits = std::max(bits, static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)));
    return bits;
}

// Σ_{c'>c} τ(c') c'^{-ν-1/2} scaled by c^{ν+1/2}, with a crude bound past 64c.
double scaled_tau_tail(long c, double nu, const std::vector<std::uint32_t>& tau) {
    long stop = static_cast<long>(tau.size()) - 1;
    double s = 0;
    double e = nu + 0.5;
    for (long cc = c + 1; cc <= stop; ++cc) {
        double t = tau[static_cast<std::size_t>(cc)] * std::exp(-e * std::log(static_cast<double>(cc) / c));
        s += t;
        if (t < 1e-30 * s) break;
    }
    // τ(n) ≤ 2√n beyond the table: Σ_{n>N} 2 n^{-ν} ≤ 2N^{1-ν}/(ν-1), rescaled
    double n = static_cast<double>(stop);
    if (nu > 1.0) s += 2.0 * std::exp((1 - nu) * std::log(n) + e * std::log(static_cast<double>(c))) / (nu - 1);
    return s;
}

}  // namespace

int cusp_dimension(int weight) {
    if (weight < 12 || weight % 2 != 0) return 0;
    int d = weight / 12;
    return weight % 12 == 2 ? d - 1 : d;
}

int default_n_max(int weight) {
    int d = cusp_dimension(weight);
    double k = weight / 2.0;
    int afe = static_cast<int>(std::ceil(k / (2 * M_PI)) + std::ceil(8 * std::sqrt(k))) + 16;
    return std::max(2 * d + 10, afe);
}

std::vector<QExpansion> miller_basis(int weight, int n_max) {
    if (weight % 2 != 0) throw DomainError("miller_basis: weight must be even");
    int d = cusp_dimension(weight);
    if (d == 0) return {};
    if (n_max < d) throw DomainError("miller_basis: n_max below the dimension");
    static const int eps4[] = {0, 2, 1, 0, 2, 1};
    static const int eps6[] = {0, 1, 0, 1, 0, 1};
    int r = (weight % 12) / 2;
    int e4 = eps4[r], e6 = eps6[r];
    if (12 * d + 4 * e4 + 6 * e6 != weight) throw std::logic_error("miller_basis: weight decomposition");
    Series E4 = eisenstein(4, n_max);
    Series E6 = eisenstein(6, n_max);
    Series D = discriminant(E4, E6, n_max);
    Series base = multiply(power(E4, e4, n_max), power(E6, e6, n_max), n_max);
    Series E6sq = multiply(E6, E6, n_max);
    std::vector<Series> g(static_cast<std::size_t>(d + 1));
    for (int j = 1; j <= d; ++j)
        g[static_cast<std::size_t>(j)] =
            multiply(multiply(power(D, j, n_max), power(E6sq, d - j, n_max), n_max), base, n_max);
    // echelon: clear q^j (j ≠ i, j ≤ d) from f_i, top-down
    std::vector<QExpansion> basis(static_cast<std::size_t>(d));
    for (int i = d; i >= 1; --i) {
        Series f = g[static_cast<std::size_t>(i)];
        for (int j = i + 1; j <= d; ++j) {
            mpz_class c = f[static_cast<std::size_t>(j)];
            if (c == 0) continue;
            const Series& fj = basis[static_cast<std::size_t>(j - 1)].coeffs;
            for (int n = 0; n <= n_max; ++n) f[static_cast<std::size_t>(n)] -= c * fj[static_cast<std::size_t>(n)];
        }
        basis[static_cast<std::size_t>(i - 1)] = QExpansion{weight, n_max, std::move(f)};
    }
    return basis;
}

std::vector<std::vector<mpz_class>> hecke_matrix(const std::vector<QExpansion>& basis, int p) {
    std::size_t d = basis.size();
    std::vector<std::vector<mpz_class>> m(d, std::vector<mpz_class>(d));
    if (d == 0) return m;
    int w = basis[0].weight;
    if (static_cast<std::size_t>(p) * d > static_cast<std::size_t>(basis[0].n_max))
        throw DomainError("hecke_matrix: n_max too small for T_p");
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(w - 1));
    for (std::size_t j = 0; j < d; ++j) {
        const Series& a = basis[j].coeffs;
        for (std::size_t i = 1; i <= d; ++i) {
            mpz_class b = a[static_cast<std::size_t>(p) * i];
            if (i % static_cast<std::size_t>(p) == 0) b += pw * a[i / static_cast<std::size_t>(p)];
            m[i - 1][j] = b;
        }
    }
    return m;
}

std::vector<mpz_class> characteristic_polynomial(const std::vector<std::vector<mpz_class>>& a) {
    // Faddeev–LeVerrier; every division is exact over Z
    std::size_t n = a.size();
    std::vector<mpz_class> c(n + 1);
    c[n] = 1;
    std::vector<std::vector<mpz_class>> mk(n, std::vector<mpz_class>(n, mpz_class(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<mpz_class>> next(n, std::vector<mpz_class>(n, mpz_class(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                mpz_class s(0);
                for (std::size_t l = 0; l < n; ++l) s += a[i][l] * mk[l][j];
                next[i][j] = s;
            }
        for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
        mk = std::move(next);
        mpz_class tr(0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * mk[l][i];
        mpz_class q = -tr;
        mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
        c[n - k] = q;
    }
    return c;
}

std::vector<HeckeEigenform> hecke_eigenforms(int weight, int n_max) {
    int d = cusp_dimension(weight);
    if (d == 0) return {};
    if (n_max == 0) n_max = default_n_max(weight);
    if (n_max < 2 * d + 10) throw DomainError("hecke_eigenforms: n_max must be at least 2·dim + 10");
    int prec = working_prec();
    std::vector<QExpansion> basis = miller_basis(weight, std::max(n_max, 3 * d));

    std::vector<std::vector<mpz_class>> m = hecke_matrix(basis, 2);
    std::vector<mpz_class> cp = characteristic_polynomial(m);
    Poly p(cp.begin(), cp.end());
    if (gcd_poly(p, derivative(p)).size() > 1) {
        m = hecke_matrix(basis, 3);
        cp = characteristic_polynomial(m);
        p = Poly(cp.begin(), cp.end());
        if (gcd_poly(p, derivative(p)).size() > 1)
            throw ConvergenceError("hecke_eigenforms: T2 and T3 spectra are both degenerate");
    }
    int hi = prec + static_cast<int>(max_bits(basis)) + 64;
    std::vector<mpq_class> roots = real_roots(p, hi + 16);
    if (static_cast<int>(roots.size()) != d) throw ConvergenceError("hecke_eigenforms: root isolation failed");

    std::vector<HeckeEigenform> forms;
    for (const mpq_class& root : roots) {
        HeckeEigenform f;
        f.weight = weight;
        f.lambda.assign(static_cast<std::size_t>(n_max + 1), Real(0));
        {
            PrecisionGuard guard(hi);
            Real lam(root);
            std::vector<Real> c(static_cast<std::size_t>(d), Real(0));
            c[0] = Real(1);
            if (d > 1) {
                detail::Matrix a(static_cast<std::size_t>(d), std::vector<Real>(static_cast<std::size_t>(d - 1)));
                std::vector<Real> rhs(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i) {
                    for (int j = 1; j < d; ++j) {
                        Real v(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                        if (i == j) v -= lam;
                        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] = v;
                    }
                    Real v0(m[static_cast<std::size_t>(i)][0]);
                    if (i == 0) v0 -= lam;
                    rhs[static_cast<std::size_t>(i)] = -v0;
                }
                std::vector<Real> x = detail::lsq_solve(a, rhs);
                for (int j = 1; j < d; ++j) c[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j - 1)];
            }
            Real half_w = Real(weight - 1) / 2;
            for (int n = 1; n <= n_max; ++n) {
                Real an(0);
                for (int j = 0; j < d; ++j)
                    an += c[static_cast<std::size_t>(j)] *
                          Real(basis[static_cast<std::size_t>(j)].coeffs[static_cast<std::size_t>(n)]);
                f.lambda[static_cast<std::size_t>(n)] = (an / exp(half_w * log(Real(n)))).rounded(prec);
            }
        }
        f.lambda[1] = Real(1);
        forms.push_back(std::move(f));
    }
    return forms;
}

std::vector<IndexPair> default_petersson_pairs(int dim) {
    std::vector<IndexPair> pairs;
    for (int m = 1; m <= dim; ++m)
        for (int n = m; n <= dim; ++n) pairs.emplace_back(m, n);
    return pairs;
}

std::vector<PeterssonSum> petersson_rhs(int weight, const std::vector<IndexPair>& pairs, long c_max) {
    if (c_max < 1) throw DomainError("petersson_rhs: c_max must be positive");
    std::size_t np = pairs.size();
    std::vector<PeterssonSum> out(np);
    if (np == 0) return out;
    Real pi = const_pi();
    Real nu(weight - 1);
    double nud = weight - 1.0;
    Real sign = (weight / 2) % 2 == 0 ? Real(1) : Real(-1);
    std::vector<Real> acc(np, Real(0));
    std::vector<double> log_pref(np);
    for (std::size_t i = 0; i < np; ++i) {
        auto [m, n] = pairs[i];
        double g = static_cast<double>(gcd_u64(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n)));
        log_pref[i] = std::log(2 * M_PI * std::sqrt(g)) + nud * std::log(2 * M_PI * std::sqrt(static_cast<double>(m) * n)) -
                      std::lgamma(nud + 1);
    }
    std::vector<std::uint32_t> tau = tau_table(static_cast<std::size_t>(64 * c_max + 64));
    double log_target = std::log(tail_tol().to_double()) - 16 * std::log(2.0);
    long c_used = c_max;
    std::vector<double> tails(np);
    for (long c = 1; c <= c_max; ++c) {
        RootsOfUnity roots(c);
        for (std::size_t i = 0; i < np; ++i) {
            auto [m, n] = pairs[i];
            Real s = kloosterman(m, n, roots);
            if (s.is_zero()) continue;
            Real x = 4 * pi * sqrt(Real(static_cast<long>(m) * n)) / c;
            acc[i] += s / c * bessel_j(nu, x);
        }
        bool done = true;
        double log_c = std::log(static_cast<double>(c));
        double scaled = scaled_tau_tail(c, nud, tau);
        for (std::size_t i = 0; i < np; ++i) {
            tails[i] = log_pref[i] - (nud + 0.5) * log_c + std::log(scaled) + std::log(1.01);
            if (tails[i] > log_target) done = false;
        }
        if (done) {
            c_used = c;
            break;
        }
    }
    for (std::size_t i = 0; i < np; ++i) {
        auto [m, n] = pairs[i];
        out[i].value = 2 * pi * sign * acc[i];
        if (m == n) out[i].value += Real(1);
        out[i].certified_tail = exp(Real(tails[i]));
        out[i].c_used = c_used;
    }
    return out;
}

HarmonicWeights harmonic_weights(const std::vector<HeckeEigenform>& forms, long c_max,
                                 const std::vector<IndexPair>& pairs_in) {
    HarmonicWeights hw;
    std::size_t d = forms.size();
    if (d == 0) {
        hw.condition = Real(1);
        return hw;
    }
    int weight = forms[0].weight;
    std::vector<IndexPair> pairs = pairs_in.empty() ? default_petersson_pairs(static_cast<int>(d)) : pairs_in;
    if (pairs.size() < d) throw DomainError("harmonic_weights: fewer pairs than forms");
    for (auto [m, n] : pairs)
        if (static_cast<std::size_t>(std::max(m, n)) >= forms[0].lambda.size())
            throw DomainError("harmonic_weights: pair index beyond the computed coefficients");
    std::vector<PeterssonSum> rhs = petersson_rhs(weight, pairs, c_max);
    detail::Matrix a(pairs.size(), std::vector<Real>(d));
    std::vector<Real> b(pairs.size());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [m, n] = pairs[r];
        for (std::size_t f = 0; f < d; ++f)
            a[r][f] = forms[f].lambda[static_cast<std::size_t>(m)] * forms[f].lambda[static_cast<std::size_t>(n)];
        b[r] = rhs[r].value;
    }
    hw.condition = detail::condition_number(a);
    if (hw.condition > Real(1e12)) throw ConditioningError("harmonic_weights: condition number above 1e12");
    hw.omega = detail::lsq_solve(a, b);
    detail::Matrix pinv = detail::pseudo_inverse(a);
    hw.omega_error_bound.assign(d, Real(0));
    for (std::size_t f = 0; f < d; ++f)
        for (std::size_t r = 0; r < pairs.size(); ++r) hw.omega_error_bound[f] += abs(pinv[f][r]) * rhs[r].certified_tail;
    hw.c_used = rhs[0].c_used;
    return hw;
}

PeterssonResidual petersson_residual(int weight, int m, int n, long c_max) {
    if (m < 1 || n < 1) throw DomainError("petersson_residual: m, n must be positive");
    int n_max = std::max(default_n_max(weight), std::max(m, n));
    const FormSpace& fs = form_space(weight, n_max, c_max);
    PeterssonSum rhs = petersson_rhs(weight, {{m, n}}, c_max)[0];
    Real lhs(0), prop(0);
    for (std::size_t f = 0; f < fs.forms.size(); ++f) {
        Real ll = fs.forms[f].lambda[static_cast<std::size_t>(m)] * fs.forms[f].lambda[static_cast<std::size_t>(n)];
        lhs += fs.weights.omega[f] * ll;
        prop += abs(ll) * fs.weights.omega_error_bound[f];
    }
    PeterssonResidual r;
    r.residual = abs(lhs - rhs.value);
    r.certified_tail = rhs.certified_tail + prop;
    return r;
}

Complex l_value(const HeckeEigenform& f, const Complex& s, const AFEConfig& cfg) {
    int k2 = f.weight;
    if (k2 < 12) throw DomainError("l_value: weight must be at least 12");
    int kh = k2 / 2;
    bool central = s.im.is_zero() && s.re == Real(0.5);
    if (central && kh % 2 != 0) return Complex(Real(0));
    int prec = working_prec();
    int n_terms = cfg.n_terms > 0 ? cfg.n_terms : static_cast<int>(f.lambda.size()) - 1;
    if (n_terms >= static_cast<int>(f.lambda.size())) throw DomainError("l_value: n_terms beyond the coefficients");
    Real target = cfg.target_tol.is_zero() ? tail_tol() : cfg.target_tol;
    Complex out;
    {
        PrecisionGuard guard(prec + 32);
        Real pi = const_pi();
        Real two_pi = 2 * pi;
        Real X = cfg.split;
        Complex half(Real(0.5));
        Complex a = s + Real(kh) - half;
        Complex b = Complex(Real(1)) - s + Real(kh) - half;
        Real eps = kh % 2 == 0 ? Real(1) : Real(-1);
        Complex dual = eps * exp((2 * s - Real(1)) * log(two_pi));
        Complex sum(Real(0));
        for (int n = 1; n <= n_terms; ++n) {
            const Real& lam = f.lambda[static_cast<std::size_t>(n)];
            if (lam.is_zero()) continue;
            Real ln = log(Real(n));
            Complex t1 = exp(-s * ln) * incomplete_gamma_upper(a, two_pi * n * X);
            Complex t2 = exp((s - Real(1)) * ln) * incomplete_gamma_upper(b, two_pi * n / X);
            sum += lam * (t1 + dual * t2);
        }
        // first omitted term, with |Γ(a,x)| ≤ Γ(Re a, x) and |λ(n)| ≤ τ(n)
        long nn = n_terms + 1;
        Real lnn = log(Real(nn));
        Real bound1 = exp(-s.re * lnn) * abs(incomplete_gamma_upper(Complex(a.re), two_pi * nn * X));
        Real bound2 = exp((s.re - Real(1)) * lnn) * abs(dual) * abs(incomplete_gamma_upper(Complex(b.re), two_pi * nn / X));
        Complex ga = gamma_fn(a);
        Real omitted = Real(static_cast<long>(tau0(static_cast<std::uint64_t>(nn)))) * (bound1 + bound2) / abs(ga);
        if (omitted > target) throw ConvergenceError("l_value: truncation insufficient for the requested tolerance");
        out = sum / ga;
    }
    if (central) return Complex(out.re.rounded(prec));
    return rounded(out, prec);
}

Real central_value(const HeckeEigenform& f, const AFEConfig& cfg) { return l_value(f, Complex(Real(0.5)), cfg).re; }

DirichletSum dirichlet_series(const HeckeEigenform& f, const Complex& s) {
    if (s.re <= Real(1.25)) throw DomainError("dirichlet_series: needs Re s > 5/4 for the tail bound");
    DirichletSum out;
    long n_max = static_cast<long>(f.lambda.size()) - 1;
    Complex sum(Real(0));
    for (long n = 1; n <= n_max; ++n) sum += f.lambda[static_cast<std::size_t>(n)] * exp(-s * log(Real(n)));
    out.value = sum;
    // τ(n) ≤ C n^{1/4}: Σ_{n>N} ≤ C N^{5/4-σ}/(σ-5/4)
    Real c(tau_power_constant(0.25));
    Real e = Real(1.25) - s.re;
    out.tail_bound = c * exp(e * log(Real(n_max))) / (-e);
    return out;
}

Real sym2_at_1(int weight, const Real& omega) {
    Real pi = const_pi();
    Real zeta2 = pi * pi / 6;
    return 12 * zeta2 / (Real(weight - 1) * omega);
}

const FormSpace& form_space(int weight, int n_max, long c_max) {
    if (n_max == 0) n_max = default_n_max(weight);
    struct Entry {
        std::once_flag once;
        FormSpace value;
    };
    static std::mutex mu;
    static std::map<std::tuple<int, int, long, int, long>, std::shared_ptr<Entry>> cache;
    auto key = std::make_tuple(weight, n_max, c_max, working_prec(), current_context().tail_exp2);
    std::shared_ptr<Entry> e;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[key];
        if (!slot) slot = std::make_shared<Entry>();
        e = slot;
    }
    std::call_once(e->once, [&] {
        FormSpace fs;
        fs.weight = weight;
        fs.n_max = n_max;
        fs.c_max = c_max;
        fs.forms = hecke_eigenforms(weight, n_max);
        fs.weights = harmonic_weights(fs.forms, c_max);
        for (std::size_t i = 0; i < fs.forms.size(); ++i) {
            HeckeEigenform& f = fs.forms[i];
            f.omega = fs.weights.omega[i];
            f.sym2_at_1 = sym2_at_1(weight, f.omega);
            f.central_value = central_value(f);
        }
        e->value = std::move(fs);
    });
    return e->value;
}

}  // namespace momentlab
