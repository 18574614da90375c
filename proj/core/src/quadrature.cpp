#include "momentlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "momentlab/errors.hpp"

namespace momentlab {

namespace {

double de_half_width(int prec) { return std::asinh((prec * 0.6931471805599453 + 24.0) / M_PI); }

struct Node {
    Real x;
    Real from_a;
    Real to_b;
    Real w;
};

Node tanh_sinh_node(const Real& t, const Real& a, const Real& len) {
    Real half_pi = const_pi() / 2;
    Real sh, ch;
    sinh_cosh(sh, ch, t);
    Real y = half_pi * sh;
    Real e2 = exp(2 * abs(y));
    Real near = len / (e2 + Real(1));
    Real far = len - near;
    Node n;
    if (y.sign() >= 0) {
        n.to_b = near;
        n.from_a = far;
    } else {
        n.from_a = near;
        n.to_b = far;
    }
    n.x = a + n.from_a;
    Real cy = cosh(y);
    n.w = len / 2 * half_pi * ch / (cy * cy);
    return n;
}

}  // namespace

QuadResult tanh_sinh(const EndpointIntegrand& f, const Real& a, const Real& b, const Real& tol, int max_level) {
    Real len = b - a;
    double tmax = de_half_width(working_prec());
    QuadResult res;
    Complex sum(Real(0));
    Real l1(0);
    Complex prev;
    bool have_prev = false;
    for (int level = 0; level <= max_level; ++level) {
        Real h = from_exp2(-level);
        long step = level == 0 ? 1 : 2;
        long jmax = static_cast<long>(std::floor(tmax * std::ldexp(1.0, level)));
        long jstart = level == 0 ? 0 : 1;
        for (long j = jstart; j <= jmax; j += step) {
            Real t = Real(j) * h;
            for (int side = 0; side < (j == 0 ? 1 : 2); ++side) {
                Real ts = side == 0 ? t : -t;
                Node n = tanh_sinh_node(ts, a, len);
                if (n.from_a.is_zero() || n.to_b.is_zero()) continue;
                Complex fv = f(n.x, n.from_a, n.to_b);
                ++res.evaluations;
                sum += fv * n.w;
                l1 += abs(fv) * n.w;
            }
        }
        Complex est = sum * h;
        res.levels = level;
        if (have_prev) {
            Real diff = abs(est - prev);
            res.error_estimate = diff;
            res.value = est;
            if (level >= 3 && diff <= tol * l1 * h) return res;
        }
        prev = est;
        have_prev = true;
    }
    res.value = prev;
    return res;
}

QuadResult tanh_sinh(const RealIntegrand& f, const Real& a, const Real& b, const Real& tol, int max_level) {
    EndpointIntegrand g = [&f](const Real& x, const Real&, const Real&) { return f(x); };
    return tanh_sinh(g, a, b, tol, max_level);
}

QuadResult exp_sinh(const RealIntegrand& f, const Real& a, const Real& tol, int max_level) {
    int prec = working_prec();
    double tmin = -std::asinh(2 * (prec * 0.6931471805599453 + 24.0) / M_PI);
    double tcap = -tmin;
    Real half_pi = const_pi() / 2;
    Real eps = from_exp2(-prec - 8);
    QuadResult res;

    auto node = [&](const Real& t, Real& x, Real& w) {
        Real sh, ch;
        sinh_cosh(sh, ch, t);
        Real e = exp(half_pi * sh);
        x = a + e;
        w = half_pi * ch * e;
    };

    // Right truncation from a coarse scan: stop once four successive samples are negligible.
    double thi = tcap;
    {
        Real running(0);
        int quiet = 0;
        for (double t = 0; t <= tcap; t += 0.125) {
            Real x, w;
            node(Real(t), x, w);
            Real m = abs(f(x)) * w;
            running += m;
            if (m <= eps * running) {
                if (++quiet >= 4) {
                    thi = t;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
    }

    Complex sum(Real(0));
    Real l1(0);
    Complex prev;
    bool have_prev = false;
    for (int level = 0; level <= max_level; ++level) {
        Real h = from_exp2(-level);
        double scale = std::ldexp(1.0, level);
        long jlo = static_cast<long>(std::ceil(tmin * scale));
        long jhi = static_cast<long>(std::floor(thi * scale));
        for (long j = jlo; j <= jhi; ++j) {
            if (level > 0 && j % 2 == 0) continue;
            Real x, w;
            node(Real(j) * h, x, w);
            if (x == a) continue;
            Complex fv = f(x);
            ++res.evaluations;
            sum += fv * w;
            l1 += abs(fv) * w;
        }
        Complex est = sum * h;
        res.levels = level;
        if (have_prev) {
            Real diff = abs(est - prev);
            res.error_estimate = diff;
            res.value = est;
            if (level >= 3 && diff <= tol * l1 * h) return res;
        }
        prev = est;
        have_prev = true;
    }
    res.value = prev;
    return res;
}

const GaussLegendre& gauss_legendre(int n) {
    thread_local std::map<std::pair<int, int>, GaussLegendre> cache;
    int prec = working_prec();
    auto key = std::make_pair(n, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    GaussLegendre gl;
    {
        PrecisionGuard guard(prec + 32);
        Real eps = from_exp2(-prec - 16);
        int half = (n + 1) / 2;
        std::vector<Real> xs, ws;
        for (int i = 1; i <= half; ++i) {
            Real x(std::cos(M_PI * (i - 0.25) / (n + 0.5)));
            Real dp;
            for (int it2 = 0; it2 < 100; ++it2) {
                Real p0(1), p1 = x;
                for (int k = 2; k <= n; ++k) {
                    Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = std::move(p1);
                    p1 = std::move(p2);
                }
                dp = n * (x * p1 - p0) / (x * x - Real(1));
                Real dx = p1 / dp;
                x -= dx;
                if (abs(dx) < eps) break;
            }
            Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
            xs.push_back(x.rounded(prec));
            ws.push_back(w.rounded(prec));
        }
        for (int i = 0; i < half; ++i) {
            gl.nodes.push_back(-xs[static_cast<std::size_t>(i)]);
            gl.weights.push_back(ws[static_cast<std::size_t>(i)]);
        }
        for (int i = half - 1 - (n % 2); i >= 0; --i) {
            gl.nodes.push_back(xs[static_cast<std::size_t>(i)]);
            gl.weights.push_back(ws[static_cast<std::size_t>(i)]);
        }
    }
    return cache.emplace(key, std::move(gl)).first->second;
}

Complex gauss_legendre_integrate(const RealIntegrand& f, const Real& a, const Real& b, int n) {
    const GaussLegendre& gl = gauss_legendre(n);
    Real mid = (a + b) / 2;
    Real half = (b - a) / 2;
    Complex sum(Real(0));
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) sum += f(mid + half * gl.nodes[i]) * gl.weights[i];
    return sum * half;
}

Complex wynn_epsilon(const std::vector<Complex>& s, Real* error_estimate) {
    std::size_t n = s.size();
    if (n == 0) throw DomainError("wynn_epsilon: empty sequence");
    if (n < 3) {
        if (error_estimate) *error_estimate = n == 2 ? abs(s[1] - s[0]) : Real(0);
        return s.back();
    }
    // eps[k][j]: column k, row j; only two previous columns are kept.
    std::vector<Complex> prev2(n + 1, Complex(Real(0)));
    std::vector<Complex> prev1(s.begin(), s.end());
    Complex best = s.back();
    Complex best_prev = s[n - 2];
    Real tiny = from_exp2(-4 * working_prec());
    for (std::size_t k = 1; k < n; ++k) {
        std::size_t rows = n - k;
        std::vector<Complex> cur(rows);
        for (std::size_t j = 0; j < rows; ++j) {
            Complex diff = prev1[j + 1] - prev1[j];
            if (abs(diff) < tiny) {
                cur.resize(j);
                break;
            }
            cur[j] = prev2[j + 1] + Complex(Real(1)) / diff;
        }
        if (cur.empty()) break;
        if (k % 2 == 0) {
            best_prev = cur.size() >= 2 ? cur[cur.size() - 2] : best;
            best = cur.back();
        }
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    if (error_estimate) *error_estimate = abs(best - best_prev);
    return best;
}

}  // namespace momentlab
