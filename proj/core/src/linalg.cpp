#include "linalg.hpp"

#include <algorithm>
#include <cstddef>

#include "momentlab/errors.hpp"

namespace momentlab::detail {

std::vector<Real> lsq_solve(const Matrix& a, const std::vector<Real>& b) {
    std::size_t m = a.size();
    std::size_t n = m ? a[0].size() : 0;
    if (m < n) throw DomainError("lsq_solve: underdetermined system");
    Matrix r = a;
    std::vector<Real> y = b;
    for (std::size_t j = 0; j < n; ++j) {
        Real norm(0);
        for (std::size_t i = j; i < m; ++i) norm += r[i][j] * r[i][j];
        norm = sqrt(norm);
        if (norm.is_zero()) throw ConditioningError("lsq_solve: rank deficient");
        Real alpha = r[j][j].sign() > 0 ? -norm : norm;
        std::vector<Real> v(m - j);
        for (std::size_t i = j; i < m; ++i) v[i - j] = r[i][j];
        v[0] -= alpha;
        Real vv(0);
        for (const Real& t : v) vv += t * t;
        if (vv.is_zero()) continue;
        for (std::size_t c = j; c < n; ++c) {
            Real dot(0);
            for (std::size_t i = j; i < m; ++i) dot += v[i - j] * r[i][c];
            Real f = 2 * dot / vv;
            for (std::size_t i = j; i < m; ++i) r[i][c] -= f * v[i - j];
        }
        Real dot(0);
        for (std::size_t i = j; i < m; ++i) dot += v[i - j] * y[i];
        Real f = 2 * dot / vv;
        for (std::size_t i = j; i < m; ++i) y[i] -= f * v[i - j];
    }
    std::vector<Real> x(n);
    for (std::size_t jj = n; jj-- > 0;) {
        Real s = y[jj];
        for (std::size_t c = jj + 1; c < n; ++c) s -= r[jj][c] * x[c];
        x[jj] = s / r[jj][jj];
    }
    return x;
}

std::vector<Real> symmetric_eigenvalues(Matrix s) {
    std::size_t n = s.size();
    Real tol = epsilon();
    for (int sweep = 0; sweep < 100; ++sweep) {
        Real off(0), total(0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                total += s[i][j] * s[i][j];
                if (i != j) off += s[i][j] * s[i][j];
            }
        if (off <= tol * tol * total) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (s[p][q].is_zero()) continue;
                Real theta = (s[q][q] - s[p][p]) / (2 * s[p][q]);
                Real t = Real(theta.sign() >= 0 ? 1 : -1) / (abs(theta) + sqrt(theta * theta + Real(1)));
                Real c = Real(1) / sqrt(t * t + Real(1));
                Real sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    Real skp = s[k][p], skq = s[k][q];
                    s[k][p] = c * skp - sn * skq;
                    s[k][q] = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Real spk = s[p][k], sqk = s[q][k];
                    s[p][k] = c * spk - sn * sqk;
                    s[q][k] = sn * spk + c * sqk;
                }
            }
    }
    std::vector<Real> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = s[i][i];
    std::sort(ev.begin(), ev.end(), [](const Real& x, const Real& y) { return x < y; });
    return ev;
}

namespace {

Matrix gram(const Matrix& a) {
    std::size_t m = a.size(), n = a[0].size();
    Matrix g(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < m; ++r) g[i][j] += a[r][i] * a[r][j];
    return g;
}

}  // namespace

Real condition_number(const Matrix& a) {
    if (a.empty()) return Real(1);
    std::vector<Real> ev = symmetric_eigenvalues(gram(a));
    if (ev.front().sign() <= 0) return Real(1e300);
    return sqrt(ev.back() / ev.front());
}

Matrix pseudo_inverse(const Matrix& a) {
    std::size_t m = a.size(), n = a[0].size();
    Matrix out(n, std::vector<Real>(m));
    for (std::size_t col = 0; col < m; ++col) {
        std::vector<Real> e(m, Real(0));
        e[col] = Real(1);
        std::vector<Real> x = lsq_solve(a, e);
        for (std::size_t i = 0; i < n; ++i) out[i][col] = x[i];
    }
    return out;
}

}  // namespace momentlab::detail
