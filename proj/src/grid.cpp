#include "pwave/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace pwave {

Grid::Grid(int n_intervals) : n(n_intervals) {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("grid size must be even and >= 8");
    h = M_PI / n;
}

namespace {
template <typename T>
T simpson(const Grid& g, const std::vector<T>& f) {
    if (static_cast<int>(f.size()) != g.size())
        throw std::invalid_argument("integrate: size mismatch");
    T acc = f.front() + f.back();
    for (int i = 1; i < g.n; ++i) acc += f[i] * ((i % 2) ? 4.0 : 2.0);
    return acc * (g.h / 3.0);
}

template <typename T>
std::vector<T> fd2(const Grid& g, const std::vector<T>& f) {
    if (static_cast<int>(f.size()) != g.size())
        throw std::invalid_argument("derivative: size mismatch");
    std::vector<T> d(f.size());
    const double h = g.h;
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (int i = 1; i < g.n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[g.n] = (3.0 * f[g.n] - 4.0 * f[g.n - 1] + f[g.n - 2]) / (2.0 * h);
    return d;
}
} // namespace

double integrate(const Grid& g, const Vec& f) { return simpson(g, f); }
std::complex<double> integrate(const Grid& g, const CVec& f) { return simpson(g, f); }

double integrate_trapezoid(const Grid& g, const Vec& f) {
    double acc = 0.5 * (f.front() + f.back());
    for (int i = 1; i < g.n; ++i) acc += f[i];
    return acc * g.h;
}

Vec derivative(const Grid& g, const Vec& f) { return fd2(g, f); }
CVec derivative(const Grid& g, const CVec& f) { return fd2(g, f); }

namespace {
// Fornberg weights for derivative orders 0..m at z, nodes x[0..nd].
void fornberg(double z, const std::vector<double>& x, int m,
              std::vector<std::vector<double>>& c) {
    const int nd = static_cast<int>(x.size()) - 1;
    c.assign(m + 1, std::vector<double>(nd + 1, 0.0));
    double c1 = 1.0, c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= nd; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0, c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
}
} // namespace

void derivative6(const Grid& g, const Vec& f, Vec& d1, Vec& d2) {
    const int m = g.size();
    if (static_cast<int>(f.size()) != m) throw std::invalid_argument("derivative6: size mismatch");
    if (m < 8) throw std::invalid_argument("derivative6: grid too small");
    d1.assign(m, 0.0);
    d2.assign(m, 0.0);
    // 7-point stencils; weights cached per offset pattern (positions 0..6, eval at k).
    std::vector<std::vector<std::vector<double>>> w(7);
    std::vector<double> nodes(7);
    for (int j = 0; j < 7; ++j) nodes[j] = j * g.h;
    for (int k = 0; k < 7; ++k) fornberg(nodes[k], nodes, 2, w[k]);
    for (int i = 0; i < m; ++i) {
        int base = std::min(std::max(i - 3, 0), m - 7);
        int k = i - base;
        double a1 = 0, a2 = 0;
        for (int j = 0; j < 7; ++j) {
            a1 += w[k][1][j] * f[base + j];
            a2 += w[k][2][j] * f[base + j];
        }
        d1[i] = a1;
        d2[i] = a2;
    }
}

double h1_norm(const Grid& g, const Vec& f) {
    Vec d = derivative(g, f);
    Vec q(f.size());
    for (size_t i = 0; i < f.size(); ++i) q[i] = f[i] * f[i] + d[i] * d[i];
    return std::sqrt(integrate(g, q));
}

double h1_norm(const Grid& g, const CVec& f) {
    CVec d = derivative(g, f);
    Vec q(f.size());
    for (size_t i = 0; i < f.size(); ++i) q[i] = std::norm(f[i]) + std::norm(d[i]);
    return std::sqrt(integrate(g, q));
}

double linf_norm(const Vec& f) {
    double m = 0;
    for (double v : f) m = std::max(m, std::fabs(v));
    return m;
}

} // namespace pwave
