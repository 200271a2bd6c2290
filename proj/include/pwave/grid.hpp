// Uniform grid on [0,pi], quadrature and discrete-derivative conventions shared
// by every module that tabulates spatial functions.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pwave {

using Vec = std::vector<double>;
using CVec = std::vector<std::complex<double>>;

// Nodes x_i = i*pi/n, i = 0..n. n must be even so Simpson weights apply.
struct Grid {
    int n = 0;
    double h = 0.0;

    Grid() = default;
    explicit Grid(int n_intervals);

    int size() const { return n + 1; }
    double node(int i) const { return i * h; }
    bool operator==(const Grid& other) const { return n == other.n; }
};

// Composite Simpson over the whole grid (n even).
double integrate(const Grid& g, const Vec& f);
std::complex<double> integrate(const Grid& g, const CVec& f);

// Trapezoid rule, used where the integrand is only piecewise smooth.
double integrate_trapezoid(const Grid& g, const Vec& f);

// Second-order derivative tabulation: central interior, one-sided at the ends.
Vec derivative(const Grid& g, const Vec& f);
CVec derivative(const Grid& g, const CVec& f);

// Sixth-order derivative pair (f', f'') for residual evaluation on fine grids.
void derivative6(const Grid& g, const Vec& f, Vec& d1, Vec& d2);

// Discrete H1 norm: sqrt( int f^2 + (f')^2 ), with derivative() and Simpson.
double h1_norm(const Grid& g, const Vec& f);
double h1_norm(const Grid& g, const CVec& f);

double linf_norm(const Vec& f);

} // namespace pwave
