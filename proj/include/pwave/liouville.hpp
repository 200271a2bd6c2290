// Change of variables reducing -(p y')' + d y = lambda rho y with Robin data
// to normal form -z'' + varrho z = mu z: xi = g(x), z = s(x) y, mu = c^2 lambda.
#pragma once

#include "pwave/coefficients.hpp"
#include "pwave/grid.hpp"
#include "pwave/interp.hpp"

#include <string>

namespace pwave {

enum class BoundaryCase {
    Neumann,    // Case 1: a1 = 0, b1 > 0, a2 = 0, b2 > 0
    DNLeft,     // Case 2: a1 > 0, b1 = 0, a2 = 0, b2 > 0
    DNRight,    // Case 3: a1 = 0, b1 > 0, a2 > 0, b2 = 0
    General,    // Case 4: all four positive (and mixed Robin patterns)
    Dirichlet,  // plumbing only; outside the four analyzed cases
};

std::string to_string(BoundaryCase c);

// Phase-shape of the eigenvalue asymptotics: mu_n ~ (n + shape_offset)^2.
double shape_offset(BoundaryCase c);

struct LiouvilleTransform {
    Grid grid;          // x-grid; the xi-grid is uniform with the same count
    double c = 1.0;
    Vec g_table;        // xi = g(x_i)
    MonotoneCubic g_interp;    // x -> xi
    MonotoneCubic psi_interp;  // xi -> x
    Vec s_factor, s_deriv, s_deriv2;  // s = (p rho)^{1/4} at x-nodes
    Vec q_xi;           // q(xi) = c^2 Q(psi(xi)) on the xi-grid
    CubicSpline q_spline;
    Vec Q_x;            // Q(x) at x-nodes (for diagnostics/dumps)
    double a1 = 0, b1 = 0, a2 = 0, b2 = 0;  // transformed boundary coefficients
    BoundaryCase boundary_case = BoundaryCase::Neumann;
    bool case_is_canonical = true;  // false for mixed patterns mapped to General
    Coefficient rho, p;             // kept for back-transforms

    double g(double x) const { return g_interp(x); }
    double psi(double xi) const { return psi_interp(xi); }
};

struct TransformedPotential {
    Grid grid;        // xi-grid (uniform, same node count as the x-grid)
    Vec varrho;       // q + vartheta at xi-nodes
    Vec vartheta;
    Vec d_source;     // d(x) on the x-grid
    CubicSpline varrho_spline;
    double rho0 = 0.0;      // min over grid nodes (Eq.-level floor)
    double rho1 = 0.0;      // (2/pi) * integral of varrho
    double integral = 0.0;  // integral of varrho over [0,pi]

    double value(double xi) const { return varrho_spline(xi); }
};

struct HypothesisReport {
    bool pass = false;
    double min_varrho = 0.0;
    int argmin_node = -1;
    bool signs_ok = false;       // a_i >= 0, b_i >= 0, a_i^2 + b_i^2 > 0
    BoundaryCase boundary_case = BoundaryCase::Neumann;
    bool case_is_canonical = true;
    std::string detail;
};

// Builds c, the maps g/psi, the factor s and the potential term q. The c
// quadrature is checked under grid doubling; instability raises NumericError.
LiouvilleTransform build_transform(const CoefficientSet& problem, int grid_size);

// varrho(xi) = q(xi) + c^2 d(psi(xi)) / rho(psi(xi)), d tabulated on the x-grid.
TransformedPotential transformed_potential(const LiouvilleTransform& t, const Vec& d_on_x_grid);

HypothesisReport check_hypothesis2(const TransformedPotential& tp, const LiouvilleTransform& t);

// Classification from the signs/zeroes of the transformed coefficients.
BoundaryCase classify_boundary(double a1, double b1, double a2, double b2, bool* canonical);

// CSV dump `x, xi=g(x), s_factor, Q, varrho`.
std::string transform_to_csv(const LiouvilleTransform& t, const TransformedPotential& tp);

} // namespace pwave
