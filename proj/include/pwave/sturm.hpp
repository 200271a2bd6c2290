// Sturm-Liouville spectral engine: Pruefer-angle shooting for the normal-form
// problem -z'' + varrho z = mu z with a1 z(0) - b1 z'(0) = 0,
// a2 z(pi) + b2 z'(pi) = 0, back-transformed eigenpairs of the original
// weighted problem, and the asymptotic verification reports.
#pragma once

#include "pwave/liouville.hpp"

#include <optional>
#include <vector>

namespace pwave {

struct ShootingOptions {
    double ode_rtol = 1e-12;
    double ode_atol = 1e-12;
    double mu_rtol = 3e-13;   // eigenvalue tolerance relative to max(1,|mu|)
    int max_widen = 60;       // bracket auto-widening attempts
};

struct NormalFormBC {
    double a1 = 0, b1 = 1, a2 = 0, b2 = 1;
};

// Pruefer phase at xi = pi for trial mu. Strictly increasing in mu.
double pruefer_terminal_angle(const TransformedPotential& tp, const NormalFormBC& bc, double mu,
                              const ShootingOptions& opt = {});

// n-th eigenvalue of the normal-form problem (n = oscillation count).
double eigenvalue_mu(const TransformedPotential& tp, const NormalFormBC& bc, int n,
                     BoundaryCase bcase, const ShootingOptions& opt = {});

struct NormalMode {
    double mu = 0;
    Vec phi, phi_deriv; // on the xi-grid, L2(0,pi) normalized in xi
};
NormalMode eigenfunction_mu(const TransformedPotential& tp, const NormalFormBC& bc, double mu,
                            const ShootingOptions& opt = {});

struct SpectralBasis {
    Grid grid;   // x-grid
    double c = 1.0;
    BoundaryCase boundary_case = BoundaryCase::Neumann;
    double a1 = 0, b1 = 0, a2 = 0, b2 = 0;
    Vec mus;      // normal-form eigenvalues
    Vec lambdas;  // lambda_n = mu_n / c^2
    std::vector<Vec> psi;        // (psi_n, psi_n)_{L2_rho} = 1 on the x-grid
    std::vector<Vec> psi_deriv;  // transform-exact derivative tabulation
    std::vector<int> oscillation;
    double L1 = 0, L2 = 0;       // equivalence constants of the H1 norms
    bool L_certified = false;    // true when derived from min/max of p and d
    double rho0 = 0, rho1 = 0, rho2 = 0, integral_varrho = 0;
    Vec rho_x, p_x, d_x;         // weights for the inner products

    int count() const { return static_cast<int>(lambdas.size()); }
    double lambda_tail(int j) const;  // asymptotic extension for j >= count()

    // (y, z)_{L2_rho} = c^{-1} int y z rho dx
    double inner_rho(const Vec& y, const Vec& z) const;
    std::complex<double> inner_rho(const CVec& y, const Vec& z) const;
    // (y, z)_{eps,w} = c^{-1} int p y'z' + d y z dx  (derivatives supplied)
    double inner_energy(const Vec& y, const Vec& dy, const Vec& z, const Vec& dz) const;
};

// Computes modes 0..J. Shooting brackets come from the case-wise bounds and
// are auto-widened when the hypothesis floor is not available.
SpectralBasis build_spectral_basis(const LiouvilleTransform& t, const TransformedPotential& tp,
                                   int J, const ShootingOptions& opt = {});

struct AsymptoticFit {
    double c_hat = 0;              // median of mu_n - shape(n)^2 over the window
    double bracket_lo = 0, bracket_hi = 0;
    bool bracket_pass = false;
    Vec residuals;                 // r_n = (mu_n - shape^2 - c_hat) * shape^2
    bool residual_bounded = false;
    int n_min = 0, n_max = 0;
};
AsymptoticFit asymptotic_report(const SpectralBasis& basis, int n_min, int n_max);

struct BoundsCheck {
    bool all_hold = false;
    int first_valid = -1;   // smallest index from which the two-sided bound holds onward
    int violations = 0;
    double lo_offset = 0, hi_offset = 0;
};
BoundsCheck spectral_bounds_check(const SpectralBasis& basis, int n_lo, int n_hi);

struct LipschitzProbe {
    double kappa = 0;          // max_n |dlambda_n| / ||delta d||_inf
    double sup_bound = 0;      // (1/c^2) ||delta vartheta||_inf
    double max_delta = 0;
    bool within_bound = false;
};
LipschitzProbe lipschitz_probe(const LiouvilleTransform& t, const TransformedPotential& tp,
                               const Vec& delta_d, int n_max, const ShootingOptions& opt = {});

struct GapReport {
    double delta1 = 0;        // min over j <= j_max of sqrt(lambda_{j+1}) - sqrt(lambda_j)
    double floor_large_j = 0; // 1/(2c)
    int onset = -1;           // smallest j with all later gaps above the floor
    bool floor_holds_from_onset = false;
};
GapReport gap_report(const SpectralBasis& basis, int j_max);

} // namespace pwave
