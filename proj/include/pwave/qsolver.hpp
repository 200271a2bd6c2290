// The (Q)-equation: -(p v')' + m v = eps Pi_V F(v + w) with the original Robin
// boundary data, solved by damped Newton over a banded FD discretization.
#pragma once

#include "pwave/banded.hpp"
#include "pwave/coefficients.hpp"
#include "pwave/fields.hpp"

#include <memory>
#include <vector>

namespace pwave {

struct QOptions {
    int max_iter = 50;
    double tol = 1e-12;          // Newton residual tolerance (H1 of the residual field)
    double margin_floor = 1e-10; // Hypothesis 1 floor for the linearization
};

struct QSolution {
    Vec v;
    double residual_norm = 0.0;
    double nondegeneracy_margin = 0.0;
    double bc_residual_left = 0.0, bc_residual_right = 0.0;
    int iterations = 0;
    std::vector<double> residual_history;
    bool converged = false;
};

// Banded FD2 discretization of h -> -(p h')' + m h with Robin rows enforced
// exactly (one-sided second-order stencils at the ends).
class QDiscretization {
public:
    QDiscretization(const CoefficientSet& problem, const Grid& g);

    const Grid& grid() const { return grid_; }

    // Base operator rows; boundary rows encode the Robin constraints.
    BandedMatrix base_matrix() const;

    // Jacobian at the time-mean derivative profile a0 = Pi_V f'(v+w):
    // interior rows of base minus eps * diag(a0).
    BandedMatrix jacobian(const Vec& a0, double epsilon) const;

    // Interior residual of the discrete equation as a grid function; the
    // boundary entries carry the (scaled) constraint residuals.
    Vec residual(const Vec& v, const Vec& rhs_interior) const;

    // Time-mean of f(t, x, v + w) and of f'(t, x, v + w) by collocation.
    Vec mean_forcing(const Vec& v, const TimeFourierField* w) const;
    Vec mean_forcing_derivative(const Vec& v, const TimeFourierField* w) const;

    double bc_residual_left(const Vec& v) const;
    double bc_residual_right(const Vec& v) const;

private:
    const CoefficientSet& problem_;
    Grid grid_;
    ForcingTable table_;
    Vec p_half_, m_, rho_;
    int collocation_points(const TimeFourierField* w) const;
};

// Factored linearization at (v, w); solves the directional (Q)-derivative
// systems for real or complex right-hand sides.
class QLinearization {
public:
    QLinearization(const QDiscretization& disc, const Vec& a0, double epsilon);
    Vec solve(const Vec& rhs_interior) const;   // boundary rows forced to 0
    CVec solve(const CVec& rhs_interior) const;

private:
    std::shared_ptr<BandedMatrix> lu_;
    int n_ = 0;
};

QSolution solve_Q(const CoefficientSet& problem, const Grid& g, const TimeFourierField* w,
                  const Vec* v_init = nullptr, const QOptions& opt = {});

// Smallest |generalized eigenvalue| of h -> -(ph')' + (m - eps f0'(v)) h against
// the rho weight, by inverse power iteration on the banded factorization.
double check_nondegeneracy(const CoefficientSet& problem, const Grid& g, const Vec& v,
                           const TimeFourierField* w = nullptr);

// Directional derivative D_w v [delta_w] via one linear solve.
Vec dv_dw_directional(const CoefficientSet& problem, const Grid& g, const Vec& v,
                      const TimeFourierField* w, const TimeFourierField& delta_w);

} // namespace pwave
