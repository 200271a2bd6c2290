// The physical problem: coefficients rho, p, m, the forcing f(t,x,u),
// boundary parameters and the hypotheses imposed on them.
#pragma once

#include "pwave/expr.hpp"
#include "pwave/fields.hpp"
#include "pwave/grid.hpp"
#include "pwave/interp.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pwave {

// A coefficient function on [0,pi] with two derivatives: either a closed-form
// expression (exact derivatives) or tabulated samples (spline derivatives).
class Coefficient {
public:
    Coefficient() : Coefficient(Expr(0.0)) {}
    explicit Coefficient(const Expr& e);
    static Coefficient tabulated(const Grid& g, Vec samples);

    double value(double x) const;
    double deriv(double x) const;
    double deriv2(double x) const;
    Vec tabulate(const Grid& g) const;

private:
    bool from_expr_ = true;
    Expr f_, df_, d2f_;
    std::shared_ptr<const CubicSpline> spline_;
};

struct BoundaryParams {
    double alpha1 = 0.0, beta1 = 1.0;
    double alpha2 = 0.0, beta2 = 1.0;
};

// Forcing f(t,x,u) = B(t,x) + M(t,x) u + c2(x) u^2 + c3(x) u^3 where B and M
// are finite harmonic sums sum_k [bc_k(x) cos(kt) + bs_k(x) sin(kt)].
// Partial derivatives in t and u are analytic by construction.
struct ForcingModel {
    struct Harmonic {
        int k = 0;
        Expr cos_part, sin_part;
    };
    std::vector<Harmonic> base;  // B
    std::vector<Harmonic> mult;  // M (k = 0 entry is the plain c1(x) u term)
    Expr c2, c3;

    int bandwidth() const; // largest |k| among harmonics
};

// Tabulated forcing rows for fast collocation on a fixed grid.
class ForcingTable {
public:
    ForcingTable(const ForcingModel& model, const Grid& g);

    const Grid& grid() const { return grid_; }
    int bandwidth() const { return bandwidth_; }

    // Writes f(t, x_i, u_i) over the whole grid into out.
    void eval(double t, const Vec& u, Vec& out) const;
    void eval_du(double t, const Vec& u, Vec& out) const;   // df/du
    void eval_du2(double t, const Vec& u, Vec& out) const;  // d2f/du2
    void eval_dt(double t, const Vec& u, Vec& out) const;   // df/dt

private:
    Grid grid_;
    int bandwidth_ = 0;
    struct Row { int k; Vec c, s; };
    std::vector<Row> base_, mult_;
    Vec c2_, c3_;
    void accum(const std::vector<Row>& rows, double t, Vec& out, bool dt) const;
};

struct CoefficientSet {
    Coefficient rho, p, m;
    ForcingModel forcing;
    BoundaryParams bc;
    double epsilon = 0.0;
    double omega = 1.0;
};

struct ValidationIssue {
    std::string check;
    bool pass = true;
    int node = -1;       // offending node when applicable
    double value = 0.0;  // offending sample
    std::string detail;
};

struct ValidationReport {
    bool passed = false;
    std::vector<ValidationIssue> issues;
};

// Checks positivity of rho, p, m on the grid, admissibility of the boundary
// parameters, and finiteness of the samples. Passing is a precondition for
// every downstream module.
ValidationReport validate(const CoefficientSet& problem, int grid_size);

// Time-Fourier coefficients of f(t, x, u(t,x)) up to cutoff K, computed by
// equispaced time collocation (>= 4K points) with trapezoid quadrature.
TimeFourierField time_fourier_of_forcing(const CoefficientSet& problem,
                                         const TimeFourierField& u, int K);

// Same, taking a pre-built table (the hot path used by the solvers).
TimeFourierField forcing_fourier(const ForcingTable& table, const TimeFourierField& u, int K,
                                 double epsilon_unused = 0.0);

// Time-Fourier coefficients of df/du evaluated along u.
TimeFourierField forcing_derivative_fourier(const ForcingTable& table, const TimeFourierField& u,
                                            int K);

// Empirical smoothness probe: fits |f_l| ~ C exp(-a l) over the computed
// harmonics and reports the decay rate a (large = smooth in t).
struct SmoothnessProbe {
    double decay_rate = 0.0;
    double tail_mass = 0.0;
};
SmoothnessProbe forcing_smoothness_probe(const CoefficientSet& problem, const TimeFourierField& u,
                                         int K);

} // namespace pwave
