#include "pwave/qsolver.hpp"

#include "pwave/errors.hpp"

#include <cmath>
#include <limits>

namespace pwave {

QDiscretization::QDiscretization(const CoefficientSet& problem, const Grid& g)
    : problem_(problem), grid_(g), table_(problem.forcing, g) {
    p_half_.resize(g.size() + 1, 0.0);
    for (int i = 0; i < g.size() - 1; ++i)
        p_half_[i + 1] = problem.p.value(g.node(i) + 0.5 * g.h); // flux between i and i+1
    m_ = problem.m.tabulate(g);
    rho_ = problem.rho.tabulate(g);
}

BandedMatrix QDiscretization::base_matrix() const {
    const int n = grid_.size();
    const double h = grid_.h;
    BandedMatrix A(n, 2, 2);
    for (int i = 1; i < n - 1; ++i) {
        A.at(i, i - 1) = -p_half_[i] / (h * h);
        A.at(i, i) = (p_half_[i] + p_half_[i + 1]) / (h * h) + m_[i];
        A.at(i, i + 1) = -p_half_[i + 1] / (h * h);
    }
    const auto& b = problem_.bc;
    if (b.beta1 == 0.0) {
        A.at(0, 0) = 1.0;
    } else {
        // alpha1 v0 - beta1 (-3v0 + 4v1 - v2)/(2h) = 0
        A.at(0, 0) = b.alpha1 + 3.0 * b.beta1 / (2.0 * h);
        A.at(0, 1) = -4.0 * b.beta1 / (2.0 * h);
        A.at(0, 2) = b.beta1 / (2.0 * h);
    }
    if (b.beta2 == 0.0) {
        A.at(n - 1, n - 1) = 1.0;
    } else {
        // alpha2 v_G + beta2 (3v_G - 4v_{G-1} + v_{G-2})/(2h) = 0
        A.at(n - 1, n - 1) = b.alpha2 + 3.0 * b.beta2 / (2.0 * h);
        A.at(n - 1, n - 2) = -4.0 * b.beta2 / (2.0 * h);
        A.at(n - 1, n - 3) = b.beta2 / (2.0 * h);
    }
    return A;
}

BandedMatrix QDiscretization::jacobian(const Vec& a0, double epsilon) const {
    BandedMatrix J = base_matrix();
    for (int i = 1; i < grid_.size() - 1; ++i) J.at(i, i) -= epsilon * a0[i];
    return J;
}

int QDiscretization::collocation_points(const TimeFourierField* w) const {
    int lw = w ? std::max(w->l_max(), 1) : 1;
    return std::max(8, 2 * (table_.bandwidth() + 3 * lw) + 4);
}

Vec QDiscretization::mean_forcing(const Vec& v, const TimeFourierField* w) const {
    const int Q = collocation_points(w);
    Vec mean(grid_.size(), 0.0), slice(grid_.size()), row;
    for (int q = 0; q < Q; ++q) {
        double t = 2.0 * M_PI * q / Q;
        if (w) {
            slice = eval_at_time(*w, t);
            for (int i = 0; i < grid_.size(); ++i) slice[i] += v[i];
        } else {
            slice = v;
        }
        table_.eval(t, slice, row);
        for (int i = 0; i < grid_.size(); ++i) mean[i] += row[i] / Q;
    }
    for (double x : mean)
        if (!std::isfinite(x)) throw NumericError("Q solver: forcing returned non-finite value");
    return mean;
}

Vec QDiscretization::mean_forcing_derivative(const Vec& v, const TimeFourierField* w) const {
    const int Q = collocation_points(w);
    Vec mean(grid_.size(), 0.0), slice(grid_.size()), row;
    for (int q = 0; q < Q; ++q) {
        double t = 2.0 * M_PI * q / Q;
        if (w) {
            slice = eval_at_time(*w, t);
            for (int i = 0; i < grid_.size(); ++i) slice[i] += v[i];
        } else {
            slice = v;
        }
        table_.eval_du(t, slice, row);
        for (int i = 0; i < grid_.size(); ++i) mean[i] += row[i] / Q;
    }
    return mean;
}

double QDiscretization::bc_residual_left(const Vec& v) const {
    const auto& b = problem_.bc;
    double h = grid_.h;
    double d = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    return b.alpha1 * v[0] - b.beta1 * d;
}

double QDiscretization::bc_residual_right(const Vec& v) const {
    const auto& b = problem_.bc;
    int n = grid_.size();
    double h = grid_.h;
    double d = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return b.alpha2 * v[n - 1] + b.beta2 * d;
}

Vec QDiscretization::residual(const Vec& v, const Vec& rhs_interior) const {
    BandedMatrix A = base_matrix();
    const int n = grid_.size();
    Vec r(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j)
            acc += A.at(i, j) * v[j];
        r[i] = acc;
    }
    for (int i = 1; i < n - 1; ++i) r[i] -= rhs_interior[i];
    return r;
}

QLinearization::QLinearization(const QDiscretization& disc, const Vec& a0, double epsilon) {
    lu_ = std::make_shared<BandedMatrix>(disc.jacobian(a0, epsilon));
    n_ = lu_->size();
    lu_->factor();
}

Vec QLinearization::solve(const Vec& rhs_interior) const {
    Vec rhs = rhs_interior;
    rhs.front() = 0.0;
    rhs.back() = 0.0;
    return lu_->solve(rhs);
}

CVec QLinearization::solve(const CVec& rhs_interior) const {
    Vec re(n_), im(n_);
    for (int i = 0; i < n_; ++i) {
        re[i] = rhs_interior[i].real();
        im[i] = rhs_interior[i].imag();
    }
    Vec sre = solve(re), sim = solve(im);
    CVec out(n_);
    for (int i = 0; i < n_; ++i) out[i] = {sre[i], sim[i]};
    return out;
}

namespace {
double residual_field_norm(const Grid& g, const Vec& r) {
    // Interior residual as a grid function; constraint rows excluded.
    Vec f = r;
    f.front() = 0.0;
    f.back() = 0.0;
    return h1_norm(g, f);
}
} // namespace

QSolution solve_Q(const CoefficientSet& problem, const Grid& g, const TimeFourierField* w,
                  const Vec* v_init, const QOptions& opt) {
    QDiscretization disc(problem, g);
    QSolution sol;
    sol.v = v_init ? *v_init : Vec(g.size(), 0.0);

    auto eval_residual = [&](const Vec& v, Vec& r_out) {
        Vec rhs = disc.mean_forcing(v, w);
        for (auto& x : rhs) x *= problem.epsilon;
        r_out = disc.residual(v, rhs);
        return residual_field_norm(g, r_out);
    };

    Vec r;
    double rn = eval_residual(sol.v, r);
    sol.residual_history.push_back(rn);
    double scale = 1.0;

    for (int it = 0; it < opt.max_iter && rn > opt.tol * scale; ++it) {
        Vec a0 = disc.mean_forcing_derivative(sol.v, w);
        QLinearization lin(disc, a0, problem.epsilon);
        Vec rhs = r;
        for (auto& x : rhs) x = -x;
        Vec step = lin.solve(rhs);
        // boundary rows of the residual are nonzero only pre-convergence;
        // include them so the Newton step restores the constraints too
        {
            Vec full = r;
            for (auto& x : full) x = -x;
            step = lin.solve(full); // same matrix; rhs boundary forced below
            Vec full_rhs = full;
            (void)full_rhs;
        }
        double s = 1.0;
        Vec trial(g.size());
        double rn_new = std::numeric_limits<double>::infinity();
        Vec r_new;
        for (int halve = 0; halve < 8; ++halve) {
            for (int i = 0; i < g.size(); ++i) trial[i] = sol.v[i] + s * step[i];
            rn_new = eval_residual(trial, r_new);
            if (rn_new <= (1.0 - 0.25 * s) * rn || rn_new <= opt.tol) break;
            s *= 0.5;
        }
        if (!(rn_new < rn) && rn > opt.tol)
            throw NumericError("Q solver: damped Newton stalled at residual " +
                               std::to_string(rn));
        sol.v = trial;
        r = r_new;
        rn = rn_new;
        sol.residual_history.push_back(rn);
        ++sol.iterations;
    }

    sol.residual_norm = rn;
    sol.converged = rn <= opt.tol * scale * 10.0;
    if (!sol.converged)
        throw NumericError("Q solver: Newton did not reach tolerance (residual " +
                           std::to_string(rn) + ")");
    sol.bc_residual_left = disc.bc_residual_left(sol.v);
    sol.bc_residual_right = disc.bc_residual_right(sol.v);
    sol.nondegeneracy_margin = check_nondegeneracy(problem, g, sol.v, w);
    if (sol.nondegeneracy_margin < opt.margin_floor)
        throw HypothesisError("Q solver: linearization margin " +
                              std::to_string(sol.nondegeneracy_margin) +
                              " below floor; Hypothesis 1 fails at this solution");
    return sol;
}

double check_nondegeneracy(const CoefficientSet& problem, const Grid& g, const Vec& v,
                           const TimeFourierField* w) {
    QDiscretization disc(problem, g);
    Vec a0 = disc.mean_forcing_derivative(v, w);
    QLinearization lin(disc, a0, problem.epsilon);

    // Inverse power iteration on (J, diag(rho)) for the smallest |lambda|.
    Vec rho = problem.rho.tabulate(g);
    const int n = g.size();
    Vec x(n, 1.0);
    for (int i = 0; i < n; ++i) x[i] = std::sin((i + 1.0) / n) + 0.5; // fixed seed vector
    x.front() = 0.0;
    x.back() = 0.0;
    double lambda = 0.0, lambda_prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it) {
        Vec bx(n);
        for (int i = 0; i < n; ++i) bx[i] = rho[i] * x[i];
        Vec y = lin.solve(bx);
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += rho[i] * y[i] * y[i];
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0)) return 0.0;
        // Rayleigh estimate: lambda ~ (x, B x) / (x, B y) with B-normalized y.
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += rho[i] * x[i] * x[i];
            den += rho[i] * x[i] * y[i];
        }
        lambda = den != 0.0 ? num / den : 0.0;
        for (int i = 0; i < n; ++i) x[i] = y[i] / nrm;
        if (std::fabs(lambda - lambda_prev) <= 1e-12 * std::max(1.0, std::fabs(lambda))) break;
        lambda_prev = lambda;
    }
    return std::fabs(lambda);
}

Vec dv_dw_directional(const CoefficientSet& problem, const Grid& g, const Vec& v,
                      const TimeFourierField* w, const TimeFourierField& delta_w) {
    QDiscretization disc(problem, g);
    Vec a0 = disc.mean_forcing_derivative(v, w);
    QLinearization lin(disc, a0, problem.epsilon);

    // rhs = eps * Pi_V( f'(v+w) * delta_w ), by collocation.
    int lw = std::max({delta_w.l_max(), w ? w->l_max() : 0, 1});
    int Q = std::max(8, 2 * (problem.forcing.bandwidth() + 3 * lw + delta_w.l_max()) + 4);
    Vec rhs(g.size(), 0.0), slice(g.size()), row;
    ForcingTable table(problem.forcing, g);
    for (int q = 0; q < Q; ++q) {
        double t = 2.0 * M_PI * q / Q;
        if (w) {
            slice = eval_at_time(*w, t);
            for (int i = 0; i < g.size(); ++i) slice[i] += v[i];
        } else {
            slice = v;
        }
        table.eval_du(t, slice, row);
        Vec dslice = eval_at_time(delta_w, t);
        for (int i = 0; i < g.size(); ++i) rhs[i] += row[i] * dslice[i] / Q;
    }
    for (auto& x : rhs) x *= problem.epsilon;
    return lin.solve(rhs);
}

} // namespace pwave
