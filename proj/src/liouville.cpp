#include "pwave/liouville.hpp"

#include "pwave/errors.hpp"

#include <cmath>
#include <array>
#include <cstdio>
#include <sstream>

namespace pwave {

std::string to_string(BoundaryCase c) {
    switch (c) {
        case BoundaryCase::Neumann:  return "case1-neumann";
        case BoundaryCase::DNLeft:   return "case2-dn-left";
        case BoundaryCase::DNRight:  return "case3-dn-right";
        case BoundaryCase::General:  return "case4-general";
        case BoundaryCase::Dirichlet: return "dirichlet";
    }
    return "?";
}

double shape_offset(BoundaryCase c) {
    switch (c) {
        case BoundaryCase::Neumann:
        case BoundaryCase::General:  return 0.0;
        case BoundaryCase::DNLeft:
        case BoundaryCase::DNRight:  return 0.5;
        case BoundaryCase::Dirichlet: return 1.0;
    }
    return 0.0;
}

BoundaryCase classify_boundary(double a1, double b1, double a2, double b2, bool* canonical) {
    const double tol = 1e-12;
    auto zero = [&](double v) { return std::fabs(v) <= tol; };
    bool canon = true;
    BoundaryCase c;
    if (zero(b1) && zero(b2)) c = BoundaryCase::Dirichlet;
    else if (zero(a1) && zero(a2)) c = BoundaryCase::Neumann;
    else if (!zero(a1) && zero(b1) && zero(a2)) c = BoundaryCase::DNLeft;
    else if (zero(a1) && !zero(a2) && zero(b2)) c = BoundaryCase::DNRight;
    else if (a1 > tol && b1 > tol && a2 > tol && b2 > tol) c = BoundaryCase::General;
    else {
        // Mixed pattern (e.g. Robin on one end, Neumann on the other): the
        // asymptotic shape follows the count of Dirichlet ends.
        canon = false;
        if (zero(b1) != zero(b2)) c = zero(b1) ? BoundaryCase::DNLeft : BoundaryCase::DNRight;
        else c = BoundaryCase::General;
    }
    if (canonical) *canonical = canon;
    return c;
}

LiouvilleTransform build_transform(const CoefficientSet& problem, int grid_size) {
    if (grid_size % 2) ++grid_size;
    Grid g(grid_size);
    LiouvilleTransform t;
    t.grid = g;
    t.rho = problem.rho;
    t.p = problem.p;

    auto sqrt_ratio = [&](double x) {
        double r = problem.rho.value(x), pp = problem.p.value(x);
        if (!(r > 0.0) || !(pp > 0.0))
            throw HypothesisError("liouville: rho or p not positive at x=" + std::to_string(x));
        return std::sqrt(r / pp);
    };

    // c = (1/pi) integral sqrt(rho/p); stability probed by grid doubling.
    Vec w(g.size());
    for (int i = 0; i < g.size(); ++i) w[i] = sqrt_ratio(g.node(i));
    double integral = integrate(g, w);
    {
        Grid g2(2 * grid_size);
        Vec w2(g2.size());
        for (int i = 0; i < g2.size(); ++i) w2[i] = sqrt_ratio(g2.node(i));
        double integral2 = integrate(g2, w2);
        double drift = std::fabs(integral2 - integral) / std::max(1.0, std::fabs(integral2));
        if (drift > 1e-6)
            throw NumericError("liouville: c quadrature unstable under grid doubling (drift " +
                               std::to_string(drift) + "); refine the grid");
        integral = integral2; // keep the finer estimate
    }
    t.c = integral / M_PI;

    // Cumulative map xi = g(x) by Simpson on node pairs.
    t.g_table.assign(g.size(), 0.0);
    for (int i = 1; i < g.size(); ++i) {
        double x0 = g.node(i - 1), x1 = g.node(i);
        double mid = 0.5 * (x0 + x1);
        t.g_table[i] = t.g_table[i - 1] +
                       (g.h / 6.0) * (w[i - 1] + 4.0 * sqrt_ratio(mid) + w[i]) / t.c;
    }
    // Pin the endpoint: g(pi) = pi holds to quadrature error; rescale the
    // residue so psi(g(x)) round-trips cleanly.
    double scale = M_PI / t.g_table.back();
    if (std::fabs(scale - 1.0) > 1e-8)
        throw NumericError("liouville: endpoint defect in g exceeds quadrature tolerance");
    for (auto& v : t.g_table) v *= scale;
    t.g_table.front() = 0.0;
    t.g_table.back() = M_PI;

    Vec xs(g.size());
    for (int i = 0; i < g.size(); ++i) xs[i] = g.node(i);
    t.g_interp = MonotoneCubic(xs, t.g_table);
    t.psi_interp = MonotoneCubic(t.g_table, xs);

    // s = (p rho)^{1/4} and Q(x) from exact coefficient derivatives.
    t.s_factor.resize(g.size());
    t.s_deriv.resize(g.size());
    t.s_deriv2.resize(g.size());
    t.Q_x.resize(g.size());
    auto Q_at = [&](double x) {
        double r = problem.rho.value(x), rp = problem.rho.deriv(x), rpp = problem.rho.deriv2(x);
        double p0 = problem.p.value(x), p1 = problem.p.deriv(x), p2 = problem.p.deriv2(x);
        double pr = p0 * r;
        double pr1 = p1 * r + p0 * rp;
        double pr2 = p2 * r + 2.0 * p1 * rp + p0 * rpp;
        double s = std::pow(pr, 0.25);
        double s1 = 0.25 * std::pow(pr, -0.75) * pr1;
        double s2 = 0.25 * (std::pow(pr, -0.75) * pr2 - 0.75 * std::pow(pr, -1.75) * pr1 * pr1);
        double ratio1 = (p1 * r - p0 * rp) / (r * r); // (p/rho)'
        double Q = p0 * s2 / (r * s) + 0.5 * ratio1 * s1 / s;
        return std::array<double, 4>{s, s1, s2, Q};
    };
    for (int i = 0; i < g.size(); ++i) {
        auto [s, s1, s2, Q] = Q_at(g.node(i));
        t.s_factor[i] = s;
        t.s_deriv[i] = s1;
        t.s_deriv2[i] = s2;
        t.Q_x[i] = Q;
    }

    // q(xi) = c^2 Q(psi(xi)) on the uniform xi-grid.
    t.q_xi.resize(g.size());
    for (int i = 0; i < g.size(); ++i) {
        double xi = g.node(i);
        t.q_xi[i] = t.c * t.c * Q_at(t.psi(xi))[3];
    }
    std::vector<double> xi_nodes(xs);
    t.q_spline = CubicSpline(xi_nodes, t.q_xi);

    // Transformed boundary coefficients, Eq.-level formulas.
    const auto& b = problem.bc;
    double r0 = problem.rho.value(0.0), p0 = problem.p.value(0.0);
    double rpi = problem.rho.value(M_PI), ppi = problem.p.value(M_PI);
    double pr0 = p0 * r0, pr0x = problem.p.deriv(0.0) * r0 + p0 * problem.rho.deriv(0.0);
    double prpi = ppi * rpi, prpix = problem.p.deriv(M_PI) * rpi + ppi * problem.rho.deriv(M_PI);
    t.a1 = b.alpha1 + 0.25 * b.beta1 * pr0x / pr0;
    t.b1 = (b.beta1 / t.c) * std::sqrt(r0 / p0);
    t.a2 = b.alpha2 - 0.25 * b.beta2 * prpix / prpi;
    t.b2 = (b.beta2 / t.c) * std::sqrt(rpi / ppi);
    t.boundary_case = classify_boundary(t.a1, t.b1, t.a2, t.b2, &t.case_is_canonical);
    return t;
}

TransformedPotential transformed_potential(const LiouvilleTransform& t, const Vec& d_on_x_grid) {
    if (static_cast<int>(d_on_x_grid.size()) != t.grid.size())
        throw ConfigError("transformed_potential: d not tabulated on the transform grid");
    TransformedPotential tp;
    tp.grid = t.grid;
    tp.d_source = d_on_x_grid;

    Vec xs(t.grid.size());
    for (int i = 0; i < t.grid.size(); ++i) xs[i] = t.grid.node(i);
    CubicSpline d_spline(xs, d_on_x_grid);

    tp.vartheta.resize(t.grid.size());
    tp.varrho.resize(t.grid.size());
    for (int i = 0; i < t.grid.size(); ++i) {
        double xi = t.grid.node(i);
        double x = t.psi(xi);
        double theta = t.c * t.c * d_spline(x) / t.rho.value(x);
        if (!std::isfinite(theta))
            throw NumericError("transformed_potential: non-finite vartheta at node " +
                               std::to_string(i));
        tp.vartheta[i] = theta;
        tp.varrho[i] = t.q_xi[i] + theta;
    }
    tp.varrho_spline = CubicSpline(xs, tp.varrho);
    tp.rho0 = tp.varrho[0];
    for (double v : tp.varrho) tp.rho0 = std::min(tp.rho0, v);
    tp.integral = integrate(tp.grid, tp.varrho);
    tp.rho1 = 2.0 / M_PI * tp.integral;
    return tp;
}

HypothesisReport check_hypothesis2(const TransformedPotential& tp, const LiouvilleTransform& t) {
    HypothesisReport rep;
    rep.min_varrho = tp.varrho[0];
    rep.argmin_node = 0;
    for (int i = 0; i < static_cast<int>(tp.varrho.size()); ++i)
        if (tp.varrho[i] < rep.min_varrho) { rep.min_varrho = tp.varrho[i]; rep.argmin_node = i; }
    const double tol = 1e-12;
    bool nonneg = t.a1 >= -tol && t.b1 >= -tol && t.a2 >= -tol && t.b2 >= -tol;
    bool nondeg = (t.a1 * t.a1 + t.b1 * t.b1 > 0.0) && (t.a2 * t.a2 + t.b2 * t.b2 > 0.0);
    rep.signs_ok = nonneg && nondeg;
    rep.boundary_case = t.boundary_case;
    rep.case_is_canonical = t.case_is_canonical;
    rep.pass = rep.signs_ok && rep.min_varrho > 0.0;
    std::ostringstream os;
    if (rep.min_varrho <= 0.0)
        os << "varrho dips to " << rep.min_varrho << " at xi-node " << rep.argmin_node << "; ";
    if (!rep.signs_ok) os << "transformed boundary coefficients violate a_i,b_i >= 0; ";
    if (t.boundary_case == BoundaryCase::Dirichlet)
        os << "Dirichlet data accepted as plumbing, outside the four analyzed cases; ";
    if (!t.case_is_canonical)
        os << "mixed boundary pattern mapped to the general case; ";
    rep.detail = os.str();
    return rep;
}

std::string transform_to_csv(const LiouvilleTransform& t, const TransformedPotential& tp) {
    std::ostringstream os;
    os << "x, xi=g(x), s_factor, Q, varrho\n";
    char buf[160];
    for (int i = 0; i < t.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", t.grid.node(i),
                      t.g_table[i], t.s_factor[i], t.Q_x[i], tp.varrho[i]);
        os << buf;
    }
    return os.str();
}

} // namespace pwave
