#include "pwave/sturm.hpp"

#include "pwave/errors.hpp"
#include "pwave/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pwave {

namespace {

double phase_scale(const TransformedPotential& tp, double mu) {
    double mean = tp.integral / M_PI;
    double s2 = mu - mean;
    return s2 > 0.25 ? std::sqrt(s2) : 0.5;
}

double left_angle(const NormalFormBC& bc, double S) {
    return std::atan2(S * bc.b1, bc.a1);
}

double target_angle(const NormalFormBC& bc, double S, int n) {
    return (n + 1) * M_PI - std::atan2(S * bc.b2, bc.a2);
}

} // namespace

double pruefer_terminal_angle(const TransformedPotential& tp, const NormalFormBC& bc, double mu,
                              const ShootingOptions& opt) {
    const double S = phase_scale(tp, mu);
    OdeOptions oo;
    oo.rtol = opt.ode_rtol;
    oo.atol = opt.ode_atol;
    oo.h_init = std::min(0.1, 1.0 / S);
    DormandPrince<1>::Rhs rhs = [&](double xi, const std::array<double, 1>& y,
                                    std::array<double, 1>& dy) {
        double cth = std::cos(y[0]), sth = std::sin(y[0]);
        dy[0] = S * cth * cth + (mu - tp.value(xi)) / S * sth * sth;
    };
    auto y = DormandPrince<1>::integrate(rhs, 0.0, M_PI, {left_angle(bc, S)}, oo);
    return y[0];
}

double eigenvalue_mu(const TransformedPotential& tp, const NormalFormBC& bc, int n,
                     BoundaryCase bcase, const ShootingOptions& opt) {
    const double off = shape_offset(bcase);
    const double shape2 = (n + off) * (n + off);
    double hi_const = std::max(tp.rho1, tp.rho0) + 1.0;
    if (bcase == BoundaryCase::General && bc.b1 > 0 && bc.b2 > 0)
        hi_const = std::max(hi_const,
                            2.0 / M_PI * (bc.a1 / bc.b1 + bc.a2 / bc.b2 + 1.0 + tp.integral) + 1.0);
    double lo = shape2 + std::min(tp.rho0, 0.0) - 1.0;
    double hi = shape2 + hi_const;

    auto f = [&](double mu) {
        double S = phase_scale(tp, mu);
        OdeOptions oo;
        oo.rtol = opt.ode_rtol;
        oo.atol = opt.ode_atol;
        oo.h_init = std::min(0.1, 1.0 / S);
        DormandPrince<1>::Rhs rhs = [&](double xi, const std::array<double, 1>& y,
                                        std::array<double, 1>& dy) {
            double cth = std::cos(y[0]), sth = std::sin(y[0]);
            dy[0] = S * cth * cth + (mu - tp.value(xi)) / S * sth * sth;
        };
        auto y = DormandPrince<1>::integrate(rhs, 0.0, M_PI, {left_angle(bc, S)}, oo);
        return y[0] - target_angle(bc, S, n);
    };

    // Widen until the bracket straddles the root (the phase is monotone in mu).
    double flo = f(lo), fhi = f(hi);
    double width = std::max(1.0, hi - lo);
    int tries = 0;
    while (flo > 0.0) {
        lo -= width;
        width *= 2.0;
        flo = f(lo);
        if (++tries > opt.max_widen)
            throw NumericError("shooting: cannot bracket eigenvalue from below (n=" +
                               std::to_string(n) + ")");
    }
    tries = 0;
    width = std::max(1.0, hi - lo);
    while (fhi < 0.0) {
        hi += width;
        width *= 2.0;
        fhi = f(hi);
        if (++tries > opt.max_widen)
            throw NumericError("shooting: cannot bracket eigenvalue from above (n=" +
                               std::to_string(n) + ")");
    }

    // Safeguarded bisection/secant hybrid.
    const double tol = opt.mu_rtol * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
    double a = lo, b = hi, fa = flo, fb = fhi;
    for (int it = 0; it < 300 && (b - a) > tol; ++it) {
        double mid;
        if (it >= 12 && std::fabs(fb - fa) > 0) {
            mid = b - fb * (b - a) / (fb - fa); // secant inside the bracket
            double guard = 0.01 * (b - a);
            if (!(mid > a + guard && mid < b - guard)) mid = 0.5 * (a + b);
        } else {
            mid = 0.5 * (a + b);
        }
        double fm = f(mid);
        if (fm <= 0.0) { a = mid; fa = fm; }
        else { b = mid; fb = fm; }
    }
    return 0.5 * (a + b);
}

NormalMode eigenfunction_mu(const TransformedPotential& tp, const NormalFormBC& bc, double mu,
                            const ShootingOptions& opt) {
    const Grid& g = tp.grid;
    NormalMode mode;
    mode.mu = mu;
    mode.phi.assign(g.size(), 0.0);
    mode.phi_deriv.assign(g.size(), 0.0);

    OdeOptions oo;
    oo.rtol = opt.ode_rtol;
    oo.atol = opt.ode_atol;
    DormandPrince<2>::Rhs rhs = [&](double xi, const std::array<double, 2>& y,
                                    std::array<double, 2>& dy) {
        dy[0] = y[1];
        dy[1] = (tp.value(xi) - mu) * y[0];
    };
    std::array<double, 2> state{bc.b1, bc.a1};
    if (bc.b1 == 0.0 && bc.a1 == 0.0)
        throw ConfigError("eigenfunction: degenerate left boundary condition");
    mode.phi[0] = state[0];
    mode.phi_deriv[0] = state[1];
    for (int i = 1; i < g.size(); ++i) {
        state = DormandPrince<2>::integrate(rhs, g.node(i - 1), g.node(i), state, oo);
        mode.phi[i] = state[0];
        mode.phi_deriv[i] = state[1];
    }

    Vec sq(g.size());
    for (int i = 0; i < g.size(); ++i) sq[i] = mode.phi[i] * mode.phi[i];
    double nrm = std::sqrt(integrate(g, sq));
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw NumericError("eigenfunction: normalization of a numerically null function");
    // Sign convention: phi(0) > 0 when b1 > 0, else phi'(0) > 0; the initial
    // data (b1, a1) >= 0 already realizes it, division keeps it.
    for (int i = 0; i < g.size(); ++i) {
        mode.phi[i] /= nrm;
        mode.phi_deriv[i] /= nrm;
    }
    return mode;
}

double SpectralBasis::inner_rho(const Vec& y, const Vec& z) const {
    Vec f(grid.size());
    for (int i = 0; i < grid.size(); ++i) f[i] = y[i] * z[i] * rho_x[i];
    return integrate(grid, f) / c;
}

std::complex<double> SpectralBasis::inner_rho(const CVec& y, const Vec& z) const {
    CVec f(grid.size());
    for (int i = 0; i < grid.size(); ++i) f[i] = y[i] * z[i] * rho_x[i];
    return integrate(grid, f) / c;
}

double SpectralBasis::inner_energy(const Vec& y, const Vec& dy, const Vec& z,
                                   const Vec& dz) const {
    Vec f(grid.size());
    for (int i = 0; i < grid.size(); ++i)
        f[i] = p_x[i] * dy[i] * dz[i] + d_x[i] * y[i] * z[i];
    return integrate(grid, f) / c;
}

double SpectralBasis::lambda_tail(int j) const {
    if (j < count()) return lambdas[j];
    // Asymptotic extension fitted on the computed head: mu ~ shape^2 + c0 + d0/shape^2.
    double off = shape_offset(boundary_case);
    int jN = count() - 1;
    int jM = std::max(count() / 2, 1);
    double sN = (jN + off) * (jN + off), sM = (jM + off) * (jM + off);
    double rN = mus[jN] - sN, rM = mus[jM] - sM;
    double d0 = (rM - rN) / (1.0 / sM - 1.0 / sN);
    double c0 = rN - d0 / sN;
    double s = (j + off) * (j + off);
    return (s + c0 + d0 / s) / (c * c);
}

SpectralBasis build_spectral_basis(const LiouvilleTransform& t, const TransformedPotential& tp,
                                   int J, const ShootingOptions& opt) {
    SpectralBasis basis;
    basis.grid = t.grid;
    basis.c = t.c;
    basis.boundary_case = t.boundary_case;
    basis.a1 = t.a1;
    basis.b1 = t.b1;
    basis.a2 = t.a2;
    basis.b2 = t.b2;
    basis.rho0 = tp.rho0;
    basis.rho1 = tp.rho1;
    basis.integral_varrho = tp.integral;
    basis.rho2 = (t.b1 > 0 && t.b2 > 0)
                     ? 2.0 / M_PI * (t.a1 / t.b1 + t.a2 / t.b2 + 1.0 + tp.integral)
                     : 0.0;

    const Grid& g = t.grid;
    basis.rho_x.resize(g.size());
    basis.p_x.resize(g.size());
    for (int i = 0; i < g.size(); ++i) {
        basis.rho_x[i] = t.rho.value(g.node(i));
        basis.p_x[i] = t.p.value(g.node(i));
    }
    basis.d_x = tp.d_source;

    NormalFormBC nf{t.a1, t.b1, t.a2, t.b2};
    Vec xi_nodes(g.size());
    for (int i = 0; i < g.size(); ++i) xi_nodes[i] = g.node(i);

    for (int n = 0; n <= J; ++n) {
        double mu = eigenvalue_mu(tp, nf, n, t.boundary_case, opt);
        NormalMode mode = eigenfunction_mu(tp, nf, mu, opt);
        basis.mus.push_back(mu);
        basis.lambdas.push_back(mu / (t.c * t.c));

        CubicSpline phi_s(xi_nodes, mode.phi);
        CubicSpline dphi_s(xi_nodes, mode.phi_deriv);
        Vec psi(g.size()), dpsi(g.size());
        for (int i = 0; i < g.size(); ++i) {
            double xi = t.g_table[i];
            double s = t.s_factor[i];
            double gp = std::sqrt(basis.rho_x[i] / basis.p_x[i]) / t.c;
            double ph = (i == 0) ? mode.phi.front() : (i == g.n ? mode.phi.back() : phi_s(xi));
            double dph = (i == 0) ? mode.phi_deriv.front()
                                  : (i == g.n ? mode.phi_deriv.back() : dphi_s(xi));
            psi[i] = ph / s;
            dpsi[i] = dph * gp / s - ph * t.s_deriv[i] / (s * s);
        }
        // Normalize in the weighted x-space product so Parseval is exact on-grid.
        Vec w(g.size());
        for (int i = 0; i < g.size(); ++i) w[i] = psi[i] * psi[i] * basis.rho_x[i];
        double nrm = std::sqrt(integrate(g, w) / t.c);
        if (!(nrm > 0.0)) throw NumericError("basis: null mode after back-transform");
        for (int i = 0; i < g.size(); ++i) {
            psi[i] /= nrm;
            dpsi[i] /= nrm;
        }
        int osc = 0;
        for (int i = 2; i < g.size(); ++i)
            if (psi[i - 1] != 0.0 && psi[i] * psi[i - 1] < 0.0) ++osc;
        basis.oscillation.push_back(osc);
        basis.psi.push_back(std::move(psi));
        basis.psi_deriv.push_back(std::move(dpsi));
    }

    // Equivalence constants of ||.||_{eps,w} vs H1. Certified when d > 0.
    double dmin = *std::min_element(basis.d_x.begin(), basis.d_x.end());
    double dmax = *std::max_element(basis.d_x.begin(), basis.d_x.end());
    double pmin = *std::min_element(basis.p_x.begin(), basis.p_x.end());
    double pmax = *std::max_element(basis.p_x.begin(), basis.p_x.end());
    if (dmin > 0.0) {
        basis.L1 = std::sqrt(std::min(pmin, dmin) / t.c);
        basis.L2 = std::sqrt(std::max(pmax, dmax) / t.c);
        basis.L_certified = true;
    } else {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int n = 0; n < basis.count(); ++n) {
            double h1 = h1_norm(g, basis.psi[n]);
            double ratio = std::sqrt(std::max(basis.lambdas[n], 0.0)) / h1;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        basis.L1 = lo;
        basis.L2 = hi;
        basis.L_certified = false;
    }
    return basis;
}

AsymptoticFit asymptotic_report(const SpectralBasis& basis, int n_min, int n_max) {
    if (n_max < n_min + 8) throw ConfigError("asymptotic_report: need n_max >= n_min + 8");
    if (n_max >= basis.count()) throw ConfigError("asymptotic_report: basis too small");
    AsymptoticFit fit;
    fit.n_min = n_min;
    fit.n_max = n_max;
    const double off = shape_offset(basis.boundary_case);

    Vec diffs;
    for (int n = n_min; n <= n_max; ++n) {
        double shape2 = (n + off) * (n + off);
        diffs.push_back(basis.mus[n] - shape2);
    }
    Vec sorted = diffs;
    std::sort(sorted.begin(), sorted.end());
    size_t m = sorted.size();
    fit.c_hat = (m % 2) ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);

    fit.bracket_lo = basis.rho0;
    fit.bracket_hi = (basis.boundary_case == BoundaryCase::General && basis.rho2 > 0)
                         ? basis.rho2
                         : basis.rho1;
    fit.bracket_pass = fit.c_hat >= fit.bracket_lo - 1e-9 && fit.c_hat <= fit.bracket_hi + 1e-9;

    for (int n = n_min; n <= n_max; ++n) {
        double shape2 = (n + off) * (n + off);
        fit.residuals.push_back((basis.mus[n] - shape2 - fit.c_hat) * shape2);
    }
    // Growth probe: mean |r| over the last third vs the first third.
    size_t third = fit.residuals.size() / 3;
    auto mean_abs = [&](size_t from, size_t to) {
        double s = 0;
        for (size_t i = from; i < to; ++i) s += std::fabs(fit.residuals[i]);
        return s / std::max<size_t>(1, to - from);
    };
    double head = mean_abs(0, third), tail = mean_abs(fit.residuals.size() - third,
                                                      fit.residuals.size());
    double floor_abs = 1e-7 * std::max(1.0, std::fabs(fit.c_hat));
    fit.residual_bounded = tail <= 2.5 * head + floor_abs;
    return fit;
}

BoundsCheck spectral_bounds_check(const SpectralBasis& basis, int n_lo, int n_hi) {
    BoundsCheck chk;
    const double off = shape_offset(basis.boundary_case);
    chk.lo_offset = basis.rho0;
    chk.hi_offset = (basis.boundary_case == BoundaryCase::General && basis.rho2 > 0)
                        ? basis.rho2
                        : basis.rho1;
    // The Case 1 claim starts at n = 1 (the zero mode sits below the shape).
    if (basis.boundary_case == BoundaryCase::Neumann || basis.boundary_case == BoundaryCase::General)
        n_lo = std::max(n_lo, 1);
    n_hi = std::min(n_hi, basis.count() - 1);
    const double slack = 1e-9;
    auto holds = [&](int n) {
        double shape2 = (n + off) * (n + off);
        return basis.mus[n] >= shape2 + chk.lo_offset - slack &&
               basis.mus[n] <= shape2 + chk.hi_offset + slack;
    };
    chk.first_valid = n_hi + 1;
    for (int n = n_hi; n >= n_lo && holds(n); --n) chk.first_valid = n;
    for (int n = n_lo; n <= n_hi; ++n)
        if (!holds(n)) ++chk.violations;
    chk.all_hold = chk.first_valid <= n_lo;
    return chk;
}

LipschitzProbe lipschitz_probe(const LiouvilleTransform& t, const TransformedPotential& tp,
                               const Vec& delta_d, int n_max, const ShootingOptions& opt) {
    Vec d2 = tp.d_source;
    for (int i = 0; i < static_cast<int>(d2.size()); ++i) d2[i] += delta_d[i];
    TransformedPotential tp2 = transformed_potential(t, d2);

    NormalFormBC nf{t.a1, t.b1, t.a2, t.b2};
    LipschitzProbe probe;
    double dd_inf = linf_norm(delta_d);
    Vec dtheta(tp.vartheta.size());
    for (size_t i = 0; i < dtheta.size(); ++i) dtheta[i] = tp2.vartheta[i] - tp.vartheta[i];
    probe.sup_bound = linf_norm(dtheta) / (t.c * t.c);
    for (int n = 0; n <= n_max; ++n) {
        double m1 = eigenvalue_mu(tp, nf, n, t.boundary_case, opt);
        double m2 = eigenvalue_mu(tp2, nf, n, t.boundary_case, opt);
        probe.max_delta = std::max(probe.max_delta, std::fabs(m2 - m1) / (t.c * t.c));
    }
    probe.kappa = dd_inf > 0 ? probe.max_delta / dd_inf : 0.0;
    probe.within_bound = probe.max_delta <= probe.sup_bound + 1e-9 * std::max(1.0, probe.sup_bound);
    return probe;
}

GapReport gap_report(const SpectralBasis& basis, int j_max) {
    GapReport rep;
    j_max = std::min(j_max, basis.count() - 2);
    rep.floor_large_j = 1.0 / (2.0 * basis.c);
    rep.delta1 = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= j_max; ++j) {
        double gap = std::sqrt(basis.lambdas[j + 1]) - std::sqrt(basis.lambdas[j]);
        rep.delta1 = std::min(rep.delta1, gap);
    }
    rep.onset = -1;
    for (int j = j_max; j >= 0; --j) {
        double gap = std::sqrt(basis.lambdas[j + 1]) - std::sqrt(basis.lambdas[j]);
        if (gap > rep.floor_large_j) rep.onset = j;
        else break;
    }
    rep.floor_holds_from_onset = rep.onset >= 0;
    return rep;
}

} // namespace pwave
