#include "pwave/coefficients.hpp"

#include "pwave/errors.hpp"

#include <cmath>
#include <limits>

namespace pwave {

Coefficient::Coefficient(const Expr& e) : from_expr_(true), f_(e) {
    df_ = f_.derivative();
    d2f_ = df_.derivative();
}

Coefficient Coefficient::tabulated(const Grid& g, Vec samples) {
    if (static_cast<int>(samples.size()) != g.size())
        throw ConfigError("tabulated coefficient: sample count != grid size");
    Coefficient c;
    c.from_expr_ = false;
    Vec xs(g.size());
    for (int i = 0; i < g.size(); ++i) xs[i] = g.node(i);
    c.spline_ = std::make_shared<CubicSpline>(std::move(xs), std::move(samples));
    return c;
}

double Coefficient::value(double x) const { return from_expr_ ? f_(x) : (*spline_)(x); }
double Coefficient::deriv(double x) const { return from_expr_ ? df_(x) : spline_->deriv(x); }
double Coefficient::deriv2(double x) const { return from_expr_ ? d2f_(x) : spline_->deriv2(x); }

Vec Coefficient::tabulate(const Grid& g) const {
    Vec out(g.size());
    for (int i = 0; i < g.size(); ++i) out[i] = value(g.node(i));
    return out;
}

int ForcingModel::bandwidth() const {
    int k = 0;
    for (const auto& h : base) k = std::max(k, std::abs(h.k));
    for (const auto& h : mult) k = std::max(k, std::abs(h.k));
    return k;
}

ForcingTable::ForcingTable(const ForcingModel& model, const Grid& g) : grid_(g) {
    auto tab = [&](const std::vector<ForcingModel::Harmonic>& hs, std::vector<Row>& rows) {
        for (const auto& h : hs) {
            Row r;
            r.k = h.k;
            r.c.resize(g.size());
            r.s.resize(g.size());
            for (int i = 0; i < g.size(); ++i) {
                r.c[i] = h.cos_part(g.node(i));
                r.s[i] = h.sin_part(g.node(i));
            }
            rows.push_back(std::move(r));
        }
    };
    tab(model.base, base_);
    tab(model.mult, mult_);
    c2_.resize(g.size());
    c3_.resize(g.size());
    for (int i = 0; i < g.size(); ++i) {
        c2_[i] = model.c2(g.node(i));
        c3_[i] = model.c3(g.node(i));
    }
    bandwidth_ = model.bandwidth();
}

void ForcingTable::accum(const std::vector<Row>& rows, double t, Vec& out, bool dt) const {
    for (const auto& r : rows) {
        double ck = std::cos(r.k * t), sk = std::sin(r.k * t);
        double wc = dt ? -r.k * sk : ck;
        double ws = dt ? r.k * ck : sk;
        for (int i = 0; i < grid_.size(); ++i) out[i] += wc * r.c[i] + ws * r.s[i];
    }
}

void ForcingTable::eval(double t, const Vec& u, Vec& out) const {
    out.assign(grid_.size(), 0.0);
    accum(base_, t, out, false);
    Vec mrow(grid_.size(), 0.0);
    accum(mult_, t, mrow, false);
    for (int i = 0; i < grid_.size(); ++i)
        out[i] += u[i] * (mrow[i] + u[i] * (c2_[i] + u[i] * c3_[i]));
}

void ForcingTable::eval_du(double t, const Vec& u, Vec& out) const {
    out.assign(grid_.size(), 0.0);
    accum(mult_, t, out, false);
    for (int i = 0; i < grid_.size(); ++i) out[i] += u[i] * (2.0 * c2_[i] + 3.0 * c3_[i] * u[i]);
}

void ForcingTable::eval_du2(double /*t*/, const Vec& u, Vec& out) const {
    out.assign(grid_.size(), 0.0);
    for (int i = 0; i < grid_.size(); ++i) out[i] = 2.0 * c2_[i] + 6.0 * c3_[i] * u[i];
}

void ForcingTable::eval_dt(double t, const Vec& u, Vec& out) const {
    out.assign(grid_.size(), 0.0);
    accum(base_, t, out, true);
    Vec mrow(grid_.size(), 0.0);
    accum(mult_, t, mrow, true);
    for (int i = 0; i < grid_.size(); ++i) out[i] += mrow[i] * u[i];
}

ValidationReport validate(const CoefficientSet& problem, int grid_size) {
    if (grid_size < 16) throw ConfigError("validate: grid_size must be >= 16");
    if (grid_size % 2) ++grid_size;
    Grid g(grid_size);
    ValidationReport rep;

    auto positivity = [&](const Coefficient& c, const std::string& name) {
        ValidationIssue is{ name + " > 0 on [0,pi]", true, -1, 0.0, "" };
        for (int i = 0; i < g.size(); ++i) {
            double v = c.value(g.node(i));
            if (!std::isfinite(v))
                throw ConfigError("validate: non-finite sample of " + name + " at node " +
                                  std::to_string(i));
            if (v <= 0.0 && is.pass) {
                is.pass = false;
                is.node = i;
                is.value = v;
                is.detail = name + "(x_" + std::to_string(i) + ") <= 0";
            }
        }
        rep.issues.push_back(is);
    };
    positivity(problem.rho, "rho");
    positivity(problem.p, "p");
    positivity(problem.m, "m");

    const auto& b = problem.bc;
    bool bc1 = (b.alpha1 * b.alpha1 + b.beta1 * b.beta1) != 0.0;
    bool bc2 = (b.alpha2 * b.alpha2 + b.beta2 * b.beta2) != 0.0;
    rep.issues.push_back({"alpha1^2 + beta1^2 != 0", bc1, -1, 0.0,
                          bc1 ? "" : "left boundary condition degenerate"});
    rep.issues.push_back({"alpha2^2 + beta2^2 != 0", bc2, -1, 0.0,
                          bc2 ? "" : "right boundary condition degenerate"});

    bool eps_ok = problem.epsilon >= 0.0 && std::isfinite(problem.epsilon);
    bool omega_ok = problem.omega > 0.0 && std::isfinite(problem.omega);
    rep.issues.push_back({"epsilon >= 0", eps_ok, -1, problem.epsilon, ""});
    rep.issues.push_back({"omega > 0", omega_ok, -1, problem.omega, ""});

    rep.passed = true;
    for (const auto& is : rep.issues) rep.passed = rep.passed && is.pass;
    return rep;
}

namespace {
// Shared collocation loop: transforms g(t_q, x, u(t_q, x)) to harmonics l = 0..K.
template <typename EvalFn>
TimeFourierField collocate(const ForcingTable& table, const TimeFourierField& u, int K,
                           EvalFn&& eval) {
    const Grid& g = table.grid();
    if (!(g == u.grid)) throw ConfigError("forcing collocation: grid mismatch");
    // Band limit of f(t,x,u(t,x)): forcing harmonics + cubic power of u.
    int band = table.bandwidth() + 3 * std::max(u.l_max(), 1);
    int Q = std::max(4 * K, 2 * (band + K) + 4);
    TimeFourierField out(g, K, u.s_reference);
    Vec slice, row;
    for (int q = 0; q < Q; ++q) {
        double t = 2.0 * M_PI * q / Q;
        slice = eval_at_time(u, t);
        for (double v : slice)
            if (!std::isfinite(v)) throw NumericError("forcing collocation: non-finite field");
        eval(t, slice, row);
        for (double v : row)
            if (!std::isfinite(v))
                throw NumericError("forcing collocation: forcing returned non-finite value");
        for (int l = 0; l <= K; ++l) {
            std::complex<double> ph(std::cos(l * t), -std::sin(l * t));
            ph /= static_cast<double>(Q);
            for (int i = 0; i < g.size(); ++i) out.coef[l][i] += row[i] * ph;
        }
    }
    for (auto& z : out.coef[0]) z = {z.real(), 0.0};
    return out;
}
} // namespace

TimeFourierField forcing_fourier(const ForcingTable& table, const TimeFourierField& u, int K,
                                 double) {
    return collocate(table, u, K,
                     [&](double t, const Vec& s, Vec& r) { table.eval(t, s, r); });
}

TimeFourierField forcing_derivative_fourier(const ForcingTable& table, const TimeFourierField& u,
                                            int K) {
    return collocate(table, u, K,
                     [&](double t, const Vec& s, Vec& r) { table.eval_du(t, s, r); });
}

TimeFourierField time_fourier_of_forcing(const CoefficientSet& problem, const TimeFourierField& u,
                                         int K) {
    ForcingTable table(problem.forcing, u.grid);
    return forcing_fourier(table, u, K);
}

SmoothnessProbe forcing_smoothness_probe(const CoefficientSet& problem, const TimeFourierField& u,
                                         int K) {
    TimeFourierField f = time_fourier_of_forcing(problem, u, K);
    SmoothnessProbe probe;
    // least-squares fit of log|f_l| against l over the non-negligible harmonics
    std::vector<std::pair<double, double>> pts;
    double total = 0.0;
    for (int l = 0; l <= f.l_max(); ++l) {
        double m = 0.0;
        for (const auto& z : f.coef[l]) m = std::max(m, std::abs(z));
        total += m;
        if (m > 1e-14) pts.emplace_back(static_cast<double>(l), std::log(m));
    }
    if (pts.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [x, y] : pts) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
        double n = static_cast<double>(pts.size());
        double denom = n * sxx - sx * sx;
        if (denom > 0) probe.decay_rate = -(n * sxy - sx * sy) / denom;
    } else {
        probe.decay_rate = std::numeric_limits<double>::infinity();
    }
    double head = 0.0;
    for (int l = 0; l <= std::min(2, f.l_max()); ++l) {
        double m = 0.0;
        for (const auto& z : f.coef[l]) m = std::max(m, std::abs(z));
        head += m;
    }
    probe.tail_mass = total - head;
    return probe;
}

} // namespace pwave
