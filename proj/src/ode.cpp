#include "pwave/ode.hpp"

#include "pwave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pwave {

namespace {
// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
} // namespace

template <int Dim>
typename DormandPrince<Dim>::State DormandPrince<Dim>::integrate_observed(
    const Rhs& f, double t0, double t1, State y, const OdeOptions& opt,
    const std::function<void(double, const State&)>& sink) {
    if (t1 <= t0) {
        if (sink) sink(t0, y);
        return y;
    }
    double t = t0;
    double h = std::min(opt.h_init, t1 - t0);
    State k1, k2, k3, k4, k5, k6, k7, ytmp, y5;
    f(t, y, k1);
    if (sink) sink(t, y);
    long steps = 0;
    bool have_k1 = true;
    while (t < t1) {
        if (++steps > opt.max_steps)
            throw NumericError("ode: step budget exhausted (stiff or oscillatory beyond plan)");
        h = std::min(h, t1 - t);
        if (h < opt.h_min)
            throw NumericError("ode: step size underflow");
        if (!have_k1) f(t, y, k1);
        auto stage = [&](const State& base) { return base; };
        (void)stage;
        for (int i = 0; i < Dim; ++i) ytmp[i] = y[i] + h * A21 * k1[i];
        f(t + C2 * h, ytmp, k2);
        for (int i = 0; i < Dim; ++i) ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        f(t + C3 * h, ytmp, k3);
        for (int i = 0; i < Dim; ++i)
            ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        f(t + C4 * h, ytmp, k4);
        for (int i = 0; i < Dim; ++i)
            ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        f(t + C5 * h, ytmp, k5);
        for (int i = 0; i < Dim; ++i)
            ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] +
                                  A65 * k5[i]);
        f(t + h, ytmp, k6);
        for (int i = 0; i < Dim; ++i)
            y5[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        f(t + h, y5, k7);

        double err = 0.0;
        for (int i = 0; i < Dim; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                            E7 * k7[i]);
            double sc = opt.atol + opt.rtol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
            double r = e / sc;
            err += r * r;
        }
        err = std::sqrt(err / Dim);

        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7; // FSAL
            have_k1 = true;
            if (sink) sink(t, y);
        } else {
            have_k1 = true; // k1 still valid at unchanged (t, y)
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
    }
    return y;
}

template <int Dim>
typename DormandPrince<Dim>::State DormandPrince<Dim>::integrate(const Rhs& f, double t0,
                                                                 double t1, State y,
                                                                 const OdeOptions& opt) {
    return integrate_observed(f, t0, t1, std::move(y), opt, nullptr);
}

template class DormandPrince<1>;
template class DormandPrince<2>;
template class DormandPrince<3>;

} // namespace pwave
