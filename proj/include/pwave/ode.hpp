// Adaptive Dormand-Prince 5(4) integrator for the small ODE systems used by
// the shooting engine (Pruefer phase and amplitude equations).
#pragma once

#include <array>
#include <functional>
#include <vector>

namespace pwave {

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-12;
    double h_init = 1e-3;
    double h_min = 1e-14;
    long max_steps = 4000000;
};

// Integrates y' = f(t, y) from t0 to t1 (t1 > t0). Throws NumericError when the
// step size underflows. State dimension fixed at compile time.
template <int Dim>
class DormandPrince {
public:
    using State = std::array<double, Dim>;
    using Rhs = std::function<void(double, const State&, State&)>;

    // Integrate and return the final state.
    static State integrate(const Rhs& f, double t0, double t1, State y,
                           const OdeOptions& opt = {});

    // Integrate, invoking sink(t, y) at every accepted step (including both ends).
    static State integrate_observed(const Rhs& f, double t0, double t1, State y,
                                    const OdeOptions& opt,
                                    const std::function<void(double, const State&)>& sink);
};

} // namespace pwave
