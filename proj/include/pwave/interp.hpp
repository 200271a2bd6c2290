// Cubic interpolation: not-a-knot spline for smooth tabulated data and a
// monotone (Fritsch-Carlson) cubic for invertible maps.
#pragma once

#include <vector>

namespace pwave {

class CubicSpline {
public:
    CubicSpline() = default;
    // x strictly increasing; not-a-knot end conditions.
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double deriv(double x) const;
    double deriv2(double x) const;

private:
    std::vector<double> x_, y_, b_, c_, d_; // y + b t + c t^2 + d t^3 per interval
    int locate(double x) const;
};

// Monotone piecewise-cubic Hermite interpolation. Preserves monotonicity of
// the data, so the interpolant of a strictly increasing table is invertible.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double deriv(double x) const;

private:
    std::vector<double> x_, y_, m_; // Hermite slopes
    int locate(double x) const;
};

} // namespace pwave
