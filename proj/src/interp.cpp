#include "pwave/interp.hpp"

#include "pwave/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pwave {

namespace {
int bisect(const std::vector<double>& x, double v) {
    int lo = 0, hi = static_cast<int>(x.size()) - 2;
    if (v <= x.front()) return 0;
    if (v >= x[hi]) return hi;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (x[mid] <= v) lo = mid; else hi = mid - 1;
    }
    return lo;
}
} // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const int n = static_cast<int>(x_.size());
    if (n < 4 || y_.size() != x_.size()) throw std::invalid_argument("spline: need >= 4 points");
    for (int i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i])) throw std::invalid_argument("spline: abscissae not increasing");

    std::vector<double> h(n - 1);
    for (int i = 0; i < n - 1; ++i) h[i] = x_[i + 1] - x_[i];

    // Solve for c_i = S''(x_i)/2 with not-a-knot end conditions.
    BandedMatrix A(n, 2, 2);
    std::vector<double> rhs(n, 0.0);
    // not-a-knot at x_1: h1*c0 - (h0+h1)*c1 + h0*c2 = 0
    A.at(0, 0) = h[1];
    A.at(0, 1) = -(h[0] + h[1]);
    A.at(0, 2) = h[0];
    for (int i = 1; i < n - 1; ++i) {
        A.at(i, i - 1) = h[i - 1];
        A.at(i, i) = 2.0 * (h[i - 1] + h[i]);
        A.at(i, i + 1) = h[i];
        rhs[i] = 3.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
    }
    // not-a-knot at x_{n-2}
    A.at(n - 1, n - 3) = h[n - 2];
    A.at(n - 1, n - 2) = -(h[n - 3] + h[n - 2]);
    A.at(n - 1, n - 1) = h[n - 3];
    A.factor();
    c_ = A.solve(rhs);

    b_.resize(n - 1);
    d_.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        b_[i] = (y_[i + 1] - y_[i]) / h[i] - h[i] * (2.0 * c_[i] + c_[i + 1]) / 3.0;
        d_[i] = (c_[i + 1] - c_[i]) / (3.0 * h[i]);
    }
}

int CubicSpline::locate(double x) const { return bisect(x_, x); }

double CubicSpline::operator()(double x) const {
    int i = locate(x);
    double t = x - x_[i];
    return y_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

double CubicSpline::deriv(double x) const {
    int i = locate(x);
    double t = x - x_[i];
    return b_[i] + t * (2.0 * c_[i] + 3.0 * t * d_[i]);
}

double CubicSpline::deriv2(double x) const {
    int i = locate(x);
    double t = x - x_[i];
    return 2.0 * c_[i] + 6.0 * t * d_[i];
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const int n = static_cast<int>(x_.size());
    if (n < 3 || y_.size() != x_.size()) throw std::invalid_argument("pchip: need >= 3 points");
    std::vector<double> h(n - 1), delta(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        h[i] = x_[i + 1] - x_[i];
        if (!(h[i] > 0)) throw std::invalid_argument("pchip: abscissae not increasing");
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    m_.assign(n, 0.0);
    // Fritsch-Carlson slopes
    for (int i = 1; i < n - 1; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            m_[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0) m = 0.0;
        else if (d0 * d1 <= 0.0 && std::fabs(m) > 3.0 * std::fabs(d0)) m = 3.0 * d0;
        return m;
    };
    m_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    m_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

int MonotoneCubic::locate(double x) const { return bisect(x_, x); }

double MonotoneCubic::operator()(double x) const {
    int i = locate(x);
    double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    double h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t);
    double h11 = t * t * (t - 1);
    return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double MonotoneCubic::deriv(double x) const {
    int i = locate(x);
    double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
    double d00 = 6 * t * (t - 1) / h;
    double d10 = (1 - t) * (1 - 3 * t);
    double d01 = -d00;
    double d11 = t * (3 * t - 2);
    return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

} // namespace pwave
