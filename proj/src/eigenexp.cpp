#include "pwave/eigenexp.hpp"

#include "pwave/errors.hpp"

#include <cmath>

namespace pwave {

EigenExpansion expand(const SpectralBasis& basis, const TimeFourierField& u, int N, int J) {
    if (!(basis.grid == u.grid)) throw ConfigError("expand: grid mismatch");
    if (J >= basis.count()) throw ConfigError("expand: J exceeds basis size");
    EigenExpansion e(N, J);
    for (int l = 0; l <= std::min(N, u.l_max()); ++l) {
        const CVec& ul = u.coef[l];
        for (int j = 0; j <= J; ++j) e.at(l, j) = basis.inner_rho(ul, basis.psi[j]);
    }
    return e;
}

TimeFourierField synthesize(const SpectralBasis& basis, const EigenExpansion& e) {
    TimeFourierField u(basis.grid, e.N);
    for (int l = 0; l <= e.N; ++l)
        for (int j = 0; j <= e.J; ++j) {
            auto c = e.at(l, j);
            if (c == std::complex<double>(0.0, 0.0)) continue;
            for (int i = 0; i < basis.grid.size(); ++i) u.coef[l][i] += c * basis.psi[j][i];
        }
    for (auto& z : u.coef[0]) z = {z.real(), 0.0};
    return u;
}

double weighted_hs_norm(const SpectralBasis& basis, const EigenExpansion& e, double s) {
    double acc = 0.0;
    for (int l = 0; l <= e.N; ++l) {
        double weight = 1.0 + std::pow(static_cast<double>(l), 2.0 * s);
        double mult = (l == 0) ? 1.0 : 2.0;
        for (int j = 0; j <= e.J; ++j)
            acc += mult * weight * basis.lambdas[j] * std::norm(e.at(l, j));
    }
    return std::sqrt(acc);
}

double parseval_norm(const SpectralBasis& basis, const EigenExpansion& e) {
    (void)basis;
    double acc = 0.0;
    for (int l = 0; l <= e.N; ++l) {
        double mult = (l == 0) ? 1.0 : 2.0;
        for (int j = 0; j <= e.J; ++j) acc += mult * std::norm(e.at(l, j));
    }
    return std::sqrt(acc);
}

} // namespace pwave
