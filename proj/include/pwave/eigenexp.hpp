// Expansion of time-Fourier fields in the Sturm-Liouville eigenbasis:
// u(t,x) = sum_{l,j} u_hat(l,j) psi_j(x) e^{ilt}, coefficients stored for
// l >= 0 with conjugate symmetry implied.
#pragma once

#include "pwave/fields.hpp"
#include "pwave/sturm.hpp"

namespace pwave {

struct EigenExpansion {
    int N = 0;  // largest |l|
    int J = 0;  // largest mode index
    CVec a;     // (N+1) x (J+1), row l, column j

    EigenExpansion() = default;
    EigenExpansion(int n, int j) : N(n), J(j), a((n + 1) * (j + 1), {0.0, 0.0}) {}

    std::complex<double>& at(int l, int j) { return a[static_cast<size_t>(l) * (J + 1) + j]; }
    std::complex<double> at(int l, int j) const {
        return a[static_cast<size_t>(l) * (J + 1) + j];
    }
    std::complex<double> get(int l, int j) const {  // any sign of l
        return l >= 0 ? at(l, j) : std::conj(at(-l, j));
    }
};

EigenExpansion expand(const SpectralBasis& basis, const TimeFourierField& u, int N, int J);
TimeFourierField synthesize(const SpectralBasis& basis, const EigenExpansion& e);

// Spectrally weighted Sobolev norm: sum_{l,j} lambda_j |a_{l,j}|^2 (1+|l|^{2s}),
// equivalent to ||.||_s^2 within [L1^2, L2^2] (counts the +-l pair).
double weighted_hs_norm(const SpectralBasis& basis, const EigenExpansion& e, double s);

// Plain coefficient l2 norm of the expansion (Parseval weight only).
double parseval_norm(const SpectralBasis& basis, const EigenExpansion& e);

} // namespace pwave
