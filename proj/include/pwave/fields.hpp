// Real time-periodic fields u(t,x) stored as time-Fourier coefficients
// u_l(x) on the spatial grid, l >= 0 with u_{-l} = conj(u_l) implied.
// Sobolev machinery: ||u||_s^2 = sum_l ||u_l||_H1^2 (1 + |l|^{2s}).
#pragma once

#include "pwave/grid.hpp"

#include <complex>
#include <string>
#include <vector>

namespace pwave {

struct TimeFourierField {
    Grid grid;
    double s_reference = 1.0;
    // coef[l] is the coefficient of e^{ilt}; coef[0] kept real.
    std::vector<CVec> coef;

    TimeFourierField() = default;
    TimeFourierField(const Grid& g, int l_max, double s_ref = 1.0);

    int l_max() const { return static_cast<int>(coef.size()) - 1; }
    // coefficient for any l in [-l_max, l_max] (conjugate for negative l)
    CVec coefficient(int l) const;

    bool zero() const;
    void trim(double rel_eps = 1e-15); // drop an all-negligible tail
};

TimeFourierField operator+(const TimeFourierField& a, const TimeFourierField& b);
TimeFourierField operator-(const TimeFourierField& a, const TimeFourierField& b);
TimeFourierField operator*(double c, const TimeFourierField& a);

double hs_norm(const TimeFourierField& u, double s);

TimeFourierField project_V(const TimeFourierField& u);  // time mean only
TimeFourierField project_W(const TimeFourierField& u);  // zero time mean
TimeFourierField project_PN(const TimeFourierField& u, int N);
TimeFourierField project_PN_perp(const TimeFourierField& u, int N);

// Exact discrete convolution in l, pointwise product in x.
TimeFourierField product(const TimeFourierField& u, const TimeFourierField& v);

// Constant of the algebra inequality ||uv||_s <= C(s) ||u||_s ||v||_s:
// C(s)^2 = 2^{2s} * sum_{k in Z} 1/(1+|k|^{2s}), evaluated with an
// Euler-Maclaurin tail so slowly convergent sums (s near 1/2) are accurate.
double algebra_constant(double s);

// Constant of max_t ||u(t,.)||_H1 <= C_emb(s) ||u||_s: C^2 = sum_l 1/(1+|l|^{2s}).
double embedding_constant(double s);

struct EmbeddingCheck {
    double sup_h1;   // max over sampled t of ||u(t,.)||_H1
    double bound;    // C_emb(s) * ||u||_s
    bool pass;
};
EmbeddingCheck sup_embedding_check(const TimeFourierField& u, double s, int t_samples = 256);

// Pointwise samples u(t, x_i) for all grid nodes (real).
Vec eval_at_time(const TimeFourierField& u, double t);

// Serialization: CSV `l, node_index, re, im` with full round-trip precision.
std::string field_to_csv(const TimeFourierField& u);
TimeFourierField field_from_csv(const std::string& csv, const Grid& g);

} // namespace pwave
