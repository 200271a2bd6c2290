#include "pwave/fields.hpp"

#include "pwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace pwave {

TimeFourierField::TimeFourierField(const Grid& g, int l_max, double s_ref)
    : grid(g), s_reference(s_ref), coef(l_max + 1, CVec(g.size(), {0.0, 0.0})) {}

CVec TimeFourierField::coefficient(int l) const {
    int a = std::abs(l);
    if (a >= static_cast<int>(coef.size())) return CVec(grid.size(), {0.0, 0.0});
    if (l >= 0) return coef[a];
    CVec out = coef[a];
    for (auto& z : out) z = std::conj(z);
    return out;
}

bool TimeFourierField::zero() const {
    for (const auto& c : coef)
        for (const auto& z : c)
            if (z != std::complex<double>(0.0, 0.0)) return false;
    return true;
}

void TimeFourierField::trim(double rel_eps) {
    double peak = 0.0;
    for (const auto& c : coef)
        for (const auto& z : c) peak = std::max(peak, std::abs(z));
    if (peak == 0.0) { coef.resize(1, CVec(grid.size(), {0.0, 0.0})); return; }
    int keep = 0;
    for (int l = 0; l <= l_max(); ++l) {
        double m = 0.0;
        for (const auto& z : coef[l]) m = std::max(m, std::abs(z));
        if (m > rel_eps * peak) keep = l;
    }
    coef.resize(keep + 1);
}

namespace {
void require_same_grid(const TimeFourierField& a, const TimeFourierField& b) {
    if (!(a.grid == b.grid)) throw ConfigError("field arithmetic: grid mismatch");
}
} // namespace

TimeFourierField operator+(const TimeFourierField& a, const TimeFourierField& b) {
    require_same_grid(a, b);
    TimeFourierField out(a.grid, std::max(a.l_max(), b.l_max()), a.s_reference);
    for (int l = 0; l <= out.l_max(); ++l) {
        if (l <= a.l_max())
            for (int i = 0; i < a.grid.size(); ++i) out.coef[l][i] += a.coef[l][i];
        if (l <= b.l_max())
            for (int i = 0; i < b.grid.size(); ++i) out.coef[l][i] += b.coef[l][i];
    }
    return out;
}

TimeFourierField operator-(const TimeFourierField& a, const TimeFourierField& b) {
    return a + (-1.0 * b);
}

TimeFourierField operator*(double c, const TimeFourierField& a) {
    TimeFourierField out = a;
    for (auto& row : out.coef)
        for (auto& z : row) z *= c;
    return out;
}

double hs_norm(const TimeFourierField& u, double s) {
    double acc = 0.0;
    for (int l = 0; l <= u.l_max(); ++l) {
        double nl = h1_norm(u.grid, u.coef[l]);
        double weight = 1.0 + std::pow(static_cast<double>(l), 2.0 * s);
        double mult = (l == 0) ? 1.0 : 2.0; // +-l pair
        acc += mult * weight * nl * nl;
    }
    return std::sqrt(acc);
}

TimeFourierField project_V(const TimeFourierField& u) {
    TimeFourierField out(u.grid, 0, u.s_reference);
    out.coef[0] = u.coef[0];
    for (auto& z : out.coef[0]) z = {z.real(), 0.0};
    return out;
}

TimeFourierField project_W(const TimeFourierField& u) {
    TimeFourierField out = u;
    std::fill(out.coef[0].begin(), out.coef[0].end(), std::complex<double>(0.0, 0.0));
    return out;
}

TimeFourierField project_PN(const TimeFourierField& u, int N) {
    TimeFourierField out = u;
    if (out.l_max() > N) out.coef.resize(N + 1);
    return out;
}

TimeFourierField project_PN_perp(const TimeFourierField& u, int N) {
    TimeFourierField out = u;
    for (int l = 0; l <= std::min(N, out.l_max()); ++l)
        std::fill(out.coef[l].begin(), out.coef[l].end(), std::complex<double>(0.0, 0.0));
    return out;
}

TimeFourierField product(const TimeFourierField& u, const TimeFourierField& v) {
    require_same_grid(u, v);
    const int L = u.l_max() + v.l_max();
    TimeFourierField out(u.grid, L, u.s_reference);
    for (int l = 0; l <= L; ++l) {
        for (int k = -v.l_max(); k <= v.l_max(); ++k) {
            int j = l - k;
            if (std::abs(j) > u.l_max()) continue;
            CVec uj = u.coefficient(j);
            CVec vk = v.coefficient(k);
            for (int i = 0; i < u.grid.size(); ++i) out.coef[l][i] += uj[i] * vk[i];
        }
    }
    for (auto& z : out.coef[0]) z = {z.real(), 0.0};
    return out;
}

namespace {
// sum_{k in Z} 1/(1+|k|^{2s}) with Euler-Maclaurin tail beyond K terms.
double reciprocal_weight_sum(double s) {
    const int K = 20000;
    double sum = 1.0; // k = 0
    for (int k = 1; k <= K; ++k) sum += 2.0 / (1.0 + std::pow(k, 2.0 * s));
    // tail: 2 * [ int_K^inf dk/(1+k^{2s}) + f(K)/2 - f'(K)/12 ], f = 1/(1+k^{2s})
    double p = 2.0 * s;
    double fK = 1.0 / (1.0 + std::pow(static_cast<double>(K), p));
    double integral = std::pow(static_cast<double>(K), 1.0 - p) / (p - 1.0); // leading term
    integral -= std::pow(static_cast<double>(K), 1.0 - 2.0 * p) / (2.0 * p - 1.0);
    double fpK = -p * std::pow(static_cast<double>(K), p - 1.0) * fK * fK;
    sum += 2.0 * (integral - fK / 2.0 - fpK / 12.0);
    return sum;
}
} // namespace

double algebra_constant(double s) {
    if (s <= 0.5) throw ConfigError("algebra constant requires s > 1/2");
    return std::sqrt(std::pow(2.0, 2.0 * s) * reciprocal_weight_sum(s));
}

double embedding_constant(double s) {
    if (s <= 0.5) throw ConfigError("embedding constant requires s > 1/2");
    return std::sqrt(reciprocal_weight_sum(s));
}

EmbeddingCheck sup_embedding_check(const TimeFourierField& u, double s, int t_samples) {
    EmbeddingCheck r{};
    for (int q = 0; q < t_samples; ++q) {
        double t = 2.0 * M_PI * q / t_samples;
        Vec slice = eval_at_time(u, t);
        r.sup_h1 = std::max(r.sup_h1, h1_norm(u.grid, slice));
    }
    r.bound = embedding_constant(s) * hs_norm(u, s);
    r.pass = r.sup_h1 <= r.bound * (1.0 + 1e-12);
    return r;
}

Vec eval_at_time(const TimeFourierField& u, double t) {
    Vec out(u.grid.size(), 0.0);
    for (int i = 0; i < u.grid.size(); ++i) out[i] = u.coef[0][i].real();
    for (int l = 1; l <= u.l_max(); ++l) {
        std::complex<double> ph(std::cos(l * t), std::sin(l * t));
        for (int i = 0; i < u.grid.size(); ++i)
            out[i] += 2.0 * (u.coef[l][i] * ph).real();
    }
    return out;
}

std::string field_to_csv(const TimeFourierField& u) {
    std::ostringstream os;
    os << "l,node_index,re,im\n";
    char buf[80];
    for (int l = 0; l <= u.l_max(); ++l)
        for (int i = 0; i < u.grid.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", l, i, u.coef[l][i].real(),
                          u.coef[l][i].imag());
            os << buf;
        }
    return os.str();
}

TimeFourierField field_from_csv(const std::string& csv, const Grid& g) {
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line); // header
    TimeFourierField out(g, 0);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        int l, i;
        double re, im;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &l, &i, &re, &im) != 4)
            throw ConfigError("field csv: malformed row '" + line + "'");
        if (l < 0 || i < 0 || i >= g.size()) throw ConfigError("field csv: index out of range");
        if (l > out.l_max()) out.coef.resize(l + 1, CVec(g.size(), {0.0, 0.0}));
        out.coef[l][i] = {re, im};
    }
    return out;
}

} // namespace pwave
