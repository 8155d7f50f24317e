#pragma once

// Normal-inverse-Wishart and Dirichlet posterior means, written from the
// textbook update with scalar arithmetic only.

#include <array>
#include <vector>

namespace oracle {

struct Niw2 {
    double mx, my;           // posterior mean of μ
    double sxx, sxy, syy;    // E[Σ] = V_n / (ν_n - d - 1)
};

inline Niw2 niw_posterior_mean(const std::vector<std::array<double, 2>>& pts, double m0x, double m0y,
                               double kappa0, double nu0, double v0xx, double v0xy, double v0yy) {
    const double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (const auto& p : pts) {
        sx += p[0];
        sy += p[1];
    }
    const double xbar = sx / n, ybar = sy / n;
    double cxx = 0, cxy = 0, cyy = 0;
    for (const auto& p : pts) {
        cxx += (p[0] - xbar) * (p[0] - xbar);
        cxy += (p[0] - xbar) * (p[1] - ybar);
        cyy += (p[1] - ybar) * (p[1] - ybar);
    }
    const double kn = kappa0 + n;
    const double nun = nu0 + n;
    const double dx = xbar - m0x, dy = ybar - m0y;
    const double f = kappa0 * n / kn;
    const double vxx = v0xx + cxx + f * dx * dx;
    const double vxy = v0xy + cxy + f * dx * dy;
    const double vyy = v0yy + cyy + f * dy * dy;
    const double denom = nun - 2.0 - 1.0;  // d = 2
    return {(kappa0 * m0x + n * xbar) / kn, (kappa0 * m0y + n * ybar) / kn, vxx / denom, vxy / denom, vyy / denom};
}

/// (n_k + a) / (N + a·K)
inline std::vector<double> dirichlet_mean(const std::vector<int>& counts, double a) {
    double total = 0;
    for (int c : counts) total += c;
    std::vector<double> out;
    for (int c : counts) out.push_back((c + a) / (total + a * static_cast<double>(counts.size())));
    return out;
}

}  // namespace oracle
