#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "spnav/kernels.hpp"

namespace spnav::kernels::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Felzenszwalb–Huttenlocher lower envelope of parabolas, strided 1D pass.
/// `f` holds squared distances along the line; result written to `d`
/// (stride `dstride`). `v` and `z` are scratch of length n and n+1.
inline void edt_1d(const double* f, std::ptrdiff_t stride, int n, double* d, std::ptrdiff_t dstride,
                   std::vector<int>& v, std::vector<double>& z) {
    int k = -1;
    for (int q = 0; q < n; ++q) {
        const double fq = f[q * stride];
        if (fq == kInf) continue;
        while (k >= 0) {
            const int p = v[k];
            const double fp = f[p * stride];
            const double s = ((fq + double(q) * q) - (fp + double(p) * p)) / (2.0 * (q - p));
            if (s <= z[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        z[k] = (k == 0) ? -kInf : ((fq + double(q) * q) - (f[v[k - 1] * stride] + double(v[k - 1]) * v[k - 1])) /
                                      (2.0 * (q - v[k - 1]));
        z[k + 1] = kInf;
    }
    if (k < 0) {
        for (int q = 0; q < n; ++q) d[q * dstride] = kInf;
        return;
    }
    int j = 0;
    for (int q = 0; q < n; ++q) {
        while (z[j + 1] < q) ++j;
        const double diff = double(q - v[j]);
        d[q * dstride] = diff * diff + f[v[j] * stride];
    }
}

inline double log_gaussian(const GaussianTerm& g, const Vec2& p) {
    const Vec2 d = p - g.mean;
    return g.log_norm - 0.5 * d.dot(g.precision * d);
}

/// Fixed summation order: max first, then terms in index order.
inline double emission_at(const GridGeometry& geo, std::size_t i, double cost,
                          std::span<const GaussianTerm> terms, double constant, std::vector<double>& scratch) {
    if (!(cost > 0.0)) return -kInf;
    const Vec2 p = geo.world_center(geo.cell(i));
    double mx = -kInf;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        scratch[k] = log_gaussian(terms[k], p) + terms[k].log_weight;
        if (scratch[k] > mx) mx = scratch[k];
    }
    if (mx == -kInf) return -kInf;
    double s = 0.0;
    for (std::size_t k = 0; k < terms.size(); ++k) s += std::exp(scratch[k] - mx);
    return std::log(cost) + constant + mx + std::log(s);
}

inline void value_at(std::span<const double> field, int width, int height, std::span<const Offset> moves,
                     std::span<const double> next, std::size_t i, double& value, std::uint8_t& policy) {
    const int col = static_cast<int>(i % static_cast<std::size_t>(width));
    const int row = static_cast<int>(i / static_cast<std::size_t>(width));
    double best = -kInf;
    std::uint8_t arg = kNoAction;
    for (std::size_t a = 0; a < moves.size(); ++a) {
        const int c = col + moves[a].dcol;
        const int r = row + moves[a].drow;
        if (c < 0 || r < 0 || c >= width || r >= height) continue;
        const std::size_t j = static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c);
        if (field[j] == -kInf) continue;
        const double cand = field[j] + next[j];
        if (cand > best) {
            best = cand;
            arg = static_cast<std::uint8_t>(a);
        }
    }
    value = best;
    policy = arg;
}

}  // namespace spnav::kernels::detail
