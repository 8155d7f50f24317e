#include "spnav/detail/kernel_ops.hpp"

#include <algorithm>

namespace spnav::kernels::omp {

void squared_edt(std::span<const std::uint8_t> occupied, int width, int height, std::span<double> out) {
    const std::ptrdiff_t w = width;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(occupied.size());
    std::vector<double> tmp(occupied.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) tmp[i] = occupied[i] ? 0.0 : detail::kInf;

#pragma omp parallel
    {
        std::vector<int> v(std::max(width, height));
        std::vector<double> z(std::max(width, height) + 1);
        std::vector<double> col(height);
#pragma omp for schedule(static)
        for (int c = 0; c < width; ++c) {
            detail::edt_1d(tmp.data() + c, w, height, col.data(), 1, v, z);
            for (int r = 0; r < height; ++r) tmp[r * w + c] = col[r];
        }
#pragma omp for schedule(static)
        for (int r = 0; r < height; ++r) {
            detail::edt_1d(tmp.data() + r * w, 1, width, out.data() + r * w, 1, v, z);
        }
    }
}

void emission(const GridGeometry& geometry, std::span<const double> cost, std::span<const GaussianTerm> terms,
              double constant, std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel
    {
        std::vector<double> scratch(terms.size());
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            out[i] = detail::emission_at(geometry, static_cast<std::size_t>(i), cost[i], terms, constant, scratch);
        }
    }
}

void value_sweep(std::span<const double> field, int width, int height, std::span<const Offset> moves,
                 std::span<const double> next, std::span<double> value, std::span<std::uint8_t> policy) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(field.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        detail::value_at(field, width, height, moves, next, static_cast<std::size_t>(i), value[i], policy[i]);
    }
}

}  // namespace spnav::kernels::omp
