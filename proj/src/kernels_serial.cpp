#include "spnav/detail/kernel_ops.hpp"

#include <algorithm>

namespace spnav::kernels::serial {

void squared_edt(std::span<const std::uint8_t> occupied, int width, int height, std::span<double> out) {
    const std::ptrdiff_t w = width;
    std::vector<double> tmp(occupied.size());
    for (std::size_t i = 0; i < occupied.size(); ++i) tmp[i] = occupied[i] ? 0.0 : detail::kInf;

    std::vector<int> v(std::max(width, height));
    std::vector<double> z(std::max(width, height) + 1);
    std::vector<double> col(height);
    // columns, then rows
    for (int c = 0; c < width; ++c) {
        detail::edt_1d(tmp.data() + c, w, height, col.data(), 1, v, z);
        for (int r = 0; r < height; ++r) tmp[r * w + c] = col[r];
    }
    for (int r = 0; r < height; ++r) {
        detail::edt_1d(tmp.data() + r * w, 1, width, out.data() + r * w, 1, v, z);
    }
}

void emission(const GridGeometry& geometry, std::span<const double> cost, std::span<const GaussianTerm> terms,
              double constant, std::span<double> out) {
    std::vector<double> scratch(terms.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = detail::emission_at(geometry, i, cost[i], terms, constant, scratch);
    }
}

void value_sweep(std::span<const double> field, int width, int height, std::span<const Offset> moves,
                 std::span<const double> next, std::span<double> value, std::span<std::uint8_t> policy) {
    for (std::size_t i = 0; i < field.size(); ++i) {
        detail::value_at(field, width, height, moves, next, i, value[i], policy[i]);
    }
}

}  // namespace spnav::kernels::serial
