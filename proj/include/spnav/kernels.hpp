#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spnav/grid.hpp"

// Data-parallel inner loops. `serial` is the reference kept for testing; `omp`
// is the OpenMP version. Each pair shares the per-element code in
// detail/kernel_ops.hpp, so both produce bit-identical output.
namespace spnav::kernels {

/// A 2D Gaussian in the form the emission kernel consumes.
struct GaussianTerm {
    Vec2 mean;
    Mat2 precision;        // inverse covariance
    double log_norm = 0;   // -log(2π) - 0.5 log det Σ
    double log_weight = 0; // log Σ_C exp(a_C) φ_C[i]
};

/// Move offset used by the value sweep.
struct Offset {
    int dcol = 0;
    int drow = 0;
};

inline constexpr std::uint8_t kNoAction = 0xFF;

namespace serial {
/// Exact squared Euclidean distance transform (in cells²). `occupied[i]` != 0
/// marks sources; output is +inf everywhere if there are none.
void squared_edt(std::span<const std::uint8_t> occupied, int width, int height, std::span<double> out);
/// out[i] = log(cost[i]) + logsumexp_k(log N(center_i | k) + log_weight_k), −inf where cost is 0.
void emission(const GridGeometry& geometry, std::span<const double> cost,
              std::span<const GaussianTerm> terms, double constant, std::span<double> out);
/// One backward Viterbi layer:
/// value[x] = max_a field[x+a] + next[x+a] over in-bounds moves into finite cells,
/// policy[x] = first maximizing action (kNoAction if none).
void value_sweep(std::span<const double> field, int width, int height, std::span<const Offset> moves,
                 std::span<const double> next, std::span<double> value, std::span<std::uint8_t> policy);
}  // namespace serial

namespace omp {
void squared_edt(std::span<const std::uint8_t> occupied, int width, int height, std::span<double> out);
void emission(const GridGeometry& geometry, std::span<const double> cost,
              std::span<const GaussianTerm> terms, double constant, std::span<double> out);
void value_sweep(std::span<const double> field, int width, int height, std::span<const Offset> moves,
                 std::span<const double> next, std::span<double> value, std::span<std::uint8_t> policy);
}  // namespace omp

}  // namespace spnav::kernels
