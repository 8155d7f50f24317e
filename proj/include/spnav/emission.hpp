#pragma once

#include "spnav/costmap.hpp"
#include "spnav/exec.hpp"
#include "spnav/field.hpp"
#include "spnav/model.hpp"

namespace spnav {

/// log Mult(S | W_l) without the multinomial coefficient.
double word_likelihood(const SpatialConceptModel& model, const Instruction& instruction, std::size_t concept_index);

double log_gaussian_density(const PositionDistribution& dist, const Vec2& point);

/// Per-cell log p(x|m) + log Σ_C Mult(S|W_C) π_C Σ_i N(x|μ_i,Σ_i) φ_C[i], evaluated
/// at cell centers; −inf where the cost map is 0.
Field emission_log_field(const SpatialConceptModel& model, const CostMap& costmap, const Instruction& instruction,
                         Exec exec = Exec::Parallel);

/// The same field read as a reward r(x) = log p(y | x, Θ).
Field reward_field(const SpatialConceptModel& model, const CostMap& costmap, const Instruction& instruction,
                   Exec exec = Exec::Parallel);

/// Emission without the cost-map factor: log p(S, x | Θ) on every cell.
Field semantic_log_field(const SpatialConceptModel& model, const GridGeometry& geometry,
                         const Instruction& instruction, Exec exec = Exec::Parallel);

}  // namespace spnav
