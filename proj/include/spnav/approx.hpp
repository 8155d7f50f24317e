#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spnav/astar.hpp"
#include "spnav/exec.hpp"

namespace spnav {

struct GoalCandidate {
    Cell cell;
    double score = 0.0;             // field value at `cell`
    std::size_t position_index = 0; // source position distribution
    bool relocated = false;         // mean fell on a zero-probability cell
};

/// One candidate per position distribution at the cell containing its mean,
/// relocated to the nearest finite cell when needed, ranked by score
/// (descending, stable); the top min(J, K) are returned.
std::vector<GoalCandidate> goal_candidates(const SpatialConceptModel& model, const Field& field, std::size_t J);

struct PlanOutcome {
    Trajectory trajectory;
    Cell goal;
    nlohmann::json provenance;
};

/// A* (negative log emission) to each candidate; keeps the minimum-cost path.
PlanOutcome approx_plan(const PlanRequest& request, const SpatialConceptModel& model, const CostMap& costmap,
                        const Field& field, std::size_t J, Exec exec = Exec::Parallel);

/// Goal = position mean with the highest semantic likelihood p(S, μ_k | Θ), no
/// relocation. Throws PlanningError(GoalInfeasible) when that mean is on a
/// zero-probability cell or off the map.
PlanOutcome baseline_spatial_concept(const PlanRequest& request, const SpatialConceptModel& model,
                                     const CostMap& costmap, const Field& field, double costmap_weight = 1.0);

/// Goal = position of a seeded uniform draw among training records whose words
/// include any of `words`.
PlanOutcome baseline_database(const PlanRequest& request, const TrainingSet& training,
                              const std::vector<std::string>& words, const CostMap& costmap, const Field& field,
                              std::uint64_t seed, double costmap_weight = 1.0);

/// Goal = position of a seeded uniform draw among all training records.
PlanOutcome baseline_random(const PlanRequest& request, const TrainingSet& training, const CostMap& costmap,
                            const Field& field, std::uint64_t seed, double costmap_weight = 1.0);

}  // namespace spnav
