#pragma once

#include <cstddef>

#include "spnav/trajectory.hpp"

namespace spnav {

enum class StepCost {
    NegLogEmission,   // max finite field − field(x): the approximate-inference cost
    UnitPlusCostmap,  // 1 + weight·(1 − p(x|m)): the goal-driven baselines
};

enum class Heuristic {
    None,             // uniform-cost search
    Manhattan,        // grid distance
    ScaledManhattan,  // −log(1/|A|) × grid distance
};

struct AStarConfig {
    StepCost cost = StepCost::NegLogEmission;
    Heuristic heuristic = Heuristic::ScaledManhattan;
    double costmap_weight = 1.0;
    ActionSet actions = ActionSet::von_neumann();
};

struct AStarResult {
    Trajectory trajectory;
    double cost = 0.0;
    /// The heuristic scale was lowered to the minimum step cost to stay admissible.
    bool heuristic_capped = false;
    double heuristic_scale = 0.0;
    std::size_t expansions = 0;
};

/// Grid distance matching the move set: Manhattan for 4-connected moves,
/// Chebyshev when diagonals are allowed.
int grid_distance(Cell a, Cell b, bool diagonals);

/// A* over cells that are finite in `field` and positive in `costmap`. Stay
/// moves are ignored. Open-set ties: smaller g, then row-major cell index.
AStarResult astar_plan(Cell start, Cell goal, const CostMap& costmap, const Field& field, const AStarConfig& config);

}  // namespace spnav
