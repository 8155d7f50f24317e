#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spnav/actions.hpp"
#include "spnav/costmap.hpp"
#include "spnav/field.hpp"
#include "spnav/model.hpp"

namespace spnav {

/// states[0] is the start x0; actions[t] moves states[t] → states[t+1];
/// step_log_likelihoods[t] is the field value of states[t+1].
struct Trajectory {
    std::vector<Cell> states;
    std::vector<int> actions;
    std::vector<double> step_log_likelihoods;
    double cumulative_log_likelihood = 0.0;

    std::size_t steps() const { return actions.size(); }
    const Cell& final_state() const { return states.back(); }
    /// Number of non-stay moves.
    int path_length(const ActionSet& set) const;
};

struct PlanRequest {
    Cell start;
    int horizon = 200;
    Instruction instruction;
    ActionSet actions = ActionSet::von_neumann();
};

/// f[0] + (f[1] + (... + f[n-1])). Every planner and scorer sums trajectory
/// values in this order, which is the order the Viterbi value recursion uses.
double right_fold_sum(std::span<const double> values);

/// Builds a trajectory from a state sequence, reconstructing actions and step
/// values. Throws PlanningError(InvalidTrajectory) on a non-action move.
Trajectory trajectory_from_states(const std::vector<Cell>& states, const Field& field, const ActionSet& actions);

/// Throws PlanningError(InvalidTrajectory) unless every state is in bounds,
/// finite in the field, and each step is one declared action.
void check_trajectory(const Trajectory& traj, const Field& field, const ActionSet& actions);

struct TrajectoryScore {
    std::vector<double> per_step;  // exactly `horizon` entries
    double total = 0.0;
};

/// Per-step field values padded (final state repeated) or truncated to
/// `horizon` steps, and their right-fold sum.
TrajectoryScore score_trajectory(const Trajectory& traj, const Field& field, int horizon);
TrajectoryScore score_trajectory(const Trajectory& traj, const SpatialConceptModel& model, const CostMap& costmap,
                                 const Instruction& instruction, int horizon);

nlohmann::json trajectory_to_json(const Trajectory& traj, const GridGeometry& geometry, const ActionSet& actions);

}  // namespace spnav
