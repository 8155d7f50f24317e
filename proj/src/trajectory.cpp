#include "spnav/trajectory.hpp"

#include <cmath>

#include "spnav/emission.hpp"
#include "spnav/error.hpp"

namespace spnav {

int Trajectory::path_length(const ActionSet& set) const {
    int n = 0;
    for (int a : actions) {
        if (!set[static_cast<std::size_t>(a)].is_stay()) ++n;
    }
    return n;
}

double right_fold_sum(std::span<const double> values) {
    double acc = 0.0;
    for (std::size_t i = values.size(); i-- > 0;) acc = values[i] + acc;
    return acc;
}

namespace {

void check_state(const Cell& c, const Field& field, std::size_t t) {
    if (!field.geometry.contains(c)) {
        throw PlanningError(PlanFailure::InvalidTrajectory, "state " + std::to_string(t) + " leaves the grid");
    }
    if (!std::isfinite(field.at(c))) {
        throw PlanningError(PlanFailure::InvalidTrajectory, "state " + std::to_string(t) + " enters a zero-probability cell");
    }
}

}  // namespace

Trajectory trajectory_from_states(const std::vector<Cell>& states, const Field& field, const ActionSet& actions) {
    if (states.empty()) throw PlanningError(PlanFailure::InvalidTrajectory, "empty state sequence");
    Trajectory tr;
    tr.states = states;
    for (std::size_t t = 0; t < states.size(); ++t) check_state(states[t], field, t);
    for (std::size_t t = 1; t < states.size(); ++t) {
        const auto a = actions.find(states[t].col - states[t - 1].col, states[t].row - states[t - 1].row);
        if (!a) throw PlanningError(PlanFailure::InvalidTrajectory, "step " + std::to_string(t) + " is not a declared action");
        tr.actions.push_back(static_cast<int>(*a));
        tr.step_log_likelihoods.push_back(field.at(states[t]));
    }
    tr.cumulative_log_likelihood = right_fold_sum(tr.step_log_likelihoods);
    return tr;
}

void check_trajectory(const Trajectory& traj, const Field& field, const ActionSet& actions) {
    if (traj.states.size() != traj.actions.size() + 1) {
        throw PlanningError(PlanFailure::InvalidTrajectory, "states/actions length mismatch");
    }
    for (std::size_t t = 0; t < traj.states.size(); ++t) check_state(traj.states[t], field, t);
    for (std::size_t t = 0; t < traj.actions.size(); ++t) {
        const int a = traj.actions[t];
        if (a < 0 || static_cast<std::size_t>(a) >= actions.size()) {
            throw PlanningError(PlanFailure::InvalidTrajectory, "unknown action index");
        }
        if (!(ActionSet::apply(traj.states[t], actions[static_cast<std::size_t>(a)]) == traj.states[t + 1])) {
            throw PlanningError(PlanFailure::InvalidTrajectory, "step " + std::to_string(t + 1) + " does not follow its action");
        }
    }
}

TrajectoryScore score_trajectory(const Trajectory& traj, const Field& field, int horizon) {
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    if (traj.states.empty()) throw PlanningError(PlanFailure::InvalidTrajectory, "empty trajectory");
    for (std::size_t t = 0; t < traj.states.size(); ++t) check_state(traj.states[t], field, t);
    TrajectoryScore s;
    s.per_step.reserve(static_cast<std::size_t>(horizon));
    const std::size_t moves = traj.states.size() - 1;
    for (std::size_t t = 1; t <= static_cast<std::size_t>(horizon); ++t) {
        const Cell& c = t <= moves ? traj.states[t] : traj.states.back();
        s.per_step.push_back(field.at(c));
    }
    s.total = right_fold_sum(s.per_step);
    return s;
}

TrajectoryScore score_trajectory(const Trajectory& traj, const SpatialConceptModel& model, const CostMap& costmap,
                                 const Instruction& instruction, int horizon) {
    return score_trajectory(traj, emission_log_field(model, costmap, instruction), horizon);
}

nlohmann::json trajectory_to_json(const Trajectory& traj, const GridGeometry& geometry, const ActionSet& actions) {
    nlohmann::json j;
    j["states"] = nlohmann::json::array();
    for (const auto& c : traj.states) {
        const Vec2 w = geometry.world_center(c);
        j["states"].push_back({{"col", c.col}, {"row", c.row}, {"x", w.x()}, {"y", w.y()}});
    }
    j["actions"] = nlohmann::json::array();
    for (int a : traj.actions) j["actions"].push_back(actions[static_cast<std::size_t>(a)].name);
    j["step_log_likelihoods"] = traj.step_log_likelihoods;
    j["cumulative_log_likelihood"] = traj.cumulative_log_likelihood;
    j["path_length"] = traj.path_length(actions);
    return j;
}

}  // namespace spnav
