#include "spnav/viterbi.hpp"

#include <cmath>
#include <limits>

#include "spnav/emission.hpp"
#include "spnav/error.hpp"
#include "spnav/kernels.hpp"

namespace spnav {

namespace {

void check_start(const Field& field, Cell start, int horizon) {
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    if (field.values.size() != field.geometry.size()) throw ValidationError("field size does not match geometry");
    if (!field.geometry.contains(start)) throw PlanningError(PlanFailure::StartInvalid, "start cell is outside the map");
    if (!std::isfinite(field.at(start))) {
        throw PlanningError(PlanFailure::StartInvalid, "start cell has zero probability (obstacle or unknown)");
    }
}

}  // namespace

Trajectory viterbi_plan(const Field& field, Cell start, int horizon, const ActionSet& actions, Exec exec) {
    check_start(field, start, horizon);
    const auto& geo = field.geometry;
    const std::size_t n = geo.size();
    const auto moves = actions.offsets();

    // Backward value recursion V_t(x) = max_a field(x+a) + V_{t+1}(x+a), V_T = 0.
    // policy layer t holds the first maximizing action at time t.
    std::vector<std::uint8_t> policy(static_cast<std::size_t>(horizon) * n);
    std::vector<double> next(n, 0.0);
    std::vector<double> value(n);
    for (int t = horizon - 1; t >= 0; --t) {
        std::span<std::uint8_t> layer(policy.data() + static_cast<std::size_t>(t) * n, n);
        if (exec == Exec::Serial) {
            kernels::serial::value_sweep(field.values, geo.width, geo.height, moves, next, value, layer);
        } else {
            kernels::omp::value_sweep(field.values, geo.width, geo.height, moves, next, value, layer);
        }
        next.swap(value);
    }
    if (next[geo.index(start)] == -std::numeric_limits<double>::infinity()) {
        throw PlanningError(PlanFailure::Infeasible, "no trajectory of the requested horizon stays on finite cells");
    }

    Trajectory tr;
    tr.states.reserve(static_cast<std::size_t>(horizon) + 1);
    tr.states.push_back(start);
    Cell x = start;
    for (int t = 0; t < horizon; ++t) {
        const std::uint8_t a = policy[static_cast<std::size_t>(t) * n + geo.index(x)];
        x = ActionSet::apply(x, actions[a]);
        tr.states.push_back(x);
        tr.actions.push_back(a);
        tr.step_log_likelihoods.push_back(field.at(x));
    }
    tr.cumulative_log_likelihood = right_fold_sum(tr.step_log_likelihoods);
    return tr;
}

Trajectory viterbi_plan(const PlanRequest& request, const SpatialConceptModel& model, const CostMap& costmap,
                        Exec exec) {
    const Field field = emission_log_field(model, costmap, request.instruction, exec);
    return viterbi_plan(field, request.start, request.horizon, request.actions, exec);
}

namespace {

struct Enumerator {
    const Field& field;
    const ActionSet& actions;
    int horizon;
    std::vector<int> path;
    std::vector<Cell> cells;
    std::vector<double> steps;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> best_path;
    std::vector<Cell> best_cells;

    void run(int t, Cell x) {
        if (t == horizon) {
            const double total = right_fold_sum(steps);
            if (total > best) {
                best = total;
                best_path = path;
                best_cells = cells;
            }
            return;
        }
        for (std::size_t a = 0; a < actions.size(); ++a) {
            const Cell y = ActionSet::apply(x, actions[a]);
            if (!field.geometry.contains(y) || !std::isfinite(field.at(y))) continue;
            path.push_back(static_cast<int>(a));
            cells.push_back(y);
            steps.push_back(field.at(y));
            run(t + 1, y);
            path.pop_back();
            cells.pop_back();
            steps.pop_back();
        }
    }
};

}  // namespace

Trajectory brute_force_plan(const Field& field, Cell start, int horizon, const ActionSet& actions, double budget) {
    check_start(field, start, horizon);
    if (std::pow(static_cast<double>(actions.size()), horizon) > budget) {
        throw PlanningError(PlanFailure::BudgetExceeded, "brute-force enumeration exceeds the budget of " +
                                                             std::to_string(static_cast<long long>(budget)) + " sequences");
    }
    Enumerator e{field, actions, horizon, {}, {}, {}, -std::numeric_limits<double>::infinity(), {}, {}};
    e.run(0, start);
    if (e.best_path.empty()) {
        throw PlanningError(PlanFailure::Infeasible, "no trajectory of the requested horizon stays on finite cells");
    }
    Trajectory tr;
    tr.states.push_back(start);
    tr.states.insert(tr.states.end(), e.best_cells.begin(), e.best_cells.end());
    tr.actions = e.best_path;
    for (std::size_t t = 1; t < tr.states.size(); ++t) tr.step_log_likelihoods.push_back(field.at(tr.states[t]));
    tr.cumulative_log_likelihood = right_fold_sum(tr.step_log_likelihoods);
    return tr;
}

Trajectory brute_force_plan(const PlanRequest& request, const SpatialConceptModel& model, const CostMap& costmap,
                            double budget) {
    const Field field = emission_log_field(model, costmap, request.instruction);
    return brute_force_plan(field, request.start, request.horizon, request.actions, budget);
}

}  // namespace spnav
