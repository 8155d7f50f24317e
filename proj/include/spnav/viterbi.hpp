#pragma once

#include "spnav/exec.hpp"
#include "spnav/trajectory.hpp"

namespace spnav {

/// Exact maximizer of Σ_{t=1..T} field(x_t) over action sequences from `start`
/// that never enter a −inf cell. Ties go to the lexicographically smallest
/// action sequence in declared order.
Trajectory viterbi_plan(const Field& field, Cell start, int horizon, const ActionSet& actions,
                        Exec exec = Exec::Parallel);
Trajectory viterbi_plan(const PlanRequest& request, const SpatialConceptModel& model, const CostMap& costmap,
                        Exec exec = Exec::Parallel);

inline constexpr double kBruteForceBudget = 1e7;

/// Exhaustive enumeration with the same objective and tie-break. Refuses
/// instances with |A|^T above the budget.
Trajectory brute_force_plan(const Field& field, Cell start, int horizon, const ActionSet& actions,
                            double budget = kBruteForceBudget);
Trajectory brute_force_plan(const PlanRequest& request, const SpatialConceptModel& model, const CostMap& costmap,
                            double budget = kBruteForceBudget);

}  // namespace spnav
