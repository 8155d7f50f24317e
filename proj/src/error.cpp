#include "spnav/error.hpp"

namespace spnav {

const char* to_string(PlanFailure f) noexcept {
    switch (f) {
        case PlanFailure::Infeasible: return "infeasible";
        case PlanFailure::StartInvalid: return "start-invalid";
        case PlanFailure::GoalInfeasible: return "goal-infeasible";
        case PlanFailure::NoPath: return "no-path";
        case PlanFailure::BudgetExceeded: return "budget-exceeded";
        case PlanFailure::InvalidTrajectory: return "invalid-trajectory";
    }
    return "unknown";
}

}  // namespace spnav
