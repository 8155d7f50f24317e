#pragma once

#include <stdexcept>
#include <string>

namespace spnav {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or byte stream. `field()` names the offending field.
class ParseError : public Error {
public:
    ParseError(std::string field, const std::string& what)
        : Error("parse error in '" + field + "': " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A value violates a documented invariant or precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The instruction has no usable (in-vocabulary) words.
class InstructionError : public Error {
public:
    using Error::Error;
};

enum class PlanFailure {
    Infeasible,        // no finite-emission cell reachable
    StartInvalid,      // start off-grid or on a zero-cost cell
    GoalInfeasible,    // goal off-grid or on a zero-cost cell
    NoPath,            // goal outside the start's connected component
    BudgetExceeded,    // brute-force enumeration too large
    InvalidTrajectory  // trajectory leaves the grid / enters an obstacle
};

const char* to_string(PlanFailure f) noexcept;

class PlanningError : public Error {
public:
    PlanningError(PlanFailure kind, const std::string& what)
        : Error(what), kind_(kind) {}
    PlanFailure kind() const noexcept { return kind_; }

private:
    PlanFailure kind_;
};

}  // namespace spnav
