#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "spnav/trajectory.hpp"

namespace spnav {

using Planner = std::function<Trajectory(const Field&, Cell, int, const ActionSet&)>;

struct OracleOptions {
    int instances = 100;
    int max_side = 6;     // grids are random in [2, max_side] per axis
    int max_horizon = 5;
    double blocked_fraction = 0.2;  // cells set to -inf
    std::uint64_t seed = 1;
};

struct OracleReport {
    int instances = 0;
    int mismatches = 0;         // score differs from brute force
    int trajectory_mismatches = 0;  // same score, different trajectory
    double max_discrepancy = 0.0;
    std::string first_failure;
};

/// Random small fields; every instance is solved by `planner` and by exhaustive
/// search, and their cumulative scores compared.
OracleReport run_oracle(const Planner& planner, const OracleOptions& options = {});

/// The DP planner under test, serial.
Planner viterbi_planner();

}  // namespace spnav
