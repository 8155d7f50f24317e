#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spnav/costmap.hpp"
#include "spnav/environment.hpp"
#include "spnav/fit.hpp"
#include "spnav/methods.hpp"

namespace spnav {

enum class FitMode { Fixed, Gibbs };

struct Scenario {
    EnvironmentSpec environment;
    std::vector<std::string> instruction;
    std::optional<Cell> start;  // sampled per trial when absent
    int horizon = 200;
    std::vector<Method> methods = all_methods();
    std::uint64_t seed = 0;
    int trials = 1;
    std::size_t candidates = 10;
    bool diagonals = false;
    bool stay = true;
    InflationParams inflation;
    double costmap_weight = 1.0;
    FitMode fit = FitMode::Fixed;
    GibbsOptions gibbs;
    Hyperparameters hyper;
};

Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario_file(const std::string& path);

struct TrialResult {
    Method method = Method::Viterbi;
    int trial = 0;
    bool success = false;
    bool nearest_success = false;
    int path_length = 0;  // non-stay moves, in cells
    std::vector<double> step_log_likelihoods;  // padded/truncated to the horizon
    double cumulative_log_likelihood = 0.0;
    std::optional<Cell> final_state;
    std::optional<int> reached_room;
    std::string failure;  // empty on a planned trajectory
    Trajectory trajectory;
};

/// One trial with everything it was built from, for dumps and tests.
struct TrialContext {
    Environment environment;
    CostMap costmap;
    SpatialConceptModel model;
    Instruction instruction;
    std::vector<std::string> words;
    Field field;
    Cell start;
    int nearest_room = -1;
};

std::uint64_t trial_seed(std::uint64_t seed, int trial);

/// Builds the environment, cost map, model, field and start of one trial.
TrialContext prepare_trial(const Scenario& scenario, int trial);

/// Runs every requested method on one trial. Planner failures are recorded,
/// never thrown.
std::vector<TrialResult> run_trial(const Scenario& scenario, const TrialContext& ctx, int trial);
std::vector<TrialResult> run_scenario(const Scenario& scenario);

/// Room whose anchor is closest to `start` by shortest path over traversable
/// cells, among rooms named by any of `words`; -1 if none is reachable.
int nearest_named_room(const CostMap& costmap, const ActionSet& actions, Cell start,
                       const std::vector<PlaceRegion>& regions, const std::vector<std::string>& words);

struct MethodMetrics {
    Method method = Method::Viterbi;
    int trials = 0;
    int successes = 0;
    int nearest_successes = 0;
    double nsr = 0.0;
    double near_nsr = 0.0;
    std::optional<double> path_length;  // mean over successful trials only
};

std::vector<MethodMetrics> aggregate(const std::vector<TrialResult>& results);
std::string metrics_csv(const std::vector<MethodMetrics>& metrics);
std::string metrics_table(const std::vector<MethodMetrics>& metrics);

/// CSV `method,t,step,cumulative` with exactly `horizon` rows per method
/// (results of one trial; failed methods are skipped).
std::string loglik_series(const std::vector<TrialResult>& results, int horizon);

nlohmann::json results_to_json(const std::vector<TrialResult>& results, const std::vector<MethodMetrics>& metrics);

}  // namespace spnav
