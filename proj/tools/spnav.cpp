// spnav: fit spatial-concept models, compute emission fields, plan, evaluate,
// and run the Viterbi-vs-brute-force oracle.
//
// stdout carries only deterministic key=value / table output; timings go to stderr.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spnav/emission.hpp"
#include "spnav/environment.hpp"
#include "spnav/error.hpp"
#include "spnav/evaluation.hpp"
#include "spnav/exec.hpp"
#include "spnav/field.hpp"
#include "spnav/fit.hpp"
#include "spnav/map_io.hpp"
#include "spnav/methods.hpp"
#include "spnav/model_io.hpp"
#include "spnav/oracle.hpp"
#include "spnav/training_io.hpp"
#include "spnav/viterbi.hpp"

namespace fs = std::filesystem;
using namespace spnav;

namespace {

enum Exit { kOk = 0, kVerification = 1, kValidation = 2, kInstruction = 3, kPlanning = 4 };

struct Config {
    std::string map;
    std::string map_meta;
    std::string model;
    std::string train;
    std::string scenario;
    std::vector<std::string> say;
    std::string method = "viterbi";
    std::optional<int> horizon;
    std::optional<std::size_t> candidates;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::optional<std::string> actions;
    std::optional<bool> stay;
    double robot_radius = InflationParams{}.robot_radius;
    double inflation_radius = InflationParams{}.inflation_radius;
    std::vector<int> start;
    bool dump_field = false;

    // fit
    std::string fitter = "auto";
    GibbsOptions gibbs;

    // oracle
    OracleOptions oracle;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw ValidationError(std::string(flag) + " is required");
}

fs::path out_dir(const Config& c) {
    fs::path dir(c.out);
    fs::create_directories(dir);
    return dir;
}

ActionSet action_set(const Config& c) {
    const std::string a = c.actions.value_or("vonneumann");
    return ActionSet::make(a == "moore", c.stay.value_or(true));
}

CostMap load_costmap(const Config& c) {
    require(c.map_meta, "--map-meta");
    const OccupancyGrid grid = load_map_file(c.map_meta, c.map);
    return build_costmap(grid, InflationParams{c.robot_radius, c.inflation_radius});
}

std::vector<std::string> instruction_words(const Config& c) {
    if (c.say.empty()) throw InstructionError("--say needs at least one word");
    return strip_stop_words(c.say, default_stop_words());
}

Instruction parse_say(const Config& c, const SpatialConceptModel& model, std::vector<std::string>* in_vocab) {
    const auto words = instruction_words(c);
    auto parsed = make_instruction(model.vocabulary, words);
    for (const auto& w : parsed.ignored) std::cerr << "warning: ignoring out-of-vocabulary word '" << w << "'\n";
    if (in_vocab) {
        for (const auto& w : words) {
            if (model.vocabulary.find(w)) in_vocab->push_back(w);
        }
    }
    return parsed.instruction;
}

int cmd_fit(const Config& c) {
    require(c.train, "--train");
    const TrainingSet data = load_training_file(c.train);
    std::string fitter = c.fitter;
    if (fitter == "auto") {
        const bool labelled = !data.empty() && std::all_of(data.begin(), data.end(), [](const TrainingRecord& r) {
            return r.concept_id && r.position_id;
        });
        fitter = labelled ? "fixed" : "gibbs";
    }
    Stopwatch sw;
    FitResult fit;
    if (fitter == "fixed") {
        fit = fit_fixed_assignments(data, Hyperparameters{});
    } else {
        GibbsOptions opt = c.gibbs;
        opt.seed = c.seed.value_or(0);
        fit = fit_gibbs(data, Hyperparameters{}, opt);
    }
    std::cerr << "fit: " << fmt(sw.seconds()) << " s\n";

    const fs::path dir = out_dir(c);
    write_file(dir / "model.json", save_model(fit.model));
    nlohmann::json report{{"fitter", fitter},
                          {"records", data.size()},
                          {"records_per_concept", fit.report.records_per_concept},
                          {"records_per_position", fit.report.records_per_position},
                          {"data_log_likelihood", fit.report.data_log_likelihood},
                          {"warnings", fit.report.warnings}};
    write_file(dir / "fit_report.json", report.dump(2) + "\n");

    std::cout << "fitter=" << fitter << "\n"
              << "records=" << data.size() << "\n"
              << "concepts=" << fit.model.concepts.size() << "\n"
              << "positions=" << fit.model.positions.size() << "\n"
              << "vocabulary=" << fit.model.vocabulary.size() << "\n"
              << "data_log_likelihood=" << fmt(fit.report.data_log_likelihood) << "\n";
    for (const auto& w : fit.report.warnings) std::cerr << "warning: " << w << "\n";
    return kOk;
}

int cmd_field(const Config& c) {
    require(c.model, "--model");
    const SpatialConceptModel model = load_model_file(c.model);
    const CostMap costmap = load_costmap(c);
    const Instruction instr = parse_say(c, model, nullptr);
    Stopwatch sw;
    const Field field = emission_log_field(model, costmap, instr);
    std::cerr << "field: " << fmt(sw.seconds()) << " s\n";

    const fs::path dir = out_dir(c);
    write_file(dir / "field.csv", export_field(field, FieldFormat::CSV));
    write_file(dir / "field.pgm", export_field(field, FieldFormat::PGM));

    std::size_t best = 0;
    std::size_t finite = 0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        if (!std::isfinite(field.values[i])) continue;
        ++finite;
        if (!std::isfinite(field.values[best]) || field.values[i] > field.values[best]) best = i;
    }
    std::cout << "width=" << field.geometry.width << "\n"
              << "height=" << field.geometry.height << "\n"
              << "finite_cells=" << finite << "\n";
    if (finite > 0) {
        const Cell b = field.geometry.cell(best);
        std::cout << "max=" << fmt(field.values[best]) << "\n"
                  << "argmax=" << b.col << "," << b.row << "\n";
    }
    return kOk;
}

int cmd_plan(const Config& c) {
    require(c.model, "--model");
    if (c.start.size() != 2) throw ValidationError("--start COL ROW is required");
    const SpatialConceptModel model = load_model_file(c.model);
    const CostMap costmap = load_costmap(c);
    std::vector<std::string> words;
    const Instruction instr = parse_say(c, model, &words);
    const Method method = parse_method(c.method);

    std::optional<TrainingSet> training;
    if (!c.train.empty()) training = load_training_file(c.train);

    PlanRequest request;
    request.start = Cell{c.start[0], c.start[1]};
    request.horizon = c.horizon.value_or(200);
    request.instruction = instr;
    request.actions = action_set(c);
    if (request.horizon < 1) throw ValidationError("--horizon must be >= 1");

    Stopwatch field_sw;
    const Field field = emission_log_field(model, costmap, instr);
    const double field_s = field_sw.seconds();

    MethodInputs in;
    in.model = &model;
    in.costmap = &costmap;
    in.field = &field;
    in.training = training ? &*training : nullptr;
    in.words = words;
    in.candidates = c.candidates.value_or(10);
    in.seed = c.seed.value_or(0);

    Stopwatch sw;
    PlanOutcome plan = run_method(method, request, in);
    std::cerr << "field: " << fmt(field_s) << " s, plan: " << fmt(sw.seconds()) << " s\n";

    const auto score = score_trajectory(plan.trajectory, field, request.horizon);
    nlohmann::json j = trajectory_to_json(plan.trajectory, costmap.geometry(), request.actions);
    j["method"] = method_name(method);
    j["horizon"] = request.horizon;
    j["score"] = score.total;
    j["goal"] = {plan.goal.col, plan.goal.row};
    j["provenance"] = plan.provenance;

    const fs::path dir = out_dir(c);
    write_file(dir / "trajectory.json", j.dump(2) + "\n");
    if (c.dump_field) {
        write_file(dir / "field.csv", export_field(field, FieldFormat::CSV));
        write_file(dir / "field.pgm", export_field(field, FieldFormat::PGM));
    }

    const Cell f = plan.trajectory.final_state();
    std::cout << "method=" << method_name(method) << "\n"
              << "steps=" << plan.trajectory.steps() << "\n"
              << "cumulative_log_likelihood=" << fmt(plan.trajectory.cumulative_log_likelihood) << "\n"
              << "score=" << fmt(score.total) << "\n"
              << "path_length=" << plan.trajectory.path_length(request.actions) << "\n"
              << "final=" << f.col << "," << f.row << "\n";
    return kOk;
}

int cmd_eval(const Config& c) {
    require(c.scenario, "--scenario");
    Scenario sc = load_scenario_file(c.scenario);
    if (c.seed) sc.seed = *c.seed;
    if (c.horizon) sc.horizon = *c.horizon;
    if (c.candidates) sc.candidates = *c.candidates;
    if (c.actions) sc.diagonals = *c.actions == "moore";
    if (c.stay) sc.stay = *c.stay;

    Stopwatch sw;
    const auto results = run_scenario(sc);
    std::cerr << "eval: " << sc.trials << " trials in " << fmt(sw.seconds()) << " s\n";
    const auto metrics = aggregate(results);

    const fs::path dir = out_dir(c);
    write_file(dir / "metrics.csv", metrics_csv(metrics));
    write_file(dir / "metrics.txt", metrics_table(metrics));
    write_file(dir / "results.json", results_to_json(results, metrics).dump(2) + "\n");

    std::vector<TrialResult> first;
    for (const auto& r : results) {
        if (r.trial == 0) first.push_back(r);
    }
    write_file(dir / "loglik_trial0.csv", loglik_series(first, sc.horizon));

    std::cout << metrics_table(metrics);
    return kOk;
}

int cmd_oracle(const Config& c) {
    OracleOptions opt = c.oracle;
    if (c.seed) opt.seed = *c.seed;
    if (opt.instances < 1 || opt.max_side < 2 || opt.max_horizon < 1) {
        throw ValidationError("oracle needs instances >= 1, max-side >= 2, max-horizon >= 1");
    }
    const double sequences = std::pow(static_cast<double>(ActionSet::von_neumann().size()), opt.max_horizon);
    if (sequences > kBruteForceBudget) {
        throw ValidationError("max-horizon " + std::to_string(opt.max_horizon) + " exceeds the brute-force budget of " +
                              std::to_string(static_cast<long long>(kBruteForceBudget)) + " sequences");
    }
    Stopwatch sw;
    const OracleReport rep = run_oracle(viterbi_planner(), opt);
    std::cerr << "oracle: " << fmt(sw.seconds()) << " s\n";
    const bool pass = rep.mismatches == 0 && rep.max_discrepancy <= 1e-9;
    std::cout << "instances=" << rep.instances << "\n"
              << "mismatches=" << rep.mismatches << "\n"
              << "tie_trajectory_mismatches=" << rep.trajectory_mismatches << "\n"
              << "max_discrepancy=" << fmt(rep.max_discrepancy) << "\n"
              << "result=" << (pass ? "PASS" : "FAIL") << "\n";
    if (!rep.first_failure.empty()) std::cerr << "first failure: " << rep.first_failure << "\n";
    return pass ? kOk : kVerification;
}

int cmd_generate(const Config& c) {
    require(c.scenario, "--scenario");
    const Scenario sc = load_scenario_file(c.scenario);
    const std::uint64_t seed = trial_seed(c.seed.value_or(sc.seed), 0);
    const Environment env = generate_environment(sc.environment, seed);
    const fs::path dir = out_dir(c);
    save_map_files(env.grid, dir / "map.yaml");
    write_file(dir / "training.csv", format_training_csv(env.training));
    write_file(dir / "regions.json", regions_to_json(env.regions).dump(2) + "\n");
    std::cout << "width=" << env.grid.geometry().width << "\n"
              << "height=" << env.grid.geometry().height << "\n"
              << "regions=" << env.regions.size() << "\n"
              << "records=" << env.training.size() << "\n";
    return kOk;
}

void add_map_flags(CLI::App* cmd, Config& c) {
    cmd->add_option("--map-meta", c.map_meta, "Map metadata YAML");
    cmd->add_option("--map", c.map, "Map image (PGM); defaults to the image named in the metadata");
    cmd->add_option("--robot-radius", c.robot_radius, "Robot radius in meters")->check(CLI::NonNegativeNumber);
    cmd->add_option("--inflation-radius", c.inflation_radius, "Cost-map inflation radius in meters")
        ->check(CLI::NonNegativeNumber);
}

void add_plan_flags(CLI::App* cmd, Config& c) {
    cmd->add_option("--horizon", c.horizon, "Planning horizon T");
    cmd->add_option("--candidates", c.candidates, "Goal candidates J for the A* method");
    cmd->add_option("--actions", c.actions, "Action set")->check(CLI::IsMember({"vonneumann", "moore"}));
    cmd->add_flag("--stay,!--no-stay", c.stay, "Include the stay action");
}

}  // namespace

int main(int argc, char** argv) {
    configure_threads_from_env();
    Config c;
    CLI::App app{"Spatial-concept navigation planner"};
    app.require_subcommand(1);
    app.add_option("--seed", c.seed, "Random seed");
    app.add_option("--out", c.out, "Output directory");

    auto* fit = app.add_subcommand("fit", "Fit a spatial-concept model from training data");
    fit->add_option("--train", c.train, "Training data (CSV or JSON)");
    fit->add_option("--fitter", c.fitter, "fixed, gibbs, or auto")->check(CLI::IsMember({"auto", "fixed", "gibbs"}));
    fit->add_option("--concepts", c.gibbs.n_concepts, "Gibbs: number of concepts");
    fit->add_option("--positions", c.gibbs.n_positions, "Gibbs: number of position distributions");
    fit->add_option("--iterations", c.gibbs.iterations, "Gibbs: sweeps");

    auto* field = app.add_subcommand("field", "Dump the emission log-field of an instruction");
    field->add_option("--model", c.model, "Model JSON");
    field->add_option("--say", c.say, "Instruction words");
    add_map_flags(field, c);

    auto* plan = app.add_subcommand("plan", "Plan a trajectory");
    plan->add_option("--model", c.model, "Model JSON");
    plan->add_option("--say", c.say, "Instruction words");
    plan->add_option("--method", c.method, "viterbi, astar, sc, db, random")
        ->check(CLI::IsMember({"viterbi", "astar", "sc", "db", "random"}));
    plan->add_option("--start", c.start, "Start cell COL ROW")->expected(2);
    plan->add_option("--train", c.train, "Training data, needed by db and random");
    plan->add_flag("--dump-field", c.dump_field, "Also write the emission field");
    add_map_flags(plan, c);
    add_plan_flags(plan, c);

    auto* eval = app.add_subcommand("eval", "Run a scenario and report NSR, Near-NSR and PL");
    eval->add_option("--scenario", c.scenario, "Scenario JSON");
    add_plan_flags(eval, c);

    auto* oracle = app.add_subcommand("oracle", "Check the exact planner against brute force");
    oracle->add_option("--instances", c.oracle.instances, "Random instances");
    oracle->add_option("--max-side", c.oracle.max_side, "Largest grid side");
    oracle->add_option("--max-horizon", c.oracle.max_horizon, "Largest horizon");

    auto* gen = app.add_subcommand("generate", "Write the map, training data and regions of a scenario");
    gen->add_option("--scenario", c.scenario, "Scenario JSON");

    for (auto* sub : {fit, field, plan, eval, oracle, gen}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*fit) return cmd_fit(c);
        if (*field) return cmd_field(c);
        if (*plan) return cmd_plan(c);
        if (*eval) return cmd_eval(c);
        if (*oracle) return cmd_oracle(c);
        if (*gen) return cmd_generate(c);
    } catch (const InstructionError& e) {
        std::cerr << "instruction error: " << e.what() << "\n";
        return kInstruction;
    } catch (const PlanningError& e) {
        std::cerr << "planning failed (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kPlanning;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kValidation;
}
