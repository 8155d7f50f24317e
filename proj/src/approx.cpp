#include "spnav/approx.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>

#include "spnav/emission.hpp"
#include "spnav/error.hpp"

namespace spnav {

namespace {

nlohmann::json cell_json(Cell c) { return {c.col, c.row}; }

std::optional<Cell> nearest_finite_cell(const Field& field, const Vec2& point) {
    const auto& geo = field.geometry;
    std::optional<Cell> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (!std::isfinite(field[i])) continue;
        const Cell c = geo.cell(i);
        const double d = (geo.world_center(c) - point).squaredNorm();
        if (d < best_d) {  // strict: row-major order wins ties
            best_d = d;
            best = c;
        }
    }
    return best;
}

AStarConfig baseline_config(const ActionSet& actions, double weight) {
    return {StepCost::UnitPlusCostmap, Heuristic::Manhattan, weight, actions};
}

PlanOutcome plan_to_goal(const PlanRequest& request, const CostMap& costmap, const Field& field, Cell goal,
                         double weight, nlohmann::json provenance) {
    auto res = astar_plan(request.start, goal, costmap, field, baseline_config(request.actions, weight));
    provenance["astar_cost"] = res.cost;
    provenance["goal"] = cell_json(goal);
    return {std::move(res.trajectory), goal, std::move(provenance)};
}

Cell goal_cell_or_throw(const CostMap& costmap, const Vec2& position, const std::string& what) {
    const auto cell = costmap.geometry().locate(position);
    if (!cell) throw PlanningError(PlanFailure::GoalInfeasible, what + " lies outside the map");
    if (!(costmap.at(*cell) > 0.0)) {
        throw PlanningError(PlanFailure::GoalInfeasible, what + " lies on an obstacle or unknown cell");
    }
    return *cell;
}

}  // namespace

std::vector<GoalCandidate> goal_candidates(const SpatialConceptModel& model, const Field& field, std::size_t J) {
    if (J < 1) throw ValidationError("number of candidates J must be >= 1");
    std::vector<GoalCandidate> out;
    for (std::size_t k = 0; k < model.positions.size(); ++k) {
        const Vec2& mu = model.positions[k].mean;
        GoalCandidate cand;
        cand.position_index = k;
        const auto cell = field.geometry.locate(mu);
        if (cell && std::isfinite(field.at(*cell))) {
            cand.cell = *cell;
        } else {
            const auto near = nearest_finite_cell(field, mu);
            if (!near) throw PlanningError(PlanFailure::Infeasible, "no cell with finite emission on the map");
            cand.cell = *near;
            cand.relocated = true;
        }
        cand.score = field.at(cand.cell);
        out.push_back(cand);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const GoalCandidate& a, const GoalCandidate& b) { return a.score > b.score; });
    if (out.size() > J) out.resize(J);
    return out;
}

PlanOutcome approx_plan(const PlanRequest& request, const SpatialConceptModel& model, const CostMap& costmap,
                        const Field& field, std::size_t J, Exec exec) {
    const auto candidates = goal_candidates(model, field, J);
    const AStarConfig config{StepCost::NegLogEmission, Heuristic::ScaledManhattan, 1.0, request.actions};
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(candidates.size());
    std::vector<std::optional<AStarResult>> results(candidates.size());
    std::vector<std::string> failures(candidates.size());
    std::vector<std::exception_ptr> errors(candidates.size());

    auto search = [&](std::ptrdiff_t j) {
        try {
            results[static_cast<std::size_t>(j)] = astar_plan(request.start, candidates[static_cast<std::size_t>(j)].cell,
                                                              costmap, field, config);
        } catch (const PlanningError& e) {
            failures[static_cast<std::size_t>(j)] = to_string(e.kind());
        } catch (...) {
            errors[static_cast<std::size_t>(j)] = std::current_exception();
        }
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t j = 0; j < n; ++j) search(j);
    } else {
        for (std::ptrdiff_t j = 0; j < n; ++j) search(j);
    }

    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::optional<std::size_t> best;
    nlohmann::json cands = nlohmann::json::array();
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        const auto& c = candidates[j];
        nlohmann::json cj{{"cell", cell_json(c.cell)},
                          {"score", c.score},
                          {"position_index", c.position_index},
                          {"relocated", c.relocated}};
        if (results[j]) {
            cj["cost"] = results[j]->cost;
            cj["heuristic_capped"] = results[j]->heuristic_capped;
            if (!best || results[j]->cost < results[*best]->cost) best = j;
        } else {
            cj["cost"] = nullptr;
            cj["failure"] = failures[j];
        }
        cands.push_back(std::move(cj));
    }
    if (!best) throw PlanningError(PlanFailure::NoPath, "no goal candidate is reachable from the start");
    nlohmann::json prov{{"candidates", std::move(cands)}, {"selected", *best}, {"goal", cell_json(candidates[*best].cell)}};
    return {std::move(results[*best]->trajectory), candidates[*best].cell, std::move(prov)};
}

PlanOutcome baseline_spatial_concept(const PlanRequest& request, const SpatialConceptModel& model,
                                     const CostMap& costmap, const Field& field, double costmap_weight) {
    // Score each mean by log Σ_C Mult(S|W_C) π_C Σ_i N(μ_k|μ_i,Σ_i) φ_C[i].
    const std::size_t L = model.concepts.size();
    std::vector<double> concept_weight(L);
    for (std::size_t l = 0; l < L; ++l) {
        concept_weight[l] = word_likelihood(model, request.instruction, l) + std::log(model.mixture[l]);
    }
    std::optional<std::size_t> best;
    double best_score = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    for (std::size_t k = 0; k < model.positions.size(); ++k) {
        const Vec2& mu = model.positions[k].mean;
        terms.clear();
        for (std::size_t l = 0; l < L; ++l) {
            for (std::size_t i = 0; i < model.positions.size(); ++i) {
                terms.push_back(concept_weight[l] + std::log(model.concepts[l].position_dist[i]) +
                                log_gaussian_density(model.positions[i], mu));
            }
        }
        double mx = -std::numeric_limits<double>::infinity();
        for (double t : terms) mx = std::max(mx, t);
        double s = 0.0;
        for (double t : terms) s += std::exp(t - mx);
        const double score = mx + std::log(s);
        if (!best || score > best_score) {
            best = k;
            best_score = score;
        }
    }
    const Vec2& mu = model.positions[*best].mean;
    nlohmann::json prov{{"position_index", *best}, {"score", best_score}, {"mean", {mu.x(), mu.y()}}};
    const Cell goal = goal_cell_or_throw(costmap, mu, "most likely position mean");
    return plan_to_goal(request, costmap, field, goal, costmap_weight, std::move(prov));
}

PlanOutcome baseline_database(const PlanRequest& request, const TrainingSet& training,
                              const std::vector<std::string>& words, const CostMap& costmap, const Field& field,
                              std::uint64_t seed, double costmap_weight) {
    std::vector<std::size_t> matches;
    for (std::size_t t = 0; t < training.size(); ++t) {
        const auto& rw = training[t].words;
        const bool hit = std::any_of(words.begin(), words.end(),
                                     [&](const std::string& w) { return std::find(rw.begin(), rw.end(), w) != rw.end(); });
        if (hit) matches.push_back(t);
    }
    if (matches.empty()) throw PlanningError(PlanFailure::GoalInfeasible, "no training record contains an instruction word");
    std::mt19937_64 rng(seed);
    const std::size_t pick = matches[rng() % matches.size()];
    const Vec2& p = training[pick].position;
    nlohmann::json prov{{"record", pick}, {"position", {p.x(), p.y()}}, {"matches", matches.size()}, {"seed", seed}};
    const Cell goal = goal_cell_or_throw(costmap, p, "selected training position");
    return plan_to_goal(request, costmap, field, goal, costmap_weight, std::move(prov));
}

PlanOutcome baseline_random(const PlanRequest& request, const TrainingSet& training, const CostMap& costmap,
                            const Field& field, std::uint64_t seed, double costmap_weight) {
    if (training.empty()) throw PlanningError(PlanFailure::GoalInfeasible, "training set is empty");
    std::mt19937_64 rng(seed);
    const std::size_t pick = rng() % training.size();
    const Vec2& p = training[pick].position;
    nlohmann::json prov{{"record", pick}, {"position", {p.x(), p.y()}}, {"seed", seed}};
    const Cell goal = goal_cell_or_throw(costmap, p, "selected training position");
    return plan_to_goal(request, costmap, field, goal, costmap_weight, std::move(prov));
}

}  // namespace spnav
