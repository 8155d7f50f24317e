#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles/fixtures.hpp"
#include "oracles/shortest_path.hpp"
#include "spnav/astar.hpp"
#include "spnav/error.hpp"

using namespace spnav;

namespace {

std::vector<double> enter_costs(const CostMap& cm, const Field& f, const AStarConfig& cfg) {
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (cm[i] > 0 && std::isfinite(f[i])) shift = std::max(shift, f[i]);
    }
    std::vector<double> out(f.size(), -1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(cm[i] > 0 && std::isfinite(f[i]))) continue;
        out[i] = cfg.cost == StepCost::NegLogEmission ? shift - f[i] : 1.0 + cfg.costmap_weight * (1.0 - cm[i]);
    }
    return out;
}

double path_cost(const Trajectory& tr, const std::vector<double>& enter, int w) {
    double s = 0;
    for (std::size_t t = 1; t < tr.states.size(); ++t) s += enter[static_cast<std::size_t>(tr.states[t].row * w + tr.states[t].col)];
    return s;
}

}  // namespace

TEST(AStar, StraightLineOnUniformCosts) {
    const CostMap cm = fixtures::uniform_costmap(5, 5);
    const Field f = fixtures::field(5, 5, std::vector<double>(25, -1.0));
    for (auto cost : {StepCost::NegLogEmission, StepCost::UnitPlusCostmap}) {
        AStarConfig cfg;
        cfg.cost = cost;
        cfg.heuristic = cost == StepCost::NegLogEmission ? Heuristic::ScaledManhattan : Heuristic::Manhattan;
        const auto r = astar_plan({0, 0}, {3, 0}, cm, f, cfg);
        EXPECT_EQ(r.trajectory.states, (std::vector<Cell>{{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
    }
}

TEST(AStar, PuddleDetourOnlyWhenCheaper) {
    // 7x3 corridor; the middle row has a low-likelihood puddle at column 3
    for (double depth : {-1.5, -20.0}) {
        std::vector<double> v(21, 0.0);
        v[static_cast<std::size_t>(1 * 7 + 3)] = depth;
        const Field f = fixtures::field(7, 3, v);
        const CostMap cm = fixtures::uniform_costmap(7, 3);
        const AStarConfig cfg;
        const auto r = astar_plan({0, 1}, {6, 1}, cm, f, cfg);
        const auto enter = enter_costs(cm, f, cfg);
        const auto ref = oracle::shortest_costs(7, 3, enter, {0, 1}, cfg.actions);
        EXPECT_NEAR(r.cost, ref[13], 1e-12);
        EXPECT_NEAR(path_cost(r.trajectory, enter, 7), r.cost, 1e-12);
        const bool through = std::find(r.trajectory.states.begin(), r.trajectory.states.end(), Cell{3, 1}) !=
                             r.trajectory.states.end();
        // all cells have cost 0 except the puddle, so a 2-step detour is free
        EXPECT_FALSE(through) << depth;
    }
}

TEST(AStar, PuddleCrossedWhenDetourIsCostly) {
    // detour rows are mildly bad; the puddle is shallower than two detour steps
    std::vector<double> v(21, -1.0);
    for (int c = 0; c < 7; ++c) v[static_cast<std::size_t>(7 + c)] = 0.0;
    v[static_cast<std::size_t>(7 + 3)] = -1.5;
    const Field f = fixtures::field(7, 3, v);
    const CostMap cm = fixtures::uniform_costmap(7, 3);
    const auto r = astar_plan({0, 1}, {6, 1}, cm, f, AStarConfig{});
    EXPECT_EQ(r.trajectory.states.size(), 7u);
    EXPECT_EQ(r.cost, 1.5);
}

TEST(AStar, WalledOffGoal) {
    std::vector<double> cost(49, 1.0);
    for (int i = 0; i < 7; ++i) cost[static_cast<std::size_t>(i * 7 + 3)] = 0.0;
    const CostMap cm(fixtures::geometry(7, 7), cost);
    const Field f = fixtures::field(7, 7, std::vector<double>(49, -1.0));
    try {
        astar_plan({0, 0}, {6, 6}, cm, f, AStarConfig{});
        FAIL();
    } catch (const PlanningError& e) {
        EXPECT_EQ(e.kind(), PlanFailure::NoPath);
    }
    EXPECT_THROW(astar_plan({0, 0}, {3, 3}, cm, f, AStarConfig{}), PlanningError);
}

TEST(AStar, OptimalAgainstUniformCostSearchAndOracle) {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 50; ++n) {
        const int w = 4 + static_cast<int>(rng() % 12), h = 4 + static_cast<int>(rng() % 12);
        std::vector<double> cost(static_cast<std::size_t>(w * h));
        for (auto& c : cost) c = u(rng) < 0.2 ? 0.0 : 0.05 + 0.95 * u(rng);
        const CostMap cm(fixtures::geometry(w, h), cost);
        Field f = fixtures::random_field(rng, w, h);
        for (std::size_t i = 0; i < f.size(); ++i) f.values[i] *= (n % 3 == 0) ? 0.01 : 1.0;
        const std::size_t s = rng() % cost.size(), g = rng() % cost.size();
        cost[s] = cost[g] = 1.0;
        const CostMap cm2(fixtures::geometry(w, h), cost);
        const Cell start = cm2.geometry().cell(s), goal = cm2.geometry().cell(g);
        for (auto cost_model : {StepCost::NegLogEmission, StepCost::UnitPlusCostmap}) {
            for (bool diag : {false, true}) {
                AStarConfig cfg;
                cfg.cost = cost_model;
                cfg.actions = ActionSet::make(diag, true);
                cfg.heuristic = cost_model == StepCost::NegLogEmission ? Heuristic::ScaledManhattan : Heuristic::Manhattan;
                const auto ref = oracle::shortest_costs(w, h, enter_costs(cm2, f, cfg), start, cfg.actions);
                const double want = ref[g];
                if (std::isinf(want)) {
                    EXPECT_THROW(astar_plan(start, goal, cm2, f, cfg), PlanningError);
                    continue;
                }
                const auto r = astar_plan(start, goal, cm2, f, cfg);
                AStarConfig ucs = cfg;
                ucs.heuristic = Heuristic::None;
                const auto r0 = astar_plan(start, goal, cm2, f, ucs);
                ASSERT_NEAR(r.cost, want, 1e-9) << "instance " << n;
                ASSERT_NEAR(r0.cost, want, 1e-9);
                ASSERT_LE(r.expansions, r0.expansions);
                EXPECT_NO_THROW(check_trajectory(r.trajectory, f, cfg.actions));
            }
        }
        (void)cm;
    }
}

TEST(AStar, HeuristicCappedByCheapestStep) {
    // the field maximum always costs 0 after the shift, so log|A| is never admissible
    const Field f = fixtures::field(4, 1, {-10, -20, -30, 0.0});
    const auto r = astar_plan({0, 0}, {3, 0}, fixtures::uniform_costmap(4, 1), f, AStarConfig{});
    EXPECT_TRUE(r.heuristic_capped);
    EXPECT_EQ(r.heuristic_scale, 0.0);
    EXPECT_EQ(r.cost, 50.0);

    // unit costs are never below one, so Manhattan is used as is
    AStarConfig unit;
    unit.cost = StepCost::UnitPlusCostmap;
    unit.heuristic = Heuristic::Manhattan;
    const auto r2 = astar_plan({0, 0}, {3, 0}, fixtures::uniform_costmap(4, 1), f, unit);
    EXPECT_FALSE(r2.heuristic_capped);
    EXPECT_EQ(r2.heuristic_scale, 1.0);
    EXPECT_EQ(r2.cost, 3.0);
}

TEST(AStar, GridDistance) {
    EXPECT_EQ(grid_distance({0, 0}, {3, -2}, false), 5);
    EXPECT_EQ(grid_distance({0, 0}, {3, -2}, true), 3);
}
