#include <gtest/gtest.h>

#include <algorithm>

#include "spnav/error.hpp"
#include "spnav/evaluation.hpp"

using namespace spnav;

namespace {

// Two bedrooms at opposite ends of a corridor, a kitchen in between. The horizon
// is long enough to leave the kitchen through the low-likelihood corridor.
const char* kSmallHouse = R"({
  "environment": {"width": 70, "height": 30, "resolution": 0.2, "rooms": [
    {"names": "bedroom", "rect": [0.4, 0.4, 3.4, 3.4], "door": "north"},
    {"names": "kitchen", "rect": [5.4, 0.4, 8.4, 3.4], "door": "north"},
    {"names": "bedroom", "rect": [10.4, 0.4, 13.4, 3.4], "door": "north"}]},
  "instruction": "go to the bedroom",
  "horizon": 150,
  "seed": 3,
  "trials": 4,
  "candidates": 3
})";

Scenario small_house() { return scenario_from_json(nlohmann::json::parse(kSmallHouse)); }

}  // namespace

TEST(Evaluation, ScenarioParsing) {
    const auto sc = small_house();
    EXPECT_EQ(sc.instruction, (std::vector<std::string>{"go", "to", "the", "bedroom"}));
    EXPECT_EQ(sc.horizon, 150);
    EXPECT_EQ(sc.methods.size(), 5u);
    EXPECT_FALSE(sc.start.has_value());
    auto j = nlohmann::json::parse(kSmallHouse);
    j["actions"] = "hexagonal";
    EXPECT_THROW(scenario_from_json(j), Error);
    j = nlohmann::json::parse(kSmallHouse);
    j.erase("environment");
    EXPECT_THROW(scenario_from_json(j), Error);
}

TEST(Evaluation, StartIsOutsideInstructedRooms) {
    const auto sc = small_house();
    for (int t = 0; t < 4; ++t) {
        const auto ctx = prepare_trial(sc, t);
        EXPECT_TRUE(ctx.costmap.traversable(ctx.start));
        const Vec2 p = ctx.costmap.geometry().world_center(ctx.start);
        for (const auto& r : ctx.environment.regions) {
            if (r.name == "bedroom") {
                EXPECT_FALSE(r.rect.contains(p));
            }
        }
        EXPECT_TRUE(ctx.nearest_room == 0 || ctx.nearest_room == 2);
    }
}

TEST(Evaluation, MetricsAreConsistent) {
    const auto sc = small_house();
    const auto results = run_scenario(sc);
    ASSERT_EQ(results.size(), 20u);
    const auto metrics = aggregate(results);
    ASSERT_EQ(metrics.size(), 5u);
    for (const auto& m : metrics) {
        EXPECT_EQ(m.trials, 4);
        EXPECT_LE(m.near_nsr, m.nsr);
        EXPECT_EQ(m.path_length.has_value(), m.successes > 0);
    }
    for (const auto& r : results) {
        if (r.nearest_success) {
            EXPECT_TRUE(r.success);
        }
        if (r.failure.empty()) {
            EXPECT_EQ(r.step_log_likelihoods.size(), 150u);
        }
    }
    // the exact planner reaches a bedroom on this separable layout
    EXPECT_EQ(metrics[0].method, Method::Viterbi);
    EXPECT_EQ(metrics[0].nsr, 1.0);
}

TEST(Evaluation, PathLengthIsOverSuccessesOnly) {
    std::vector<TrialResult> rs(3);
    rs[0].success = true, rs[0].path_length = 10;
    rs[1].success = false, rs[1].path_length = 1000;
    rs[2].success = true, rs[2].nearest_success = true, rs[2].path_length = 20;
    const auto m = aggregate(rs);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_DOUBLE_EQ(*m[0].path_length, 15.0);
    EXPECT_NEAR(m[0].nsr, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(m[0].near_nsr, 1.0 / 3.0, 1e-15);

    std::vector<TrialResult> none(2);
    none[0].failure = "GoalInfeasible";
    const auto m2 = aggregate(none);
    EXPECT_FALSE(m2[0].path_length.has_value());
    EXPECT_NE(metrics_csv(m2).find(",N/A"), std::string::npos);
    EXPECT_NE(metrics_table(m2).find("N/A"), std::string::npos);
}

TEST(Evaluation, LoglikSeriesHasOneRowPerStep) {
    const auto sc = small_house();
    const auto ctx = prepare_trial(sc, 0);
    const auto rs = run_trial(sc, ctx, 0);
    const std::string csv = loglik_series(rs, sc.horizon);
    const auto ok = std::count_if(rs.begin(), rs.end(), [](const TrialResult& r) { return r.failure.empty(); });
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + ok * sc.horizon);
    EXPECT_THROW(loglik_series(rs, sc.horizon + 1), ValidationError);
}

TEST(Evaluation, Deterministic) {
    const auto sc = small_house();
    const auto a = run_scenario(sc), b = run_scenario(sc);
    EXPECT_EQ(results_to_json(a, aggregate(a)).dump(), results_to_json(b, aggregate(b)).dump());
    EXPECT_EQ(metrics_csv(aggregate(a)), metrics_csv(aggregate(b)));
}

TEST(Evaluation, GoalInfeasibleIsRecordedAsFailure) {
    const auto sc = small_house();
    auto ctx = prepare_trial(sc, 0);
    // push every bedroom mean into the outer wall; only the spatial-concept goal uses it raw
    for (auto& pos : ctx.model.positions) pos.mean = Vec2(0.1, 0.1);
    const auto rs = run_trial(sc, ctx, 0);
    const auto c = std::find_if(rs.begin(), rs.end(), [](const TrialResult& r) { return r.method == Method::SpatialConcept; });
    ASSERT_NE(c, rs.end());
    EXPECT_EQ(c->failure, "goal-infeasible");
    EXPECT_FALSE(c->success);
    const auto m = aggregate(rs);
    EXPECT_EQ(m[2].trials, 1);
    EXPECT_EQ(m[2].nsr, 0.0);
}

TEST(Evaluation, NearestRoomByPathDistance) {
    const auto sc = small_house();
    auto ctx = prepare_trial(sc, 0);
    const ActionSet a = ActionSet::von_neumann();
    // in the corridor right above the first bedroom's door
    const auto left = *ctx.costmap.geometry().locate(Vec2(1.9, 4.5));
    const auto right = *ctx.costmap.geometry().locate(Vec2(11.9, 4.5));
    EXPECT_EQ(nearest_named_room(ctx.costmap, a, left, ctx.environment.regions, {"bedroom"}), 0);
    EXPECT_EQ(nearest_named_room(ctx.costmap, a, right, ctx.environment.regions, {"bedroom"}), 2);
    EXPECT_EQ(nearest_named_room(ctx.costmap, a, right, ctx.environment.regions, {"garage"}), -1);
}

TEST(Evaluation, TrialSeedsDiffer) {
    EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
    EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
    EXPECT_EQ(trial_seed(1, 3), trial_seed(1, 3));
}
