#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles/fixtures.hpp"
#include "spnav/emission.hpp"
#include "spnav/error.hpp"
#include "spnav/viterbi.hpp"

using namespace spnav;

namespace {

const double kNinf = -std::numeric_limits<double>::infinity();

Cell random_finite_cell(std::mt19937_64& rng, Field& f) {
    const std::size_t i = rng() % f.size();
    if (!std::isfinite(f.values[i])) f.values[i] = -1.0;
    return f.geometry.cell(i);
}

}  // namespace

TEST(Viterbi, CorridorMarchesToTheHighCell) {
    const Field f = fixtures::field(5, 1, {0, -1, -2, -3, 10});
    const ActionSet acts({{"stay", 0, 0}, {"right", 1, 0}});
    const auto tr = viterbi_plan(f, {0, 0}, 4, acts);
    EXPECT_EQ(tr.actions, (std::vector<int>{1, 1, 1, 1}));
    EXPECT_EQ(tr.final_state(), (Cell{4, 0}));

    // all 2^4 sequences by hand
    double best = kNinf;
    for (int mask = 0; mask < 16; ++mask) {
        int col = 0;
        double s = 0;
        for (int t = 0; t < 4; ++t) {
            col += (mask >> t) & 1;
            if (col > 4) col = 4;
            s += f.values[static_cast<std::size_t>(col)];
        }
        best = std::max(best, s);
    }
    EXPECT_EQ(tr.cumulative_log_likelihood, best);
    EXPECT_EQ(best, 4.0);
}

TEST(Viterbi, StaysAtUniqueMaximum) {
    Field f = fixtures::field(5, 5, std::vector<double>(25, -3.0));
    f.values[12] = 0.0;
    const auto tr = viterbi_plan(f, {2, 2}, 6, ActionSet::von_neumann());
    for (int a : tr.actions) EXPECT_EQ(a, 0);
    EXPECT_EQ(tr.path_length(ActionSet::von_neumann()), 0);
}

TEST(Viterbi, MatchesBruteForceOnFiveByFive) {
    std::mt19937_64 rng(99);
    for (int n = 0; n < 25; ++n) {
        Field f = fixtures::random_field(rng, 5, 5, n % 2 ? 0.2 : 0.0);
        const Cell s = random_finite_cell(rng, f);
        const auto v = viterbi_plan(f, s, 4, ActionSet::von_neumann());
        const auto b = brute_force_plan(f, s, 4, ActionSet::von_neumann());
        ASSERT_EQ(v.cumulative_log_likelihood, b.cumulative_log_likelihood);
        ASSERT_EQ(v.states, b.states);
    }
}

TEST(Viterbi, MatchesBruteForceWithDiagonals) {
    std::mt19937_64 rng(5);
    const ActionSet moore = ActionSet::make(true, true);
    for (int n = 0; n < 10; ++n) {
        Field f = fixtures::random_field(rng, 4, 4, 0.15);
        const Cell s = random_finite_cell(rng, f);
        const auto v = viterbi_plan(f, s, 3, moore);
        const auto b = brute_force_plan(f, s, 3, moore);
        ASSERT_EQ(v.cumulative_log_likelihood, b.cumulative_log_likelihood);
        ASSERT_EQ(v.actions, b.actions);
    }
}

TEST(Viterbi, OneStepPicksBestNeighbour) {
    Field f = fixtures::field(3, 3, std::vector<double>(9, -5.0));
    f.values[5] = -1.0;  // (2,1), right of centre
    f.values[2] = 0.0;   // (2,0), diagonal: unreachable in one 4-connected step
    const auto tr = brute_force_plan(f, {1, 1}, 1, ActionSet::von_neumann());
    EXPECT_EQ(tr.final_state(), (Cell{2, 1}));
    EXPECT_EQ(viterbi_plan(f, {1, 1}, 1, ActionSet::von_neumann()).states, tr.states);
}

TEST(Viterbi, TiesGoToTheFirstAction) {
    const Field f = fixtures::field(4, 4, std::vector<double>(16, -2.0));
    for (const auto& acts : {ActionSet::von_neumann(), ActionSet::make(false, false), ActionSet::make(true, true)}) {
        const auto b = brute_force_plan(f, {1, 1}, 3, acts);
        const auto v = viterbi_plan(f, {1, 1}, 3, acts);
        EXPECT_EQ(b.actions, v.actions);
        if (acts.include_stay()) {
            EXPECT_EQ(v.actions, (std::vector<int>{0, 0, 0}));
        }
    }
}

TEST(Viterbi, ShiftInvariance) {
    std::mt19937_64 rng(12);
    for (int n = 0; n < 10; ++n) {
        Field f = fixtures::random_field(rng, 8, 8, 0.1);
        const Cell s = random_finite_cell(rng, f);
        Field g = f;
        for (auto& v : g.values) v += 2.5;  // -inf stays -inf
        const int T = 12;
        const auto a = viterbi_plan(f, s, T, ActionSet::von_neumann());
        const auto b = viterbi_plan(g, s, T, ActionSet::von_neumann());
        EXPECT_NEAR(b.cumulative_log_likelihood, a.cumulative_log_likelihood + T * 2.5, 1e-9);
        // the shifted optimum, scored on the original field, is still optimal there
        EXPECT_NEAR(score_trajectory(b, f, T).total, a.cumulative_log_likelihood, 1e-9);
    }
}

TEST(Viterbi, SafeOnRandomMaps) {
    std::mt19937_64 rng(31);
    for (int n = 0; n < 100; ++n) {
        const int w = 3 + static_cast<int>(rng() % 20), h = 3 + static_cast<int>(rng() % 20);
        Field f = fixtures::random_field(rng, w, h, 0.3);
        const Cell s = random_finite_cell(rng, f);
        const auto tr = viterbi_plan(f, s, 1 + static_cast<int>(rng() % 30), ActionSet::von_neumann());
        EXPECT_NO_THROW(check_trajectory(tr, f, ActionSet::von_neumann()));
        for (std::size_t t = 1; t < tr.states.size(); ++t) ASSERT_TRUE(std::isfinite(f.at(tr.states[t])));
        EXPECT_NEAR(tr.cumulative_log_likelihood, right_fold_sum(tr.step_log_likelihoods), 0.0);
    }
}

TEST(Viterbi, SerialAndParallelAgree) {
    std::mt19937_64 rng(40);
    Field f = fixtures::random_field(rng, 60, 40, 0.1);
    const Cell s = random_finite_cell(rng, f);
    const auto a = viterbi_plan(f, s, 50, ActionSet::von_neumann(), Exec::Serial);
    const auto b = viterbi_plan(f, s, 50, ActionSet::von_neumann(), Exec::Parallel);
    EXPECT_EQ(a.states, b.states);
    EXPECT_EQ(a.cumulative_log_likelihood, b.cumulative_log_likelihood);
}

TEST(Viterbi, EntersTheNearerSameNamedRoom) {
    auto m = fixtures::model({{"bedroom"}, {"bedroom"}}, {Vec2(4.5, 5.5), Vec2(34.5, 5.5)}, 2.0);
    const CostMap cm = fixtures::uniform_costmap(40, 11);
    PlanRequest req{{12, 5}, 60, fixtures::say(m, {"bedroom"}), ActionSet::von_neumann()};
    const auto tr = viterbi_plan(req, m, cm);
    EXPECT_EQ(tr.final_state(), (Cell{4, 5}));
}

TEST(Viterbi, Errors) {
    Field f = fixtures::field(3, 1, {0, kNinf, 0});
    EXPECT_THROW(viterbi_plan(f, {1, 0}, 2, ActionSet::von_neumann()), PlanningError);
    try {
        viterbi_plan(f, {0, 0}, 2, ActionSet::make(false, false));
        FAIL();
    } catch (const PlanningError& e) {
        EXPECT_EQ(e.kind(), PlanFailure::Infeasible);
    }
    try {
        brute_force_plan(fixtures::field(3, 3, std::vector<double>(9, 0.0)), {1, 1}, 11, ActionSet::von_neumann());
        FAIL();
    } catch (const PlanningError& e) {
        EXPECT_EQ(e.kind(), PlanFailure::BudgetExceeded);
    }
    EXPECT_THROW(viterbi_plan(f, {0, 0}, 0, ActionSet::von_neumann()), ValidationError);
}

TEST(ScoreTrajectory, PadsWithTheFinalValue) {
    const Field f = fixtures::field(4, 1, {-5, -4, -3, -1});
    const auto tr = trajectory_from_states({{0, 0}, {1, 0}, {2, 0}, {3, 0}}, f, ActionSet::von_neumann());
    const auto s3 = score_trajectory(tr, f, 3);
    const auto s5 = score_trajectory(tr, f, 5);
    EXPECT_EQ(s3.total, -8.0);
    EXPECT_EQ(s5.total, s3.total + 2 * -1.0);
    EXPECT_EQ(s5.per_step, (std::vector<double>{-4, -3, -1, -1, -1}));
    EXPECT_EQ(score_trajectory(tr, f, 2).per_step.size(), 2u);
}

TEST(ScoreTrajectory, RejectsObstacles) {
    const Field f = fixtures::field(3, 1, {0, kNinf, 0});
    Trajectory bad;
    bad.states = {{0, 0}, {1, 0}};
    bad.actions = {4};
    EXPECT_THROW(score_trajectory(bad, f, 2), PlanningError);
}
