#include <gtest/gtest.h>

#include <map>

#include "spnav/environment.hpp"
#include "spnav/error.hpp"

using namespace spnav;

namespace {

EnvironmentSpec two_rooms() {
    EnvironmentSpec s;
    s.width = 60;
    s.height = 30;
    s.resolution = 0.2;
    s.rooms.push_back({{"kitchen"}, {Vec2(0.4, 0.4), Vec2(4.4, 4.4)}, 1.0, true, DoorSide::Auto});
    s.rooms.push_back({{"bedroom", "bed"}, {Vec2(6.0, 0.4), Vec2(11.0, 4.4)}, 1.0, true, DoorSide::Auto});
    return s;
}

std::map<int, int> per_room(const Environment& env) {
    std::map<int, int> n;
    for (const auto& r : env.training) ++n[*r.concept_id];
    return n;
}

}  // namespace

TEST(Environment, EqualWeightsGiveEqualSamples) {
    const auto env = generate_environment(two_rooms(), 1);
    const auto n = per_room(env);
    EXPECT_EQ(n.at(0), 15);
    EXPECT_EQ(n.at(1), 15);
    for (const auto& r : env.training) {
        const auto& rect = two_rooms().rooms[static_cast<std::size_t>(*r.concept_id)].rect;
        EXPECT_TRUE(rect.contains(r.position));
        EXPECT_EQ(r.concept_id, r.position_id);
    }
}

TEST(Environment, UsageWeightScalesSampleCount) {
    auto spec = two_rooms();
    spec.rooms[1].weight = 4.0;
    const auto n = per_room(generate_environment(spec, 1));
    EXPECT_EQ(n.at(1), 4 * n.at(0));
}

TEST(Environment, SynonymsShareARoom) {
    const auto env = generate_environment(two_rooms(), 1);
    ASSERT_EQ(env.regions.size(), 3u);
    EXPECT_EQ(env.regions[1].name, "bedroom");
    EXPECT_EQ(env.regions[2].name, "bed");
    EXPECT_EQ(env.regions[1].room, env.regions[2].room);
    for (const auto& r : env.training) {
        if (*r.concept_id == 1) {
            EXPECT_EQ(r.words, (std::vector<std::string>{"bedroom", "bed"}));
        }
    }
}

TEST(Environment, WallsAndDoors) {
    const auto env = generate_environment(two_rooms(), 1);
    // outer wall
    EXPECT_EQ(env.grid.at({0, 10}), CellState::Occupied);
    // kitchen interior is free, its walls are occupied except the door
    EXPECT_EQ(env.grid.at({10, 10}), CellState::Free);
    EXPECT_EQ(env.grid.at({2, 2}), CellState::Occupied);
    int gaps = 0;
    for (int r = 2; r <= 21; ++r) gaps += env.grid.at({21, r}) == CellState::Free;
    EXPECT_EQ(gaps, 5);  // 1 m door in 0.2 m cells, on the east wall facing the map center
}

TEST(Environment, Errors) {
    auto spec = two_rooms();
    spec.rooms[1].rect = {Vec2(3.0, 1.0), Vec2(8.0, 4.0)};
    EXPECT_THROW(generate_environment(spec, 1), ValidationError);

    spec = two_rooms();
    spec.rooms[0].rect = {Vec2(0.0, 0.0), Vec2(4.4, 4.4)};
    spec.rooms[0].door = DoorSide::South;  // would open onto the map border
    EXPECT_THROW(generate_environment(spec, 1), ValidationError);

    spec = two_rooms();
    spec.door_width = 10.0;
    EXPECT_THROW(generate_environment(spec, 1), ValidationError);

    spec = two_rooms();
    spec.rooms[0].names.clear();
    EXPECT_THROW(generate_environment(spec, 1), ValidationError);
}

TEST(Environment, DeterministicPerSeed) {
    const auto a = generate_environment(two_rooms(), 9);
    const auto b = generate_environment(two_rooms(), 9);
    const auto c = generate_environment(two_rooms(), 10);
    ASSERT_EQ(a.training.size(), b.training.size());
    for (std::size_t i = 0; i < a.training.size(); ++i) EXPECT_EQ(a.training[i].position, b.training[i].position);
    EXPECT_NE(a.training[0].position, c.training[0].position);
    EXPECT_EQ(a.grid, b.grid);
}

TEST(Environment, FromJson) {
    const auto j = nlohmann::json::parse(R"({"width": 40, "height": 30, "rooms": [
        {"names": "kitchen", "rect": [0.4, 0.4, 4.4, 4.4], "door": "north"}]})");
    const auto s = environment_spec_from_json(j);
    EXPECT_EQ(s.width, 40);
    EXPECT_EQ(s.rooms[0].door, DoorSide::North);
    EXPECT_THROW(environment_spec_from_json(nlohmann::json::parse(R"({"width": 40})")), ParseError);
    EXPECT_THROW(environment_spec_from_json(nlohmann::json::parse(
                     R"({"rooms": [{"names": "a", "rect": [0, 0, 1, 1], "door": "up"}]})")),
                 ParseError);
}
