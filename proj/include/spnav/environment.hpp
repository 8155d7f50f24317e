#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spnav/model.hpp"

namespace spnav {

/// Axis-aligned rectangle in world meters.
struct Rect {
    Vec2 min{0.0, 0.0};
    Vec2 max{0.0, 0.0};

    bool contains(const Vec2& p) const {
        return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
    }
    Vec2 center() const { return (min + max) / 2.0; }
    double area() const { return (max.x() - min.x()) * (max.y() - min.y()); }
};

enum class DoorSide { Auto, North, South, East, West, None };

struct RoomSpec {
    std::vector<std::string> names;  // every name is spoken at every sample
    Rect rect;
    double weight = 1.0;             // usage: samples = round(samples_per_place × weight)
    bool walls = true;
    DoorSide door = DoorSide::Auto;
};

struct EnvironmentSpec {
    int width = 100;  // cells
    int height = 60;
    double resolution = 0.2;
    Vec2 origin{0.0, 0.0};
    std::vector<RoomSpec> rooms;
    int samples_per_place = 15;
    double door_width = 1.0;          // meters
    double sample_sigma_fraction = 0.25;  // per-axis σ as a fraction of the room extent
    double noise_probability = 0.0;   // records displaced by simulated localization error
    double noise_sigma = 0.0;         // meters
};

struct PlaceRegion {
    std::string name;
    Rect rect;
    Vec2 anchor{0.0, 0.0};
    int room = 0;  // index into EnvironmentSpec::rooms; synonyms share it
};

struct Environment {
    OccupancyGrid grid;
    TrainingSet training;  // concept_id = position_id = room index
    std::vector<PlaceRegion> regions;
};

/// Outer wall, room walls with door gaps, and per-room training samples from a
/// truncated Gaussian inside the room. Deterministic per seed.
Environment generate_environment(const EnvironmentSpec& spec, std::uint64_t seed);

EnvironmentSpec environment_spec_from_json(const nlohmann::json& j);
nlohmann::json regions_to_json(const std::vector<PlaceRegion>& regions);

}  // namespace spnav
