#include "spnav/environment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "spnav/error.hpp"

namespace spnav {

namespace {

struct CellRange {
    int c0, r0, c1, r1;  // inclusive

    bool overlaps(const CellRange& o) const { return !(c1 < o.c0 || o.c1 < c0 || r1 < o.r0 || o.r1 < r0); }
};

CellRange cell_range(const Rect& rect, const GridGeometry& geo) {
    auto lo = [&](double v, double o) { return static_cast<int>(std::floor((v - o) / geo.resolution + 1e-9)); };
    auto hi = [&](double v, double o) { return static_cast<int>(std::ceil((v - o) / geo.resolution - 1e-9)) - 1; };
    return {lo(rect.min.x(), geo.origin.x()), lo(rect.min.y(), geo.origin.y()), hi(rect.max.x(), geo.origin.x()),
            hi(rect.max.y(), geo.origin.y())};
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
    // Box-Muller; one draw per call keeps the stream simple to reason about.
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

bool on_border(DoorSide side, const CellRange& r, const GridGeometry& geo) {
    switch (side) {
        case DoorSide::North: return r.r1 >= geo.height - 1;
        case DoorSide::South: return r.r0 <= 0;
        case DoorSide::East: return r.c1 >= geo.width - 1;
        case DoorSide::West: return r.c0 <= 0;
        default: return false;
    }
}

DoorSide pick_auto_side(const Rect& rect, const CellRange& r, const GridGeometry& geo) {
    const Vec2 map_center = geo.origin + Vec2(geo.width, geo.height) * geo.resolution / 2.0;
    const Vec2 dir = map_center - rect.center();
    std::array<std::pair<double, DoorSide>, 4> sides{{{dir.y(), DoorSide::North},
                                                      {-dir.y(), DoorSide::South},
                                                      {dir.x(), DoorSide::East},
                                                      {-dir.x(), DoorSide::West}}};
    std::stable_sort(sides.begin(), sides.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [score, side] : sides) {
        if (!on_border(side, r, geo)) return side;
    }
    return DoorSide::None;
}

DoorSide parse_side(const std::string& s) {
    if (s == "auto") return DoorSide::Auto;
    if (s == "north") return DoorSide::North;
    if (s == "south") return DoorSide::South;
    if (s == "east") return DoorSide::East;
    if (s == "west") return DoorSide::West;
    if (s == "none") return DoorSide::None;
    throw ParseError("door", "expected auto, north, south, east, west or none");
}

}  // namespace

Environment generate_environment(const EnvironmentSpec& spec, std::uint64_t seed) {
    const GridGeometry geo{spec.width, spec.height, spec.resolution, spec.origin};
    geo.validate();
    if (spec.samples_per_place < 1) throw ValidationError("samples_per_place must be >= 1");
    Environment env;
    env.grid = OccupancyGrid(geo, CellState::Free);
    for (int c = 0; c < geo.width; ++c) {
        env.grid.set({c, 0}, CellState::Occupied);
        env.grid.set({c, geo.height - 1}, CellState::Occupied);
    }
    for (int r = 0; r < geo.height; ++r) {
        env.grid.set({0, r}, CellState::Occupied);
        env.grid.set({geo.width - 1, r}, CellState::Occupied);
    }

    std::vector<CellRange> ranges;
    for (std::size_t i = 0; i < spec.rooms.size(); ++i) {
        const auto& room = spec.rooms[i];
        const std::string tag = "room " + std::to_string(i);
        if (room.names.empty()) throw ValidationError(tag + " has no names");
        if (!(room.rect.area() > 0.0) || room.rect.max.x() <= room.rect.min.x()) throw ValidationError(tag + " has no area");
        if (!(room.weight > 0.0)) throw ValidationError(tag + " weight must be > 0");
        const CellRange r = cell_range(room.rect, geo);
        if (r.c0 < 0 || r.r0 < 0 || r.c1 >= geo.width || r.r1 >= geo.height || r.c1 - r.c0 < 2 || r.r1 - r.r0 < 2) {
            throw ValidationError(tag + " is outside the map or too small");
        }
        for (std::size_t j = 0; j < ranges.size(); ++j) {
            if (r.overlaps(ranges[j])) throw ValidationError("rooms " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
        }
        ranges.push_back(r);
    }

    const int door_cells = std::max(1, static_cast<int>(std::lround(spec.door_width / geo.resolution)));
    for (std::size_t i = 0; i < spec.rooms.size(); ++i) {
        const auto& room = spec.rooms[i];
        if (!room.walls) continue;
        const CellRange& r = ranges[i];
        for (int c = r.c0; c <= r.c1; ++c) {
            env.grid.set({c, r.r0}, CellState::Occupied);
            env.grid.set({c, r.r1}, CellState::Occupied);
        }
        for (int rr = r.r0; rr <= r.r1; ++rr) {
            env.grid.set({r.c0, rr}, CellState::Occupied);
            env.grid.set({r.c1, rr}, CellState::Occupied);
        }
        DoorSide side = room.door == DoorSide::Auto ? pick_auto_side(room.rect, r, geo) : room.door;
        if (side == DoorSide::None) {
            if (room.door == DoorSide::Auto) throw ValidationError("door placement impossible for room " + std::to_string(i));
            continue;
        }
        if (on_border(side, r, geo)) throw ValidationError("door of room " + std::to_string(i) + " would open onto the map border");
        const bool horizontal = side == DoorSide::North || side == DoorSide::South;
        const int lo = horizontal ? r.c0 : r.r0;
        const int hi = horizontal ? r.c1 : r.r1;
        const int span = hi - lo - 1;  // wall cells excluding corners
        if (door_cells > span) throw ValidationError("door placement impossible for room " + std::to_string(i) + ": wall too short");
        const int start = lo + 1 + (span - door_cells) / 2;
        for (int k = start; k < start + door_cells; ++k) {
            switch (side) {
                case DoorSide::North: env.grid.set({k, r.r1}, CellState::Free); break;
                case DoorSide::South: env.grid.set({k, r.r0}, CellState::Free); break;
                case DoorSide::East: env.grid.set({r.c1, k}, CellState::Free); break;
                case DoorSide::West: env.grid.set({r.c0, k}, CellState::Free); break;
                default: break;
            }
        }
    }

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < spec.rooms.size(); ++i) {
        const auto& room = spec.rooms[i];
        const CellRange& r = ranges[i];
        const int inset = room.walls ? 1 : 0;
        const Rect interior{geo.origin + Vec2(r.c0 + inset, r.r0 + inset) * geo.resolution,
                            geo.origin + Vec2(r.c1 + 1 - inset, r.r1 + 1 - inset) * geo.resolution};
        const Vec2 center = interior.center();
        const Vec2 sigma = (interior.max - interior.min) * spec.sample_sigma_fraction;
        const int n = std::max(1, static_cast<int>(std::lround(spec.samples_per_place * room.weight)));
        for (int s = 0; s < n; ++s) {
            Vec2 p = center;
            for (int attempt = 0; attempt < 1000; ++attempt) {
                const Vec2 q(center.x() + sigma.x() * standard_normal(rng), center.y() + sigma.y() * standard_normal(rng));
                if (q.x() > interior.min.x() && q.x() < interior.max.x() && q.y() > interior.min.y() &&
                    q.y() < interior.max.y()) {
                    p = q;
                    break;
                }
            }
            if (spec.noise_probability > 0.0 && uniform01(rng) < spec.noise_probability) {
                p += Vec2(standard_normal(rng), standard_normal(rng)) * spec.noise_sigma;
            }
            TrainingRecord rec;
            rec.position = p;
            rec.words = room.names;
            rec.concept_id = static_cast<int>(i);
            rec.position_id = static_cast<int>(i);
            env.training.push_back(std::move(rec));
        }
        for (const auto& name : room.names) {
            env.regions.push_back({name, room.rect, room.rect.center(), static_cast<int>(i)});
        }
    }
    return env;
}

EnvironmentSpec environment_spec_from_json(const nlohmann::json& j) {
    EnvironmentSpec s;
    try {
        s.width = j.value("width", s.width);
        s.height = j.value("height", s.height);
        s.resolution = j.value("resolution", s.resolution);
        if (j.contains("origin")) {
            const auto o = j.at("origin").get<std::vector<double>>();
            if (o.size() < 2) throw ParseError("environment.origin", "expected [x, y]");
            s.origin = Vec2(o[0], o[1]);
        }
        s.samples_per_place = j.value("samples_per_place", s.samples_per_place);
        s.door_width = j.value("door_width", s.door_width);
        s.sample_sigma_fraction = j.value("sample_sigma_fraction", s.sample_sigma_fraction);
        s.noise_probability = j.value("noise_probability", s.noise_probability);
        s.noise_sigma = j.value("noise_sigma", s.noise_sigma);
        if (!j.contains("rooms")) throw ParseError("environment.rooms", "missing field");
        for (const auto& rj : j.at("rooms")) {
            RoomSpec room;
            if (rj.at("names").is_string()) {
                room.names = {rj.at("names").get<std::string>()};
            } else {
                room.names = rj.at("names").get<std::vector<std::string>>();
            }
            const auto rect = rj.at("rect").get<std::vector<double>>();
            if (rect.size() != 4) throw ParseError("environment.rooms.rect", "expected [x0, y0, x1, y1]");
            room.rect = {Vec2(rect[0], rect[1]), Vec2(rect[2], rect[3])};
            room.weight = rj.value("weight", 1.0);
            room.walls = rj.value("walls", true);
            room.door = parse_side(rj.value("door", std::string("auto")));
            s.rooms.push_back(std::move(room));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("environment", e.what());
    }
    return s;
}

nlohmann::json regions_to_json(const std::vector<PlaceRegion>& regions) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : regions) {
        out.push_back({{"name", r.name},
                       {"rect", {r.rect.min.x(), r.rect.min.y(), r.rect.max.x(), r.rect.max.y()}},
                       {"anchor", {r.anchor.x(), r.anchor.y()}},
                       {"room", r.room}});
    }
    return out;
}

}  // namespace spnav
