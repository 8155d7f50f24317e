#include "spnav/costmap.hpp"

#include <algorithm>
#include <cmath>

#include "spnav/error.hpp"
#include "spnav/kernels.hpp"

namespace spnav {

CostMap::CostMap(GridGeometry geometry, std::vector<double> values)
    : geometry_(geometry), values_(std::move(values)) {
    geometry_.validate();
    if (values_.size() != geometry_.size()) throw ValidationError("cost map size does not match geometry");
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("cost map values must lie in [0,1]");
    }
}

std::vector<double> squared_distance_to_obstacles(const OccupancyGrid& grid, Exec exec) {
    const auto& geo = grid.geometry();
    std::vector<std::uint8_t> occupied(geo.size());
    for (std::size_t i = 0; i < occupied.size(); ++i) occupied[i] = grid.cells()[i] == CellState::Occupied;
    std::vector<double> out(geo.size());
    if (exec == Exec::Serial) {
        kernels::serial::squared_edt(occupied, geo.width, geo.height, out);
    } else {
        kernels::omp::squared_edt(occupied, geo.width, geo.height, out);
    }
    return out;
}

double inflation_value(double distance, const InflationParams& p) {
    if (distance <= p.robot_radius) return 0.0;
    if (p.inflation_radius == p.robot_radius) return 1.0;
    return std::clamp((distance - p.robot_radius) / (p.inflation_radius - p.robot_radius), 0.0, 1.0);
}

CostMap build_costmap(const OccupancyGrid& grid, InflationParams params, Exec exec) {
    if (!(params.robot_radius >= 0.0) || !(params.inflation_radius >= 0.0)) {
        throw ValidationError("inflation radii must be non-negative");
    }
    if (params.inflation_radius < params.robot_radius) {
        throw ValidationError("inflation_radius must be >= robot_radius");
    }
    const auto& geo = grid.geometry();
    const auto sq = squared_distance_to_obstacles(grid, exec);
    std::vector<double> values(geo.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (grid.cells()[i] != CellState::Free) {
            values[i] = 0.0;
            continue;
        }
        const double d = std::sqrt(sq[i]) * geo.resolution;
        values[i] = inflation_value(d, params);
    }
    return CostMap(geo, std::move(values));
}

}  // namespace spnav
