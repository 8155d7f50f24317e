#pragma once

#include <vector>

#include "spnav/exec.hpp"
#include "spnav/grid.hpp"

namespace spnav {

/// Per-cell traversability probability p(x|m) in [0,1].
class CostMap {
public:
    CostMap() = default;
    CostMap(GridGeometry geometry, std::vector<double> values);

    const GridGeometry& geometry() const { return geometry_; }
    double at(Cell c) const { return values_[geometry_.index(c)]; }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    bool traversable(Cell c) const { return geometry_.contains(c) && at(c) > 0.0; }

private:
    GridGeometry geometry_;
    std::vector<double> values_;
};

struct InflationParams {
    double robot_radius = 0.215;
    double inflation_radius = 0.6;
};

/// Squared distance in cells from every cell center to the nearest Occupied cell
/// center (exact). Cells with no obstacle on the map get +inf.
std::vector<double> squared_distance_to_obstacles(const OccupancyGrid& grid, Exec exec = Exec::Parallel);

/// Linear ramp over the exact Euclidean distance transform:
/// 0 on Occupied/Unknown cells and within robot_radius, rising to 1 at inflation_radius.
CostMap build_costmap(const OccupancyGrid& grid, InflationParams params = {}, Exec exec = Exec::Parallel);

/// The ramp itself, for a distance in meters.
double inflation_value(double distance, const InflationParams& params);

}  // namespace spnav
