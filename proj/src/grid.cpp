#include "spnav/grid.hpp"

#include <cmath>

#include "spnav/error.hpp"

namespace spnav {

Cell GridGeometry::to_cell(const Vec2& p) const {
    return {static_cast<int>(std::floor((p.x() - origin.x()) / resolution)),
            static_cast<int>(std::floor((p.y() - origin.y()) / resolution))};
}

void GridGeometry::validate() const {
    if (width < 1 || height < 1) throw ValidationError("grid width and height must be >= 1");
    if (!(resolution > 0.0) || !std::isfinite(resolution)) throw ValidationError("grid resolution must be > 0");
    if (!origin.allFinite()) throw ValidationError("grid origin must be finite");
}

OccupancyGrid::OccupancyGrid(GridGeometry geometry, std::vector<CellState> cells)
    : geometry_(geometry), cells_(std::move(cells)) {
    geometry_.validate();
    if (cells_.size() != geometry_.size()) throw ValidationError("cell count does not match width x height");
}

OccupancyGrid::OccupancyGrid(GridGeometry geometry, CellState fill)
    : OccupancyGrid(geometry, std::vector<CellState>(geometry.size(), fill)) {}

}  // namespace spnav
