#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace spnav {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Integer grid coordinate. `row` 0 is the bottom of the map (world y grows with row).
struct Cell {
    int col = 0;
    int row = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Width/height/resolution/origin shared by grids, cost maps and fields.
struct GridGeometry {
    int width = 0;
    int height = 0;
    double resolution = 1.0;   // meters per cell
    Vec2 origin{0.0, 0.0};     // world position of the (0,0) cell's lower-left corner

    std::size_t size() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
    bool contains(Cell c) const { return c.col >= 0 && c.row >= 0 && c.col < width && c.row < height; }
    std::size_t index(Cell c) const {
        return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c.col);
    }
    Cell cell(std::size_t idx) const {
        return {static_cast<int>(idx % static_cast<std::size_t>(width)),
                static_cast<int>(idx / static_cast<std::size_t>(width))};
    }
    Vec2 world_center(Cell c) const {
        return {origin.x() + (c.col + 0.5) * resolution, origin.y() + (c.row + 0.5) * resolution};
    }
    /// Cell containing a world point (may be out of bounds; check with `contains`).
    Cell to_cell(const Vec2& p) const;
    std::optional<Cell> locate(const Vec2& p) const {
        Cell c = to_cell(p);
        if (!contains(c)) return std::nullopt;
        return c;
    }

    void validate() const;
    friend bool operator==(const GridGeometry& a, const GridGeometry& b) {
        return a.width == b.width && a.height == b.height && a.resolution == b.resolution && a.origin == b.origin;
    }
};

enum class CellState : std::uint8_t { Free = 0, Occupied = 1, Unknown = 2 };

class OccupancyGrid {
public:
    OccupancyGrid() = default;
    OccupancyGrid(GridGeometry geometry, std::vector<CellState> cells);
    /// All cells set to `fill`.
    OccupancyGrid(GridGeometry geometry, CellState fill);

    const GridGeometry& geometry() const { return geometry_; }
    int width() const { return geometry_.width; }
    int height() const { return geometry_.height; }
    double resolution() const { return geometry_.resolution; }

    CellState at(Cell c) const { return cells_[geometry_.index(c)]; }
    void set(Cell c, CellState s) { cells_[geometry_.index(c)] = s; }
    const std::vector<CellState>& cells() const { return cells_; }

    friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

private:
    GridGeometry geometry_;
    std::vector<CellState> cells_;
};

}  // namespace spnav
