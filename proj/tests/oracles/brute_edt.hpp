#pragma once

// Reference distance and cost-map values by scanning every obstacle.

#include <cmath>
#include <limits>
#include <vector>

#include "spnav/grid.hpp"

namespace oracle {

inline std::vector<double> nearest_obstacle_distance(const spnav::OccupancyGrid& g) {
    const int w = g.width(), h = g.height();
    std::vector<double> d(static_cast<std::size_t>(w) * h, std::numeric_limits<double>::infinity());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double best = std::numeric_limits<double>::infinity();
            for (int orow = 0; orow < h; ++orow) {
                for (int ocol = 0; ocol < w; ++ocol) {
                    if (g.at({ocol, orow}) != spnav::CellState::Occupied) continue;
                    const double dc = c - ocol, dr = r - orow;
                    best = std::min(best, std::sqrt(dc * dc + dr * dr));
                }
            }
            d[static_cast<std::size_t>(r) * w + c] = best * g.resolution();
        }
    }
    return d;
}

/// The ramp written out case by case.
inline double ramp(double d, double robot, double inflation, spnav::CellState s) {
    if (s != spnav::CellState::Free) return 0.0;
    if (d <= robot) return 0.0;
    if (inflation == robot) return 1.0;
    const double v = (d - robot) / (inflation - robot);
    return v > 1.0 ? 1.0 : v;
}

}  // namespace oracle
