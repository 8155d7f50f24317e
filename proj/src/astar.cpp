#include "spnav/astar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "spnav/error.hpp"

namespace spnav {

int grid_distance(Cell a, Cell b, bool diagonals) {
    const int dc = std::abs(a.col - b.col);
    const int dr = std::abs(a.row - b.row);
    return diagonals ? std::max(dc, dr) : dc + dr;
}

AStarResult astar_plan(Cell start, Cell goal, const CostMap& costmap, const Field& field, const AStarConfig& config) {
    const auto& geo = costmap.geometry();
    if (!(field.geometry == geo) || field.values.size() != geo.size()) {
        throw ValidationError("field and cost map geometries differ");
    }
    const std::size_t n = geo.size();
    auto enterable = [&](std::size_t i) { return costmap[i] > 0.0 && std::isfinite(field[i]); };
    if (!geo.contains(start) || !enterable(geo.index(start))) {
        throw PlanningError(PlanFailure::StartInvalid, "start cell is off the map or has zero probability");
    }
    if (!geo.contains(goal) || !enterable(geo.index(goal))) {
        throw PlanningError(PlanFailure::GoalInfeasible, "goal cell is off the map or has zero probability");
    }

    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (enterable(i)) shift = std::max(shift, field[i]);
    }
    std::vector<double> step(n, std::numeric_limits<double>::infinity());
    double min_step = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (!enterable(i)) continue;
        step[i] = config.cost == StepCost::NegLogEmission ? shift - field[i]
                                                          : 1.0 + config.costmap_weight * (1.0 - costmap[i]);
        min_step = std::min(min_step, step[i]);
    }

    AStarResult out;
    double scale = 0.0;
    if (config.heuristic != Heuristic::None) {
        const double nominal = config.heuristic == Heuristic::ScaledManhattan
                                   ? -std::log(1.0 / static_cast<double>(config.actions.size()))
                                   : 1.0;
        scale = std::min(nominal, min_step);
        out.heuristic_capped = scale < nominal;
    }
    out.heuristic_scale = scale;
    const bool diagonals = config.actions.include_diagonals();
    auto h = [&](Cell c) { return scale * grid_distance(c, goal, diagonals); };

    std::vector<kernels::Offset> moves;
    for (const auto& a : config.actions.actions()) {
        if (!a.is_stay()) moves.push_back({a.dcol, a.drow});
    }

    using Entry = std::tuple<double, double, std::size_t>;  // f, g, index
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::vector<double> g(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> parent(n, n);
    std::vector<char> closed(n, 0);
    const std::size_t s = geo.index(start);
    const std::size_t target = geo.index(goal);
    g[s] = 0.0;
    open.emplace(h(start), 0.0, s);
    while (!open.empty()) {
        const auto [f, gc, i] = open.top();
        open.pop();
        if (closed[i] || gc > g[i]) continue;
        closed[i] = 1;
        ++out.expansions;
        if (i == target) break;
        const Cell c = geo.cell(i);
        for (const auto& m : moves) {
            const Cell d{c.col + m.dcol, c.row + m.drow};
            if (!geo.contains(d)) continue;
            const std::size_t j = geo.index(d);
            if (!enterable(j)) continue;
            const double ng = gc + step[j];
            if (ng < g[j]) {
                g[j] = ng;
                parent[j] = i;
                closed[j] = 0;
                open.emplace(ng + h(d), ng, j);
            }
        }
    }
    if (!closed[target]) {
        throw PlanningError(PlanFailure::NoPath, "goal is not in the start cell's connected component of free cells");
    }
    std::vector<Cell> path;
    for (std::size_t i = target; i != n; i = parent[i]) path.push_back(geo.cell(i));
    std::reverse(path.begin(), path.end());
    out.trajectory = trajectory_from_states(path, field, config.actions);
    out.cost = g[target];
    return out;
}

}  // namespace spnav
