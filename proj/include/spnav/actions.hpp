#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spnav/grid.hpp"
#include "spnav/kernels.hpp"

namespace spnav {

struct Action {
    std::string name;
    int dcol = 0;
    int drow = 0;

    bool is_stay() const { return dcol == 0 && drow == 0; }
};

/// Ordered move set; the order is the tie-break order of every planner.
class ActionSet {
public:
    explicit ActionSet(std::vector<Action> actions);

    /// stay, up, down, left, right, then up-left, up-right, down-left, down-right.
    /// "up" is +row (north).
    static ActionSet make(bool include_diagonals, bool include_stay);
    /// The simulator set {stay, up, down, left, right}.
    static ActionSet von_neumann() { return make(false, true); }

    std::size_t size() const { return actions_.size(); }
    const Action& operator[](std::size_t i) const { return actions_[i]; }
    const std::vector<Action>& actions() const { return actions_; }
    bool include_stay() const;
    bool include_diagonals() const;
    std::optional<std::size_t> find(int dcol, int drow) const;
    std::vector<kernels::Offset> offsets() const;
    static Cell apply(Cell c, const Action& a) { return {c.col + a.dcol, c.row + a.drow}; }

private:
    std::vector<Action> actions_;
};

}  // namespace spnav
