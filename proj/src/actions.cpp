#include "spnav/actions.hpp"

#include <cstdlib>

#include "spnav/error.hpp"

namespace spnav {

ActionSet::ActionSet(std::vector<Action> actions) : actions_(std::move(actions)) {
    if (actions_.empty()) throw ValidationError("action set is empty");
    if (actions_.size() >= kernels::kNoAction) throw ValidationError("too many actions");
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        const auto& a = actions_[i];
        if (std::abs(a.dcol) > 1 || std::abs(a.drow) > 1) throw ValidationError("action '" + a.name + "' moves more than one cell");
        for (std::size_t j = 0; j < i; ++j) {
            if (actions_[j].dcol == a.dcol && actions_[j].drow == a.drow) {
                throw ValidationError("duplicate action offset for '" + a.name + "'");
            }
        }
    }
}

ActionSet ActionSet::make(bool include_diagonals, bool include_stay) {
    std::vector<Action> a;
    if (include_stay) a.push_back({"stay", 0, 0});
    a.push_back({"up", 0, 1});
    a.push_back({"down", 0, -1});
    a.push_back({"left", -1, 0});
    a.push_back({"right", 1, 0});
    if (include_diagonals) {
        a.push_back({"up-left", -1, 1});
        a.push_back({"up-right", 1, 1});
        a.push_back({"down-left", -1, -1});
        a.push_back({"down-right", 1, -1});
    }
    return ActionSet(std::move(a));
}

bool ActionSet::include_stay() const { return find(0, 0).has_value(); }

bool ActionSet::include_diagonals() const {
    for (const auto& a : actions_) {
        if (a.dcol != 0 && a.drow != 0) return true;
    }
    return false;
}

std::optional<std::size_t> ActionSet::find(int dcol, int drow) const {
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        if (actions_[i].dcol == dcol && actions_[i].drow == drow) return i;
    }
    return std::nullopt;
}

std::vector<kernels::Offset> ActionSet::offsets() const {
    std::vector<kernels::Offset> out;
    out.reserve(actions_.size());
    for (const auto& a : actions_) out.push_back({a.dcol, a.drow});
    return out;
}

}  // namespace spnav
