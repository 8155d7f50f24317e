#include "spnav/methods.hpp"

#include "spnav/error.hpp"
#include "spnav/viterbi.hpp"

namespace spnav {

const char* method_name(Method m) {
    switch (m) {
        case Method::Viterbi: return "viterbi";
        case Method::AStar: return "astar";
        case Method::SpatialConcept: return "sc";
        case Method::Database: return "db";
        case Method::Random: return "random";
    }
    return "?";
}

char method_letter(Method m) { return static_cast<char>('A' + static_cast<int>(m)); }

Method parse_method(std::string_view name) {
    for (Method m : all_methods()) {
        if (name == method_name(m) || (name.size() == 1 && name[0] == method_letter(m))) return m;
    }
    throw ValidationError("unknown method '" + std::string(name) + "' (expected viterbi, astar, sc, db, random)");
}

std::vector<Method> all_methods() {
    return {Method::Viterbi, Method::AStar, Method::SpatialConcept, Method::Database, Method::Random};
}

PlanOutcome run_method(Method method, const PlanRequest& request, const MethodInputs& in) {
    if (!in.model || !in.costmap || !in.field) throw ValidationError("method inputs are incomplete");
    PlanOutcome out;
    switch (method) {
        case Method::Viterbi: {
            out.trajectory = viterbi_plan(*in.field, request.start, request.horizon, request.actions, in.exec);
            out.goal = out.trajectory.final_state();
            out.provenance = nlohmann::json::object();
            break;
        }
        case Method::AStar:
            out = approx_plan(request, *in.model, *in.costmap, *in.field, in.candidates, in.exec);
            out.provenance["J"] = in.candidates;
            break;
        case Method::SpatialConcept:
            out = baseline_spatial_concept(request, *in.model, *in.costmap, *in.field, in.costmap_weight);
            break;
        case Method::Database:
            if (!in.training) throw ValidationError("method db needs training data");
            out = baseline_database(request, *in.training, in.words, *in.costmap, *in.field, in.seed, in.costmap_weight);
            break;
        case Method::Random:
            if (!in.training) throw ValidationError("method random needs training data");
            out = baseline_random(request, *in.training, *in.costmap, *in.field, in.seed, in.costmap_weight);
            break;
    }
    out.provenance["method"] = std::string(1, method_letter(method));
    out.provenance["method_name"] = method_name(method);
    return out;
}

}  // namespace spnav
