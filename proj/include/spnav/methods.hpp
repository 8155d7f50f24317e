#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spnav/approx.hpp"

namespace spnav {

/// A: exact (Viterbi), B: approximate (A* to J candidates),
/// C/D/E: spatial-concept goal, database goal, random goal.
enum class Method { Viterbi, AStar, SpatialConcept, Database, Random };

const char* method_name(Method m);   // "viterbi", "astar", "sc", "db", "random"
char method_letter(Method m);        // 'A'..'E'
Method parse_method(std::string_view name);
std::vector<Method> all_methods();

struct MethodInputs {
    const SpatialConceptModel* model = nullptr;
    const CostMap* costmap = nullptr;
    const Field* field = nullptr;          // emission field of `request.instruction`
    const TrainingSet* training = nullptr; // needed by Database and Random
    std::vector<std::string> words;        // in-vocabulary instruction words
    std::size_t candidates = 10;
    std::uint64_t seed = 0;
    double costmap_weight = 1.0;
    Exec exec = Exec::Parallel;
};

PlanOutcome run_method(Method method, const PlanRequest& request, const MethodInputs& inputs);

}  // namespace spnav
