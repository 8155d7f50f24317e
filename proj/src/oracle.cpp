#include "spnav/oracle.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "spnav/error.hpp"
#include "spnav/viterbi.hpp"

namespace spnav {

namespace {

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Planner viterbi_planner() {
    return [](const Field& f, Cell s, int T, const ActionSet& a) { return viterbi_plan(f, s, T, a, Exec::Serial); };
}

OracleReport run_oracle(const Planner& planner, const OracleOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    const ActionSet actions = ActionSet::von_neumann();
    OracleReport rep;
    const double ninf = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < opt.instances; ++n) {
        const int w = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_side - 1));
        const int h = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_side - 1));
        const int T = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_horizon));
        Field field;
        field.geometry = GridGeometry{w, h, 1.0, Vec2{0.0, 0.0}};
        field.values.resize(field.geometry.size());
        for (auto& v : field.values) v = uniform(rng) < opt.blocked_fraction ? ninf : -10.0 * uniform(rng);
        // the start must be feasible; stay keeps every later step feasible too
        std::size_t si = rng() % field.values.size();
        field.values[si] = -10.0 * uniform(rng);
        const Cell start = field.geometry.cell(si);

        ++rep.instances;
        const Trajectory ref = brute_force_plan(field, start, T, actions);
        Trajectory got;
        try {
            got = planner(field, start, T, actions);
        } catch (const Error& e) {
            ++rep.mismatches;
            rep.max_discrepancy = std::numeric_limits<double>::infinity();
            if (rep.first_failure.empty()) rep.first_failure = "instance " + std::to_string(n) + ": " + e.what();
            continue;
        }
        double d = std::abs(got.cumulative_log_likelihood - ref.cumulative_log_likelihood);
        if (got.steps() != ref.steps()) d = std::numeric_limits<double>::infinity();
        if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
        rep.max_discrepancy = std::max(rep.max_discrepancy, d);
        if (d > 0.0) {
            ++rep.mismatches;
            if (rep.first_failure.empty()) {
                std::ostringstream os;
                os << "instance " << n << " (" << w << "x" << h << ", T=" << T << "): planner "
                   << got.cumulative_log_likelihood << " vs brute force " << ref.cumulative_log_likelihood;
                rep.first_failure = os.str();
            }
        } else if (got.states != ref.states) {
            ++rep.trajectory_mismatches;
        }
    }
    return rep;
}

}  // namespace spnav
