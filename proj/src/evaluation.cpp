#include "spnav/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "format.hpp"
#include "spnav/emission.hpp"
#include "spnav/error.hpp"
#include "spnav/map_io.hpp"

namespace spnav {

namespace {

std::vector<int> bfs_distances(const CostMap& costmap, const ActionSet& actions, Cell start) {
    const auto& geo = costmap.geometry();
    std::vector<int> dist(geo.size(), -1);
    if (!costmap.traversable(start)) return dist;
    std::deque<std::size_t> queue{geo.index(start)};
    dist[geo.index(start)] = 0;
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        const Cell c = geo.cell(i);
        for (const auto& a : actions.actions()) {
            if (a.is_stay()) continue;
            const Cell d = ActionSet::apply(c, a);
            if (!costmap.traversable(d)) continue;
            const std::size_t j = geo.index(d);
            if (dist[j] >= 0) continue;
            dist[j] = dist[i] + 1;
            queue.push_back(j);
        }
    }
    return dist;
}

bool named(const PlaceRegion& r, const std::vector<std::string>& words) {
    return std::find(words.begin(), words.end(), r.name) != words.end();
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
    // splitmix64 of (seed, trial)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

int nearest_named_room(const CostMap& costmap, const ActionSet& actions, Cell start,
                       const std::vector<PlaceRegion>& regions, const std::vector<std::string>& words) {
    const auto dist = bfs_distances(costmap, actions, start);
    int best_room = -1;
    int best = std::numeric_limits<int>::max();
    for (const auto& r : regions) {
        if (!named(r, words)) continue;
        const auto cell = costmap.geometry().locate(r.anchor);
        if (!cell) continue;
        const int d = dist[costmap.geometry().index(*cell)];
        if (d < 0) continue;
        if (d < best || (d == best && r.room < best_room)) {
            best = d;
            best_room = r.room;
        }
    }
    return best_room;
}

TrialContext prepare_trial(const Scenario& sc, int trial) {
    const std::uint64_t seed = trial_seed(sc.seed, trial);
    TrialContext ctx;
    ctx.environment = generate_environment(sc.environment, seed);
    ctx.costmap = build_costmap(ctx.environment.grid, sc.inflation);
    if (sc.fit == FitMode::Fixed) {
        ctx.model = fit_fixed_assignments(ctx.environment.training, sc.hyper).model;
    } else {
        GibbsOptions opt = sc.gibbs;
        opt.seed = seed;
        ctx.model = fit_gibbs(ctx.environment.training, sc.hyper, opt).model;
    }
    const auto words = strip_stop_words(sc.instruction, default_stop_words());
    auto parsed = make_instruction(ctx.model.vocabulary, words);
    ctx.instruction = parsed.instruction;
    for (const auto& w : words) {
        if (ctx.model.vocabulary.find(w)) ctx.words.push_back(w);
    }
    ctx.field = emission_log_field(ctx.model, ctx.costmap, ctx.instruction);

    const ActionSet actions = ActionSet::make(sc.diagonals, sc.stay);
    const auto& geo = ctx.costmap.geometry();
    if (sc.start) {
        ctx.start = *sc.start;
    } else {
        // Uniform over traversable cells connected to an instructed place and
        // outside every instructed region.
        std::vector<int> reach;
        for (const auto& r : ctx.environment.regions) {
            if (!named(r, ctx.words)) continue;
            if (auto cell = geo.locate(r.anchor); cell && ctx.costmap.traversable(*cell)) {
                reach = bfs_distances(ctx.costmap, actions, *cell);
                break;
            }
        }
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < reach.size(); ++i) {
            if (reach[i] < 0) continue;
            const Vec2 p = geo.world_center(geo.cell(i));
            const bool inside = std::any_of(ctx.environment.regions.begin(), ctx.environment.regions.end(),
                                            [&](const PlaceRegion& r) { return named(r, ctx.words) && r.rect.contains(p); });
            if (!inside) pool.push_back(i);
        }
        if (pool.empty()) throw ValidationError("no valid start cell for the scenario");
        std::mt19937_64 rng(seed ^ 0x5DEECE66DULL);
        ctx.start = geo.cell(pool[rng() % pool.size()]);
    }
    ctx.nearest_room = nearest_named_room(ctx.costmap, actions, ctx.start, ctx.environment.regions, ctx.words);
    return ctx;
}

std::vector<TrialResult> run_trial(const Scenario& sc, const TrialContext& ctx, int trial) {
    const ActionSet actions = ActionSet::make(sc.diagonals, sc.stay);
    const PlanRequest request{ctx.start, sc.horizon, ctx.instruction, actions};
    MethodInputs in;
    in.model = &ctx.model;
    in.costmap = &ctx.costmap;
    in.field = &ctx.field;
    in.training = &ctx.environment.training;
    in.words = ctx.words;
    in.candidates = sc.candidates;
    in.seed = trial_seed(sc.seed, trial);
    in.costmap_weight = sc.costmap_weight;

    std::vector<TrialResult> out;
    for (Method m : sc.methods) {
        TrialResult r;
        r.method = m;
        r.trial = trial;
        try {
            auto plan = run_method(m, request, in);
            const auto score = score_trajectory(plan.trajectory, ctx.field, sc.horizon);
            r.step_log_likelihoods = score.per_step;
            r.cumulative_log_likelihood = score.total;
            r.final_state = plan.trajectory.final_state();
            r.path_length = plan.trajectory.path_length(actions);
            const Vec2 p = ctx.costmap.geometry().world_center(*r.final_state);
            for (const auto& region : ctx.environment.regions) {
                if (named(region, ctx.words) && region.rect.contains(p)) {
                    r.reached_room = region.room;
                    break;
                }
            }
            r.success = r.reached_room.has_value();
            r.nearest_success = r.success && *r.reached_room == ctx.nearest_room;
            r.trajectory = std::move(plan.trajectory);
        } catch (const PlanningError& e) {
            r.failure = to_string(e.kind());
        } catch (const Error& e) {
            r.failure = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<TrialResult> run_scenario(const Scenario& sc) {
    if (sc.trials < 1) throw ValidationError("trials must be >= 1");
    std::vector<TrialResult> all;
    for (int t = 0; t < sc.trials; ++t) {
        const auto ctx = prepare_trial(sc, t);
        auto rs = run_trial(sc, ctx, t);
        all.insert(all.end(), std::make_move_iterator(rs.begin()), std::make_move_iterator(rs.end()));
    }
    return all;
}

std::vector<MethodMetrics> aggregate(const std::vector<TrialResult>& results) {
    std::vector<MethodMetrics> out;
    std::map<Method, std::size_t> slot;
    std::map<Method, double> pl_sum;
    for (const auto& r : results) {
        auto [it, inserted] = slot.emplace(r.method, out.size());
        if (inserted) {
            MethodMetrics fresh;
            fresh.method = r.method;
            out.push_back(fresh);
        }
        auto& m = out[it->second];
        ++m.trials;
        if (r.success) {
            ++m.successes;
            pl_sum[r.method] += r.path_length;
        }
        if (r.nearest_success) ++m.nearest_successes;
    }
    for (auto& m : out) {
        m.nsr = static_cast<double>(m.successes) / m.trials;
        m.near_nsr = static_cast<double>(m.nearest_successes) / m.trials;
        if (m.successes > 0) m.path_length = pl_sum[m.method] / m.successes;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.method < b.method; });
    return out;
}

std::string metrics_csv(const std::vector<MethodMetrics>& metrics) {
    std::string s = "method,name,trials,nsr,near_nsr,pl\n";
    for (const auto& m : metrics) {
        s += std::string(1, method_letter(m.method)) + "," + method_name(m.method) + "," + std::to_string(m.trials) + "," +
             fixed(m.nsr, 4) + "," + fixed(m.near_nsr, 4) + "," + (m.path_length ? fixed(*m.path_length, 2) : "N/A") + "\n";
    }
    return s;
}

std::string metrics_table(const std::vector<MethodMetrics>& metrics) {
    std::ostringstream os;
    char line[128];
    std::snprintf(line, sizeof(line), "%-14s %6s %9s %9s\n", "Method", "NSR", "Near-NSR", "PL");
    os << line;
    for (const auto& m : metrics) {
        const std::string name = std::string("(") + method_letter(m.method) + ") " + method_name(m.method);
        const std::string pl = m.path_length ? fixed(*m.path_length, 2) : "N/A";
        std::snprintf(line, sizeof(line), "%-14s %6s %9s %9s\n", name.c_str(), fixed(m.nsr, 2).c_str(),
                      fixed(m.near_nsr, 2).c_str(), pl.c_str());
        os << line;
    }
    os << "PL: mean path length in cells over successful trials only\n";
    return os.str();
}

std::string loglik_series(const std::vector<TrialResult>& results, int horizon) {
    std::string s = "method,t,step,cumulative\n";
    for (const auto& r : results) {
        if (!r.failure.empty()) continue;
        if (r.step_log_likelihoods.size() != static_cast<std::size_t>(horizon)) {
            throw ValidationError("result series length does not match the horizon");
        }
        double cum = 0.0;
        for (int t = 0; t < horizon; ++t) {
            cum += r.step_log_likelihoods[static_cast<std::size_t>(t)];
            s += std::string(method_name(r.method)) + "," + std::to_string(t + 1) + "," +
                 detail::format_double(r.step_log_likelihoods[static_cast<std::size_t>(t)]) + "," +
                 detail::format_double(cum) + "\n";
        }
    }
    return s;
}

nlohmann::json results_to_json(const std::vector<TrialResult>& results, const std::vector<MethodMetrics>& metrics) {
    nlohmann::json j;
    j["trials"] = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json t{{"method", std::string(1, method_letter(r.method))},
                         {"method_name", method_name(r.method)},
                         {"trial", r.trial},
                         {"success", r.success},
                         {"nearest_success", r.nearest_success},
                         {"path_length", r.path_length}};
        if (r.failure.empty()) {
            t["cumulative_log_likelihood"] = r.cumulative_log_likelihood;
            t["final_state"] = {r.final_state->col, r.final_state->row};
            t["reached_room"] = r.reached_room ? nlohmann::json(*r.reached_room) : nlohmann::json(nullptr);
        } else {
            t["failure"] = r.failure;
        }
        j["trials"].push_back(std::move(t));
    }
    j["metrics"] = nlohmann::json::array();
    for (const auto& m : metrics) {
        j["metrics"].push_back({{"method", std::string(1, method_letter(m.method))},
                                {"method_name", method_name(m.method)},
                                {"trials", m.trials},
                                {"nsr", m.nsr},
                                {"near_nsr", m.near_nsr},
                                {"pl", m.path_length ? nlohmann::json(*m.path_length) : nlohmann::json("N/A")}});
    }
    j["metadata"] = {{"pl", "mean path length in cells over successful trials only"},
                     {"success", "final state inside a region named by the instruction"},
                     {"nearest", "region with minimum shortest-path distance from start to its anchor"}};
    return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario s;
    try {
        if (!j.contains("environment")) throw ParseError("environment", "missing field");
        s.environment = environment_spec_from_json(j.at("environment"));
        if (!j.contains("instruction")) throw ParseError("instruction", "missing field");
        if (j.at("instruction").is_string()) {
            std::istringstream in(j.at("instruction").get<std::string>());
            for (std::string w; in >> w;) s.instruction.push_back(w);
        } else {
            s.instruction = j.at("instruction").get<std::vector<std::string>>();
        }
        if (j.contains("start") && !j.at("start").is_null()) {
            const auto st = j.at("start").get<std::vector<int>>();
            if (st.size() != 2) throw ParseError("start", "expected [col, row]");
            s.start = Cell{st[0], st[1]};
        }
        s.horizon = j.value("horizon", s.horizon);
        if (j.contains("methods")) {
            s.methods.clear();
            for (const auto& m : j.at("methods")) s.methods.push_back(parse_method(m.get<std::string>()));
        }
        s.seed = j.value("seed", std::uint64_t{0});
        s.trials = j.value("trials", 1);
        s.candidates = j.value("candidates", std::size_t{10});
        const std::string actions = j.value("actions", std::string("vonneumann"));
        if (actions != "vonneumann" && actions != "moore") throw ParseError("actions", "expected vonneumann or moore");
        s.diagonals = actions == "moore";
        s.stay = j.value("stay", true);
        s.inflation.robot_radius = j.value("robot_radius", s.inflation.robot_radius);
        s.inflation.inflation_radius = j.value("inflation_radius", s.inflation.inflation_radius);
        s.costmap_weight = j.value("costmap_weight", 1.0);
        const std::string fit = j.value("fit", std::string("fixed"));
        if (fit != "fixed" && fit != "gibbs") throw ParseError("fit", "expected fixed or gibbs");
        s.fit = fit == "gibbs" ? FitMode::Gibbs : FitMode::Fixed;
        if (j.contains("gibbs")) {
            const auto& g = j.at("gibbs");
            s.gibbs.n_concepts = g.value("concepts", s.gibbs.n_concepts);
            s.gibbs.n_positions = g.value("positions", s.gibbs.n_positions);
            s.gibbs.iterations = g.value("iterations", s.gibbs.iterations);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("scenario", e.what());
    }
    if (s.horizon < 1) throw ValidationError("horizon must be >= 1");
    if (s.trials < 1) throw ValidationError("trials must be >= 1");
    if (s.instruction.empty()) throw ValidationError("instruction is empty");
    if (s.methods.empty()) throw ValidationError("no methods requested");
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, e.what());
    }
    return scenario_from_json(j);
}

}  // namespace spnav
