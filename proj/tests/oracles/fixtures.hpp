#pragma once

// Small hand-built maps, models and fields shared by the unit tests.

#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "spnav/costmap.hpp"
#include "spnav/field.hpp"
#include "spnav/model.hpp"

namespace spnav {
inline void PrintTo(const Cell& c, std::ostream* os) { *os << "(" << c.col << "," << c.row << ")"; }
}  // namespace spnav

namespace fixtures {

inline spnav::GridGeometry geometry(int w, int h, double res = 1.0) { return {w, h, res, spnav::Vec2{0.0, 0.0}}; }

inline spnav::CostMap uniform_costmap(int w, int h, double res = 1.0, double value = 1.0) {
    return spnav::CostMap(geometry(w, h, res), std::vector<double>(static_cast<std::size_t>(w) * h, value));
}

inline spnav::Field field(int w, int h, std::vector<double> values) { return {geometry(w, h), std::move(values)}; }

inline spnav::Field random_field(std::mt19937_64& rng, int w, int h, double blocked = 0.0) {
    std::uniform_real_distribution<double> u(-10.0, 0.0);
    std::uniform_real_distribution<double> b(0.0, 1.0);
    spnav::Field f{geometry(w, h), std::vector<double>(static_cast<std::size_t>(w) * h)};
    for (auto& v : f.values) v = b(rng) < blocked ? -std::numeric_limits<double>::infinity() : u(rng);
    return f;
}

/// One concept per entry of `words`, each owning one Gaussian at `means[i]`
/// with isotropic variance `var`. W puts `peak` on its own words.
inline spnav::SpatialConceptModel model(const std::vector<std::vector<std::string>>& words,
                                        const std::vector<spnav::Vec2>& means, double var = 1.0, double peak = 0.9,
                                        double own_phi = 0.9) {
    spnav::SpatialConceptModel m;
    for (const auto& ws : words) {
        for (const auto& w : ws) m.vocabulary.add(w);
    }
    const std::size_t L = words.size(), K = means.size(), V = m.vocabulary.size();
    m.mixture.assign(L, 1.0 / static_cast<double>(L));
    for (std::size_t l = 0; l < L; ++l) {
        spnav::SpatialConcept c;
        c.word_dist.assign(V, 0.0);
        const double rest = V > words[l].size() ? (1.0 - peak) / static_cast<double>(V - words[l].size()) : 0.0;
        const double own = V > words[l].size() ? peak / static_cast<double>(words[l].size())
                                                : 1.0 / static_cast<double>(words[l].size());
        for (std::size_t v = 0; v < V; ++v) c.word_dist[v] = rest;
        for (const auto& w : words[l]) c.word_dist[*m.vocabulary.find(w)] = own;
        c.position_dist.assign(K, K > 1 ? (1.0 - own_phi) / static_cast<double>(K - 1) : 1.0);
        if (K > 1) c.position_dist[l % K] = own_phi;
        m.concepts.push_back(std::move(c));
    }
    for (const auto& mu : means) m.positions.push_back({mu, spnav::Mat2::Identity() * var});
    m.validate();
    return m;
}

inline spnav::Instruction say(const spnav::SpatialConceptModel& m, const std::vector<std::string>& words) {
    return spnav::make_instruction(m.vocabulary, words).instruction;
}

}  // namespace fixtures
