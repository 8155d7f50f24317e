#include "spnav/emission.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

#include "spnav/error.hpp"
#include "spnav/kernels.hpp"

namespace spnav {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_instruction(const SpatialConceptModel& model, const Instruction& instruction) {
    if (instruction.counts.size() != model.vocabulary.size()) {
        throw ValidationError("instruction size does not match the model vocabulary");
    }
    for (int c : instruction.counts) {
        if (c < 0) throw ValidationError("instruction counts must be non-negative");
    }
    if (instruction.total() == 0) throw InstructionError("instruction has no words");
}

kernels::GaussianTerm make_term(const PositionDistribution& d) {
    kernels::GaussianTerm g;
    g.mean = d.mean;
    g.precision = d.covariance.inverse();
    g.log_norm = -std::log(2.0 * std::numbers::pi) - 0.5 * std::log(d.covariance.determinant());
    return g;
}

/// One term per position distribution carrying log Σ_C Mult(S|W_C) π_C φ_C[k].
std::vector<kernels::GaussianTerm> mixture_terms(const SpatialConceptModel& model, const Instruction& instruction) {
    const std::size_t L = model.concepts.size();
    std::vector<double> concept_weight(L);
    for (std::size_t l = 0; l < L; ++l) {
        concept_weight[l] = word_likelihood(model, instruction, l) + std::log(model.mixture[l]);
    }
    std::vector<kernels::GaussianTerm> terms;
    terms.reserve(model.positions.size());
    std::vector<double> parts(L);
    for (std::size_t k = 0; k < model.positions.size(); ++k) {
        auto term = make_term(model.positions[k]);
        double mx = kNegInf;
        for (std::size_t l = 0; l < L; ++l) {
            parts[l] = concept_weight[l] + std::log(model.concepts[l].position_dist[k]);
            mx = std::max(mx, parts[l]);
        }
        if (mx == kNegInf) {
            term.log_weight = kNegInf;
        } else {
            double s = 0.0;
            for (double p : parts) s += std::exp(p - mx);
            term.log_weight = mx + std::log(s);
        }
        terms.push_back(term);
    }
    return terms;
}

Field run_emission(const SpatialConceptModel& model, const GridGeometry& geometry, std::span<const double> cost,
                   const Instruction& instruction, Exec exec) {
    check_instruction(model, instruction);
    const auto terms = mixture_terms(model, instruction);
    Field f{geometry, std::vector<double>(geometry.size())};
    if (exec == Exec::Serial) {
        kernels::serial::emission(geometry, cost, terms, 0.0, f.values);
    } else {
        kernels::omp::emission(geometry, cost, terms, 0.0, f.values);
    }
    return f;
}

}  // namespace

double word_likelihood(const SpatialConceptModel& model, const Instruction& instruction, std::size_t concept_index) {
    check_instruction(model, instruction);
    if (concept_index >= model.concepts.size()) throw ValidationError("concept index out of range");
    const auto& W = model.concepts[concept_index].word_dist;
    double s = 0.0;
    for (std::size_t w = 0; w < W.size(); ++w) {
        if (instruction.counts[w] > 0) s += instruction.counts[w] * std::log(W[w]);
    }
    return s;
}

double log_gaussian_density(const PositionDistribution& dist, const Vec2& point) {
    const auto term = make_term(dist);
    const Vec2 d = point - term.mean;
    return term.log_norm - 0.5 * d.dot(term.precision * d);
}

Field emission_log_field(const SpatialConceptModel& model, const CostMap& costmap, const Instruction& instruction,
                         Exec exec) {
    return run_emission(model, costmap.geometry(), costmap.values(), instruction, exec);
}

Field reward_field(const SpatialConceptModel& model, const CostMap& costmap, const Instruction& instruction,
                   Exec exec) {
    return emission_log_field(model, costmap, instruction, exec);
}

Field semantic_log_field(const SpatialConceptModel& model, const GridGeometry& geometry,
                         const Instruction& instruction, Exec exec) {
    const std::vector<double> ones(geometry.size(), 1.0);
    return run_emission(model, geometry, ones, instruction, exec);
}

}  // namespace spnav
