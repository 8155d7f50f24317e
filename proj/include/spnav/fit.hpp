#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spnav/model.hpp"

namespace spnav {

struct FitReport {
    std::vector<int> records_per_concept;
    std::vector<int> records_per_position;
    double data_log_likelihood = 0.0;  // Σ_t log p(x_t, S_t | model)
    std::vector<int> concept_assignment;
    std::vector<int> position_assignment;
    std::vector<std::string> warnings;
};

struct FitResult {
    SpatialConceptModel model;
    FitReport report;
};

/// Vocabulary in first-seen order over the records.
Vocabulary build_vocabulary(const TrainingSet& data);

/// Posterior means under Dirichlet / Normal-Inverse-Wishart conjugacy with all
/// latent assignments supplied by the records.
FitResult fit_fixed_assignments(const TrainingSet& data, const Hyperparameters& hyper);

struct GibbsOptions {
    int n_concepts = 10;
    int n_positions = 10;
    int iterations = 100;
    std::uint64_t seed = 0;
};

/// Blocked Gibbs over (i_t, C_t) with a fixed truncation; returns the
/// final-iteration point estimate. Deterministic given the seed.
FitResult fit_gibbs(const TrainingSet& data, const Hyperparameters& hyper, const GibbsOptions& options);

/// Σ_t log Σ_{C,i} π_C W_C(S_t) φ_C[i] N(x_t | μ_i, Σ_i).
double data_log_likelihood(const SpatialConceptModel& model, const TrainingSet& data);

}  // namespace spnav
