#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spnav/grid.hpp"

namespace spnav {

class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(std::vector<std::string> words);

    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    const std::string& word(std::size_t i) const { return words_[i]; }
    const std::vector<std::string>& words() const { return words_; }
    std::optional<std::size_t> find(std::string_view w) const;
    /// Returns the index of `w`, appending it if new.
    std::size_t add(const std::string& w);

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.words_ == b.words_; }

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// 2D Gaussian over world coordinates (meters).
struct PositionDistribution {
    Vec2 mean{0.0, 0.0};
    Mat2 covariance = Mat2::Identity();

    friend bool operator==(const PositionDistribution&, const PositionDistribution&) = default;
};

struct SpatialConcept {
    std::vector<double> word_dist;      // W_l, one entry per vocabulary word
    std::vector<double> position_dist;  // φ_l, one entry per position distribution

    friend bool operator==(const SpatialConcept&, const SpatialConcept&) = default;
};

struct SpatialConceptModel {
    Vocabulary vocabulary;
    std::vector<double> mixture;  // π over concepts
    std::vector<SpatialConcept> concepts;
    std::vector<PositionDistribution> positions;

    /// Throws ValidationError (schema or invariant violations).
    void validate() const;
    friend bool operator==(const SpatialConceptModel&, const SpatialConceptModel&) = default;
};

/// Prior of the fitter. Defaults are the simulator-experiment settings.
struct Hyperparameters {
    double alpha = 1.0;  // mixture π
    double gamma = 1.0;  // φ
    double beta = 0.1;   // W
    double chi = 0.1;    // image features; carried for completeness, unused
    Vec2 m0{0.0, 0.0};
    double kappa0 = 0.001;
    Mat2 V0 = (Mat2() << 2.0, 0.0, 0.0, 2.0).finished();
    double nu0 = 3.0;

    void validate() const;
};

/// Bag-of-words over a vocabulary.
struct Instruction {
    std::vector<int> counts;

    int total() const;
};

struct InstructionParse {
    Instruction instruction;
    std::vector<std::string> ignored;  // out-of-vocabulary words
};

/// Builds a bag-of-words; OOV words are reported in `ignored`. Throws
/// InstructionError when nothing in-vocabulary remains.
InstructionParse make_instruction(const Vocabulary& vocab, const std::vector<std::string>& words);

/// Drops stop words (case-insensitive) such as the "go to" trigger phrase.
std::vector<std::string> strip_stop_words(const std::vector<std::string>& words,
                                          const std::vector<std::string>& stop_words);
const std::vector<std::string>& default_stop_words();

struct TrainingRecord {
    Vec2 position{0.0, 0.0};
    std::vector<std::string> words;
    std::optional<int> concept_id;
    std::optional<int> position_id;
};

using TrainingSet = std::vector<TrainingRecord>;

bool is_symmetric_positive_definite(const Mat2& m);

}  // namespace spnav
