#include "spnav/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "spnav/error.hpp"

namespace spnav {

Vocabulary::Vocabulary(std::vector<std::string> words) {
    for (auto& w : words) {
        if (index_.count(w)) throw ValidationError("duplicate vocabulary word '" + w + "'");
        index_.emplace(w, words_.size());
        words_.push_back(std::move(w));
    }
}

std::optional<std::size_t> Vocabulary::find(std::string_view w) const {
    auto it = index_.find(std::string(w));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Vocabulary::add(const std::string& w) {
    auto [it, inserted] = index_.emplace(w, words_.size());
    if (inserted) words_.push_back(w);
    return it->second;
}

bool is_symmetric_positive_definite(const Mat2& m) {
    if (!m.allFinite()) return false;
    const double scale = std::max({std::abs(m(0, 0)), std::abs(m(1, 1)), std::abs(m(0, 1)), 1e-300});
    if (std::abs(m(0, 1) - m(1, 0)) > 1e-12 * scale) return false;
    // 2x2 Sylvester criterion
    return m(0, 0) > 0.0 && m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) > 0.0;
}

namespace {

void check_distribution(const std::vector<double>& p, std::size_t expected, const std::string& what) {
    if (p.size() != expected) {
        throw ValidationError(what + " has " + std::to_string(p.size()) + " entries, expected " +
                              std::to_string(expected));
    }
    double sum = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError(what + " has a negative or non-finite entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError(what + " does not sum to 1 (sum = " + std::to_string(sum) + ")");
}

}  // namespace

void SpatialConceptModel::validate() const {
    if (vocabulary.empty()) throw ValidationError("model vocabulary is empty");
    if (concepts.empty()) throw ValidationError("model has no concepts");
    if (positions.empty()) throw ValidationError("model has no position distributions");
    check_distribution(mixture, concepts.size(), "pi");
    for (std::size_t l = 0; l < concepts.size(); ++l) {
        const std::string tag = "concepts[" + std::to_string(l) + "]";
        check_distribution(concepts[l].word_dist, vocabulary.size(), tag + ".W");
        check_distribution(concepts[l].position_dist, positions.size(), tag + ".phi");
    }
    for (std::size_t k = 0; k < positions.size(); ++k) {
        if (!positions[k].mean.allFinite()) throw ValidationError("positions[" + std::to_string(k) + "].mu not finite");
        if (!is_symmetric_positive_definite(positions[k].covariance)) {
            throw ValidationError("positions[" + std::to_string(k) + "].sigma is not symmetric positive-definite");
        }
    }
}

void Hyperparameters::validate() const {
    if (!(alpha > 0 && gamma > 0 && beta > 0 && chi > 0)) throw ValidationError("concentrations must be > 0");
    if (!(kappa0 > 0)) throw ValidationError("kappa0 must be > 0");
    if (!(nu0 > 1)) throw ValidationError("nu0 must exceed dimension - 1 = 1");
    if (!m0.allFinite()) throw ValidationError("m0 must be finite");
    if (!is_symmetric_positive_definite(V0)) throw ValidationError("V0 must be symmetric positive-definite");
}

int Instruction::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

InstructionParse make_instruction(const Vocabulary& vocab, const std::vector<std::string>& words) {
    InstructionParse out;
    out.instruction.counts.assign(vocab.size(), 0);
    for (const auto& w : words) {
        if (auto idx = vocab.find(w)) {
            ++out.instruction.counts[*idx];
        } else {
            out.ignored.push_back(w);
        }
    }
    if (out.instruction.total() == 0) {
        throw InstructionError(words.empty() ? "instruction is empty" : "instruction has no in-vocabulary words");
    }
    return out;
}

const std::vector<std::string>& default_stop_words() {
    static const std::vector<std::string> words{"go", "to", "the", "a", "an", "please", "and", "or", "move"};
    return words;
}

std::vector<std::string> strip_stop_words(const std::vector<std::string>& words,
                                          const std::vector<std::string>& stop_words) {
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    std::vector<std::string> out;
    for (const auto& w : words) {
        const std::string lw = lower(w);
        const bool stop = std::any_of(stop_words.begin(), stop_words.end(),
                                      [&](const std::string& s) { return lower(s) == lw; });
        if (!stop) out.push_back(w);
    }
    return out;
}

}  // namespace spnav
