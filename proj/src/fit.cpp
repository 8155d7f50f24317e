#include "spnav/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "spnav/emission.hpp"
#include "spnav/error.hpp"

namespace spnav {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(const std::vector<double>& v) {
    double mx = kNegInf;
    for (double x : v) mx = std::max(mx, x);
    if (mx == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : v) s += std::exp(x - mx);
    return mx + std::log(s);
}

struct Assignments {
    std::vector<int> concept_of;
    std::vector<int> position_of;
};

/// Word-count matrix of each record over the vocabulary, as sparse pairs.
std::vector<std::vector<std::pair<std::size_t, int>>> bag_of_words(const TrainingSet& data, const Vocabulary& vocab) {
    std::vector<std::vector<std::pair<std::size_t, int>>> bags(data.size());
    for (std::size_t t = 0; t < data.size(); ++t) {
        std::vector<int> counts(vocab.size(), 0);
        for (const auto& w : data[t].words) {
            if (auto idx = vocab.find(w)) ++counts[*idx];
        }
        for (std::size_t w = 0; w < counts.size(); ++w) {
            if (counts[w]) bags[t].emplace_back(w, counts[w]);
        }
    }
    return bags;
}

PositionDistribution niw_posterior_mean(const std::vector<Vec2>& points, const Hyperparameters& h) {
    const double n = static_cast<double>(points.size());
    Vec2 xbar = Vec2::Zero();
    for (const auto& p : points) xbar += p;
    xbar /= n;
    Mat2 scatter = Mat2::Zero();
    for (const auto& p : points) scatter += (p - xbar) * (p - xbar).transpose();
    const double kappa_n = h.kappa0 + n;
    const double nu_n = h.nu0 + n;
    const Vec2 diff = xbar - h.m0;
    const Mat2 v_n = h.V0 + scatter + (h.kappa0 * n / kappa_n) * diff * diff.transpose();
    if (!(nu_n - 3.0 > 0.0)) throw ValidationError("inverse-Wishart posterior mean undefined (nu_n <= 3)");
    PositionDistribution out;
    out.mean = (h.kappa0 * h.m0 + n * xbar) / kappa_n;
    out.covariance = v_n / (nu_n - 3.0);
    out.covariance(1, 0) = out.covariance(0, 1);
    return out;
}

/// Posterior-mean parameters given assignments. Positions flagged inactive
/// get no φ mass and no distribution.
SpatialConceptModel estimate(const TrainingSet& data, const Vocabulary& vocab,
                             const std::vector<std::vector<std::pair<std::size_t, int>>>& bags,
                             const Assignments& a, int n_concepts, const std::vector<int>& active_positions,
                             const Hyperparameters& h) {
    const std::size_t L = static_cast<std::size_t>(n_concepts);
    const std::size_t K = active_positions.size();
    std::vector<int> slot_of(static_cast<std::size_t>(*std::max_element(active_positions.begin(), active_positions.end()) + 1), -1);
    for (std::size_t s = 0; s < K; ++s) slot_of[static_cast<std::size_t>(active_positions[s])] = static_cast<int>(s);

    std::vector<std::vector<double>> n_lw(L, std::vector<double>(vocab.size(), 0.0));
    std::vector<std::vector<double>> n_lk(L, std::vector<double>(K, 0.0));
    std::vector<double> n_l(L, 0.0);
    std::vector<std::vector<Vec2>> points(K);
    for (std::size_t t = 0; t < data.size(); ++t) {
        const auto l = static_cast<std::size_t>(a.concept_of[t]);
        const int slot = slot_of[static_cast<std::size_t>(a.position_of[t])];
        n_l[l] += 1.0;
        n_lk[l][static_cast<std::size_t>(slot)] += 1.0;
        for (auto [w, c] : bags[t]) n_lw[l][w] += c;
        points[static_cast<std::size_t>(slot)].push_back(data[t].position);
    }

    SpatialConceptModel m;
    m.vocabulary = vocab;
    const double N = static_cast<double>(data.size());
    const double V = static_cast<double>(vocab.size());
    m.mixture.resize(L);
    m.concepts.resize(L);
    for (std::size_t l = 0; l < L; ++l) {
        m.mixture[l] = (n_l[l] + h.alpha) / (N + h.alpha * static_cast<double>(L));
        double words_l = 0.0;
        for (double c : n_lw[l]) words_l += c;
        auto& W = m.concepts[l].word_dist;
        W.resize(vocab.size());
        for (std::size_t w = 0; w < vocab.size(); ++w) W[w] = (n_lw[l][w] + h.beta) / (words_l + h.beta * V);
        auto& phi = m.concepts[l].position_dist;
        phi.resize(K);
        for (std::size_t k = 0; k < K; ++k) phi[k] = (n_lk[l][k] + h.gamma) / (n_l[l] + h.gamma * static_cast<double>(K));
    }
    m.positions.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        if (points[k].empty()) {
            throw ValidationError("position distribution " + std::to_string(active_positions[k]) + " has no assigned points");
        }
        m.positions.push_back(niw_posterior_mean(points[k], h));
    }
    return m;
}

FitReport make_report(const SpatialConceptModel& m, const TrainingSet& data, const Assignments& a) {
    FitReport r;
    r.records_per_concept.assign(m.concepts.size(), 0);
    r.records_per_position.assign(m.positions.size(), 0);
    for (std::size_t t = 0; t < data.size(); ++t) {
        ++r.records_per_concept[static_cast<std::size_t>(a.concept_of[t])];
        ++r.records_per_position[static_cast<std::size_t>(a.position_of[t])];
    }
    r.concept_assignment = a.concept_of;
    r.position_assignment = a.position_of;
    r.data_log_likelihood = data_log_likelihood(m, data);
    return r;
}

/// Uniform double in [0,1) from the top 53 bits.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int sample_log_categorical(const std::vector<double>& logp, std::mt19937_64& rng) {
    double mx = kNegInf;
    for (double v : logp) mx = std::max(mx, v);
    std::vector<double> cdf(logp.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < logp.size(); ++i) {
        acc += (logp[i] == kNegInf) ? 0.0 : std::exp(logp[i] - mx);
        cdf[i] = acc;
    }
    const double u = uniform01(rng) * acc;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        if (u < cdf[i]) return static_cast<int>(i);
    }
    for (std::size_t i = cdf.size(); i-- > 0;) {
        if (logp[i] != kNegInf) return static_cast<int>(i);
    }
    return 0;
}

/// k-means++ seeding followed by Lloyd iterations.
std::vector<int> kmeans_init(const TrainingSet& data, int k, std::mt19937_64& rng) {
    const std::size_t n = data.size();
    const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), n);
    std::vector<Vec2> centers;
    centers.push_back(data[rng() % n].position);
    std::vector<double> d2(n);
    while (centers.size() < kk) {
        double total = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centers) best = std::min(best, (data[t].position - c).squaredNorm());
            d2[t] = best;
            total += best;
        }
        if (total == 0.0) break;
        const double u = uniform01(rng) * total;
        double acc = 0.0;
        std::size_t pick = n - 1;
        for (std::size_t t = 0; t < n; ++t) {
            acc += d2[t];
            if (u < acc) {
                pick = t;
                break;
            }
        }
        centers.push_back(data[pick].position);
    }
    std::vector<int> assign(n, 0);
    for (int iter = 0; iter < 20; ++iter) {
        bool changed = false;
        for (std::size_t t = 0; t < n; ++t) {
            int best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < centers.size(); ++c) {
                const double d = (data[t].position - centers[c]).squaredNorm();
                if (d < bd) {
                    bd = d;
                    best = static_cast<int>(c);
                }
            }
            if (assign[t] != best) changed = true;
            assign[t] = best;
        }
        std::vector<Vec2> sum(centers.size(), Vec2::Zero());
        std::vector<int> cnt(centers.size(), 0);
        for (std::size_t t = 0; t < n; ++t) {
            sum[static_cast<std::size_t>(assign[t])] += data[t].position;
            ++cnt[static_cast<std::size_t>(assign[t])];
        }
        for (std::size_t c = 0; c < centers.size(); ++c) {
            if (cnt[c]) centers[c] = sum[c] / cnt[c];
        }
        if (!changed && iter > 0) break;
    }
    return assign;
}

}  // namespace

Vocabulary build_vocabulary(const TrainingSet& data) {
    Vocabulary v;
    for (const auto& r : data) {
        for (const auto& w : r.words) v.add(w);
    }
    return v;
}

double data_log_likelihood(const SpatialConceptModel& model, const TrainingSet& data) {
    double total = 0.0;
    std::vector<double> terms;
    for (const auto& rec : data) {
        Instruction bag{std::vector<int>(model.vocabulary.size(), 0)};
        for (const auto& w : rec.words) {
            if (auto idx = model.vocabulary.find(w)) ++bag.counts[*idx];
        }
        terms.clear();
        const bool spoken = bag.total() > 0;  // an empty utterance has likelihood 1
        for (std::size_t l = 0; l < model.concepts.size(); ++l) {
            const double base = std::log(model.mixture[l]) + (spoken ? word_likelihood(model, bag, l) : 0.0);
            for (std::size_t k = 0; k < model.positions.size(); ++k) {
                terms.push_back(base + std::log(model.concepts[l].position_dist[k]) +
                                log_gaussian_density(model.positions[k], rec.position));
            }
        }
        total += logsumexp(terms);
    }
    return total;
}

FitResult fit_fixed_assignments(const TrainingSet& data, const Hyperparameters& hyper) {
    hyper.validate();
    if (data.empty()) throw ValidationError("training set is empty");
    Assignments a;
    int n_concepts = 0;
    int n_positions = 0;
    for (std::size_t t = 0; t < data.size(); ++t) {
        const auto& r = data[t];
        if (!r.position.allFinite()) throw ValidationError("record " + std::to_string(t) + " has a non-finite position");
        if (!r.concept_id || !r.position_id) {
            throw ValidationError("record " + std::to_string(t) + " lacks concept_id or position_id");
        }
        if (*r.concept_id < 0 || *r.position_id < 0) throw ValidationError("latent ids must be non-negative");
        a.concept_of.push_back(*r.concept_id);
        a.position_of.push_back(*r.position_id);
        n_concepts = std::max(n_concepts, *r.concept_id + 1);
        n_positions = std::max(n_positions, *r.position_id + 1);
    }
    std::vector<int> seen_c(static_cast<std::size_t>(n_concepts), 0);
    for (int c : a.concept_of) seen_c[static_cast<std::size_t>(c)] = 1;
    for (int l = 0; l < n_concepts; ++l) {
        if (!seen_c[static_cast<std::size_t>(l)]) throw ValidationError("concept ids are not contiguous: " + std::to_string(l) + " unused");
    }
    // position ids with no points are rejected inside estimate()
    std::vector<int> active(static_cast<std::size_t>(n_positions));
    for (int k = 0; k < n_positions; ++k) active[static_cast<std::size_t>(k)] = k;

    const Vocabulary vocab = build_vocabulary(data);
    if (vocab.empty()) throw ValidationError("training set has no words");
    const auto bags = bag_of_words(data, vocab);
    FitResult out;
    out.model = estimate(data, vocab, bags, a, n_concepts, active, hyper);
    out.report = make_report(out.model, data, a);
    return out;
}

FitResult fit_gibbs(const TrainingSet& data, const Hyperparameters& hyper, const GibbsOptions& opt) {
    hyper.validate();
    if (data.empty()) throw ValidationError("training set is empty");
    if (opt.n_concepts < 1 || opt.n_positions < 1) throw ValidationError("n_concepts and n_positions must be >= 1");
    if (opt.iterations < 1) throw ValidationError("iterations must be >= 1");
    for (const auto& r : data) {
        if (!r.position.allFinite()) throw ValidationError("training position is not finite");
    }
    const Vocabulary vocab = build_vocabulary(data);
    if (vocab.empty()) throw ValidationError("training set has no words");
    const auto bags = bag_of_words(data, vocab);
    const std::size_t n = data.size();
    const int L = opt.n_concepts;

    std::vector<std::string> warnings;
    if (static_cast<std::size_t>(opt.n_positions) > n) {
        warnings.push_back("n_positions (" + std::to_string(opt.n_positions) + ") exceeds the number of data points (" +
                           std::to_string(n) + "); empty clusters are dropped");
    }

    std::mt19937_64 rng(opt.seed);
    Assignments a;
    a.position_of = kmeans_init(data, opt.n_positions, rng);
    a.concept_of.resize(n);
    for (std::size_t t = 0; t < n; ++t) a.concept_of[t] = a.position_of[t] % L;

    auto active_positions = [&] {
        std::vector<int> used(static_cast<std::size_t>(opt.n_positions), 0);
        for (int k : a.position_of) used[static_cast<std::size_t>(k)] = 1;
        std::vector<int> act;
        for (int k = 0; k < opt.n_positions; ++k) {
            if (used[static_cast<std::size_t>(k)]) act.push_back(k);
        }
        return act;
    };

    std::vector<int> active = active_positions();
    SpatialConceptModel m = estimate(data, vocab, bags, a, L, active, hyper);
    std::vector<double> logp_i;
    std::vector<double> logp_c(static_cast<std::size_t>(L));
    for (int iter = 0; iter < opt.iterations; ++iter) {
        for (std::size_t t = 0; t < n; ++t) {
            const int l = a.concept_of[t];
            logp_i.assign(active.size(), 0.0);
            for (std::size_t s = 0; s < active.size(); ++s) {
                logp_i[s] = log_gaussian_density(m.positions[s], data[t].position) +
                            std::log(m.concepts[static_cast<std::size_t>(l)].position_dist[s]);
            }
            const int slot = sample_log_categorical(logp_i, rng);
            a.position_of[t] = active[static_cast<std::size_t>(slot)];

            for (int c = 0; c < L; ++c) {
                const auto& concept_c = m.concepts[static_cast<std::size_t>(c)];
                double lw = 0.0;
                for (auto [w, cnt] : bags[t]) lw += cnt * std::log(concept_c.word_dist[w]);
                logp_c[static_cast<std::size_t>(c)] = lw + std::log(concept_c.position_dist[static_cast<std::size_t>(slot)]) +
                                                      std::log(m.mixture[static_cast<std::size_t>(c)]);
            }
            a.concept_of[t] = sample_log_categorical(logp_c, rng);
        }
        active = active_positions();
        m = estimate(data, vocab, bags, a, L, active, hyper);
    }

    // Relabel position ids to the compacted support.
    std::vector<int> compact(static_cast<std::size_t>(opt.n_positions), -1);
    for (std::size_t s = 0; s < active.size(); ++s) compact[static_cast<std::size_t>(active[s])] = static_cast<int>(s);
    for (int& k : a.position_of) k = compact[static_cast<std::size_t>(k)];
    if (active.size() < static_cast<std::size_t>(opt.n_positions)) {
        warnings.push_back(std::to_string(opt.n_positions - static_cast<int>(active.size())) +
                           " empty position cluster(s) dropped");
    }

    FitResult out;
    out.model = std::move(m);
    out.report = make_report(out.model, data, a);
    out.report.warnings = std::move(warnings);
    return out;
}

}  // namespace spnav
