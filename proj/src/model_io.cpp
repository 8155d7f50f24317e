#include "spnav/model_io.hpp"

#include <nlohmann/json.hpp>

#include "spnav/error.hpp"
#include "spnav/map_io.hpp"

namespace spnav {

using nlohmann::json;

namespace {

constexpr const char* kFormatTag = "spnav.spatial-concept-model";

template <typename T>
T get_field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(path + key, "missing field");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(path + key, e.what());
    }
}

}  // namespace

std::string save_model(const SpatialConceptModel& model) {
    json j;
    j["format"] = kFormatTag;
    j["version"] = kModelFormatVersion;
    j["vocabulary"] = model.vocabulary.words();
    j["pi"] = model.mixture;
    j["concepts"] = json::array();
    for (const auto& c : model.concepts) j["concepts"].push_back({{"W", c.word_dist}, {"phi", c.position_dist}});
    j["positions"] = json::array();
    for (const auto& p : model.positions) {
        const auto& s = p.covariance;
        j["positions"].push_back({{"mu", {p.mean.x(), p.mean.y()}},
                                  {"sigma", {{s(0, 0), s(0, 1)}, {s(1, 0), s(1, 1)}}}});
    }
    return j.dump(1) + "\n";
}

SpatialConceptModel load_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError("model", e.what());
    }
    if (get_field<std::string>(j, "format", "") != kFormatTag) throw ParseError("format", "not a spatial concept model file");
    const int version = get_field<int>(j, "version", "");
    if (version != kModelFormatVersion) {
        throw ParseError("version", "unsupported version " + std::to_string(version) + " (expected " +
                                        std::to_string(kModelFormatVersion) + ")");
    }
    SpatialConceptModel m;
    try {
        m.vocabulary = Vocabulary(get_field<std::vector<std::string>>(j, "vocabulary", ""));
    } catch (const ValidationError& e) {
        throw ParseError("vocabulary", e.what());
    }
    m.mixture = get_field<std::vector<double>>(j, "pi", "");
    const json positions = get_field<json>(j, "positions", "");
    if (!positions.is_array()) throw ParseError("positions", "expected an array");
    for (std::size_t k = 0; k < positions.size(); ++k) {
        const std::string path = "positions[" + std::to_string(k) + "].";
        const auto mu = get_field<std::vector<double>>(positions[k], "mu", path);
        const auto sigma = get_field<std::vector<std::vector<double>>>(positions[k], "sigma", path);
        if (mu.size() != 2) throw ParseError(path + "mu", "expected 2 entries");
        if (sigma.size() != 2 || sigma[0].size() != 2 || sigma[1].size() != 2) throw ParseError(path + "sigma", "expected 2x2");
        PositionDistribution d;
        d.mean = Vec2(mu[0], mu[1]);
        d.covariance << sigma[0][0], sigma[0][1], sigma[1][0], sigma[1][1];
        m.positions.push_back(d);
    }
    const json concepts = get_field<json>(j, "concepts", "");
    if (!concepts.is_array()) throw ParseError("concepts", "expected an array");
    for (std::size_t l = 0; l < concepts.size(); ++l) {
        const std::string path = "concepts[" + std::to_string(l) + "].";
        SpatialConcept c;
        c.word_dist = get_field<std::vector<double>>(concepts[l], "W", path);
        c.position_dist = get_field<std::vector<double>>(concepts[l], "phi", path);
        if (c.word_dist.size() != m.vocabulary.size()) throw ParseError(path + "W", "length does not match vocabulary");
        if (c.position_dist.size() != m.positions.size()) throw ParseError(path + "phi", "length does not match positions");
        m.concepts.push_back(std::move(c));
    }
    if (m.mixture.size() != m.concepts.size()) throw ParseError("pi", "length does not match concepts");
    m.validate();
    return m;
}

SpatialConceptModel load_model_file(const std::filesystem::path& path) { return load_model(read_file(path)); }

}  // namespace spnav
