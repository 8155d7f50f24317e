#include "spnav/training_io.hpp"

#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>

#include "format.hpp"
#include "spnav/error.hpp"
#include "spnav/map_io.hpp"

namespace spnav {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = s.find(sep, start);
        out.push_back(s.substr(start, end == std::string::npos ? std::string::npos : end - start));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, const std::string& field) {
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ParseError(field, "bad number '" + tok + "'");
    }
    return v;
}

std::optional<int> parse_optional_int(const std::string& tok, const std::string& field) {
    if (tok.empty()) return std::nullopt;
    int v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) throw ParseError(field, "bad integer '" + tok + "'");
    return v;
}

}  // namespace

TrainingSet parse_training_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("header", "empty training file");
    auto header = split(trim(line), ',');
    for (auto& h : header) h = trim(h);
    auto column = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        return -1;
    };
    const int cx = column("x");
    const int cy = column("y");
    const int cw = column("words");
    const int cc = column("c_id");
    const int ci = column("i_id");
    if (cx < 0) throw ParseError("x", "missing column");
    if (cy < 0) throw ParseError("y", "missing column");
    if (cw < 0) throw ParseError("words", "missing column");

    TrainingSet out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        auto cells = split(line, ',');
        for (auto& c : cells) c = trim(c);
        if (cells.size() != header.size()) {
            throw ParseError("line " + std::to_string(lineno), "expected " + std::to_string(header.size()) + " columns");
        }
        TrainingRecord r;
        r.position = Vec2(parse_double(cells[static_cast<std::size_t>(cx)], "x"),
                          parse_double(cells[static_cast<std::size_t>(cy)], "y"));
        std::istringstream ws(cells[static_cast<std::size_t>(cw)]);
        for (std::string w; ws >> w;) r.words.push_back(w);
        if (cc >= 0) r.concept_id = parse_optional_int(cells[static_cast<std::size_t>(cc)], "c_id");
        if (ci >= 0) r.position_id = parse_optional_int(cells[static_cast<std::size_t>(ci)], "i_id");
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_training_csv(const TrainingSet& data) {
    std::string out = "x,y,words,c_id,i_id\n";
    for (const auto& r : data) {
        out += detail::format_double(r.position.x()) + "," + detail::format_double(r.position.y()) + ",";
        for (std::size_t i = 0; i < r.words.size(); ++i) {
            if (i) out += ' ';
            out += r.words[i];
        }
        out += ",";
        if (r.concept_id) out += std::to_string(*r.concept_id);
        out += ",";
        if (r.position_id) out += std::to_string(*r.position_id);
        out += "\n";
    }
    return out;
}

TrainingSet parse_training_json(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError("training", e.what());
    }
    if (!j.is_array()) throw ParseError("training", "expected an array of records");
    TrainingSet out;
    for (std::size_t t = 0; t < j.size(); ++t) {
        const auto& rec = j[t];
        const std::string path = "[" + std::to_string(t) + "].";
        for (const char* key : {"x", "y", "words"}) {
            if (!rec.contains(key)) throw ParseError(path + key, "missing field");
        }
        try {
            TrainingRecord r;
            r.position = Vec2(rec.at("x").get<double>(), rec.at("y").get<double>());
            r.words = rec.at("words").get<std::vector<std::string>>();
            if (rec.contains("c_id") && !rec.at("c_id").is_null()) r.concept_id = rec.at("c_id").get<int>();
            if (rec.contains("i_id") && !rec.at("i_id").is_null()) r.position_id = rec.at("i_id").get<int>();
            out.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw ParseError(path, e.what());
        }
    }
    return out;
}

TrainingSet load_training_file(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    if (path.extension() == ".json") return parse_training_json(text);
    return parse_training_csv(text);
}

}  // namespace spnav
