#include "spnav/map_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "format.hpp"
#include "spnav/error.hpp"

namespace spnav {

namespace {

template <typename T>
T require_key(const YAML::Node& root, const char* key) {
    const YAML::Node node = root[key];
    if (!node) throw ParseError(key, "missing metadata key");
    try {
        return node.as<T>();
    } catch (const YAML::Exception& e) {
        throw ParseError(key, "bad value: " + std::string(e.what()));
    }
}

class PgmReader {
public:
    explicit PgmReader(std::string_view bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char ch = bytes_[pos_];
            if (ch == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    int read_int(const char* field) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) throw ParseError(field, "value too large");
            ++pos_;
        }
        if (pos_ == start) throw ParseError(field, "expected an unsigned integer");
        return static_cast<int>(value);
    }

    std::string_view take(std::size_t n) {
        if (pos_ + n > bytes_.size()) throw ParseError("raster", "truncated pixel data");
        auto out = bytes_.substr(pos_, n);
        pos_ += n;
        return out;
    }

    std::size_t pos_ = 0;
    std::string_view bytes_;
};

}  // namespace

MapMetadata parse_map_metadata(std::string_view yaml) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml));
    } catch (const YAML::Exception& e) {
        throw ParseError("metadata", e.what());
    }
    if (!root.IsMap()) throw ParseError("metadata", "expected a key-value mapping");
    MapMetadata meta;
    if (root["image"]) meta.image = root["image"].as<std::string>();
    meta.resolution = require_key<double>(root, "resolution");
    const auto origin = require_key<std::vector<double>>(root, "origin");
    if (origin.size() < 2) throw ParseError("origin", "expected [x, y] or [x, y, yaw]");
    meta.origin = Vec2(origin[0], origin[1]);
    meta.occupied_thresh = require_key<double>(root, "occupied_thresh");
    meta.free_thresh = require_key<double>(root, "free_thresh");
    meta.negate = require_key<int>(root, "negate") != 0;
    if (!(meta.resolution > 0.0)) throw ParseError("resolution", "must be > 0");
    if (meta.free_thresh > meta.occupied_thresh) throw ParseError("free_thresh", "must not exceed occupied_thresh");
    return meta;
}

std::string format_map_metadata(const MapMetadata& meta) {
    using detail::format_double;
    std::ostringstream os;
    os << "image: " << meta.image << "\n"
       << "resolution: " << format_double(meta.resolution) << "\n"
       << "origin: [" << format_double(meta.origin.x()) << ", " << format_double(meta.origin.y()) << ", 0]\n"
       << "negate: " << (meta.negate ? 1 : 0) << "\n"
       << "occupied_thresh: " << format_double(meta.occupied_thresh) << "\n"
       << "free_thresh: " << format_double(meta.free_thresh) << "\n";
    return os.str();
}

GrayImage parse_pgm(std::string_view bytes) {
    PgmReader in(bytes);
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw ParseError("magic", "expected P2 or P5");
    }
    const bool binary = bytes[1] == '5';
    in.pos_ = 2;
    GrayImage img;
    img.width = in.read_int("width");
    img.height = in.read_int("height");
    img.maxval = in.read_int("maxval");
    if (img.width < 1) throw ParseError("width", "must be >= 1");
    if (img.height < 1) throw ParseError("height", "must be >= 1");
    if (img.maxval < 1 || img.maxval > 255) throw ParseError("maxval", "only 8-bit images (maxval 1..255) are supported");
    const std::size_t n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
    img.pixels.resize(n);
    if (binary) {
        if (in.pos_ >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[in.pos_]))) {
            throw ParseError("maxval", "missing whitespace before raster");
        }
        ++in.pos_;
        const auto raster = in.take(n);
        for (std::size_t i = 0; i < n; ++i) img.pixels[i] = static_cast<std::uint8_t>(raster[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = in.read_int("raster");
            if (v > img.maxval) throw ParseError("raster", "pixel exceeds maxval");
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (img.pixels[i] > img.maxval) throw ParseError("raster", "pixel exceeds maxval");
    }
    return img;
}

std::string format_pgm(const GrayImage& image) {
    std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
    return out;
}

OccupancyGrid load_map(std::string_view pgm_bytes, std::string_view metadata_yaml) {
    const MapMetadata meta = parse_map_metadata(metadata_yaml);
    const GrayImage img = parse_pgm(pgm_bytes);
    GridGeometry geo{img.width, img.height, meta.resolution, meta.origin};
    std::vector<CellState> cells(geo.size());
    const double maxval = img.maxval;
    for (int ir = 0; ir < img.height; ++ir) {
        const int row = img.height - 1 - ir;
        for (int col = 0; col < img.width; ++col) {
            const double g = img.pixels[static_cast<std::size_t>(ir) * img.width + col];
            const double p_occ = meta.negate ? g / maxval : (maxval - g) / maxval;
            CellState s = CellState::Unknown;
            if (p_occ > meta.occupied_thresh) {
                s = CellState::Occupied;
            } else if (p_occ < meta.free_thresh) {
                s = CellState::Free;
            }
            cells[geo.index({col, row})] = s;
        }
    }
    return OccupancyGrid(geo, std::move(cells));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

OccupancyGrid load_map_file(const std::filesystem::path& metadata_path, const std::filesystem::path& image_override) {
    const std::string yaml = read_file(metadata_path);
    std::filesystem::path image = image_override;
    if (image.empty()) {
        const MapMetadata meta = parse_map_metadata(yaml);
        if (meta.image.empty()) throw ParseError("image", "missing metadata key");
        image = meta.image;
        if (image.is_relative()) image = metadata_path.parent_path() / image;
    }
    return load_map(read_file(image), yaml);
}

SavedMap save_map(const OccupancyGrid& grid, const std::string& image_name) {
    const auto& geo = grid.geometry();
    GrayImage img{geo.width, geo.height, 255, std::vector<std::uint8_t>(geo.size())};
    for (int ir = 0; ir < geo.height; ++ir) {
        const int row = geo.height - 1 - ir;
        for (int col = 0; col < geo.width; ++col) {
            std::uint8_t g = 205;
            switch (grid.at({col, row})) {
                case CellState::Free: g = 254; break;
                case CellState::Occupied: g = 0; break;
                case CellState::Unknown: g = 205; break;
            }
            img.pixels[static_cast<std::size_t>(ir) * geo.width + col] = g;
        }
    }
    MapMetadata meta;
    meta.image = image_name;
    meta.resolution = geo.resolution;
    meta.origin = geo.origin;
    return {format_pgm(img), format_map_metadata(meta)};
}

void save_map_files(const OccupancyGrid& grid, const std::filesystem::path& metadata_path) {
    const auto image_path = std::filesystem::path(metadata_path).replace_extension(".pgm");
    const auto saved = save_map(grid, image_path.filename().string());
    write_file(image_path, saved.pgm);
    write_file(metadata_path, saved.metadata);
}

}  // namespace spnav
