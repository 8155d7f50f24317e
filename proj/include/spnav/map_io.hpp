#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "spnav/grid.hpp"

namespace spnav {

/// Map-server style metadata.
struct MapMetadata {
    std::string image;
    double resolution = 0.05;
    Vec2 origin{0.0, 0.0};
    double occupied_thresh = 0.65;
    double free_thresh = 0.196;
    bool negate = false;
};

MapMetadata parse_map_metadata(std::string_view yaml);
std::string format_map_metadata(const MapMetadata& meta);

/// Decoded 8-bit grayscale image, row 0 at the top.
struct GrayImage {
    int width = 0;
    int height = 0;
    int maxval = 255;
    std::vector<std::uint8_t> pixels;
};

/// Reads binary (P5) or plain (P2) PGM with maxval <= 255.
GrayImage parse_pgm(std::string_view bytes);
/// Writes binary P5, maxval 255.
std::string format_pgm(const GrayImage& image);

OccupancyGrid load_map(std::string_view pgm_bytes, std::string_view metadata_yaml);
/// Reads the YAML, resolves `image` relative to it (or uses `image_override`).
OccupancyGrid load_map_file(const std::filesystem::path& metadata_path,
                            const std::filesystem::path& image_override = {});

struct SavedMap {
    std::string pgm;
    std::string metadata;
};
/// Free → 254, Occupied → 0, Unknown → 205, with default thresholds and negate 0.
SavedMap save_map(const OccupancyGrid& grid, const std::string& image_name = "map.pgm");
void save_map_files(const OccupancyGrid& grid, const std::filesystem::path& metadata_path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace spnav
