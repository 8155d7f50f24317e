#pragma once

#include <filesystem>
#include <string>

#include "spnav/model.hpp"

namespace spnav {

inline constexpr int kModelFormatVersion = 1;

/// Versioned JSON. Doubles are written with round-trip precision, so
/// load_model(save_model(m)) == m.
std::string save_model(const SpatialConceptModel& model);
SpatialConceptModel load_model(const std::string& text);

SpatialConceptModel load_model_file(const std::filesystem::path& path);

}  // namespace spnav
