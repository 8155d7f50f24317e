#pragma once

#include <filesystem>
#include <string>

#include "spnav/model.hpp"

namespace spnav {

/// CSV with header `x,y,words[,c_id,i_id]`; words are space separated.
TrainingSet parse_training_csv(const std::string& text);
std::string format_training_csv(const TrainingSet& data);

/// JSON array of {"x","y","words":[...],"c_id"?,"i_id"?}.
TrainingSet parse_training_json(const std::string& text);

/// Dispatches on the extension (.json, otherwise CSV).
TrainingSet load_training_file(const std::filesystem::path& path);

}  // namespace spnav
