#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mrfsom/app/config.hpp"
#include "mrfsom/datagen.hpp"

namespace mrfsom::app {

/// Trained model file: a single JSON document holding the lattice, mask,
/// normalization, codebook and the run configuration that produced them.
struct Model {
  TrainMode mode = TrainMode::mrf;
  MrfConfig mrf;
  ReceptiveFieldMask mask;
  NormalizationParams normalization;
  Codebook codebook;
  Json config;  // run_config_to_json of the producing run

  bool operator==(const Model&) const = default;
};

std::string format_model(const Model& model);
/// ParseError on malformed JSON or inconsistent shapes.
Model parse_model(std::string_view text);
Model load_model(const std::filesystem::path& path);
void save_model(const Model& model, const std::filesystem::path& path);

}  // namespace mrfsom::app
