#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrfsom/analysis.hpp"

namespace mrfsom {

using Json = nlohmann::ordered_json;

/// JSON text with keys in insertion order, 2-space indentation, floats at
/// 17 significant digits and non-finite floats as null.
std::string to_json_text(const Json& value);

/// rows x cols grid, comma separated; `NC` marks a not-connected neuron.
std::string format_heatmap_csv(const HeatmapSet& set, std::size_t joint);

/// Binary P5 grayscale, maxval 255. Connected cells are min-max scaled
/// per joint; not-connected cells are 0. Each neuron is drawn as a
/// cell_px square; with the hex-offset layout odd rows shift left by half
/// a cell.
std::string format_heatmap_pgm(const HeatmapSet& set, std::size_t joint, LatticeLayout layout,
                               std::size_t cell_px = 16);

/// Sidecar for format_heatmap_pgm: 255 where connected, 0 elsewhere.
std::string format_connectivity_pgm(const HeatmapSet& set, std::size_t joint, LatticeLayout layout,
                                    std::size_t cell_px = 16);

Json distance_map_json(const NeuronDistanceMap& map);
Json encoding_report_json(const EncodingReport& report, const std::vector<std::string>& joint_names);

/// Everything the export command writes: heatmap_<joint>.csv,
/// heatmap_<joint>.pgm, mask_<joint>.pgm and analysis.json.
struct AnalysisArtifacts {
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
};

AnalysisArtifacts build_analysis_artifacts(const Codebook& codebook, const ReceptiveFieldMask& mask,
                                           double combination_threshold);

/// Writes each artifact atomically into `dir` (created if missing).
void write_artifacts(const AnalysisArtifacts& artifacts, const std::filesystem::path& dir);

}  // namespace mrfsom
