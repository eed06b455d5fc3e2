#include "mrfsom/export.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrfsom/errors.hpp"
#include "mrfsom/io.hpp"

namespace mrfsom {

namespace {

void write_json(const Json& v, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write_json(item, out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write_json(item, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      // Keep integral values typed as floats ("-0.0" must survive a re-parse).
      const std::string text = io::format_double(d);
      out += text;
      if (text.find_first_of(".e") == std::string::npos) out += ".0";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

// Min-max scaled 8-bit value.
std::uint8_t scale(double v, double lo, double hi) {
  if (!(hi > lo)) return 255;
  const double s = std::round(255.0 * (v - lo) / (hi - lo));
  return static_cast<std::uint8_t>(std::clamp(s, 0.0, 255.0));
}

template <class CellValue>
std::string render_pgm(const HeatmapSet& set, LatticeLayout layout, std::size_t cell_px, CellValue value) {
  if (cell_px == 0) throw ParameterError("cell size must be positive");
  const bool hex = layout == LatticeLayout::hex_offset && set.rows > 1;
  const std::size_t shift = hex ? cell_px / 2 : 0;
  const std::size_t width = set.cols * cell_px + shift;
  const std::size_t height = set.rows * cell_px;
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + width * height, '\0');
  for (std::size_t r = 0; r < set.rows; ++r) {
    // Even rows sit half a cell right of odd rows.
    const std::size_t x0 = (hex && r % 2 == 0) ? shift : 0;
    for (std::size_t c = 0; c < set.cols; ++c) {
      const char pixel = static_cast<char>(value(r, c));
      for (std::size_t y = r * cell_px; y < (r + 1) * cell_px; ++y) {
        for (std::size_t x = x0 + c * cell_px; x < x0 + (c + 1) * cell_px; ++x) out[header + y * width + x] = pixel;
      }
    }
  }
  return out;
}

}  // namespace

std::string to_json_text(const Json& value) {
  std::string out;
  write_json(value, out, 0);
  out += '\n';
  return out;
}

std::string format_heatmap_csv(const HeatmapSet& set, std::size_t joint) {
  std::string out;
  for (std::size_t r = 0; r < set.rows; ++r) {
    for (std::size_t c = 0; c < set.cols; ++c) {
      if (c) out += ',';
      const auto& cell = set.at(joint, r, c);
      out += cell ? io::format_double(*cell) : "NC";
    }
    out += '\n';
  }
  return out;
}

std::string format_heatmap_pgm(const HeatmapSet& set, std::size_t joint, LatticeLayout layout, std::size_t cell_px) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& cell : set.grids.at(joint)) {
    if (!cell) continue;
    lo = std::min(lo, *cell);
    hi = std::max(hi, *cell);
  }
  return render_pgm(set, layout, cell_px, [&](std::size_t r, std::size_t c) -> std::uint8_t {
    const auto& cell = set.at(joint, r, c);
    return cell ? scale(*cell, lo, hi) : 0;
  });
}

std::string format_connectivity_pgm(const HeatmapSet& set, std::size_t joint, LatticeLayout layout,
                                    std::size_t cell_px) {
  return render_pgm(set, layout, cell_px, [&](std::size_t r, std::size_t c) -> std::uint8_t {
    return set.at(joint, r, c) ? 255 : 0;
  });
}

Json distance_map_json(const NeuronDistanceMap& map) {
  Json cells = Json::array();
  for (std::size_t r = 0; r < map.rows; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < map.cols; ++c) row.push_back(map.at(r, c));
    cells.push_back(std::move(row));
  }
  Json j;
  j["rows"] = map.rows;
  j["cols"] = map.cols;
  j["cells"] = std::move(cells);
  return j;
}

Json encoding_report_json(const EncodingReport& report, const std::vector<std::string>& joint_names) {
  Json neurons = Json::array();
  for (const auto& e : report.neurons) {
    Json n;
    n["neuron"] = e.neuron;
    n["label"] = e.label;
    n["group"] = e.group;
    Json active = Json::array();
    Json weights;
    for (std::size_t k = 0; k < e.active_joints.size(); ++k) {
      active.push_back(joint_names.at(e.active_joints[k]));
      weights[joint_names.at(e.active_joints[k])] = e.weights[k];
    }
    n["active_joints"] = std::move(active);
    n["weights"] = std::move(weights);
    n["preferred_joint"] = joint_names.at(e.preferred_joint);
    n["classification"] = std::string(to_string(e.classification));
    neurons.push_back(std::move(n));
  }
  Json matrix = Json::array();
  for (std::size_t a = 0; a < report.group_distance.rows(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < report.group_distance.cols(); ++b) row.push_back(report.group_distance(a, b));
    matrix.push_back(std::move(row));
  }
  Json intra;
  for (std::size_t g = 0; g < report.groups.size(); ++g) intra[report.groups[g]] = report.intra_group_distance[g];

  Json j;
  j["combination_threshold"] = report.combination_threshold;
  j["neurons"] = std::move(neurons);
  j["groups"] = report.groups;
  j["group_distance"] = std::move(matrix);
  j["intra_group_distance"] = std::move(intra);
  return j;
}

AnalysisArtifacts build_analysis_artifacts(const Codebook& codebook, const ReceptiveFieldMask& mask,
                                           double combination_threshold) {
  const HeatmapSet heatmaps = build_heatmaps(codebook, mask);
  const NeuronDistanceMap distances = build_distance_map(codebook, mask, codebook.lattice);
  const EncodingReport report = build_encoding_report(codebook, mask, combination_threshold);

  AnalysisArtifacts out;
  for (std::size_t j = 0; j < heatmaps.joints.size(); ++j) {
    const std::string& name = heatmaps.joints[j];
    out.files.emplace_back("heatmap_" + name + ".csv", format_heatmap_csv(heatmaps, j));
    out.files.emplace_back("heatmap_" + name + ".pgm", format_heatmap_pgm(heatmaps, j, codebook.lattice.layout));
    out.files.emplace_back("mask_" + name + ".pgm", format_connectivity_pgm(heatmaps, j, codebook.lattice.layout));
  }

  Json separation;
  try {
    const double ratio = cluster_separation_ratio(report);
    separation["ratio"] = ratio;
    if (!std::isfinite(ratio)) separation["warning"] = "degenerate codebook: inter-group distances are zero";
  } catch (const ReportError& e) {
    separation["ratio"] = nullptr;
    separation["warning"] = e.what();
  }
  separation["reference_ratio"] = kReferenceSeparationRatio;

  Json doc;
  doc["format"] = "mrfsom-analysis/1";
  doc["lattice"] = {{"rows", codebook.lattice.rows},
                    {"cols", codebook.lattice.cols},
                    {"layout", std::string(to_string(codebook.lattice.layout))},
                    {"metric", std::string(to_string(codebook.lattice.metric))}};
  doc["joints"] = heatmaps.joints;
  doc["distance_map"] = distance_map_json(distances);
  doc["encoding"] = encoding_report_json(report, heatmaps.joints);
  doc["cluster_separation"] = std::move(separation);
  out.files.emplace_back("analysis.json", to_json_text(doc));
  return out;
}

void write_artifacts(const AnalysisArtifacts& artifacts, const std::filesystem::path& dir) {
  for (const auto& [name, contents] : artifacts.files) io::write_file_atomic(dir / name, contents);
}

}  // namespace mrfsom
