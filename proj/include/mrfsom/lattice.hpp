#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace mrfsom {

enum class LatticeLayout { hex_offset, rectangular };
enum class LatticeMetric { manhattan, hex_axial };

struct LatticeCoord {
  std::size_t row = 0;
  std::size_t col = 0;
  bool operator==(const LatticeCoord&) const = default;
};

/// Output-layer geometry. Neurons are numbered row-major.
///
/// In the hex-offset layout odd rows sit half a cell to the left of even
/// rows, so cell (r, c) on an even row touches (r+1, c) and (r+1, c+1).
struct LatticeSpec {
  std::size_t rows = 4;
  std::size_t cols = 4;
  LatticeLayout layout = LatticeLayout::hex_offset;
  LatticeMetric metric = LatticeMetric::manhattan;

  std::size_t size() const noexcept { return rows * cols; }
  LatticeCoord coord(std::size_t index) const;
  std::size_t index(LatticeCoord c) const;
  bool contains(LatticeCoord c) const noexcept { return c.row < rows && c.col < cols; }

  /// Throws ConfigError for empty grids or hex-axial on a rectangular layout.
  void validate() const;

  bool operator==(const LatticeSpec&) const = default;
};

/// Lattice distance under spec.metric. Throws CoordinateError for
/// coordinates outside the grid.
std::size_t neuron_distance(LatticeCoord a, LatticeCoord b, const LatticeSpec& spec);
std::size_t neuron_distance(std::size_t a, std::size_t b, const LatticeSpec& spec);

/// Gaussian neighborhood kernel exp(-d^2 / (2 sigma^2)).
double neighborhood_weight(double distance, double sigma);

std::string_view to_string(LatticeLayout layout);
std::string_view to_string(LatticeMetric metric);
LatticeLayout parse_layout(std::string_view text);
LatticeMetric parse_metric(std::string_view text);

}  // namespace mrfsom
