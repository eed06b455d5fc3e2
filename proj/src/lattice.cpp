#include "mrfsom/lattice.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "mrfsom/errors.hpp"

namespace mrfsom {

namespace {

struct Axial {
  std::int64_t q;
  std::int64_t r;
};

// Odd rows shifted left: q = col - ceil(row / 2).
Axial to_axial(LatticeCoord c) {
  const auto row = static_cast<std::int64_t>(c.row);
  const auto col = static_cast<std::int64_t>(c.col);
  return {col - (row + (row & 1)) / 2, row};
}

void check(LatticeCoord c, const LatticeSpec& spec) {
  if (!spec.contains(c)) {
    throw CoordinateError("lattice coordinate (" + std::to_string(c.row) + ", " + std::to_string(c.col) +
                          ") outside " + std::to_string(spec.rows) + "x" + std::to_string(spec.cols) + " grid");
  }
}

}  // namespace

LatticeCoord LatticeSpec::coord(std::size_t index) const {
  if (index >= size()) throw CoordinateError("neuron index " + std::to_string(index) + " out of range");
  return {index / cols, index % cols};
}

std::size_t LatticeSpec::index(LatticeCoord c) const {
  check(c, *this);
  return c.row * cols + c.col;
}

void LatticeSpec::validate() const {
  if (rows == 0 || cols == 0) throw ConfigError("lattice needs at least one row and one column");
  if (metric == LatticeMetric::hex_axial && layout != LatticeLayout::hex_offset) {
    throw ConfigError("hex-axial metric requires the hex-offset layout");
  }
}

std::size_t neuron_distance(LatticeCoord a, LatticeCoord b, const LatticeSpec& spec) {
  check(a, spec);
  check(b, spec);
  switch (spec.metric) {
    case LatticeMetric::manhattan: {
      const auto dr = a.row > b.row ? a.row - b.row : b.row - a.row;
      const auto dc = a.col > b.col ? a.col - b.col : b.col - a.col;
      return dr + dc;
    }
    case LatticeMetric::hex_axial: {
      const Axial p = to_axial(a);
      const Axial q = to_axial(b);
      const auto dq = p.q - q.q;
      const auto dr = p.r - q.r;
      return static_cast<std::size_t>((std::llabs(dq) + std::llabs(dr) + std::llabs(dq + dr)) / 2);
    }
  }
  return 0;
}

std::size_t neuron_distance(std::size_t a, std::size_t b, const LatticeSpec& spec) {
  return neuron_distance(spec.coord(a), spec.coord(b), spec);
}

double neighborhood_weight(double distance, double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("neighborhood sigma must be positive");
  return std::exp(-(distance * distance) / (2.0 * sigma * sigma));
}

std::string_view to_string(LatticeLayout layout) {
  return layout == LatticeLayout::hex_offset ? "hex-offset" : "rectangular";
}

std::string_view to_string(LatticeMetric metric) {
  return metric == LatticeMetric::manhattan ? "manhattan" : "hex-axial";
}

LatticeLayout parse_layout(std::string_view text) {
  if (text == "hex-offset") return LatticeLayout::hex_offset;
  if (text == "rectangular") return LatticeLayout::rectangular;
  throw ConfigError("unknown lattice layout '" + std::string(text) + "'");
}

LatticeMetric parse_metric(std::string_view text) {
  if (text == "manhattan") return LatticeMetric::manhattan;
  if (text == "hex-axial") return LatticeMetric::hex_axial;
  throw ConfigError("unknown lattice metric '" + std::string(text) + "'");
}

}  // namespace mrfsom
