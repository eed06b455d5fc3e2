#include <doctest.h>

#include <cmath>

#include "mrfsom/errors.hpp"
#include "mrfsom/lattice.hpp"
#include "support/oracles.hpp"

using namespace mrfsom;

namespace {

LatticeSpec grid(std::size_t rows, std::size_t cols, LatticeMetric metric) {
  return {rows, cols, LatticeLayout::hex_offset, metric};
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("default lattice is the 4x4 hex-offset lattice with Manhattan distance") {
  const LatticeSpec spec;
  CHECK(spec.rows == 4);
  CHECK(spec.cols == 4);
  CHECK(spec.layout == LatticeLayout::hex_offset);
  CHECK(spec.metric == LatticeMetric::manhattan);
  CHECK(spec.size() == 16);
}

TEST_CASE("neuron_distance examples") {
  const auto manhattan = grid(4, 4, LatticeMetric::manhattan);
  const auto hex = grid(4, 4, LatticeMetric::hex_axial);
  CHECK(neuron_distance(LatticeCoord{0, 0}, LatticeCoord{0, 0}, manhattan) == 0);
  CHECK(neuron_distance(LatticeCoord{0, 0}, LatticeCoord{0, 0}, hex) == 0);
  CHECK(neuron_distance(LatticeCoord{0, 0}, LatticeCoord{2, 3}, manhattan) == 5);
  CHECK(neuron_distance(LatticeCoord{0, 0}, LatticeCoord{1, 1}, hex) == 1);
}

TEST_CASE("hex-axial distance matches BFS over geometric hex adjacency") {
  for (const auto& [rows, cols] : {std::pair{4, 4}, std::pair{5, 3}, std::pair{1, 6}, std::pair{6, 2}}) {
    const auto spec = grid(rows, cols, LatticeMetric::hex_axial);
    const auto hops = oracle::hex_hops(rows, cols);
    for (std::size_t a = 0; a < spec.size(); ++a) {
      for (std::size_t b = 0; b < spec.size(); ++b) {
        CAPTURE(a);
        CAPTURE(b);
        CHECK(neuron_distance(a, b, spec) == hops[a][b]);
      }
    }
  }
}

TEST_CASE("metric axioms hold exhaustively on the 4x4 grid") {
  for (const auto metric : {LatticeMetric::manhattan, LatticeMetric::hex_axial}) {
    const auto spec = grid(4, 4, metric);
    for (std::size_t a = 0; a < 16; ++a) {
      for (std::size_t b = 0; b < 16; ++b) {
        const auto ab = neuron_distance(a, b, spec);
        CHECK(ab == neuron_distance(b, a, spec));
        CHECK((ab == 0) == (a == b));
        for (std::size_t c = 0; c < 16; ++c) {
          CHECK(ab <= neuron_distance(a, c, spec) + neuron_distance(c, b, spec));
        }
      }
    }
  }
}

TEST_CASE("out-of-range coordinates are rejected") {
  const LatticeSpec spec;
  CHECK_THROWS_AS(neuron_distance(LatticeCoord{4, 0}, LatticeCoord{0, 0}, spec), CoordinateError);
  CHECK_THROWS_AS(neuron_distance(LatticeCoord{0, 0}, LatticeCoord{0, 7}, spec), CoordinateError);
  CHECK_THROWS_AS(spec.coord(16), CoordinateError);
}

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS((LatticeSpec{0, 4}).validate(), ConfigError);
  CHECK_THROWS_AS((LatticeSpec{4, 4, LatticeLayout::rectangular, LatticeMetric::hex_axial}).validate(), ConfigError);
  CHECK_NOTHROW((LatticeSpec{1, 1}).validate());
}

TEST_CASE("neighborhood_weight") {
  CHECK(neighborhood_weight(0, 1.0) == 1.0);
  CHECK(neighborhood_weight(2, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(neighborhood_weight(1, 0.5) == doctest::Approx(0.1353352832366127).epsilon(1e-15));
  CHECK_THROWS_AS(neighborhood_weight(1, 0.0), ParameterError);
  CHECK_THROWS_AS(neighborhood_weight(1, -1.0), ParameterError);

  for (const double sigma : {0.3, 1.0, 2.0, 5.0}) {
    for (int d = 0; d < 8; ++d) {
      CHECK(neighborhood_weight(d + 1, sigma) <= neighborhood_weight(d, sigma));
      CHECK(neighborhood_weight(d, sigma) > 0.0);
    }
  }
}

TEST_CASE("enum text round trip") {
  CHECK(parse_layout(to_string(LatticeLayout::rectangular)) == LatticeLayout::rectangular);
  CHECK(parse_metric(to_string(LatticeMetric::hex_axial)) == LatticeMetric::hex_axial);
  CHECK_THROWS_AS(parse_metric("euclid"), ConfigError);
}

}
