#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrfsom/matrix.hpp"
#include "mrfsom/mrf.hpp"
#include "mrfsom/som.hpp"

namespace mrfsom {

/// One rows x cols grid per input joint. A cell without a value is a
/// neuron that is not connected to that joint.
struct HeatmapSet {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::string> joints;
  std::vector<std::vector<std::optional<double>>> grids;  // [joint][row * cols + col]

  const std::optional<double>& at(std::size_t joint, std::size_t row, std::size_t col) const {
    return grids[joint][row * cols + col];
  }
};

/// U-matrix style map: each cell is the mean pair distance from the neuron
/// to its lattice neighbors (neuron_distance == 1).
struct NeuronDistanceMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cells;

  double at(std::size_t row, std::size_t col) const { return cells[row * cols + col]; }
};

enum class EncodingClass { single_joint, combination, inhibitory_combination };
std::string_view to_string(EncodingClass cls);

struct NeuronEncoding {
  std::size_t neuron = 0;
  std::string label;
  std::string group;
  std::vector<std::size_t> active_joints;
  std::vector<double> weights;  // parallel to active_joints
  std::size_t preferred_joint = 0;  // argmax |weight| over active joints, lowest index on ties
  EncodingClass classification = EncodingClass::single_joint;
};

struct EncodingReport {
  double combination_threshold = 0.25;
  std::vector<NeuronEncoding> neurons;
  std::vector<std::string> groups;
  Matrix group_distance;                     // groups x groups, zero diagonal
  std::vector<double> intra_group_distance;  // mean pair distance within each group (0 for singletons)
};

/// Default joint names for `dims` inputs: the joint names for 7, else dim_<k>.
std::vector<std::string> input_names(std::size_t dims);

/// RMS codebook distance between two neurons over the union of their
/// active dimensions.
double pair_distance(const Codebook& codebook, const ReceptiveFieldMask& mask, std::size_t a, std::size_t b);

HeatmapSet build_heatmaps(const Codebook& codebook, const ReceptiveFieldMask& mask);

NeuronDistanceMap build_distance_map(const Codebook& codebook, const ReceptiveFieldMask& mask,
                                     const LatticeSpec& lattice);

/// Per-neuron joint preference and classification: inhibitory-combination
/// if any active weight is negative; otherwise combination when at least
/// two active joints reach combination_threshold * max |weight|; else
/// single-joint.
EncodingReport build_encoding_report(const Codebook& codebook, const ReceptiveFieldMask& mask,
                                     double combination_threshold = 0.25);

/// d(shoulder, elbow) / mean(d(shoulder, head), d(shoulder, wrist),
/// d(elbow, head), d(elbow, wrist)). NaN when the denominator is zero.
/// ReportError when one of the four groups is missing.
double cluster_separation_ratio(const EncodingReport& report);

/// Reference shoulder/elbow separation relative to head and wrist.
inline constexpr double kReferenceSeparationRatio = 0.5;

}  // namespace mrfsom
