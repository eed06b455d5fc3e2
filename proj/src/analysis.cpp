#include "mrfsom/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrfsom/errors.hpp"
#include "mrfsom/joints.hpp"

namespace mrfsom {

std::string_view to_string(EncodingClass cls) {
  switch (cls) {
    case EncodingClass::single_joint: return "single-joint";
    case EncodingClass::combination: return "combination";
    case EncodingClass::inhibitory_combination: return "inhibitory-combination";
  }
  return "single-joint";
}

std::vector<std::string> input_names(std::size_t dims) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dims; ++i) {
    names.push_back(dims == kJointCount ? std::string(kJointNames[i]) : "dim_" + std::to_string(i));
  }
  return names;
}

namespace {

void require_compatible(const Codebook& codebook, const ReceptiveFieldMask& mask) {
  if (mask.neurons() != codebook.neurons() || mask.dims() != codebook.dims()) {
    throw ConfigError("mask does not match codebook shape");
  }
}

}  // namespace

double pair_distance(const Codebook& codebook, const ReceptiveFieldMask& mask, std::size_t a, std::size_t b) {
  double sum = 0.0;
  std::size_t count = 0;
  const auto wa = codebook.row(a);
  const auto wb = codebook.row(b);
  for (std::size_t i = 0; i < codebook.dims(); ++i) {
    if (!mask.active(a, i) && !mask.active(b, i)) continue;
    const double d = wa[i] - wb[i];
    sum += d * d;
    ++count;
  }
  return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

HeatmapSet build_heatmaps(const Codebook& codebook, const ReceptiveFieldMask& mask) {
  require_compatible(codebook, mask);
  HeatmapSet set;
  set.rows = codebook.lattice.rows;
  set.cols = codebook.lattice.cols;
  set.joints = input_names(codebook.dims());
  set.grids.assign(codebook.dims(), std::vector<std::optional<double>>(codebook.neurons()));
  for (std::size_t j = 0; j < codebook.dims(); ++j) {
    for (std::size_t n = 0; n < codebook.neurons(); ++n) {
      if (mask.active(n, j)) set.grids[j][n] = codebook.weights(n, j);
    }
  }
  return set;
}

NeuronDistanceMap build_distance_map(const Codebook& codebook, const ReceptiveFieldMask& mask,
                                     const LatticeSpec& lattice) {
  require_compatible(codebook, mask);
  if (lattice.size() != codebook.neurons()) throw ConfigError("lattice does not match codebook");
  NeuronDistanceMap map{lattice.rows, lattice.cols, std::vector<double>(lattice.size(), 0.0)};
  for (std::size_t n = 0; n < lattice.size(); ++n) {
    double sum = 0.0;
    std::size_t neighbors = 0;
    for (std::size_t m = 0; m < lattice.size(); ++m) {
      if (neuron_distance(n, m, lattice) != 1) continue;
      sum += pair_distance(codebook, mask, n, m);
      ++neighbors;
    }
    map.cells[n] = neighbors == 0 ? 0.0 : sum / static_cast<double>(neighbors);
  }
  return map;
}

EncodingReport build_encoding_report(const Codebook& codebook, const ReceptiveFieldMask& mask,
                                     double combination_threshold) {
  require_compatible(codebook, mask);
  EncodingReport report;
  report.combination_threshold = combination_threshold;
  report.groups = mask.groups();

  std::vector<std::size_t> group_of(codebook.neurons());
  for (std::size_t n = 0; n < codebook.neurons(); ++n) {
    NeuronEncoding e;
    e.neuron = n;
    e.label = mask.label(n);
    e.group = mask.home_group(n);
    e.active_joints = mask.active_dims(n);
    group_of[n] = static_cast<std::size_t>(std::find(report.groups.begin(), report.groups.end(), e.group) -
                                           report.groups.begin());

    double max_abs = -1.0;
    bool negative = false;
    for (const std::size_t j : e.active_joints) {
      const double w = codebook.weights(n, j);
      e.weights.push_back(w);
      negative = negative || w < 0.0;
      if (std::abs(w) > max_abs) {
        max_abs = std::abs(w);
        e.preferred_joint = j;
      }
    }
    const auto strong = std::count_if(e.weights.begin(), e.weights.end(), [&](double w) {
      return std::abs(w) >= combination_threshold * max_abs;
    });
    if (negative) {
      e.classification = EncodingClass::inhibitory_combination;
    } else {
      e.classification = strong >= 2 ? EncodingClass::combination : EncodingClass::single_joint;
    }
    report.neurons.push_back(std::move(e));
  }

  const std::size_t groups = report.groups.size();
  Matrix sum(groups, groups);
  Matrix count(groups, groups);
  for (std::size_t a = 0; a < codebook.neurons(); ++a) {
    for (std::size_t b = a + 1; b < codebook.neurons(); ++b) {
      const double d = pair_distance(codebook, mask, a, b);
      const std::size_t ga = group_of[a];
      const std::size_t gb = group_of[b];
      sum(ga, gb) += d;
      count(ga, gb) += 1.0;
      if (ga != gb) {
        sum(gb, ga) += d;
        count(gb, ga) += 1.0;
      }
    }
  }
  report.group_distance = Matrix(groups, groups);
  report.intra_group_distance.assign(groups, 0.0);
  for (std::size_t a = 0; a < groups; ++a) {
    for (std::size_t b = 0; b < groups; ++b) {
      const double mean = count(a, b) > 0.0 ? sum(a, b) / count(a, b) : 0.0;
      if (a == b) {
        report.intra_group_distance[a] = mean;
      } else {
        report.group_distance(a, b) = mean;
      }
    }
  }
  return report;
}

double cluster_separation_ratio(const EncodingReport& report) {
  auto find = [&](std::string_view name) {
    const auto it = std::find(report.groups.begin(), report.groups.end(), name);
    if (it == report.groups.end()) throw ReportError("group '" + std::string(name) + "' missing from report");
    return static_cast<std::size_t>(it - report.groups.begin());
  };
  const std::size_t head = find("head");
  const std::size_t shoulder = find("shoulder");
  const std::size_t elbow = find("elbow");
  const std::size_t wrist_group = find("wrist");
  const Matrix& d = report.group_distance;
  const double denominator =
      (d(shoulder, head) + d(shoulder, wrist_group) + d(elbow, head) + d(elbow, wrist_group)) / 4.0;
  if (!(denominator > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return d(shoulder, elbow) / denominator;
}

}  // namespace mrfsom
