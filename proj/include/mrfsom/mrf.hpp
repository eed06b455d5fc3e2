#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrfsom/lattice.hpp"
#include "mrfsom/som.hpp"

namespace mrfsom {

/// Which input dimensions each neuron is connected to, plus a per-neuron
/// group label used for reporting and per-group winner search.
///
/// Labels are either a base group name (`head`, `shoulder`, ...) or
/// `overlap-<home>-<other>...`; the home group of an overlap neuron is the
/// first name after the prefix.
class ReceptiveFieldMask {
public:
  ReceptiveFieldMask() = default;
  ReceptiveFieldMask(std::size_t rows, std::size_t cols, std::size_t dims, std::vector<std::uint8_t> active,
                     std::vector<std::string> labels);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t neurons() const noexcept { return rows_ * cols_; }
  std::size_t dims() const noexcept { return dims_; }

  bool active(std::size_t neuron, std::size_t dim) const noexcept { return active_[neuron * dims_ + dim] != 0; }
  std::span<const std::uint8_t> row(std::size_t neuron) const noexcept {
    return {active_.data() + neuron * dims_, dims_};
  }
  const std::uint8_t* data() const noexcept { return active_.data(); }
  std::size_t active_count(std::size_t neuron) const;
  std::vector<std::size_t> active_dims(std::size_t neuron) const;

  const std::string& label(std::size_t neuron) const { return labels_.at(neuron); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string home_group(std::size_t neuron) const;
  /// Distinct home groups in order of first appearance (row-major).
  std::vector<std::string> groups() const;

  bool all_active() const noexcept;

  /// ConfigError when a neuron has no active input or an input feeds no neuron.
  void validate() const;

  bool operator==(const ReceptiveFieldMask&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t dims_ = 0;
  std::vector<std::uint8_t> active_;
  std::vector<std::string> labels_;
};

enum class BmuScope { global_masked, per_group };
enum class DistanceNormalization { rms_per_active_dim, unnormalized };

struct MrfConfig {
  BmuScope bmu_scope = BmuScope::global_masked;
  DistanceNormalization distance_normalization = DistanceNormalization::rms_per_active_dim;
  bool operator==(const MrfConfig&) const = default;
};

std::string_view to_string(BmuScope scope);
std::string_view to_string(DistanceNormalization norm);
BmuScope parse_bmu_scope(std::string_view text);
DistanceNormalization parse_normalization(std::string_view text);

/// 4x4 lattice, 7 joints. Quadrants: head top-left, shoulder top-right,
/// wrist bottom-left, elbow bottom-right. A neuron whose 4-neighbor sits
/// in another quadrant is also connected to that quadrant's joints.
ReceptiveFieldMask default_paper_mask();

/// Every neuron connected to every input. On the 4x4/7 configuration the
/// labels follow the quadrant layout of default_paper_mask (without
/// overlap tags); otherwise every neuron is labeled `all`.
ReceptiveFieldMask all_true_mask(std::size_t rows, std::size_t cols, std::size_t dims);

/// Distance over the neuron's active dimensions; divided by
/// sqrt(|active|) under rms-per-active-dim.
double masked_distance(std::span<const double> sample, std::size_t neuron, const Codebook& codebook,
                       const ReceptiveFieldMask& mask, const MrfConfig& cfg);

/// Winners for one sample. Global scope yields one index; per-group
/// yields one index per entry of mask.groups(), in that order.
std::vector<std::size_t> mrf_find_bmu(std::span<const double> sample, const Codebook& codebook,
                                      const ReceptiveFieldMask& mask, const MrfConfig& cfg);

/// As `train`, with masked winner search and mask-confined updates.
/// Weights at inactive positions are never written.
TrainResult mrf_train(Codebook codebook, const Matrix& dataset, const ReceptiveFieldMask& mask,
                      const TrainSchedule& schedule, const MrfConfig& cfg);

/// Mean masked winner distance / topographic error under global masked
/// winner search (used for MRF training logs and evaluation).
double mrf_quantization_error(const Codebook& codebook, const Matrix& dataset, const ReceptiveFieldMask& mask,
                              const MrfConfig& cfg);
double mrf_topographic_error(const Codebook& codebook, const Matrix& dataset, const ReceptiveFieldMask& mask,
                             const MrfConfig& cfg);

/// Text format: `rows cols dims`, then one line of space-separated 0/1 per
/// neuron, then optionally one `#group <label>` line per neuron.
ReceptiveFieldMask parse_mask(std::string_view text);
std::string format_mask(const ReceptiveFieldMask& mask);
ReceptiveFieldMask load_mask(const std::filesystem::path& path);
void save_mask(const ReceptiveFieldMask& mask, const std::filesystem::path& path);

}  // namespace mrfsom
