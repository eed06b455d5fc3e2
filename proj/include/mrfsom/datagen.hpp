#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrfsom/kinematics.hpp"
#include "mrfsom/matrix.hpp"

namespace mrfsom {

struct SelfTouchDataset {
  Matrix samples;            // n x 7, radians
  std::size_t attempts = 0;  // draws consumed up to and including the n-th acceptance
  double acceptance_rate() const {
    return attempts == 0 ? 0.0 : static_cast<double>(samples.rows()) / static_cast<double>(attempts);
  }
};

/// The joint angles drawn for rejection-sampling attempt `attempt`. Each
/// attempt has its own stream derived from (seed, attempt), so the output
/// does not depend on how attempts are split across threads.
JointSample draw_attempt(const ChainSpec& chain, std::uint64_t seed, std::uint64_t attempt);

/// Rejection sampling: joints uniform within limits, accepted when the
/// hand lies strictly within chain.touch_radius of the face target.
/// Returns the first n accepted attempts in attempt order. SamplingError
/// when max_attempts draws yield fewer than n acceptances.
SelfTouchDataset synthesize_self_touch(const ChainSpec& chain, std::size_t n, std::uint64_t seed,
                                       std::uint64_t max_attempts);

namespace kernels {
/// accepted[k] = 1 iff attempt (first + k) touches.
void touch_attempts_serial(const ChainSpec& chain, std::uint64_t seed, std::uint64_t first,
                           std::span<std::uint8_t> accepted);
void touch_attempts_parallel(const ChainSpec& chain, std::uint64_t seed, std::uint64_t first,
                             std::span<std::uint8_t> accepted);
}  // namespace kernels

// Dataset CSV: header of joint names, 7 columns, 17 significant digits.
std::string dataset_csv_header();
std::string format_csv(const Matrix& dataset);
Matrix parse_csv(std::string_view text);
Matrix load_csv(const std::filesystem::path& path);
void save_csv(const Matrix& dataset, const std::filesystem::path& path);

/// Per-column z-scoring with the population (1/N) standard deviation.
struct NormalizationParams {
  std::vector<double> mean;
  std::vector<double> stddev;

  Matrix apply(const Matrix& data) const;
  Matrix invert(const Matrix& data) const;
  bool operator==(const NormalizationParams&) const = default;
};

/// DataError for fewer than two rows; NormalizationError naming the
/// column when a column is constant. Column names default to the joint
/// names for 7-column data.
NormalizationParams fit_normalization(const Matrix& dataset, std::span<const std::string> names = {});

/// Pearson correlation matrix of the columns.
Matrix correlation(const Matrix& dataset);

}  // namespace mrfsom
