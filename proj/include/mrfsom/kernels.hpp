#pragma once

// Data-parallel kernels over a whole dataset. Each kernel has a serial
// reference implementation and an OpenMP implementation; both must give
// bit-identical results (per-sample work is independent and reductions
// are finished serially in sample order).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

#include "mrfsom/matrix.hpp"

namespace mrfsom::kernels {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// How a sample is scored against a neuron. `mask` is a neurons x dims
/// row-major 0/1 matrix (null means every dimension is active); with
/// `rms` the masked squared distance is divided by the number of active
/// dimensions.
struct Scoring {
  const std::uint8_t* mask = nullptr;
  bool rms = false;
};

/// Score used for winner search: squared (possibly masked, normalized)
/// distance. Smaller is better.
inline double score(std::span<const double> sample, std::span<const double> weights,
                    const std::uint8_t* active, bool rms) noexcept {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (active != nullptr && active[i] == 0) continue;
    const double d = sample[i] - weights[i];
    sum += d * d;
    ++count;
  }
  if (rms && count > 0) sum /= static_cast<double>(count);
  return sum;
}

struct BestTwo {
  std::size_t first = npos;
  std::size_t second = npos;
  double first_score = 0.0;
};

/// First and second best neuron for every sample; ties break toward the
/// lower neuron index.
void best_two_serial(const Matrix& codebook, const Matrix& data, Scoring scoring, std::span<BestTwo> out);
void best_two_parallel(const Matrix& codebook, const Matrix& data, Scoring scoring, std::span<BestTwo> out);

/// Winner only.
void bmu_serial(const Matrix& codebook, const Matrix& data, Scoring scoring, std::span<std::size_t> out);
void bmu_parallel(const Matrix& codebook, const Matrix& data, Scoring scoring, std::span<std::size_t> out);

/// Mean of sqrt(first_score) over samples.
double mean_winner_distance(std::span<const BestTwo> ranked);

/// True when the build has OpenMP enabled.
bool parallel_enabled() noexcept;
int max_threads() noexcept;

}  // namespace mrfsom::kernels
