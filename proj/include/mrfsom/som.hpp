#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mrfsom/lattice.hpp"
#include "mrfsom/matrix.hpp"

namespace mrfsom {

/// The map's learned state: one weight vector per lattice neuron, in
/// row-major neuron order.
struct Codebook {
  LatticeSpec lattice;
  Matrix weights;  // neurons x dims

  std::size_t neurons() const noexcept { return weights.rows(); }
  std::size_t dims() const noexcept { return weights.cols(); }
  std::span<const double> row(std::size_t n) const noexcept { return weights.row(n); }
  std::span<double> row(std::size_t n) noexcept { return weights.row(n); }

  bool operator==(const Codebook&) const = default;
};

enum class Decay { exponential, linear };

std::string_view to_string(Decay decay);
Decay parse_decay(std::string_view text);

/// Learning-rate and neighborhood-radius decay over the global step
/// counter t in [0, epochs * samples).
struct TrainSchedule {
  std::size_t epochs = 100;
  double alpha0 = 0.5;
  double alpha_end = 0.01;
  double sigma0 = 2.0;
  double sigma_end = 0.5;
  Decay decay = Decay::exponential;
  std::uint64_t seed = 1;

  void validate() const;  // ParameterError on violated ranges

  double alpha(std::size_t step, std::size_t total_steps) const;
  double sigma(std::size_t step, std::size_t total_steps) const;

  bool operator==(const TrainSchedule&) const = default;
};

struct TrainLog {
  std::vector<double> quantization_error;  // one entry per epoch
  std::vector<double> topographic_error;

  std::size_t epochs() const noexcept { return quantization_error.size(); }
  bool operator==(const TrainLog&) const = default;
};

struct TrainResult {
  Codebook codebook;
  TrainLog log;
};

/// Weights uniform in [-1, 1] from a seeded mt19937_64.
Codebook init_codebook(const LatticeSpec& lattice, std::size_t dims, std::uint64_t seed);

/// Index of the neuron closest to `sample` (Euclidean); ties go to the
/// lowest index.
std::size_t find_bmu(std::span<const double> sample, const Codebook& codebook);

/// Kohonen update w <- w + alpha * h(d(n, bmu)) * (x - w) for every neuron.
void update_step(Codebook& codebook, std::span<const double> sample, std::size_t bmu, double alpha,
                 double sigma);

/// Stochastic per-sample training. Each epoch visits the dataset in an
/// order shuffled with derive_seed(schedule.seed, epoch).
TrainResult train(Codebook codebook, const Matrix& dataset, const TrainSchedule& schedule);

/// Mean Euclidean distance from each sample to its BMU.
double quantization_error(const Codebook& codebook, const Matrix& dataset);

/// Fraction of samples whose first and second BMU are not lattice
/// neighbors (neuron_distance == 1).
double topographic_error(const Codebook& codebook, const Matrix& dataset);

/// Per-epoch visiting order for `train`.
std::vector<std::size_t> epoch_order(std::size_t samples, std::uint64_t seed, std::size_t epoch);

namespace detail {
void require_dataset(const Matrix& dataset, std::size_t dims);
}

}  // namespace mrfsom
