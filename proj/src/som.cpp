#include "mrfsom/som.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mrfsom/kernels.hpp"
#include "mrfsom/rng.hpp"

namespace mrfsom {

std::string_view to_string(Decay decay) { return decay == Decay::exponential ? "exponential" : "linear"; }

Decay parse_decay(std::string_view text) {
  if (text == "exponential") return Decay::exponential;
  if (text == "linear") return Decay::linear;
  throw ConfigError("unknown decay '" + std::string(text) + "'");
}

void TrainSchedule::validate() const {
  if (!(alpha0 > 0.0 && alpha0 <= 1.0)) throw ParameterError("alpha0 must lie in (0, 1]");
  if (!(alpha_end > 0.0 && alpha_end <= alpha0)) throw ParameterError("alpha_end must lie in (0, alpha0]");
  if (!(sigma0 > 0.0 && std::isfinite(sigma0))) throw ParameterError("sigma0 must be positive");
  if (!(sigma_end > 0.0 && sigma_end <= sigma0)) throw ParameterError("sigma_end must lie in (0, sigma0]");
}

namespace {

double decayed(double start, double end, Decay decay, std::size_t step, std::size_t total) {
  if (total <= 1) return start;
  const double frac = static_cast<double>(step) / static_cast<double>(total - 1);
  if (decay == Decay::linear) return start + (end - start) * frac;
  return start * std::pow(end / start, frac);
}

}  // namespace

double TrainSchedule::alpha(std::size_t step, std::size_t total_steps) const {
  return decayed(alpha0, alpha_end, decay, step, total_steps);
}

double TrainSchedule::sigma(std::size_t step, std::size_t total_steps) const {
  return decayed(sigma0, sigma_end, decay, step, total_steps);
}

namespace detail {

void require_dataset(const Matrix& dataset, std::size_t dims) {
  if (dataset.rows() == 0) throw DataError("dataset is empty");
  if (dataset.cols() != dims) {
    throw ShapeError("dataset has " + std::to_string(dataset.cols()) + " columns, codebook expects " +
                     std::to_string(dims));
  }
}

}  // namespace detail

Codebook init_codebook(const LatticeSpec& lattice, std::size_t dims, std::uint64_t seed) {
  lattice.validate();
  if (dims == 0) throw ParameterError("codebook needs at least one input dimension");
  rng::Engine engine(seed);
  Codebook cb{lattice, Matrix(lattice.size(), dims)};
  for (double& w : cb.weights.values()) w = rng::uniform(engine, -1.0, 1.0);
  return cb;
}

std::size_t find_bmu(std::span<const double> sample, const Codebook& codebook) {
  if (sample.size() != codebook.dims()) {
    throw ShapeError("sample has " + std::to_string(sample.size()) + " dimensions, codebook expects " +
                     std::to_string(codebook.dims()));
  }
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t n = 0; n < codebook.neurons(); ++n) {
    const double s = kernels::score(sample, codebook.row(n), nullptr, false);
    if (n == 0 || s < best_score) {
      best = n;
      best_score = s;
    }
  }
  return best;
}

void update_step(Codebook& codebook, std::span<const double> sample, std::size_t bmu, double alpha,
                 double sigma) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  if (sample.size() != codebook.dims()) throw ShapeError("sample dimension does not match codebook");
  if (bmu >= codebook.neurons()) throw ParameterError("BMU index out of range");

  const LatticeCoord winner = codebook.lattice.coord(bmu);
  for (std::size_t n = 0; n < codebook.neurons(); ++n) {
    const auto d = neuron_distance(codebook.lattice.coord(n), winner, codebook.lattice);
    const double rate = alpha * neighborhood_weight(static_cast<double>(d), sigma);
    auto w = codebook.row(n);
    // std::lerp is exact at rate == 1 and never leaves [w, x] for rate in [0, 1].
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::lerp(w[i], sample[i], rate);
  }
}

std::vector<std::size_t> epoch_order(std::size_t samples, std::uint64_t seed, std::size_t epoch) {
  std::vector<std::size_t> order(samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng::Engine engine(rng::derive_seed(seed, epoch));
  rng::shuffle(std::span<std::size_t>(order), engine);
  return order;
}

namespace {

struct Quality {
  double qe;
  double te;
};

Quality measure(const Codebook& codebook, const Matrix& dataset) {
  std::vector<kernels::BestTwo> ranked(dataset.rows());
  kernels::best_two_parallel(codebook.weights, dataset, {}, ranked);
  std::size_t errors = 0;
  for (const auto& r : ranked) {
    if (r.second == kernels::npos || neuron_distance(r.first, r.second, codebook.lattice) != 1) ++errors;
  }
  const double te = codebook.neurons() < 2 ? 0.0 : static_cast<double>(errors) / static_cast<double>(ranked.size());
  return {kernels::mean_winner_distance(ranked), te};
}

}  // namespace

TrainResult train(Codebook codebook, const Matrix& dataset, const TrainSchedule& schedule) {
  schedule.validate();
  detail::require_dataset(dataset, codebook.dims());

  TrainLog log;
  const std::size_t total = schedule.epochs * dataset.rows();
  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < schedule.epochs; ++epoch) {
    for (const std::size_t s : epoch_order(dataset.rows(), schedule.seed, epoch)) {
      const auto sample = dataset.row(s);
      update_step(codebook, sample, find_bmu(sample, codebook), schedule.alpha(step, total),
                  schedule.sigma(step, total));
      ++step;
    }
    const Quality q = measure(codebook, dataset);
    log.quantization_error.push_back(q.qe);
    log.topographic_error.push_back(q.te);
  }
  return {std::move(codebook), std::move(log)};
}

double quantization_error(const Codebook& codebook, const Matrix& dataset) {
  detail::require_dataset(dataset, codebook.dims());
  return measure(codebook, dataset).qe;
}

double topographic_error(const Codebook& codebook, const Matrix& dataset) {
  if (codebook.neurons() < 2) throw ConfigError("topographic error needs at least two neurons");
  detail::require_dataset(dataset, codebook.dims());
  return measure(codebook, dataset).te;
}

}  // namespace mrfsom
