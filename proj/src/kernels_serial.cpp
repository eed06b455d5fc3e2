#include <cmath>

#include "kernels_detail.hpp"

namespace mrfsom::kernels {

void best_two_serial(const Matrix& codebook, const Matrix& data, Scoring scoring, std::span<BestTwo> out) {
  for (std::size_t s = 0; s < data.rows(); ++s) out[s] = detail::rank_sample(codebook, data.row(s), scoring);
}

void bmu_serial(const Matrix& codebook, const Matrix& data, Scoring scoring, std::span<std::size_t> out) {
  for (std::size_t s = 0; s < data.rows(); ++s) out[s] = detail::winner(codebook, data.row(s), scoring);
}

double mean_winner_distance(std::span<const BestTwo> ranked) {
  double sum = 0.0;
  for (const BestTwo& r : ranked) sum += std::sqrt(r.first_score);
  return ranked.empty() ? 0.0 : sum / static_cast<double>(ranked.size());
}

}  // namespace mrfsom::kernels
