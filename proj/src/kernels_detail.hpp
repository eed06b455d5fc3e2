#pragma once

#include "mrfsom/kernels.hpp"

namespace mrfsom::kernels::detail {

inline BestTwo rank_sample(const Matrix& codebook, std::span<const double> sample, Scoring scoring) noexcept {
  BestTwo best;
  double second_score = 0.0;
  const std::size_t dims = codebook.cols();
  for (std::size_t n = 0; n < codebook.rows(); ++n) {
    const std::uint8_t* active = scoring.mask ? scoring.mask + n * dims : nullptr;
    const double s = score(sample, codebook.row(n), active, scoring.rms);
    if (best.first == npos || s < best.first_score) {
      best.second = best.first;
      second_score = best.first_score;
      best.first = n;
      best.first_score = s;
    } else if (best.second == npos || s < second_score) {
      best.second = n;
      second_score = s;
    }
  }
  return best;
}

inline std::size_t winner(const Matrix& codebook, std::span<const double> sample, Scoring scoring) noexcept {
  std::size_t best = npos;
  double best_score = 0.0;
  const std::size_t dims = codebook.cols();
  for (std::size_t n = 0; n < codebook.rows(); ++n) {
    const std::uint8_t* active = scoring.mask ? scoring.mask + n * dims : nullptr;
    const double s = score(sample, codebook.row(n), active, scoring.rms);
    if (best == npos || s < best_score) {
      best = n;
      best_score = s;
    }
  }
  return best;
}

}  // namespace mrfsom::kernels::detail
