#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kernels_detail.hpp"

namespace mrfsom::kernels {

void best_two_parallel(const Matrix& codebook, const Matrix& data, Scoring scoring, std::span<BestTwo> out) {
  const auto samples = static_cast<std::int64_t>(data.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < samples; ++s) {
    out[static_cast<std::size_t>(s)] = detail::rank_sample(codebook, data.row(static_cast<std::size_t>(s)), scoring);
  }
}

void bmu_parallel(const Matrix& codebook, const Matrix& data, Scoring scoring, std::span<std::size_t> out) {
  const auto samples = static_cast<std::int64_t>(data.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < samples; ++s) {
    out[static_cast<std::size_t>(s)] = detail::winner(codebook, data.row(static_cast<std::size_t>(s)), scoring);
  }
}

bool parallel_enabled() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace mrfsom::kernels
