#include <doctest.h>

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mrfsom/datagen.hpp"
#include "mrfsom/kernels.hpp"
#include "mrfsom/mrf.hpp"
#include "support/oracles.hpp"

using namespace mrfsom;

namespace {

// Forces a real thread team even on single-core machines.
struct ThreadScope {
  ThreadScope() {
#ifdef _OPENMP
    previous = omp_get_max_threads();
    omp_set_num_threads(4);
#endif
  }
  ~ThreadScope() {
#ifdef _OPENMP
    omp_set_num_threads(previous);
#endif
  }
  int previous = 1;
};

bool same(const kernels::BestTwo& a, const kernels::BestTwo& b) {
  return a.first == b.first && a.second == b.second && a.first_score == b.first_score;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("parallel winner search equals the serial reference") {
  ThreadScope threads;
  std::mt19937_64 gen(1);
  const ReceptiveFieldMask mask = default_paper_mask();
  for (int trial = 0; trial < 20; ++trial) {
    const bool grid = trial % 2 == 0;
    const Matrix codebook = grid ? oracle::grid_matrix(gen, 16, 7) : oracle::random_matrix(gen, 16, 7);
    const Matrix data = grid ? oracle::grid_matrix(gen, 997, 7) : oracle::random_matrix(gen, 997, 7);
    for (const kernels::Scoring scoring : {kernels::Scoring{}, kernels::Scoring{mask.data(), true},
                                           kernels::Scoring{mask.data(), false}}) {
      std::vector<kernels::BestTwo> serial(data.rows()), parallel(data.rows());
      kernels::best_two_serial(codebook, data, scoring, serial);
      kernels::best_two_parallel(codebook, data, scoring, parallel);
      for (std::size_t s = 0; s < data.rows(); ++s) CHECK(same(serial[s], parallel[s]));
      CHECK(kernels::mean_winner_distance(serial) == kernels::mean_winner_distance(parallel));

      std::vector<std::size_t> bmu_s(data.rows()), bmu_p(data.rows());
      kernels::bmu_serial(codebook, data, scoring, bmu_s);
      kernels::bmu_parallel(codebook, data, scoring, bmu_p);
      CHECK(bmu_s == bmu_p);
      for (std::size_t s = 0; s < data.rows(); ++s) CHECK(bmu_s[s] == serial[s].first);
    }
  }
}

TEST_CASE("best two agrees with the oracle ranking") {
  std::mt19937_64 gen(2);
  const Matrix codebook = oracle::grid_matrix(gen, 9, 3);
  const Matrix data = oracle::grid_matrix(gen, 300, 3);
  std::vector<kernels::BestTwo> ranked(data.rows());
  kernels::best_two_serial(codebook, data, {}, ranked);
  for (std::size_t s = 0; s < data.rows(); ++s) {
    std::vector<double> d;
    for (std::size_t n = 0; n < 9; ++n) d.push_back(oracle::distance(oracle::row(data, s), oracle::row(codebook, n)));
    const auto order = oracle::ranking(d);
    CHECK(ranked[s].first == order[0]);
    CHECK(ranked[s].second == order[1]);
  }
  std::vector<kernels::BestTwo> lone(1);
  kernels::best_two_serial(Matrix(1, 3), Matrix(1, 3), {}, lone);
  CHECK(lone[0].first == 0);
  CHECK(lone[0].second == kernels::npos);
}

TEST_CASE("parallel touch attempts equal the serial reference") {
  ThreadScope threads;
  ChainSpec chain;
  chain.touch_radius = 0.08;  // enough acceptances to compare
  std::vector<std::uint8_t> serial(50'000), parallel(50'000);
  kernels::touch_attempts_serial(chain, 5, 1234, serial);
  kernels::touch_attempts_parallel(chain, 5, 1234, parallel);
  CHECK(serial == parallel);
  CHECK(std::count(serial.begin(), serial.end(), 1) > 0);
  for (std::size_t k = 0; k < 200; ++k) CHECK(serial[k] == oracle::touching(draw_attempt(chain, 5, 1234 + k), chain));
}

}
