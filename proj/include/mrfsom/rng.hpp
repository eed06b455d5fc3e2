#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

// Distribution helpers with a fixed, documented bit-level algorithm. The
// std:: distributions are implementation-defined, so trained maps and
// generated datasets would differ between standard libraries.
namespace mrfsom::rng {

using Engine = std::mt19937_64;

/// One step of the SplitMix64 output function.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent sub-stream seed for (seed, stream index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Maps 64 random bits onto [0, 1) using the top 53 bits.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double uniform01(Engine& engine) { return to_unit(engine()); }

inline double uniform(Engine& engine, double lo, double hi) {
  return lo + (hi - lo) * uniform01(engine);
}

/// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
inline std::uint64_t uniform_index(Engine& engine, std::uint64_t bound) {
  if (bound == 0) return 0;
  unsigned __int128 m = static_cast<unsigned __int128>(engine()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Fisher-Yates shuffle driven by uniform_index.
template <class T>
void shuffle(std::span<T> items, Engine& engine) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(engine, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Counter-based stream: cheap to construct, so a generator can be
/// created per sampling attempt.
class SplitMixStream {
public:
  explicit SplitMixStream(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform01() noexcept { return to_unit(next()); }

private:
  std::uint64_t state_;
};

}  // namespace mrfsom::rng
