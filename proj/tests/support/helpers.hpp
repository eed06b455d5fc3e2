#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "mrfsom/mrf.hpp"

namespace testing_support {

inline bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

inline mrfsom::ReceptiveFieldMask to_mask(std::size_t rows, std::size_t cols,
                                          const std::vector<std::vector<bool>>& bits,
                                          std::vector<std::string> labels = {}) {
  std::vector<std::uint8_t> flat;
  for (const auto& r : bits) {
    for (const bool b : r) flat.push_back(b ? 1 : 0);
  }
  return {rows, cols, bits.front().size(), std::move(flat), std::move(labels)};
}

inline std::vector<std::vector<bool>> to_bits(const mrfsom::ReceptiveFieldMask& mask) {
  std::vector<std::vector<bool>> bits(mask.neurons(), std::vector<bool>(mask.dims()));
  for (std::size_t n = 0; n < mask.neurons(); ++n) {
    for (std::size_t i = 0; i < mask.dims(); ++i) bits[n][i] = mask.active(n, i);
  }
  return bits;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("mrfsom_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing_support
