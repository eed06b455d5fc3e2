#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "mrfsom/export.hpp"
#include "mrfsom/kinematics.hpp"
#include "mrfsom/lattice.hpp"
#include "mrfsom/mrf.hpp"
#include "mrfsom/som.hpp"

namespace mrfsom::app {

enum class TrainMode { som, mrf };
std::string_view to_string(TrainMode mode);
TrainMode parse_mode(std::string_view text);

/// Everything a run needs. `seed` is the single user-facing seed; the
/// sampler uses it directly, codebook initialization and sample shuffling
/// use derived sub-streams (see init_seed / shuffle_seed).
struct RunConfig {
  LatticeSpec lattice;
  TrainSchedule schedule;
  MrfConfig mrf;
  ChainSpec chain;
  TrainMode mode = TrainMode::mrf;
  std::string mask = "default-paper";  // default-paper | all-true | <path>
  std::string data;                    // <path> | synthesize:<n>
  std::filesystem::path out_dir = "out";
  std::filesystem::path model;         // evaluate/export input; defaults to <out_dir>/model.json
  std::uint64_t seed = 1;
  std::size_t samples = 3216;          // generate
  std::uint64_t max_attempts = 100'000'000;
  double combination_threshold = 0.25;

  std::uint64_t init_seed() const;
  std::uint64_t shuffle_seed() const;
};

/// Parses `synthesize:<n>`; returns 0 when `data` is not of that form.
std::size_t synthesize_count(const std::string& data);

/// Mask named by cfg.mask. ConfigError if the mask file is missing or the
/// mask does not fit the lattice / 7 inputs.
ReceptiveFieldMask resolve_mask(const RunConfig& cfg);

/// Source descriptors stored in model files; never absolute paths.
std::string describe_mask_source(const std::string& mask);
std::string describe_data_source(const std::string& data);

Json chain_to_json(const ChainSpec& chain);
ChainSpec chain_from_json(const Json& j);

/// Persisted, path-free part of the run configuration.
Json run_config_to_json(const RunConfig& cfg);

}  // namespace mrfsom::app
