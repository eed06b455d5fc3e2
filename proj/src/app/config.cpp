#include "mrfsom/app/config.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "mrfsom/errors.hpp"
#include "mrfsom/joints.hpp"
#include "mrfsom/rng.hpp"

namespace mrfsom::app {

namespace fs = std::filesystem;

std::string_view to_string(TrainMode mode) { return mode == TrainMode::som ? "som" : "mrf"; }

TrainMode parse_mode(std::string_view text) {
  if (text == "som") return TrainMode::som;
  if (text == "mrf") return TrainMode::mrf;
  throw ConfigError("unknown training mode '" + std::string(text) + "'");
}

std::uint64_t RunConfig::init_seed() const { return rng::derive_seed(seed, 1); }
std::uint64_t RunConfig::shuffle_seed() const { return rng::derive_seed(seed, 2); }

std::size_t synthesize_count(const std::string& data) {
  constexpr std::string_view prefix = "synthesize:";
  if (!data.starts_with(prefix)) return 0;
  const std::string_view digits = std::string_view(data).substr(prefix.size());
  std::size_t n = 0;
  const auto r = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (digits.empty() || r.ec != std::errc() || r.ptr != digits.data() + digits.size() || n == 0) {
    throw ConfigError("expected synthesize:<positive count>, got '" + data + "'");
  }
  return n;
}

ReceptiveFieldMask resolve_mask(const RunConfig& cfg) {
  ReceptiveFieldMask mask;
  if (cfg.mask == "default-paper") {
    mask = default_paper_mask();
  } else if (cfg.mask == "all-true") {
    mask = all_true_mask(cfg.lattice.rows, cfg.lattice.cols, kJointCount);
  } else {
    if (!fs::exists(cfg.mask)) throw ConfigError("mask file '" + cfg.mask + "' does not exist");
    mask = load_mask(cfg.mask);
  }
  if (mask.rows() != cfg.lattice.rows || mask.cols() != cfg.lattice.cols || mask.dims() != kJointCount) {
    throw ConfigError("mask is " + std::to_string(mask.rows()) + "x" + std::to_string(mask.cols()) + " over " +
                      std::to_string(mask.dims()) + " inputs but the lattice is " + std::to_string(cfg.lattice.rows) +
                      "x" + std::to_string(cfg.lattice.cols) + " over " + std::to_string(kJointCount) + " joints");
  }
  return mask;
}

std::string describe_mask_source(const std::string& mask) {
  if (mask == "default-paper" || mask == "all-true") return mask;
  return "file:" + fs::path(mask).filename().string();
}

std::string describe_data_source(const std::string& data) {
  if (synthesize_count(data) > 0) return data;
  return "file:" + fs::path(data).filename().string();
}

namespace {

Json vec3(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d vec3(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

Json chain_to_json(const ChainSpec& chain) {
  Json limits;
  Json axes;
  for (std::size_t j = 0; j < kJointCount; ++j) {
    limits[std::string(kJointNames[j])] = Json::array({chain.limits[j].lo, chain.limits[j].hi});
    axes[std::string(kJointNames[j])] = std::string(to_string(chain.axes[j]));
  }
  Json out;
  out["limits"] = std::move(limits);
  out["axes"] = std::move(axes);
  out["neck_offset"] = vec3(chain.neck_offset);
  out["shoulder_offset"] = vec3(chain.shoulder_offset);
  out["upper_arm"] = chain.upper_arm;
  out["forearm_hand"] = chain.forearm_hand;
  out["face_target"] = vec3(chain.face_target);
  // JSON has no infinity; a null radius means every posture is accepted.
  if (std::isinf(chain.touch_radius)) {
    out["touch_radius"] = nullptr;
  } else {
    out["touch_radius"] = chain.touch_radius;
  }
  return out;
}

ChainSpec chain_from_json(const Json& j) {
  ChainSpec chain;
  for (std::size_t k = 0; k < kJointCount; ++k) {
    const auto& lim = j.at("limits").at(std::string(kJointNames[k]));
    chain.limits[k] = {lim.at(0).get<double>(), lim.at(1).get<double>()};
    chain.axes[k] = parse_axis(j.at("axes").at(std::string(kJointNames[k])).get<std::string>());
  }
  chain.neck_offset = vec3(j.at("neck_offset"));
  chain.shoulder_offset = vec3(j.at("shoulder_offset"));
  chain.upper_arm = j.at("upper_arm").get<double>();
  chain.forearm_hand = j.at("forearm_hand").get<double>();
  chain.face_target = vec3(j.at("face_target"));
  const auto& r = j.at("touch_radius");
  chain.touch_radius = r.is_null() ? std::numeric_limits<double>::infinity() : r.get<double>();
  chain.validate();
  return chain;
}

Json run_config_to_json(const RunConfig& cfg) {
  Json out;
  out["mode"] = std::string(to_string(cfg.mode));
  out["seed"] = cfg.seed;
  out["lattice"] = {{"rows", cfg.lattice.rows},
                    {"cols", cfg.lattice.cols},
                    {"layout", std::string(to_string(cfg.lattice.layout))},
                    {"metric", std::string(to_string(cfg.lattice.metric))}};
  out["schedule"] = {{"epochs", cfg.schedule.epochs},
                     {"alpha0", cfg.schedule.alpha0},
                     {"alpha_end", cfg.schedule.alpha_end},
                     {"sigma0", cfg.schedule.sigma0},
                     {"sigma_end", cfg.schedule.sigma_end},
                     {"decay", std::string(to_string(cfg.schedule.decay))}};
  out["mrf"] = {{"bmu_scope", std::string(to_string(cfg.mrf.bmu_scope))},
                {"distance", std::string(to_string(cfg.mrf.distance_normalization))}};
  out["chain"] = chain_to_json(cfg.chain);
  out["mask_source"] = describe_mask_source(cfg.mask);
  out["data_source"] = describe_data_source(cfg.data);
  out["max_attempts"] = cfg.max_attempts;
  return out;
}

}  // namespace mrfsom::app
