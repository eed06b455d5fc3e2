#include "mrfsom/kinematics.hpp"

#include <cmath>
#include <string>

#include "mrfsom/errors.hpp"

namespace mrfsom {

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "x";
}

Axis parse_axis(std::string_view text) {
  if (text == "x") return Axis::x;
  if (text == "y") return Axis::y;
  if (text == "z") return Axis::z;
  throw ConfigError("unknown axis '" + std::string(text) + "'");
}

void ChainSpec::validate() const {
  for (std::size_t j = 0; j < kJointCount; ++j) {
    if (!(limits[j].lo < limits[j].hi) || !std::isfinite(limits[j].lo) || !std::isfinite(limits[j].hi)) {
      throw ConfigError("joint limit for " + std::string(kJointNames[j]) + " is degenerate");
    }
  }
  if (!(upper_arm > 0.0) || !(forearm_hand > 0.0)) throw ConfigError("link lengths must be positive");
  if (!(touch_radius > 0.0)) throw ConfigError("touch radius must be positive");
}

namespace {

Eigen::Vector3d unit(Axis axis) {
  switch (axis) {
    case Axis::x: return Eigen::Vector3d::UnitX();
    case Axis::y: return Eigen::Vector3d::UnitY();
    case Axis::z: return Eigen::Vector3d::UnitZ();
  }
  return Eigen::Vector3d::UnitX();
}

Eigen::Isometry3d rotation(Axis axis, double angle) {
  return Eigen::Isometry3d(Eigen::AngleAxisd(angle, unit(axis)));
}

Eigen::Isometry3d translation(const Eigen::Vector3d& offset) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translation() = offset;
  return t;
}

}  // namespace

TouchPoints forward_kinematics_unchecked(const JointSample& q, const ChainSpec& chain) {
  const auto& ax = chain.axes;

  const Eigen::Isometry3d head = translation(chain.neck_offset) * rotation(ax[head_yaw], q[head_yaw]) *
                                 rotation(ax[head_pitch], q[head_pitch]);

  const Eigen::Isometry3d hand = translation(chain.shoulder_offset) *
                                 rotation(ax[shoulder_pitch], q[shoulder_pitch]) *
                                 rotation(ax[shoulder_roll], q[shoulder_roll]) *
                                 translation({chain.upper_arm, 0.0, 0.0}) *
                                 rotation(ax[elbow_yaw], q[elbow_yaw]) * rotation(ax[elbow_roll], q[elbow_roll]) *
                                 rotation(ax[wrist], q[wrist]) * translation({chain.forearm_hand, 0.0, 0.0});

  return {hand.translation(), head * chain.face_target};
}

TouchPoints forward_kinematics(const JointSample& sample, const ChainSpec& chain) {
  for (std::size_t j = 0; j < kJointCount; ++j) {
    if (!(sample[j] >= chain.limits[j].lo && sample[j] <= chain.limits[j].hi)) {
      throw DomainError(std::string(kJointNames[j]) + " angle " + std::to_string(sample[j]) + " outside [" +
                        std::to_string(chain.limits[j].lo) + ", " + std::to_string(chain.limits[j].hi) + "]");
    }
  }
  return forward_kinematics_unchecked(sample, chain);
}

bool is_touching(const TouchPoints& p, double radius) {
  if (std::isinf(radius)) return true;
  return (p.hand - p.face).norm() < radius;
}

}  // namespace mrfsom
