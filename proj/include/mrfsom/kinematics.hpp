#pragma once

#include <array>
#include <span>
#include <string_view>

#include <Eigen/Geometry>

#include "mrfsom/joints.hpp"

namespace mrfsom {

enum class Axis { x, y, z };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view text);

struct JointLimit {
  double lo;
  double hi;
};

/// Seven joint angles in radians, in kJointNames order.
using JointSample = std::array<double, kJointCount>;

/// Humanoid head and right-arm geometry (torso frame: x forward, y left,
/// z up). Defaults are Nao-like artifact values.
///
/// Head chain:  neck_offset, R(head_yaw), R(head_pitch), face_target.
/// Arm chain:   shoulder_offset, R(shoulder_pitch), R(shoulder_roll),
///              +upper_arm along x, R(elbow_yaw), R(elbow_roll), R(wrist),
///              +forearm_hand along x.
struct ChainSpec {
  std::array<JointLimit, kJointCount> limits = {{
      {-2.0857, 2.0857},  // head yaw
      {-0.6720, 0.5149},  // head pitch
      {-1.3265, 0.3142},  // shoulder roll
      {-2.0857, 2.0857},  // shoulder pitch
      {0.0349, 1.5446},   // elbow roll
      {-2.0857, 2.0857},  // elbow yaw
      {-1.8238, 1.8238},  // wrist
  }};
  Eigen::Vector3d neck_offset{0.0, 0.0, 0.1265};
  Eigen::Vector3d shoulder_offset{0.0, -0.098, 0.100};
  double upper_arm = 0.105;
  double forearm_hand = 0.114;
  Eigen::Vector3d face_target{0.05, 0.0, 0.05};  // head frame
  double touch_radius = 0.03;
  std::array<Axis, kJointCount> axes = {Axis::z, Axis::y, Axis::z, Axis::y, Axis::z, Axis::x, Axis::x};

  /// ConfigError on degenerate limits, non-positive lengths or radius.
  void validate() const;
};

struct TouchPoints {
  Eigen::Vector3d hand;
  Eigen::Vector3d face;
};

/// Hand and face-target positions in the torso frame. DomainError if any
/// angle lies outside its limit interval.
TouchPoints forward_kinematics(const JointSample& sample, const ChainSpec& chain);

/// Same computation without the limit check (sampler hot path).
TouchPoints forward_kinematics_unchecked(const JointSample& sample, const ChainSpec& chain);

bool is_touching(const TouchPoints& p, double radius);

}  // namespace mrfsom
