#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace mrfsom {

inline constexpr std::size_t kJointCount = 7;

enum Joint : std::size_t {
  head_yaw = 0,
  head_pitch,
  shoulder_roll,
  shoulder_pitch,
  elbow_roll,
  elbow_yaw,
  wrist,
};

/// Column order used everywhere: datasets, codebooks, masks.
inline constexpr std::array<std::string_view, kJointCount> kJointNames = {
    "head_yaw", "head_pitch", "shoulder_roll", "shoulder_pitch", "elbow_roll", "elbow_yaw", "wrist"};

/// Body-part groups of the default receptive-field layout.
inline constexpr std::array<std::string_view, 4> kBodyGroups = {"head", "shoulder", "elbow", "wrist"};

constexpr std::string_view body_group_of(std::size_t joint) {
  switch (joint) {
    case head_yaw:
    case head_pitch: return "head";
    case shoulder_roll:
    case shoulder_pitch: return "shoulder";
    case elbow_roll:
    case elbow_yaw: return "elbow";
    default: return "wrist";
  }
}

}  // namespace mrfsom
