#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spatlang/geometry.hpp"

namespace spatlang {

// Scene documents are JSON:
//   {"dt": 0.1, "n_ticks": 3, "entities": [
//      {"id": "reg-1", "kind": "region", "color": "red", "rect": [x1,y1,x2,y2]},
//      {"id": "obj-1", "kind": "block",  "color": [150,44,21],
//       "track": [[x,y,w,h], ...]} ]}
// Track index i is tick i. Robots may carry "pose" (radians).
Scene load_scene(std::string_view text);
Scene load_scene_file(const std::string& path);
std::string serialize_scene(const Scene& scene);

// Pair documents: {"scene_a": <scene>, "scene_b": <scene>}.
ScenePair load_pair(std::string_view text);
ScenePair load_pair_file(const std::string& path);
std::string serialize_pair(const ScenePair& pair);

// -------------------------------------------------------------------
// Synthetic scenes: piecewise-linear block motion plus optional
// Gaussian positional noise.

struct BlockScript {
  std::string id;
  Color color;
  double width = 0.8;
  double height = 0.8;
  std::vector<Vec2> waypoints;   // >= 1; a single waypoint is a static block
  std::vector<int> leg_ticks;    // per segment, each >= 1
};

struct StaticScript {
  std::string id;
  Kind kind = Kind::region;
  Color color;
  Rect rect;
  std::optional<double> pose;
};

struct MotionScript {
  double dt = 0.1;
  std::vector<StaticScript> statics;
  std::vector<BlockScript> blocks;
};

// Script documents (JSON):
//   {"dt": 0.1,
//    "regions": [{"id": "reg-1", "color": "red", "rect": [3,2,6,5]}],
//    "boxes":   [...], "robots": [{..., "pose": 1.57}],
//    "blocks":  [{"id": "obj-1", "color": "green", "extent": [0.8,0.8],
//                 "waypoints": [[0,3],[8,3]], "leg_ticks": [40]}]}
MotionScript load_script(std::string_view text);
MotionScript load_script_file(const std::string& path);

// Deterministic for a fixed seed. Track length is 1 + sum(leg_ticks):
// tick 0 sits on the first waypoint and each leg's last tick lands
// exactly on its end waypoint (before noise).
Scene gen_scene(const MotionScript& script, double noise_sigma, uint64_t seed);

}  // namespace spatlang
