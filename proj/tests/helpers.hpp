#pragma once

#include <string>

#include "spatlang/common.hpp"
#include "spatlang/scene_io.hpp"

namespace spatlang::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(SPATLANG_FIXTURE_DIR) + "/" + name;
}

inline Scene canonical_scene() {
  return load_scene_file(fixture_path("canonical_scene.json"));
}

// A block moving along given waypoints plus static regions; the workhorse
// for synthetic cases.
inline MotionScript simple_script(std::vector<Vec2> waypoints, std::vector<int> legs,
                                  std::vector<StaticScript> statics = {},
                                  const std::string& color = "green") {
  MotionScript script;
  script.statics = std::move(statics);
  BlockScript b;
  b.id = "obj-1";
  b.color.name = color;
  b.waypoints = std::move(waypoints);
  b.leg_ticks = std::move(legs);
  script.blocks.push_back(std::move(b));
  return script;
}

inline StaticScript region(const std::string& id, const std::string& color, Rect rect) {
  StaticScript s;
  s.id = id;
  s.kind = Kind::region;
  s.color.name = color;
  s.rect = rect;
  return s;
}

// ---------------------------------------------------------------------
// Discriminable scene pairs. Each family contrasts the two scenes so
// that either topic has a positive discriminator:
//   0: block crosses the red region  vs  detours above it into white
//   1: block enters the red region   vs  block exits it
//   2: yellow block crosses red      vs  green block crosses red
//   3: block crosses red             vs  block crosses blue
// variant jitters the path; sigma adds positional noise.

inline ScenePair family_pair(int family, int variant, double sigma, uint64_t seed) {
  const double dy = 0.04 * static_cast<double>(variant % 6);
  MotionScript a, b;
  switch (family % 4) {
    case 0: {
      auto regions = std::vector<StaticScript>{region("reg-1", "red", {3, 2, 6, 5}),
                                               region("reg-2", "white", {8, 2, 11, 5})};
      a = simple_script({{0.6, 3.5 + dy}, {7.0, 3.5 + dy}}, {32}, regions, "yellow");
      b = simple_script({{0.5, 6.5 + dy}, {9.5, 6.5 + dy}, {9.5, 3.5}}, {45, 15},
                        regions, "yellow");
      break;
    }
    case 1: {
      auto regions = std::vector<StaticScript>{region("reg-1", "red", {3, 2, 6, 5}),
                                               region("reg-2", "blue", {9, 9, 11, 11})};
      a = simple_script({{0.5, 3.5 + dy}, {4.5, 3.5 + dy}}, {20}, regions, "green");
      b = simple_script({{4.5, 3.5 + dy}, {10.5, 3.5 + dy}}, {30}, regions, "green");
      break;
    }
    case 2: {
      auto regions = std::vector<StaticScript>{region("reg-1", "red", {3, 2, 6, 5}),
                                               region("reg-2", "white", {8, 2, 11, 5})};
      a = simple_script({{0.6, 3.5 + dy}, {7.0, 3.5 + dy}}, {32}, regions, "yellow");
      b = simple_script({{0.6, 3.5 + dy}, {7.0, 3.5 + dy}}, {32}, regions, "green");
      break;
    }
    default: {
      auto regions = std::vector<StaticScript>{region("reg-1", "red", {3, 2, 6, 5}),
                                               region("reg-2", "blue", {8, 2, 11, 5})};
      a = simple_script({{0.6, 3.5 + dy}, {7.0, 3.5 + dy}}, {32}, regions, "green");
      b = simple_script({{7.0, 3.5 + dy}, {12.6, 3.5 + dy}}, {28}, regions, "green");
      break;
    }
  }
  ScenePair pair;
  pair.a = gen_scene(a, sigma, seed);
  pair.b = gen_scene(b, sigma, seed + 1);
  return pair;
}

// Yellow block crosses the red region in scene_a only.
inline ScenePair crossing_pair() { return family_pair(0, 0, 0.0, 11); }

}  // namespace spatlang::testing
