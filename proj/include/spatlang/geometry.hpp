#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spatlang {

// Viewer frame throughout: x grows rightward, y grows away from the
// viewer (depth). "left" means smaller x, "closer" means smaller y.

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Axis-aligned rectangle; meters.
struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  Vec2 center() const { return {(x_min + x_max) * 0.5, (y_min + y_max) * 0.5}; }
  bool valid() const { return x_min <= x_max && y_min <= y_max; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class Kind { block, box, robot, region };

std::string_view kind_name(Kind k);
std::optional<Kind> kind_from_name(std::string_view name);

// Either a symbolic name ("yellow") or a raw YCbCr triple, each channel
// in [0, 255].
struct Color {
  std::string name;                              // empty when numeric
  std::optional<std::array<double, 3>> ycbcr;    // set when numeric

  bool symbolic() const { return !name.empty(); }
  friend bool operator==(const Color&, const Color&) = default;
};

// Per-tick state of a tracked block: center position plus extent.
struct ObjectState {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  friend bool operator==(const ObjectState&, const ObjectState&) = default;
};

struct Entity {
  std::string id;
  Kind kind = Kind::block;
  Color color;
  std::optional<double> pose;       // radians; robots only
  Rect rect;                        // static kinds (box, robot, region)
  std::vector<ObjectState> track;   // blocks: one state per tick

  bool is_block() const { return kind == Kind::block; }
  friend bool operator==(const Entity&, const Entity&) = default;
};

struct Scene {
  double dt = 0.1;  // seconds per tick
  int n_ticks = 0;
  std::vector<Entity> entities;

  const Entity* find(std::string_view id) const;
  const Entity& entity(std::string_view id) const;  // throws on unknown id
  friend bool operator==(const Scene&, const Scene&) = default;
};

struct ScenePair {
  Scene a;
  Scene b;
  const Scene& scene(int index) const { return index == 0 ? a : b; }
};

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks all scene invariants (unique ids, track lengths, positive
// extents, ...); throws SceneError naming the entity and field.
void validate_scene(const Scene& scene);

// Axis-aligned footprint of an entity at a tick; static entities return
// the same rect for every tick.
Rect footprint(const Scene& scene, std::string_view id, int tick);

// Euclidean distance between footprint centers.
double centroid_distance(const Scene& scene, std::string_view a,
                         std::string_view b, int tick);

}  // namespace spatlang
