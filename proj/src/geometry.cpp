#include "spatlang/geometry.hpp"

#include <cmath>
#include <set>

namespace spatlang {

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::block: return "block";
    case Kind::box: return "box";
    case Kind::robot: return "robot";
    case Kind::region: return "region";
  }
  return "?";
}

std::optional<Kind> kind_from_name(std::string_view name) {
  if (name == "block") return Kind::block;
  if (name == "box") return Kind::box;
  if (name == "robot") return Kind::robot;
  if (name == "region") return Kind::region;
  return std::nullopt;
}

const Entity* Scene::find(std::string_view id) const {
  for (const Entity& e : entities)
    if (e.id == id) return &e;
  return nullptr;
}

const Entity& Scene::entity(std::string_view id) const {
  const Entity* e = find(id);
  if (!e) throw SceneError("unknown entity id: " + std::string(id));
  return *e;
}

void validate_scene(const Scene& scene) {
  if (scene.dt <= 0.0) throw SceneError("scene field dt must be positive");
  if (scene.n_ticks < 1) throw SceneError("scene field n_ticks must be >= 1");

  std::set<std::string> seen;
  for (const Entity& e : scene.entities) {
    if (e.id.empty()) throw SceneError("entity with empty id");
    if (!seen.insert(e.id).second)
      throw SceneError("duplicate id: " + e.id);

    if (e.color.symbolic() == e.color.ycbcr.has_value())
      throw SceneError(e.id + ": field color must be a name or a YCbCr triple");
    if (e.color.ycbcr) {
      for (double c : *e.color.ycbcr)
        if (c < 0.0 || c > 255.0)
          throw SceneError(e.id + ": field color channel out of [0,255]");
    }

    if (e.is_block()) {
      if (static_cast<int>(e.track.size()) != scene.n_ticks)
        throw SceneError(e.id + ": track-length mismatch (track has " +
                         std::to_string(e.track.size()) + " states, n_ticks=" +
                         std::to_string(scene.n_ticks) + ")");
      for (const ObjectState& s : e.track)
        if (s.w <= 0.0 || s.h <= 0.0)
          throw SceneError(e.id + ": field extent must be strictly positive");
    } else {
      if (!e.track.empty())
        throw SceneError(e.id + ": field track only allowed on blocks");
      if (!e.rect.valid())
        throw SceneError(e.id + ": field rect violates x_min<=x_max, y_min<=y_max");
      if (e.pose && e.kind != Kind::robot)
        throw SceneError(e.id + ": field pose only allowed on robots");
    }
  }
}

static void check_tick(const Scene& scene, int tick) {
  if (tick < 0 || tick >= scene.n_ticks)
    throw std::out_of_range("tick " + std::to_string(tick) +
                            " out of range [0," + std::to_string(scene.n_ticks) + ")");
}

Rect footprint(const Scene& scene, std::string_view id, int tick) {
  check_tick(scene, tick);
  const Entity& e = scene.entity(id);
  if (!e.is_block()) return e.rect;
  const ObjectState& s = e.track[static_cast<size_t>(tick)];
  const double hw = s.w * 0.5;
  const double hh = s.h * 0.5;
  return {s.x - hw, s.y - hh, s.x + hw, s.y + hh};
}

// Centers are taken from the raw state (block position / rect midpoint),
// which is the footprint center without the rounding of going through
// the rect representation.
static Vec2 centroid(const Entity& e, int tick) {
  if (e.is_block()) {
    const ObjectState& s = e.track[static_cast<size_t>(tick)];
    return {s.x, s.y};
  }
  return e.rect.center();
}

double centroid_distance(const Scene& scene, std::string_view a,
                         std::string_view b, int tick) {
  check_tick(scene, tick);
  const Vec2 ca = centroid(scene.entity(a), tick);
  const Vec2 cb = centroid(scene.entity(b), tick);
  const double dx = ca.x - cb.x;
  const double dy = ca.y - cb.y;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace spatlang
