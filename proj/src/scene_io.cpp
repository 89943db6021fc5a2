#include "spatlang/scene_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "spatlang/common.hpp"

namespace spatlang {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SceneError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, const char* what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw SceneError(std::string(what) + ": malformed JSON");
  return doc;
}

Color color_from_json(const json& j, const std::string& id) {
  Color c;
  if (j.is_string()) {
    c.name = j.get<std::string>();
    if (c.name.empty()) throw SceneError(id + ": field color empty");
  } else if (j.is_array() && j.size() == 3) {
    std::array<double, 3> t{};
    for (size_t i = 0; i < 3; ++i) {
      if (!j[i].is_number()) throw SceneError(id + ": field color must be numeric triple");
      t[i] = j[i].get<double>();
    }
    c.ycbcr = t;
  } else {
    throw SceneError(id + ": field color must be a name or [Y,Cb,Cr]");
  }
  return c;
}

json color_to_json(const Color& c) {
  if (c.symbolic()) return c.name;
  return json::array({(*c.ycbcr)[0], (*c.ycbcr)[1], (*c.ycbcr)[2]});
}

Rect rect_from_json(const json& j, const std::string& id) {
  if (!j.is_array() || j.size() != 4)
    throw SceneError(id + ": field rect must be [x1,y1,x2,y2]");
  for (const auto& v : j)
    if (!v.is_number()) throw SceneError(id + ": field rect must be numeric");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

Scene scene_from_json(const json& doc) {
  if (!doc.is_object()) throw SceneError("scene document must be a JSON object");
  Scene scene;
  if (!doc.contains("dt") || !doc["dt"].is_number())
    throw SceneError("scene field dt missing or non-numeric");
  scene.dt = doc["dt"].get<double>();
  if (!doc.contains("n_ticks") || !doc["n_ticks"].is_number_integer())
    throw SceneError("scene field n_ticks missing or non-integer");
  scene.n_ticks = doc["n_ticks"].get<int>();
  if (!doc.contains("entities") || !doc["entities"].is_array())
    throw SceneError("scene field entities missing or not an array");

  for (const json& je : doc["entities"]) {
    Entity e;
    if (!je.contains("id") || !je["id"].is_string())
      throw SceneError("entity field id missing");
    e.id = je["id"].get<std::string>();
    if (!je.contains("kind") || !je["kind"].is_string())
      throw SceneError(e.id + ": field kind missing");
    auto kind = kind_from_name(je["kind"].get<std::string>());
    if (!kind) throw SceneError(e.id + ": field kind must be block|box|robot|region");
    e.kind = *kind;
    if (!je.contains("color")) throw SceneError(e.id + ": field color missing");
    e.color = color_from_json(je["color"], e.id);
    if (je.contains("pose")) {
      if (!je["pose"].is_number()) throw SceneError(e.id + ": field pose must be numeric");
      e.pose = je["pose"].get<double>();
    }

    if (e.kind == Kind::block) {
      if (!je.contains("track") || !je["track"].is_array())
        throw SceneError(e.id + ": field track missing for block");
      for (const json& js : je["track"]) {
        if (!js.is_array() || js.size() != 4)
          throw SceneError(e.id + ": field track entries must be [x,y,w,h]");
        e.track.push_back({js[0].get<double>(), js[1].get<double>(),
                           js[2].get<double>(), js[3].get<double>()});
      }
    } else {
      if (!je.contains("rect"))
        throw SceneError(e.id + ": field rect missing for static entity");
      e.rect = rect_from_json(je["rect"], e.id);
      if (je.contains("track"))
        throw SceneError(e.id + ": field track only allowed on blocks");
    }
    scene.entities.push_back(std::move(e));
  }

  validate_scene(scene);
  return scene;
}

json scene_to_json(const Scene& scene) {
  json doc;
  doc["dt"] = scene.dt;
  doc["n_ticks"] = scene.n_ticks;
  doc["entities"] = json::array();
  for (const Entity& e : scene.entities) {
    json je;
    je["id"] = e.id;
    je["kind"] = std::string(kind_name(e.kind));
    je["color"] = color_to_json(e.color);
    if (e.pose) je["pose"] = *e.pose;
    if (e.is_block()) {
      json track = json::array();
      for (const ObjectState& s : e.track)
        track.push_back(json::array({s.x, s.y, s.w, s.h}));
      je["track"] = std::move(track);
    } else {
      je["rect"] = json::array({e.rect.x_min, e.rect.y_min, e.rect.x_max, e.rect.y_max});
    }
    doc["entities"].push_back(std::move(je));
  }
  return doc;
}

}  // namespace

Scene load_scene(std::string_view text) {
  return scene_from_json(parse_json(text, "scene"));
}

Scene load_scene_file(const std::string& path) { return load_scene(read_file(path)); }

std::string serialize_scene(const Scene& scene) { return scene_to_json(scene).dump(2); }

ScenePair load_pair(std::string_view text) {
  json doc = parse_json(text, "pair");
  if (!doc.is_object() || !doc.contains("scene_a") || !doc.contains("scene_b"))
    throw SceneError("pair document needs scene_a and scene_b");
  ScenePair pair;
  pair.a = scene_from_json(doc["scene_a"]);
  pair.b = scene_from_json(doc["scene_b"]);
  if (pair.a.entities.empty() || pair.b.entities.empty())
    throw SceneError("pair scenes must be non-empty");
  return pair;
}

ScenePair load_pair_file(const std::string& path) { return load_pair(read_file(path)); }

std::string serialize_pair(const ScenePair& pair) {
  json doc;
  doc["scene_a"] = scene_to_json(pair.a);
  doc["scene_b"] = scene_to_json(pair.b);
  return doc.dump(2);
}

// ---------------------------------------------------------------------
// Motion scripts

namespace {

void load_statics(const json& doc, const char* key, Kind kind, MotionScript& script) {
  if (!doc.contains(key)) return;
  for (const json& js : doc[key]) {
    StaticScript s;
    s.id = js.at("id").get<std::string>();
    s.kind = kind;
    s.color = color_from_json(js.at("color"), s.id);
    s.rect = rect_from_json(js.at("rect"), s.id);
    if (js.contains("pose")) s.pose = js["pose"].get<double>();
    script.statics.push_back(std::move(s));
  }
}

}  // namespace

MotionScript load_script(std::string_view text) {
  json doc = parse_json(text, "script");
  MotionScript script;
  if (doc.contains("dt")) script.dt = doc["dt"].get<double>();
  load_statics(doc, "regions", Kind::region, script);
  load_statics(doc, "boxes", Kind::box, script);
  load_statics(doc, "robots", Kind::robot, script);
  if (doc.contains("blocks")) {
    for (const json& jb : doc["blocks"]) {
      BlockScript b;
      b.id = jb.at("id").get<std::string>();
      b.color = color_from_json(jb.at("color"), b.id);
      if (jb.contains("extent")) {
        b.width = jb["extent"][0].get<double>();
        b.height = jb["extent"][1].get<double>();
      }
      for (const json& jw : jb.at("waypoints"))
        b.waypoints.push_back({jw[0].get<double>(), jw[1].get<double>()});
      if (jb.contains("leg_ticks"))
        for (const json& jt : jb["leg_ticks"]) b.leg_ticks.push_back(jt.get<int>());
      script.blocks.push_back(std::move(b));
    }
  }
  return script;
}

MotionScript load_script_file(const std::string& path) {
  return load_script(read_file(path));
}

Scene gen_scene(const MotionScript& script, double noise_sigma, uint64_t seed) {
  // All blocks must agree on the tick count.
  int n_ticks = -1;
  for (const BlockScript& b : script.blocks) {
    if (b.waypoints.empty()) throw SceneError(b.id + ": empty waypoint list");
    if (b.leg_ticks.size() + 1 != b.waypoints.size())
      throw SceneError(b.id + ": need one leg_ticks entry per waypoint segment");
    int total = 1;
    for (int t : b.leg_ticks) {
      if (t <= 0) throw SceneError(b.id + ": non-positive tick count in leg_ticks");
      total += t;
    }
    if (n_ticks >= 0 && total != n_ticks)
      throw SceneError(b.id + ": blocks disagree on total tick count");
    n_ticks = total;
  }
  if (n_ticks < 0) n_ticks = 1;  // static scene

  Scene scene;
  scene.dt = script.dt;
  scene.n_ticks = n_ticks;
  for (const StaticScript& s : script.statics) {
    Entity e;
    e.id = s.id;
    e.kind = s.kind;
    e.color = s.color;
    e.rect = s.rect;
    e.pose = s.pose;
    scene.entities.push_back(std::move(e));
  }

  Rng rng(seed);
  for (const BlockScript& b : script.blocks) {
    Entity e;
    e.id = b.id;
    e.kind = Kind::block;
    e.color = b.color;
    e.track.reserve(static_cast<size_t>(n_ticks));
    e.track.push_back({b.waypoints[0].x, b.waypoints[0].y, b.width, b.height});
    for (size_t leg = 0; leg + 1 < b.waypoints.size(); ++leg) {
      const Vec2 from = b.waypoints[leg];
      const Vec2 to = b.waypoints[leg + 1];
      const int steps = b.leg_ticks[leg];
      for (int i = 1; i <= steps; ++i) {
        // Land exactly on the end waypoint.
        if (i == steps) {
          e.track.push_back({to.x, to.y, b.width, b.height});
        } else {
          const double f = static_cast<double>(i) / static_cast<double>(steps);
          e.track.push_back({from.x + (to.x - from.x) * f,
                             from.y + (to.y - from.y) * f, b.width, b.height});
        }
      }
    }
    if (noise_sigma > 0.0) {
      for (ObjectState& s : e.track) {
        s.x += rng.gaussian(noise_sigma);
        s.y += rng.gaussian(noise_sigma);
      }
    }
    scene.entities.push_back(std::move(e));
  }

  validate_scene(scene);
  return scene;
}

}  // namespace spatlang
