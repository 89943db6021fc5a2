#include "spatlang/events.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace spatlang {

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::left: return "left";
    case Direction::right: return "right";
    case Direction::closer: return "closer";
    case Direction::further: return "further";
  }
  return "?";
}

std::optional<Direction> direction_from_name(std::string_view name) {
  if (name == "left") return Direction::left;
  if (name == "right") return Direction::right;
  if (name == "closer") return Direction::closer;
  if (name == "further") return Direction::further;
  return std::nullopt;
}

std::string_view event_pred_name(EventPred p) {
  switch (p) {
    case EventPred::moves: return "moves";
    case EventPred::moves_into: return "moves_into";
    case EventPred::moves_out_of: return "moves_out_of";
    case EventPred::moves_across: return "moves_across";
  }
  return "?";
}

std::string EventAtom::ref_text() const {
  if (dir) return std::string(direction_name(*dir));
  return ref_id;
}

std::vector<EventAtom> segment_moves(const Scene& scene, const AbstractionParams& params) {
  std::vector<EventAtom> out;
  std::vector<const Entity*> blocks;
  for (const Entity& e : scene.entities)
    if (e.is_block()) blocks.push_back(&e);
  std::sort(blocks.begin(), blocks.end(),
            [](const Entity* x, const Entity* y) { return x->id < y->id; });

  for (const Entity* b : blocks) {
    const int steps = scene.n_ticks - 1;
    // Per-step direction, or nothing when below the speed threshold.
    std::vector<std::optional<Direction>> dir(static_cast<size_t>(std::max(steps, 0)));
    for (int t = 0; t < steps; ++t) {
      const ObjectState& s0 = b->track[static_cast<size_t>(t)];
      const ObjectState& s1 = b->track[static_cast<size_t>(t) + 1];
      const double dx = s1.x - s0.x;
      const double dy = s1.y - s0.y;
      if (std::sqrt(dx * dx + dy * dy) <= params.v_eps) continue;
      // Dominant axis; ties go to the horizontal axis.
      if (std::fabs(dx) >= std::fabs(dy))
        dir[t] = dx < 0 ? Direction::left : Direction::right;
      else
        dir[t] = dy < 0 ? Direction::closer : Direction::further;
    }

    int run_start = -1;
    for (int t = 0; t <= steps; ++t) {
      const bool extend = t < steps && dir[t].has_value() && run_start >= 0 &&
                          dir[t] == dir[run_start];
      if (extend) continue;
      if (run_start >= 0)
        out.push_back({EventPred::moves, b->id, "", dir[run_start], {run_start, t - 1}});
      run_start = (t < steps && dir[t].has_value()) ? t : -1;
    }
  }
  return out;
}

namespace {

// Topology and motion fluents of one ordered pair, in start order.
struct PairFluents {
  std::vector<const Fluent*> topology;
  std::vector<const Fluent*> motion;
};

using PairKey = std::pair<std::string, std::string>;

std::map<PairKey, PairFluents> group_by_pair(const std::vector<Fluent>& fluents) {
  std::map<PairKey, PairFluents> groups;
  for (const Fluent& f : fluents) {
    if (f.family == Family::topology)
      groups[{f.a, f.b}].topology.push_back(&f);
    else if (f.family == Family::motion)
      groups[{f.a, f.b}].motion.push_back(&f);
  }
  for (auto& [key, g] : groups) {
    auto by_start = [](const Fluent* x, const Fluent* y) {
      return x->interval.start < y->interval.start;
    };
    std::sort(g.topology.begin(), g.topology.end(), by_start);
    std::sort(g.motion.begin(), g.motion.end(), by_start);
  }
  return groups;
}

// A motion fluent of the given kind covering the whole phase; shared
// endpoints are accepted (discrete sampling makes strict Allen during
// too fragile at phase boundaries).
bool motion_covers(const PairFluents& g, MotionRel kind, const TickInterval& phase) {
  for (const Fluent* f : g.motion)
    if (f->motion() == kind && f->interval.contains(phase)) return true;
  return false;
}

}  // namespace

std::vector<EventAtom> detect_transitions(const std::vector<Fluent>& fluents) {
  std::vector<EventAtom> out;
  for (const auto& [key, g] : group_by_pair(fluents)) {
    const auto& topo = g.topology;
    for (size_t i = 0; i + 2 < topo.size(); ++i) {
      const Rcc5Rel r0 = topo[i]->rcc5();
      const Rcc5Rel r1 = topo[i + 1]->rcc5();
      const Rcc5Rel r2 = topo[i + 2]->rcc5();
      const TickInterval po = topo[i + 1]->interval;
      if (r0 == Rcc5Rel::DC && r1 == Rcc5Rel::PO && r2 == Rcc5Rel::PP &&
          motion_covers(g, MotionRel::approaching, po))
        out.push_back({EventPred::moves_into, key.first, key.second, std::nullopt, po});
      if (r0 == Rcc5Rel::PP && r1 == Rcc5Rel::PO && r2 == Rcc5Rel::DC &&
          motion_covers(g, MotionRel::receding, po))
        out.push_back({EventPred::moves_out_of, key.first, key.second, std::nullopt, po});
    }
  }
  return out;
}

std::vector<EventAtom> detect_across(const std::vector<EventAtom>& atoms,
                                     const std::vector<Fluent>& fluents) {
  auto groups = group_by_pair(fluents);

  // moves intervals per block.
  std::map<std::string, std::vector<TickInterval>> moves;
  for (const EventAtom& a : atoms)
    if (a.pred == EventPred::moves) moves[a.subject].push_back(a.interval);

  std::map<PairKey, std::vector<const EventAtom*>> entries, exits;
  for (const EventAtom& a : atoms) {
    if (a.pred == EventPred::moves_into) entries[{a.subject, a.ref_id}].push_back(&a);
    if (a.pred == EventPred::moves_out_of) exits[{a.subject, a.ref_id}].push_back(&a);
  }

  std::vector<EventAtom> out;
  for (auto& [key, ins] : entries) {
    auto ex_it = exits.find(key);
    if (ex_it == exits.end()) continue;
    const auto& outs = ex_it->second;
    for (const EventAtom* in : ins) {
      // Nearest later exit, nothing in between.
      const EventAtom* exit = nullptr;
      for (const EventAtom* ou : outs) {
        if (ou->interval.start <= in->interval.end) continue;
        if (!exit || ou->interval.start < exit->interval.start) exit = ou;
      }
      if (!exit) continue;

      // The block must not have left the region between entry and exit:
      // no DC topology fluent inside the gap.
      bool left_in_between = false;
      const auto git = groups.find(key);
      if (git != groups.end()) {
        const TickInterval gap{in->interval.end + 1, exit->interval.start - 1};
        if (gap.valid()) {
          for (const Fluent* f : git->second.topology)
            if (f->rcc5() == Rcc5Rel::DC && f->interval.overlaps(gap))
              left_in_between = true;
        }
      }
      if (left_in_between) continue;

      const TickInterval span{in->interval.start, exit->interval.end};
      bool within_moves = false;
      const auto mit = moves.find(key.first);
      if (mit != moves.end())
        for (const TickInterval& m : mit->second)
          if (m.contains(span)) within_moves = true;
      if (!within_moves) continue;

      out.push_back({EventPred::moves_across, key.first, key.second, std::nullopt, span});
    }
  }
  return out;
}

std::vector<EventAtom> describe_scene(const Scene& scene, const AbstractionParams& params) {
  const std::vector<Fluent> fluents = extract_fluents(scene, params);
  std::vector<EventAtom> atoms = segment_moves(scene, params);
  std::vector<EventAtom> transitions = detect_transitions(fluents);
  atoms.insert(atoms.end(), transitions.begin(), transitions.end());
  std::vector<EventAtom> across = detect_across(atoms, fluents);
  atoms.insert(atoms.end(), across.begin(), across.end());

  std::sort(atoms.begin(), atoms.end(), [](const EventAtom& x, const EventAtom& y) {
    if (x.interval.start != y.interval.start) return x.interval.start < y.interval.start;
    const std::string_view px = event_pred_name(x.pred), py = event_pred_name(y.pred);
    if (px != py) return px < py;
    if (x.subject != y.subject) return x.subject < y.subject;
    return x.ref_text() < y.ref_text();
  });
  return atoms;
}

std::string event_json_line(const EventAtom& atom) {
  std::string s = "{\"pred\": \"";
  s += event_pred_name(atom.pred);
  s += "\", \"subject\": \"";
  s += atom.subject;
  s += "\", \"ref\": \"";
  s += atom.ref_text();
  s += "\", \"interval\": [";
  s += std::to_string(atom.interval.start);
  s += ", ";
  s += std::to_string(atom.interval.end);
  s += "]}";
  return s;
}

namespace {

std::string entity_phrase(const Scene& scene, const std::string& id,
                          const std::function<std::string(const Color&)>& color_name) {
  const Entity* e = scene.find(id);
  if (!e) return id;
  std::string color;
  if (color_name)
    color = color_name(e->color);
  else if (e->color.symbolic())
    color = e->color.name;
  std::string phrase = color.empty() ? "" : color + " ";
  phrase += kind_name(e->kind);
  return phrase;
}

}  // namespace

std::string render_english(const Scene& scene, const EventAtom& atom,
                           const std::function<std::string(const Color&)>& color_name) {
  std::string s = "The " + entity_phrase(scene, atom.subject, color_name) + " moves ";
  switch (atom.pred) {
    case EventPred::moves:
      s += std::string(direction_name(*atom.dir));
      break;
    case EventPred::moves_into:
      s += "into the " + entity_phrase(scene, atom.ref_id, color_name);
      break;
    case EventPred::moves_out_of:
      s += "out of the " + entity_phrase(scene, atom.ref_id, color_name);
      break;
    case EventPred::moves_across:
      s += "across the " + entity_phrase(scene, atom.ref_id, color_name);
      break;
  }
  s += " [" + std::to_string(atom.interval.start) + ".." +
       std::to_string(atom.interval.end) + "].";
  return s;
}

}  // namespace spatlang
