#include <algorithm>
#include <cmath>
#include <set>

#include "eval_internal.hpp"

namespace spatlang {

namespace {

constexpr double kColorTau = 50.0;  // YCbCr units of graded color fit

const EntitySet* as_entities(const Value& v) { return std::get_if<EntitySet>(&v); }
const EventSet* as_events(const Value& v) { return std::get_if<EventSet>(&v); }
const SemEntity* as_sem(const Value& v) { return std::get_if<SemEntity>(&v); }

[[noreturn]] void type_error(const CogOpNode& node, const char* what) {
  throw std::invalid_argument(std::string(cog_op_name(node.op)) + ": " + what);
}

const SemEntity& sem_arg(const std::map<std::string, Value>& env,
                         const CogOpNode& node, size_t idx, SemCategory category,
                         const char* what) {
  const SemEntity* e = as_sem(env.at(node.args[idx]));
  if (!e || e->category != category) type_error(node, what);
  return *e;
}

EventPred relation_pred(const std::string& relation) {
  if (relation == "into") return EventPred::moves_into;
  if (relation == "out-of") return EventPred::moves_out_of;
  return EventPred::moves_across;
}

}  // namespace

struct Evaluator::Branch {
  std::map<std::string, Value> env;
  std::vector<size_t> executed_order;  // node indices in execution order
};

Evaluator::Evaluator(const ScenePair& pair, const AbstractionParams& params,
                     const ColorPrototypes& prototypes)
    : pair_(pair), params_(params), prototypes_(prototypes) {
  atoms_[0] = describe_scene(pair.a, params);
  atoms_[1] = describe_scene(pair.b, params);
}

double Evaluator::color_distance(const Entity& entity, const std::string& color) const {
  if (entity.color.symbolic()) return 0.0;
  const auto it = prototypes_.prototypes.find(color);
  if (it == prototypes_.prototypes.end()) return 0.0;
  const auto& s = *entity.color.ycbcr;
  const double d0 = s[0] - it->second[0];
  const double d1 = s[1] - it->second[1];
  const double d2 = s[2] - it->second[2];
  return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

// Executes one get-context branch. Returns false when the branch fails
// (an operation yields an empty set, a determiner misses uniqueness, or
// the dataflow sticks on unproduced inputs).
bool Evaluator::run_branch(const IrlProgram& program, int scene_index,
                           Branch& branch) const {
  const Scene& scene = pair_.scene(scene_index);
  auto& env = branch.env;
  for (const BindStatement& b : program.binds) env[b.variable] = b.entity;

  std::vector<bool> done(program.nodes.size(), false);
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < program.nodes.size(); ++i) {
      if (done[i]) continue;
      const CogOpNode& node = program.nodes[i];
      bool ready = true;
      for (size_t a = 1; a < node.args.size(); ++a)
        if (!env.count(node.args[a])) ready = false;
      if (!ready) continue;

      Value out;
      switch (node.op) {
        case CogOp::get_context:
          out = SceneRef{scene_index};
          break;
        case CogOp::apply_class: {
          if (!std::get_if<SceneRef>(&env.at(node.args[1])))
            type_error(node, "second argument must be a context");
          const SemEntity& cls =
              sem_arg(env, node, 2, SemCategory::object_class, "needs an object-class");
          auto kind = kind_from_name(cls.value);
          if (!kind) type_error(node, "unknown object-class value");
          EntitySet ids;
          for (const Entity& e : scene.entities)
            if (e.kind == *kind) ids.push_back(e.id);
          std::sort(ids.begin(), ids.end());
          if (ids.empty()) return false;
          out = std::move(ids);
          break;
        }
        case CogOp::apply_color: {
          const EntitySet* in = as_entities(env.at(node.args[1]));
          if (!in) type_error(node, "second argument must be an entity set");
          const SemEntity& col =
              sem_arg(env, node, 2, SemCategory::color_category, "needs a color-category");
          EntitySet kept;
          for (const std::string& id : *in) {
            const Entity& e = scene.entity(id);
            const bool match = e.color.symbolic()
                                   ? e.color.name == col.value
                                   : classify_color(*e.color.ycbcr, prototypes_) == col.value;
            if (match) kept.push_back(id);
          }
          if (kept.empty()) return false;
          out = std::move(kept);
          break;
        }
        case CogOp::apply_determiner: {
          const EntitySet* in = as_entities(env.at(node.args[1]));
          if (!in) type_error(node, "second argument must be an entity set");
          const SemEntity& sel =
              sem_arg(env, node, 2, SemCategory::selector, "needs a selector");
          if (sel.value != "unique") type_error(node, "unknown selector value");
          if (in->size() != 1) return false;
          out = *in;
          break;
        }
        case CogOp::apply_event: {
          if (!std::get_if<SceneRef>(&env.at(node.args[1])))
            type_error(node, "second argument must be a context");
          EventSet events;
          for (const EventAtom& a : atoms_[scene_index])
            if (a.pred == EventPred::moves)
              events.push_back({a.subject, *a.dir, a.interval, std::nullopt, "", ""});
          if (events.empty()) return false;
          out = std::move(events);
          break;
        }
        case CogOp::apply_role: {
          const EventSet* in = as_events(env.at(node.args[1]));
          if (!in) type_error(node, "second argument must be an event set");
          const EntitySet* objs = as_entities(env.at(node.args[2]));
          if (!objs) type_error(node, "third argument must be an entity set");
          const SemEntity& role =
              sem_arg(env, node, 3, SemCategory::participant_role, "needs a participant-role");
          if (role.value != "mover") type_error(node, "unknown participant-role value");
          EventSet kept;
          for (const MotionEvent& e : *in)
            if (std::find(objs->begin(), objs->end(), e.subject) != objs->end())
              kept.push_back(e);
          if (kept.empty()) return false;
          out = std::move(kept);
          break;
        }
        case CogOp::apply_profile: {
          const EventSet* in = as_events(env.at(node.args[1]));
          if (!in) type_error(node, "second argument must be an event set");
          const SemEntity& prof =
              sem_arg(env, node, 2, SemCategory::event_profile, "needs an event-profile");
          EventProfile p;
          if (prof.value == "source") p = EventProfile::source;
          else if (prof.value == "path") p = EventProfile::path;
          else if (prof.value == "goal") p = EventProfile::goal;
          else type_error(node, "unknown event-profile value");
          EventSet annotated = *in;
          for (MotionEvent& e : annotated) e.profile = p;
          out = std::move(annotated);
          break;
        }
        case CogOp::apply_dynamic_spatial_relation: {
          const EventSet* in = as_events(env.at(node.args[1]));
          if (!in) type_error(node, "second argument must be an event set");
          const EntitySet* landmarks = as_entities(env.at(node.args[2]));
          if (!landmarks) type_error(node, "third argument must be an entity set");
          const SemEntity& rel = sem_arg(env, node, 3, SemCategory::dynamic_spatial_relation,
                                         "needs a dynamic-spatial-relation");
          if (rel.value != "across" && rel.value != "into" && rel.value != "out-of")
            type_error(node, "unknown dynamic-spatial-relation value");
          // The relation checks the facet the profile focused: a
          // mismatched profile never categorizes any event.
          const EventProfile expected = profile_for_relation(rel.value);
          const EventPred pred = relation_pred(rel.value);
          EventSet kept;
          for (const MotionEvent& e : *in) {
            if (!e.profile || *e.profile != expected) continue;
            for (const std::string& lm : *landmarks) {
              bool supported = false;
              for (const EventAtom& a : atoms_[scene_index]) {
                if (a.pred == pred && a.subject == e.subject && a.ref_id == lm &&
                    a.interval.overlaps(e.interval)) {
                  supported = true;
                  break;
                }
              }
              if (supported) {
                MotionEvent annotated = e;
                annotated.relation = rel.value;
                annotated.landmark = lm;
                kept.push_back(annotated);
                break;
              }
            }
          }
          if (kept.empty()) return false;
          out = std::move(kept);
          break;
        }
      }
      env[node.args[0]] = std::move(out);
      done[i] = true;
      branch.executed_order.push_back(i);
      progress = true;
    }
  }

  for (bool d : done)
    if (!d) return false;  // stuck: some input never became available
  return !program.nodes.empty();
}

void Evaluator::expand_solutions(const IrlProgram& program, const Branch& branch,
                                 int scene_index, std::vector<Solution>& out) const {
  // Target: the output variable no node consumes. With several (only in
  // degenerate programs), the one executed last wins.
  std::set<std::string> consumed;
  for (const CogOpNode& n : program.nodes)
    for (size_t a = 1; a < n.args.size(); ++a) consumed.insert(n.args[a]);
  std::string target;
  for (auto it = branch.executed_order.rbegin(); it != branch.executed_order.rend(); ++it) {
    const std::string& var = program.nodes[*it].args[0];
    if (!consumed.count(var)) {
      target = var;
      break;
    }
  }
  if (target.empty()) return;

  // Per-solution confidence: discrete operations contribute 1, color
  // filters exp(-d/tau) with d the YCbCr distance of the entities they
  // let through (the candidate's own distance once it is known to sit
  // in that set).
  auto score_for = [&](const std::string& candidate_id) {
    const Scene& scene = pair_.scene(scene_index);
    double score = 1.0;
    for (const CogOpNode& n : program.nodes) {
      if (n.op != CogOp::apply_color) continue;
      const EntitySet* set = as_entities(branch.env.at(n.args[0]));
      const SemEntity* col = as_sem(branch.env.at(n.args[2]));
      if (!set || !col) continue;
      double d = 0.0;
      if (!candidate_id.empty() &&
          std::find(set->begin(), set->end(), candidate_id) != set->end()) {
        d = color_distance(scene.entity(candidate_id), col->value);
      } else {
        for (const std::string& id : *set)
          d = std::max(d, color_distance(scene.entity(id), col->value));
      }
      score *= std::exp(-d / kColorTau);
    }
    return score;
  };

  const Value& value = branch.env.at(target);
  if (const EntitySet* ids = as_entities(value)) {
    for (const std::string& id : *ids) {
      Solution s;
      s.bindings = branch.env;
      s.bindings[target] = EntitySet{id};
      s.scene_index = scene_index;
      s.score = score_for(id);
      out.push_back(std::move(s));
    }
  } else if (const EventSet* events = as_events(value)) {
    for (const MotionEvent& e : *events) {
      Solution s;
      s.bindings = branch.env;
      s.bindings[target] = EventSet{e};
      s.scene_index = scene_index;
      s.score = score_for("");
      out.push_back(std::move(s));
    }
  } else {
    Solution s;
    s.bindings = branch.env;
    s.scene_index = scene_index;
    s.score = score_for("");
    out.push_back(std::move(s));
  }
}

std::vector<Solution> Evaluator::run(const IrlProgram& program) const {
  validate_program(program, /*allow_partial=*/true);
  std::vector<Solution> solutions;
  for (int scene_index = 0; scene_index < 2; ++scene_index) {
    Branch branch;
    if (run_branch(program, scene_index, branch))
      expand_solutions(program, branch, scene_index, solutions);
  }
  std::stable_sort(solutions.begin(), solutions.end(),
                   [](const Solution& x, const Solution& y) {
                     if (x.score != y.score) return x.score > y.score;
                     return x.scene_index < y.scene_index;
                   });
  return solutions;
}

std::vector<Solution> evaluate(const IrlProgram& program, const ScenePair& context,
                               const AbstractionParams& params,
                               const ColorPrototypes& prototypes) {
  return Evaluator(context, params, prototypes).run(program);
}

}  // namespace spatlang
