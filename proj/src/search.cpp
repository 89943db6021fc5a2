#include <algorithm>
#include <queue>
#include <set>

#include "eval_internal.hpp"

namespace spatlang {

namespace {

// ---------------------------------------------------------------------
// Typing of open inputs

enum class SlotType { scene, entity_set, event_set, sem };

struct Slot {
  std::string var;
  SlotType type = SlotType::sem;
  SemCategory category = SemCategory::object_class;  // for sem slots
};

// Type of an op input by position (1-based args index).
std::optional<Slot> slot_for(const CogOpNode& node, size_t pos) {
  Slot s{node.args[pos], SlotType::sem, SemCategory::object_class};
  switch (node.op) {
    case CogOp::get_context:
      return std::nullopt;
    case CogOp::apply_class:
      if (pos == 1) s.type = SlotType::scene;
      else s.category = SemCategory::object_class;
      return s;
    case CogOp::apply_color:
      if (pos == 1) s.type = SlotType::entity_set;
      else s.category = SemCategory::color_category;
      return s;
    case CogOp::apply_determiner:
      if (pos == 1) s.type = SlotType::entity_set;
      else s.category = SemCategory::selector;
      return s;
    case CogOp::apply_event:
      s.type = SlotType::scene;
      return s;
    case CogOp::apply_role:
      if (pos == 1) s.type = SlotType::event_set;
      else if (pos == 2) s.type = SlotType::entity_set;
      else s.category = SemCategory::participant_role;
      return s;
    case CogOp::apply_profile:
      if (pos == 1) s.type = SlotType::event_set;
      else s.category = SemCategory::event_profile;
      return s;
    case CogOp::apply_dynamic_spatial_relation:
      if (pos == 1) s.type = SlotType::event_set;
      else if (pos == 2) s.type = SlotType::entity_set;
      else s.category = SemCategory::dynamic_spatial_relation;
      return s;
  }
  return s;
}

SlotType output_type(CogOp op) {
  switch (op) {
    case CogOp::get_context: return SlotType::scene;
    case CogOp::apply_class:
    case CogOp::apply_color:
    case CogOp::apply_determiner: return SlotType::entity_set;
    default: return SlotType::event_set;
  }
}

std::set<std::string> produced_vars(const IrlProgram& p) {
  std::set<std::string> produced;
  for (const BindStatement& b : p.binds) produced.insert(b.variable);
  for (const CogOpNode& n : p.nodes) produced.insert(n.args[0]);
  return produced;
}

// Open inputs in deterministic order: first unproduced occurrence wins.
std::vector<Slot> open_slots(const IrlProgram& p) {
  const std::set<std::string> produced = produced_vars(p);
  std::vector<Slot> open;
  std::set<std::string> seen;
  for (const CogOpNode& n : p.nodes) {
    for (size_t i = 1; i < n.args.size(); ++i) {
      if (produced.count(n.args[i]) || seen.count(n.args[i])) continue;
      if (auto slot = slot_for(n, i)) {
        open.push_back(*slot);
        seen.insert(n.args[i]);
      }
    }
  }
  return open;
}

// The profile must focus the facet its relation checks, otherwise the
// program provably evaluates to nothing.
bool profile_relation_consistent(const IrlProgram& p) {
  std::map<std::string, std::string> bound;  // var -> value
  for (const BindStatement& b : p.binds) bound[b.variable] = b.entity.value;
  for (const CogOpNode& dsr : p.nodes) {
    if (dsr.op != CogOp::apply_dynamic_spatial_relation) continue;
    const auto rel = bound.find(dsr.args[3]);
    if (rel == bound.end()) continue;
    // Find the profile op feeding this relation.
    for (const CogOpNode& prof : p.nodes) {
      if (prof.op != CogOp::apply_profile || prof.args[0] != dsr.args[1]) continue;
      const auto pv = bound.find(prof.args[2]);
      if (pv == bound.end()) continue;
      if (pv->second != profile_name(profile_for_relation(rel->second))) return false;
    }
  }
  return true;
}

std::string rename_var(const std::string& var, const std::map<std::string, std::string>& m) {
  const auto it = m.find(var);
  return it == m.end() ? var : it->second;
}

IrlProgram instantiate(const IrlProgram& fragment, int& fresh,
                       const std::string& output_var, const std::string& unify_with) {
  std::map<std::string, std::string> rename;
  std::set<std::string> vars;
  for (const BindStatement& b : fragment.binds) vars.insert(b.variable);
  for (const CogOpNode& n : fragment.nodes)
    for (const std::string& a : n.args) vars.insert(a);
  for (const std::string& v : vars)
    rename[v] = v == output_var ? unify_with : "?g-" + std::to_string(++fresh);

  IrlProgram out;
  for (const BindStatement& b : fragment.binds)
    out.binds.push_back({rename.at(b.variable), b.entity});
  for (const CogOpNode& n : fragment.nodes) {
    CogOpNode node{n.op, {}};
    for (const std::string& a : n.args) node.args.push_back(rename.at(a));
    out.nodes.push_back(std::move(node));
  }
  return out;
}

void append_program(IrlProgram& dst, const IrlProgram& src) {
  dst.binds.insert(dst.binds.end(), src.binds.begin(), src.binds.end());
  dst.nodes.insert(dst.nodes.end(), src.nodes.begin(), src.nodes.end());
}

// The chunk's own root variable: produced but consumed by none of its
// nodes.
std::string chunk_output(const Chunk& chunk) {
  std::set<std::string> consumed;
  for (const CogOpNode& n : chunk.fragment.nodes)
    for (size_t i = 1; i < n.args.size(); ++i) consumed.insert(n.args[i]);
  for (const CogOpNode& n : chunk.fragment.nodes)
    if (!consumed.count(n.args[0])) return n.args[0];
  for (const BindStatement& b : chunk.fragment.binds)
    if (!consumed.count(b.variable)) return b.variable;
  return {};
}

SlotType chunk_output_type(const Chunk& chunk, SemCategory& category) {
  const std::string out = chunk_output(chunk);
  for (const CogOpNode& n : chunk.fragment.nodes)
    if (n.args[0] == out) return output_type(n.op);
  for (const BindStatement& b : chunk.fragment.binds)
    if (b.variable == out) {
      category = b.entity.category;
      return SlotType::sem;
    }
  return SlotType::sem;
}

// ---------------------------------------------------------------------
// Best-first composition

struct SearchState {
  IrlProgram program;
  int fresh = 0;
  int estimate = 0;
  std::string text;  // canonical text, the deterministic tiebreak
};

int estimate_nodes(const IrlProgram& p) {
  int est = static_cast<int>(p.nodes.size());
  bool has_ctx = false;
  for (const CogOpNode& n : p.nodes)
    if (n.op == CogOp::get_context) has_ctx = true;
  bool wants_ctx = false;
  for (const Slot& s : open_slots(p)) {
    switch (s.type) {
      case SlotType::scene: wants_ctx = true; break;
      case SlotType::entity_set: est += 2; break;
      case SlotType::event_set: est += 2; break;
      case SlotType::sem: break;
    }
  }
  if (wants_ctx && !has_ctx) est += 1;
  return est;
}

struct StateOrder {
  bool operator()(const SearchState& x, const SearchState& y) const {
    if (x.estimate != y.estimate) return x.estimate > y.estimate;  // min-heap
    return x.text > y.text;
  }
};

class Composer {
 public:
  Composer(const std::vector<Chunk>& chunks, const SearchConfig& config)
      : chunks_(chunks), config_(config) {}

  void seed_roots() {
    for (const Chunk& c : chunks_) {
      if (!c.root_capable) continue;
      SearchState s;
      s.program = c.fragment;
      s.fresh = 1000;  // chunk fragments use their own names; keep fresh vars apart
      push(std::move(s));
    }
  }

  void seed(IrlProgram program) {
    SearchState s;
    s.program = std::move(program);
    s.fresh = 1000;
    push(std::move(s));
  }

  // Runs the search, handing each complete candidate to accept; returns
  // the first accepted program, canonicalized.
  template <typename Accept>
  Fallible<IrlProgram> run(Accept&& accept, const char* failure) {
    int expansions = 0;
    while (!queue_.empty() && expansions < config_.max_expansions) {
      SearchState state = queue_.top();
      queue_.pop();
      ++expansions;

      const std::vector<Slot> open = open_slots(state.program);
      if (open.empty()) {
        if (profile_relation_consistent(state.program) && accept(state.program))
          return Fallible<IrlProgram>::success(canonical_program(state.program));
        continue;
      }
      expand(state, open.front());
    }
    return Fallible<IrlProgram>::failure(failure);
  }

 private:
  void push(SearchState state) {
    state.estimate = estimate_nodes(state.program);
    if (state.estimate > config_.max_nodes) return;
    state.text = canonical_text(state.program);
    if (!visited_.insert(state.text).second) return;
    queue_.push(std::move(state));
  }

  void expand(const SearchState& state, const Slot& slot) {
    // A scene slot unifies with an existing context before a new
    // get-context is considered: programs have one context.
    if (slot.type == SlotType::scene) {
      for (const CogOpNode& n : state.program.nodes) {
        if (n.op != CogOp::get_context) continue;
        SearchState next = state;
        rename_everywhere(next.program, slot.var, n.args[0]);
        push(std::move(next));
        return;
      }
    }
    for (const Chunk& c : chunks_) {
      if (!c.provider_capable) continue;
      SemCategory cat = SemCategory::object_class;
      const SlotType out_type = chunk_output_type(c, cat);
      if (out_type != slot.type) continue;
      if (slot.type == SlotType::sem && cat != slot.category) continue;
      SearchState next = state;
      const IrlProgram piece =
          instantiate(c.fragment, next.fresh, chunk_output(c), slot.var);
      append_program(next.program, piece);
      if (!profile_relation_consistent(next.program)) continue;
      push(std::move(next));
    }
  }

  static void rename_everywhere(IrlProgram& p, const std::string& from,
                                const std::string& to) {
    for (BindStatement& b : p.binds)
      if (b.variable == from) b.variable = to;
    for (CogOpNode& n : p.nodes)
      for (std::string& a : n.args)
        if (a == from) a = to;
  }

  const std::vector<Chunk>& chunks_;
  const SearchConfig& config_;
  std::priority_queue<SearchState, std::vector<SearchState>, StateOrder> queue_;
  std::set<std::string> visited_;
};

}  // namespace

std::vector<Chunk> default_chunks() {
  std::vector<Chunk> chunks;
  auto add = [&](std::string name, const char* text, bool root, bool provider) {
    Chunk c;
    c.name = std::move(name);
    c.fragment = parse_program(text);
    const std::string out = chunk_output(c);
    for (const Slot& s : open_slots(c.fragment)) c.open_vars.push_back(s.var);
    c.open_vars.push_back(out);
    c.root_capable = root;
    c.provider_capable = provider;
    chunks.push_back(std::move(c));
  };

  add("context", "(get-context ?ctx)", false, true);
  add("determined-class-np",
      "(bind selector ?sel unique)\n"
      "(apply-class ?objs ?ctx ?class)\n"
      "(apply-determiner ?ref ?objs ?sel)",
      true, true);
  add("determined-colored-np",
      "(bind selector ?sel unique)\n"
      "(apply-class ?objs ?ctx ?class)\n"
      "(apply-color ?cobjs ?objs ?color)\n"
      "(apply-determiner ?ref ?cobjs ?sel)",
      true, true);
  add("mover-events",
      "(bind participant-role ?role mover)\n"
      "(apply-event ?evs ?ctx)\n"
      "(apply-role ?revs ?evs ?subj ?role)",
      false, true);
  add("profiled-relation",
      "(apply-profile ?pevs ?revs ?prof)\n"
      "(apply-dynamic-spatial-relation ?out ?pevs ?lm ?rel)",
      true, false);

  // One value chunk per known semantic entity, sorted for determinism.
  const std::vector<std::pair<SemCategory, std::vector<std::string>>> values = {
      {SemCategory::object_class, {"block", "box", "region", "robot"}},
      {SemCategory::color_category, {"blue", "green", "red", "white", "yellow"}},
      {SemCategory::dynamic_spatial_relation, {"across", "into", "out-of"}},
      {SemCategory::event_profile, {"goal", "path", "source"}},
      {SemCategory::participant_role, {"mover"}},
      {SemCategory::selector, {"unique"}},
  };
  for (const auto& [cat, vals] : values) {
    for (const std::string& v : vals) {
      Chunk c;
      c.name = std::string(sem_category_name(cat)) + ":" + v;
      c.fragment.binds.push_back({"?val", {cat, v}});
      c.open_vars.push_back("?val");
      c.root_capable = false;
      chunks.push_back(std::move(c));
    }
  }
  return chunks;
}

Fallible<IrlProgram> conceptualize(const ScenePair& pair, int topic,
                                   const std::vector<Chunk>& chunks,
                                   const SearchConfig& config,
                                   const AbstractionParams& params,
                                   const ColorPrototypes& prototypes) {
  if (topic != 0 && topic != 1)
    throw std::invalid_argument("conceptualize: topic must be 0 (a) or 1 (b)");
  const Evaluator evaluator(pair, params, prototypes);
  Composer composer(chunks, config);
  composer.seed_roots();
  return composer.run(
      [&](const IrlProgram& candidate) {
        bool on_topic = false, on_other = false;
        for (const Solution& s : evaluator.run(candidate))
          (s.scene_index == topic ? on_topic : on_other) = true;
        return on_topic && !on_other;
      },
      "indiscriminable");
}

Fallible<Interpretation> interpret(const IrlProgram& program, const ScenePair& pair,
                                   const AbstractionParams& params,
                                   const ColorPrototypes& prototypes,
                                   const std::vector<Chunk>& chunks,
                                   const SearchConfig& config) {
  validate_program(program, /*allow_partial=*/true);
  const Evaluator evaluator(pair, params, prototypes);

  auto pick = [&](const IrlProgram& p) -> std::optional<Interpretation> {
    const std::vector<Solution> solutions = evaluator.run(p);
    if (solutions.empty()) return std::nullopt;
    // Sorted by score descending, then scene_a first.
    return Interpretation{solutions.front().scene_index, solutions.front().score, p};
  };

  if (auto result = pick(program))
    return Fallible<Interpretation>::success(std::move(*result));

  // A partial parse is completed by the same search that builds
  // conceptualizations, seeded with the parsed fragment.
  if (!chunks.empty() && !program.empty()) {
    Composer composer(chunks, config);
    composer.seed(program);
    std::optional<Interpretation> found;
    auto completed = composer.run(
        [&](const IrlProgram& candidate) {
          if (auto result = pick(candidate)) {
            found = std::move(*result);
            return true;
          }
          return false;
        },
        "uninterpretable");
    if (completed && found)
      return Fallible<Interpretation>::success(std::move(*found));
  }
  return Fallible<Interpretation>::failure("uninterpretable");
}

}  // namespace spatlang
