#include "spatlang/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace spatlang {

const ColorPrototypes& ColorPrototypes::defaults() {
  static const ColorPrototypes protos{{
      {"blue", {29.0, 255.0, 107.0}},
      {"green", {150.0, 44.0, 21.0}},
      {"red", {76.0, 85.0, 255.0}},
      {"white", {255.0, 128.0, 128.0}},
      {"yellow", {226.0, 1.0, 149.0}},
  }};
  return protos;
}

std::string classify_color(const std::array<double, 3>& sample,
                           const ColorPrototypes& prototypes) {
  if (prototypes.prototypes.empty())
    throw std::invalid_argument("classify_color: empty prototype map");
  std::string best;
  double best_d = 0.0;
  for (const auto& [name, proto] : prototypes.prototypes) {
    const double d0 = sample[0] - proto[0];
    const double d1 = sample[1] - proto[1];
    const double d2 = sample[2] - proto[2];
    const double d = d0 * d0 + d1 * d1 + d2 * d2;
    // Map iteration is name-ordered, so a strict < keeps the
    // lexicographically smallest name on ties.
    if (best.empty() || d < best_d) {
      best = name;
      best_d = d;
    }
  }
  return best;
}

std::string_view sem_category_name(SemCategory c) {
  switch (c) {
    case SemCategory::object_class: return "object-class";
    case SemCategory::color_category: return "color-category";
    case SemCategory::dynamic_spatial_relation: return "dynamic-spatial-relation";
    case SemCategory::selector: return "selector";
    case SemCategory::event_profile: return "event-profile";
    case SemCategory::participant_role: return "participant-role";
  }
  return "?";
}

static std::optional<SemCategory> sem_category_from_name(std::string_view name) {
  if (name == "object-class") return SemCategory::object_class;
  if (name == "color-category") return SemCategory::color_category;
  if (name == "dynamic-spatial-relation") return SemCategory::dynamic_spatial_relation;
  if (name == "selector") return SemCategory::selector;
  if (name == "event-profile") return SemCategory::event_profile;
  if (name == "participant-role") return SemCategory::participant_role;
  return std::nullopt;
}

std::string_view cog_op_name(CogOp op) {
  switch (op) {
    case CogOp::get_context: return "get-context";
    case CogOp::apply_class: return "apply-class";
    case CogOp::apply_color: return "apply-color";
    case CogOp::apply_determiner: return "apply-determiner";
    case CogOp::apply_event: return "apply-event";
    case CogOp::apply_role: return "apply-role";
    case CogOp::apply_profile: return "apply-profile";
    case CogOp::apply_dynamic_spatial_relation: return "apply-dynamic-spatial-relation";
  }
  return "?";
}

static std::optional<CogOp> cog_op_from_name(std::string_view name) {
  if (name == "get-context") return CogOp::get_context;
  if (name == "apply-class") return CogOp::apply_class;
  if (name == "apply-color") return CogOp::apply_color;
  if (name == "apply-determiner") return CogOp::apply_determiner;
  if (name == "apply-event") return CogOp::apply_event;
  if (name == "apply-role") return CogOp::apply_role;
  if (name == "apply-profile") return CogOp::apply_profile;
  if (name == "apply-dynamic-spatial-relation")
    return CogOp::apply_dynamic_spatial_relation;
  return std::nullopt;
}

int cog_op_arity(CogOp op) {
  switch (op) {
    case CogOp::get_context: return 1;
    case CogOp::apply_class: return 3;      // out, context, class
    case CogOp::apply_color: return 3;      // out, in, color
    case CogOp::apply_determiner: return 3; // out, in, selector
    case CogOp::apply_event: return 2;      // out, context
    case CogOp::apply_role: return 4;       // out, events, objects, role
    case CogOp::apply_profile: return 3;    // out, events, profile
    case CogOp::apply_dynamic_spatial_relation: return 4;  // out, events, landmark, relation
  }
  return 0;
}

void validate_program(const IrlProgram& program, bool allow_partial) {
  std::set<std::string> produced;
  for (const BindStatement& b : program.binds) {
    if (b.variable.empty() || b.variable[0] != '?')
      throw std::invalid_argument("bind variable must start with '?': " + b.variable);
    if (!produced.insert(b.variable).second)
      throw std::invalid_argument("variable produced twice: " + b.variable);
  }
  for (const CogOpNode& n : program.nodes) {
    if (static_cast<int>(n.args.size()) != cog_op_arity(n.op))
      throw std::invalid_argument(std::string(cog_op_name(n.op)) + ": expected " +
                                  std::to_string(cog_op_arity(n.op)) + " arguments");
    for (const std::string& a : n.args)
      if (a.empty() || a[0] != '?')
        throw std::invalid_argument("op argument must be a variable: " + a);
    if (!produced.insert(n.args[0]).second)
      throw std::invalid_argument("variable produced twice: " + n.args[0]);
  }
  if (allow_partial) return;

  for (const CogOpNode& n : program.nodes)
    for (size_t i = 1; i < n.args.size(); ++i)
      if (!produced.count(n.args[i]))
        throw std::invalid_argument("variable never produced: " + n.args[i]);

  // Connectivity of the variable-sharing graph.
  const size_t total = program.nodes.size() + program.binds.size();
  if (total <= 1) return;
  std::map<std::string, std::vector<size_t>> var_elems;
  size_t idx = 0;
  for (const BindStatement& b : program.binds) var_elems[b.variable].push_back(idx++);
  for (const CogOpNode& n : program.nodes) {
    for (const std::string& a : n.args) var_elems[a].push_back(idx);
    ++idx;
  }
  std::vector<bool> seen(total, false);
  std::vector<size_t> stack{0};
  seen[0] = true;
  std::vector<std::string> elem_vars;
  auto vars_of = [&](size_t e) {
    std::vector<std::string> vs;
    if (e < program.binds.size()) {
      vs.push_back(program.binds[e].variable);
    } else {
      for (const std::string& a : program.nodes[e - program.binds.size()].args)
        vs.push_back(a);
    }
    return vs;
  };
  while (!stack.empty()) {
    const size_t e = stack.back();
    stack.pop_back();
    for (const std::string& v : vars_of(e))
      for (size_t other : var_elems[v])
        if (!seen[other]) {
          seen[other] = true;
          stack.push_back(other);
        }
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("program variable graph is not connected");
}

// ---------------------------------------------------------------------
// Serialization

static std::string bind_text(const BindStatement& b) {
  std::string s = "(bind ";
  s += sem_category_name(b.entity.category);
  s += " " + b.variable + " " + b.entity.value + ")";
  return s;
}

static std::string node_text(const CogOpNode& n) {
  std::string s = "(";
  s += cog_op_name(n.op);
  for (const std::string& a : n.args) s += " " + a;
  s += ")";
  return s;
}

std::string serialize_program(const IrlProgram& program) {
  std::string out;
  for (const BindStatement& b : program.binds) {
    out += bind_text(b);
    out += "\n";
  }
  for (const CogOpNode& n : program.nodes) {
    out += node_text(n);
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> read_sexprs(std::string_view text) {
  std::vector<std::vector<std::string>> exprs;
  std::vector<std::string> current;
  std::string token;
  bool in_expr = false;
  auto flush_token = [&] {
    if (!token.empty()) {
      current.push_back(token);
      token.clear();
    }
  };
  for (char c : text) {
    if (c == '(') {
      if (in_expr) throw std::invalid_argument("program text: nested '('");
      in_expr = true;
      current.clear();
    } else if (c == ')') {
      if (!in_expr) throw std::invalid_argument("program text: stray ')'");
      flush_token();
      exprs.push_back(current);
      in_expr = false;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush_token();
    } else {
      if (!in_expr) throw std::invalid_argument("program text: token outside '()'");
      token += c;
    }
  }
  if (in_expr) throw std::invalid_argument("program text: unterminated '('");
  return exprs;
}

}  // namespace

IrlProgram parse_program(std::string_view text) {
  IrlProgram program;
  for (const auto& expr : read_sexprs(text)) {
    if (expr.empty()) throw std::invalid_argument("program text: empty '()'");
    if (expr[0] == "bind") {
      if (expr.size() != 4)
        throw std::invalid_argument("bind needs (bind <category> ?var <value>)");
      auto cat = sem_category_from_name(expr[1]);
      if (!cat) throw std::invalid_argument("unknown category: " + expr[1]);
      program.binds.push_back({expr[2], {*cat, expr[3]}});
    } else {
      auto op = cog_op_from_name(expr[0]);
      if (!op) throw std::invalid_argument("unknown operation: " + expr[0]);
      CogOpNode node{*op, {expr.begin() + 1, expr.end()}};
      program.nodes.push_back(std::move(node));
    }
  }
  validate_program(program, /*allow_partial=*/true);
  return program;
}

// ---------------------------------------------------------------------
// Canonicalization
//
// Variables are renamed by a structural signature (iterated
// Weisfeiler-Lehman-style refinement over the occurrence graph), making
// canonical text invariant under alpha-renaming and element order.

namespace {

uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

uint64_t hash_str(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (char c : s) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return h;
}

}  // namespace

IrlProgram canonical_program(const IrlProgram& program) {
  // Occurrences of each variable: (element signature, position).
  struct Occurrence {
    uint64_t element;
    int position;
    const std::vector<std::string>* vars;  // co-occurring variables
  };
  std::map<std::string, std::vector<Occurrence>> occ;
  std::vector<std::vector<std::string>> element_vars;
  element_vars.reserve(program.binds.size() + program.nodes.size());

  for (const BindStatement& b : program.binds) {
    element_vars.push_back({b.variable});
    const uint64_t sig =
        mix(hash_str("bind"), mix(hash_str(sem_category_name(b.entity.category)),
                                  hash_str(b.entity.value)));
    occ[b.variable].push_back({sig, 0, &element_vars.back()});
  }
  for (const CogOpNode& n : program.nodes) {
    element_vars.push_back(n.args);
    const uint64_t sig = hash_str(cog_op_name(n.op));
    for (size_t i = 0; i < n.args.size(); ++i)
      occ[n.args[i]].push_back({sig, static_cast<int>(i), &element_vars.back()});
  }

  // Initial label: the multiset of (element, position) occurrences.
  std::map<std::string, uint64_t> label;
  for (auto& [var, occurrences] : occ) {
    std::vector<uint64_t> parts;
    for (const Occurrence& o : occurrences)
      parts.push_back(mix(o.element, static_cast<uint64_t>(o.position)));
    std::sort(parts.begin(), parts.end());
    uint64_t h = 0x2545f4914f6cdd1dull;
    for (uint64_t p : parts) h = mix(h, p);
    label[var] = h;
  }

  // Refine with neighbor labels until names are distinct or a fixed
  // number of rounds passes.
  for (int round = 0; round < 8; ++round) {
    std::map<std::string, uint64_t> next;
    for (auto& [var, occurrences] : occ) {
      std::vector<uint64_t> parts;
      for (const Occurrence& o : occurrences) {
        uint64_t h = mix(o.element, static_cast<uint64_t>(o.position));
        std::vector<uint64_t> nb;
        for (size_t i = 0; i < o.vars->size(); ++i)
          nb.push_back(mix(static_cast<uint64_t>(i), label[(*o.vars)[i]]));
        std::sort(nb.begin(), nb.end());
        for (uint64_t x : nb) h = mix(h, x);
        parts.push_back(h);
      }
      std::sort(parts.begin(), parts.end());
      uint64_t h = mix(0x9e3779b97f4a7c15ull, label[var]);
      for (uint64_t p : parts) h = mix(h, p);
      next[var] = h;
    }
    label = std::move(next);
    std::set<uint64_t> distinct;
    for (auto& [var, l] : label) distinct.insert(l);
    if (distinct.size() == label.size()) break;
  }

  // Rename in label order; unresolved ties fall back to the original
  // name so the result stays deterministic.
  std::vector<std::string> vars;
  for (auto& [var, l] : label) vars.push_back(var);
  std::sort(vars.begin(), vars.end(), [&](const std::string& x, const std::string& y) {
    if (label[x] != label[y]) return label[x] < label[y];
    return x < y;
  });
  std::map<std::string, std::string> rename;
  for (size_t i = 0; i < vars.size(); ++i)
    rename[vars[i]] = "?v-" + std::to_string(i + 1);

  IrlProgram out;
  for (const BindStatement& b : program.binds)
    out.binds.push_back({rename[b.variable], b.entity});
  for (const CogOpNode& n : program.nodes) {
    CogOpNode node{n.op, {}};
    for (const std::string& a : n.args) node.args.push_back(rename[a]);
    out.nodes.push_back(std::move(node));
  }
  std::sort(out.binds.begin(), out.binds.end(),
            [](const BindStatement& x, const BindStatement& y) {
              return bind_text(x) < bind_text(y);
            });
  std::sort(out.nodes.begin(), out.nodes.end(),
            [](const CogOpNode& x, const CogOpNode& y) {
              return node_text(x) < node_text(y);
            });
  return out;
}

std::string canonical_text(const IrlProgram& program) {
  return serialize_program(canonical_program(program));
}

std::string_view profile_name(EventProfile p) {
  switch (p) {
    case EventProfile::source: return "source";
    case EventProfile::path: return "path";
    case EventProfile::goal: return "goal";
  }
  return "?";
}

EventProfile profile_for_relation(std::string_view relation) {
  if (relation == "into") return EventProfile::goal;
  if (relation == "out-of") return EventProfile::source;
  return EventProfile::path;  // across
}

}  // namespace spatlang
