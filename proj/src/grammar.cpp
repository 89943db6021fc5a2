#include "spatlang/grammar.hpp"

#include <algorithm>
#include <cctype>

namespace spatlang {

std::string Utterance::text() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

Utterance Utterance::from_text(std::string_view text) {
  Utterance u;
  std::string token;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) {
        u.tokens.push_back(token);
        token.clear();
      }
    } else {
      token += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (!token.empty()) u.tokens.push_back(token);
  return u;
}

std::string_view word_class_name(WordClass c) {
  switch (c) {
    case WordClass::none: return "none";
    case WordClass::determiner: return "determiner";
    case WordClass::adjective: return "adjective";
    case WordClass::noun: return "noun";
    case WordClass::verb: return "verb";
    case WordClass::preposition: return "preposition";
  }
  return "?";
}

std::string TransientStructure::fresh_var(const char* stem) {
  return std::string("?") + stem + "-" + std::to_string(++fresh);
}

GrammarUnit& TransientStructure::add_unit() {
  GrammarUnit u;
  u.id = static_cast<int>(units.size());
  units.push_back(std::move(u));
  return units.back();
}

int TransientStructure::token_count() const {
  int n = 0;
  for (const GrammarUnit& u : units) n += static_cast<int>(u.form.size());
  return n;
}

TransientStructure TransientStructure::for_production(const IrlProgram& program) {
  TransientStructure ts;
  ts.program = std::make_shared<IrlProgram>(program);
  ts.bind_claimed.assign(program.binds.size(), false);
  ts.node_claimed.assign(program.nodes.size(), false);
  // The context is grounded deictically, not by a word.
  for (size_t i = 0; i < program.nodes.size(); ++i)
    if (program.nodes[i].op == CogOp::get_context) ts.node_claimed[i] = true;
  return ts;
}

TransientStructure TransientStructure::for_parsing(const Utterance& utterance) {
  TransientStructure ts;
  ts.tokens = utterance.tokens;
  ts.token_covered.assign(utterance.tokens.size(), false);
  return ts;
}

namespace {

// ------------------------------------------------------------------
// Production-side pattern lookups

int find_bind(const TransientStructure& ts, SemCategory category,
              const std::string& value) {
  for (size_t i = 0; i < ts.program->binds.size(); ++i) {
    if (ts.bind_claimed[i]) continue;
    const BindStatement& b = ts.program->binds[i];
    if (b.entity.category == category && b.entity.value == value)
      return static_cast<int>(i);
  }
  return -1;
}

template <typename Pred>
int find_node(const TransientStructure& ts, CogOp op, Pred&& pred) {
  for (size_t i = 0; i < ts.program->nodes.size(); ++i) {
    if (ts.node_claimed[i]) continue;
    const CogOpNode& n = ts.program->nodes[i];
    if (n.op == op && pred(n)) return static_cast<int>(i);
  }
  return -1;
}

bool var_consumed_by(const IrlProgram& p, CogOp op, size_t pos, const std::string& var) {
  for (const CogOpNode& n : p.nodes)
    if (n.op == op && pos < n.args.size() && n.args[pos] == var) return true;
  return false;
}

// ------------------------------------------------------------------
// Lexical constructions

bool lexical_produce(TransientStructure& ts, const Construction& cxn) {
  if (cxn.parse_only || !ts.program) return false;

  if (cxn.event_verb) {
    const int ev = find_node(ts, CogOp::apply_event, [](const CogOpNode&) { return true; });
    if (ev < 0) return false;
    const std::string& evout = ts.program->nodes[ev].args[0];
    const int role = find_node(ts, CogOp::apply_role, [&](const CogOpNode& n) {
      return n.args[1] == evout;
    });
    if (role < 0) return false;
    const int mover = find_bind(ts, SemCategory::participant_role, "mover");
    if (mover < 0 || ts.program->binds[mover].variable != ts.program->nodes[role].args[3])
      return false;
    ts.node_claimed[ev] = ts.node_claimed[role] = true;
    ts.bind_claimed[mover] = true;
    GrammarUnit& u = ts.add_unit();
    u.form = cxn.form;
    u.lex_class = cxn.word_class;
    u.sem["evout"] = ts.program->nodes[role].args[0];
    u.sem["subj"] = ts.program->nodes[role].args[2];
    u.sem["ctx"] = ts.program->nodes[ev].args[1];
    return true;
  }

  const int bind = find_bind(ts, cxn.category, cxn.value);
  if (bind < 0) return false;
  int profile_bind = -1;
  if (!cxn.profile_value.empty()) {
    profile_bind = find_bind(ts, SemCategory::event_profile, cxn.profile_value);
    if (profile_bind < 0) return false;
  }
  ts.bind_claimed[bind] = true;
  GrammarUnit& u = ts.add_unit();
  u.form = cxn.form;
  u.lex_class = cxn.word_class;
  u.sem["anchor"] = ts.program->binds[bind].variable;
  if (profile_bind >= 0) {
    ts.bind_claimed[profile_bind] = true;
    u.sem["rel"] = ts.program->binds[bind].variable;
    u.sem["prof"] = ts.program->binds[profile_bind].variable;
  }
  return true;
}

bool lexical_parse(TransientStructure& ts, const Construction& cxn) {
  const size_t len = cxn.form.size();
  for (size_t pos = 0; pos + len <= ts.tokens.size(); ++pos) {
    bool free_and_matching = true;
    for (size_t k = 0; k < len; ++k)
      if (ts.token_covered[pos + k] || ts.tokens[pos + k] != cxn.form[k])
        free_and_matching = false;
    if (!free_and_matching) continue;

    for (size_t k = 0; k < len; ++k) ts.token_covered[pos + k] = true;
    GrammarUnit& u = ts.add_unit();
    u.form = cxn.form;
    u.lex_class = cxn.word_class;
    u.span_start = static_cast<int>(pos);
    u.span_end = static_cast<int>(pos + len);
    if (cxn.event_verb) {
      const std::string evs = ts.fresh_var("evs");
      const std::string ctx = ts.fresh_var("ctx");
      const std::string out = ts.fresh_var("revs");
      const std::string subj = ts.fresh_var("subj");
      const std::string role = ts.fresh_var("role");
      ts.contributions.nodes.push_back({CogOp::apply_event, {evs, ctx}});
      ts.contributions.nodes.push_back({CogOp::apply_role, {out, evs, subj, role}});
      ts.contributions.binds.push_back({role, {SemCategory::participant_role, "mover"}});
      u.sem["evout"] = out;
      u.sem["subj"] = subj;
      u.sem["ctx"] = ctx;
    } else {
      const std::string var = ts.fresh_var("b");
      ts.contributions.binds.push_back({var, {cxn.category, cxn.value}});
      u.sem["anchor"] = var;
      if (!cxn.profile_value.empty()) {
        const std::string prof = ts.fresh_var("prof");
        ts.contributions.binds.push_back({prof, {SemCategory::event_profile, cxn.profile_value}});
        u.sem["rel"] = var;
        u.sem["prof"] = prof;
      }
    }
    return true;
  }
  return false;
}

// ------------------------------------------------------------------
// Functional constructions: word class from the unit's semantics. In
// production the anchor must actually feed the operation the class
// stands for (a color used as a modifier is an adjective, a relation
// used with apply-dynamic-spatial-relation is a preposition).

bool functional_apply(TransientStructure& ts, const Construction& cxn,
                      GrammarDirection direction) {
  for (GrammarUnit& u : ts.units) {
    if (u.word_class != WordClass::none || u.lex_class != cxn.word_class) continue;
    if (direction == GrammarDirection::produce && ts.program) {
      bool fits = false;
      switch (cxn.word_class) {
        case WordClass::determiner:
          fits = var_consumed_by(*ts.program, CogOp::apply_determiner, 2, u.sem["anchor"]);
          break;
        case WordClass::adjective:
          fits = var_consumed_by(*ts.program, CogOp::apply_color, 2, u.sem["anchor"]);
          break;
        case WordClass::noun:
          fits = var_consumed_by(*ts.program, CogOp::apply_class, 2, u.sem["anchor"]);
          break;
        case WordClass::preposition:
          fits = var_consumed_by(*ts.program, CogOp::apply_dynamic_spatial_relation, 3,
                                 u.sem["rel"]);
          break;
        case WordClass::verb:
          fits = u.sem.count("evout") > 0;
          break;
        default:
          break;
      }
      if (!fits) continue;
    }
    u.word_class = cxn.word_class;
    return true;
  }
  return false;
}

// ------------------------------------------------------------------
// Phrasal constructions

GrammarUnit* find_free(TransientStructure& ts, WordClass wc, const std::string& phrase) {
  for (GrammarUnit& u : ts.units)
    if (!u.attached && u.word_class == wc && u.phrase_type == phrase) return &u;
  return nullptr;
}

bool adjacent(const GrammarUnit& left, const GrammarUnit& right) {
  return left.span_end == right.span_start;
}

GrammarUnit& make_phrase(TransientStructure& ts, const char* type, GrammarUnit& left,
                         GrammarUnit& right) {
  left.attached = right.attached = true;
  GrammarUnit& u = ts.add_unit();
  u.phrase_type = type;
  u.children = {left.id, right.id};
  u.span_start = left.span_start;
  u.span_end = right.span_end;
  return u;
}

void rename_var(TransientStructure& ts, const std::string& from, const std::string& to) {
  for (BindStatement& b : ts.contributions.binds)
    if (b.variable == from) b.variable = to;
  for (CogOpNode& n : ts.contributions.nodes)
    for (std::string& a : n.args)
      if (a == from) a = to;
  for (GrammarUnit& u : ts.units)
    for (auto& [role, var] : u.sem)
      if (var == from) var = to;
}

bool adj_noun_nominal(TransientStructure& ts, GrammarDirection dir) {
  for (GrammarUnit& adj : ts.units) {
    if (adj.attached || adj.word_class != WordClass::adjective) continue;
    for (GrammarUnit& noun : ts.units) {
      if (noun.attached || noun.word_class != WordClass::noun) continue;
      if (dir == GrammarDirection::produce) {
        const int cls = find_node(ts, CogOp::apply_class, [&](const CogOpNode& n) {
          return n.args[2] == noun.sem["anchor"];
        });
        if (cls < 0) continue;
        const std::string& objs = ts.program->nodes[cls].args[0];
        const int col = find_node(ts, CogOp::apply_color, [&](const CogOpNode& n) {
          return n.args[1] == objs && n.args[2] == adj.sem["anchor"];
        });
        if (col < 0) continue;
        ts.node_claimed[cls] = ts.node_claimed[col] = true;
        GrammarUnit& u = make_phrase(ts, "nominal", adj, noun);
        u.sem["ref"] = ts.program->nodes[col].args[0];
        u.sem["ctx"] = ts.program->nodes[cls].args[1];
        return true;
      }
      if (!adjacent(adj, noun)) continue;
      const std::string objs = ts.fresh_var("objs");
      const std::string ctx = ts.fresh_var("ctx");
      const std::string ref = ts.fresh_var("cobjs");
      ts.contributions.nodes.push_back({CogOp::apply_class, {objs, ctx, noun.sem["anchor"]}});
      ts.contributions.nodes.push_back({CogOp::apply_color, {ref, objs, adj.sem["anchor"]}});
      GrammarUnit& u = make_phrase(ts, "nominal", adj, noun);
      u.sem["ref"] = ref;
      u.sem["ctx"] = ctx;
      return true;
    }
  }
  return false;
}

bool bare_noun_nominal(TransientStructure& ts, GrammarDirection dir) {
  for (GrammarUnit& noun : ts.units) {
    if (noun.attached || noun.word_class != WordClass::noun) continue;
    if (dir == GrammarDirection::produce) {
      const int cls = find_node(ts, CogOp::apply_class, [&](const CogOpNode& n) {
        return n.args[2] == noun.sem["anchor"];
      });
      if (cls < 0) continue;
      // Only nouns without a color modifier stand alone.
      const std::string& objs = ts.program->nodes[cls].args[0];
      if (var_consumed_by(*ts.program, CogOp::apply_color, 1, objs)) continue;
      ts.node_claimed[cls] = true;
      noun.attached = true;
      GrammarUnit& u = ts.add_unit();
      u.phrase_type = "nominal";
      u.children = {noun.id};
      u.sem["ref"] = objs;
      u.sem["ctx"] = ts.program->nodes[cls].args[1];
      return true;
    }
    // A noun right after a free adjective belongs to adj-noun-nominal.
    bool adjective_before = false;
    for (const GrammarUnit& adj : ts.units)
      if (!adj.attached && adj.word_class == WordClass::adjective &&
          adj.span_end == noun.span_start)
        adjective_before = true;
    if (adjective_before) continue;
    const std::string objs = ts.fresh_var("objs");
    const std::string ctx = ts.fresh_var("ctx");
    ts.contributions.nodes.push_back({CogOp::apply_class, {objs, ctx, noun.sem["anchor"]}});
    noun.attached = true;
    GrammarUnit& u = ts.add_unit();
    u.phrase_type = "nominal";
    u.children = {noun.id};
    u.span_start = noun.span_start;
    u.span_end = noun.span_end;
    u.sem["ref"] = objs;
    u.sem["ctx"] = ctx;
    return true;
  }
  return false;
}

bool determined_np(TransientStructure& ts, GrammarDirection dir) {
  for (GrammarUnit& det : ts.units) {
    if (det.attached || det.word_class != WordClass::determiner) continue;
    for (GrammarUnit& nom : ts.units) {
      if (nom.attached || nom.phrase_type != "nominal") continue;
      if (dir == GrammarDirection::produce) {
        const int node = find_node(ts, CogOp::apply_determiner, [&](const CogOpNode& n) {
          return n.args[1] == nom.sem["ref"] && n.args[2] == det.sem["anchor"];
        });
        if (node < 0) continue;
        ts.node_claimed[node] = true;
        GrammarUnit& u = make_phrase(ts, "np", det, nom);
        u.sem["ref"] = ts.program->nodes[node].args[0];
        u.sem["ctx"] = nom.sem["ctx"];
        return true;
      }
      if (!adjacent(det, nom)) continue;
      const std::string ref = ts.fresh_var("the");
      ts.contributions.nodes.push_back(
          {CogOp::apply_determiner, {ref, nom.sem["ref"], det.sem["anchor"]}});
      GrammarUnit& u = make_phrase(ts, "np", det, nom);
      u.sem["ref"] = ref;
      u.sem["ctx"] = nom.sem["ctx"];
      return true;
    }
  }
  return false;
}

bool prep_phrase(TransientStructure& ts, GrammarDirection dir) {
  for (GrammarUnit& prep : ts.units) {
    if (prep.attached || prep.word_class != WordClass::preposition) continue;
    for (GrammarUnit& np : ts.units) {
      if (np.attached || np.phrase_type != "np") continue;
      if (dir == GrammarDirection::produce) {
        const int prof = find_node(ts, CogOp::apply_profile, [&](const CogOpNode& n) {
          return n.args[2] == prep.sem["prof"];
        });
        if (prof < 0) continue;
        const std::string& pevs = ts.program->nodes[prof].args[0];
        const int dsr =
            find_node(ts, CogOp::apply_dynamic_spatial_relation, [&](const CogOpNode& n) {
              return n.args[1] == pevs && n.args[2] == np.sem["ref"] &&
                     n.args[3] == prep.sem["rel"];
            });
        if (dsr < 0) continue;
        ts.node_claimed[prof] = ts.node_claimed[dsr] = true;
        GrammarUnit& u = make_phrase(ts, "pp", prep, np);
        u.sem["in"] = ts.program->nodes[prof].args[1];
        u.sem["ref"] = ts.program->nodes[dsr].args[0];
        return true;
      }
      if (!adjacent(prep, np)) continue;
      const std::string pevs = ts.fresh_var("pevs");
      const std::string in = ts.fresh_var("in");
      const std::string out = ts.fresh_var("rel-evs");
      ts.contributions.nodes.push_back({CogOp::apply_profile, {pevs, in, prep.sem["prof"]}});
      ts.contributions.nodes.push_back(
          {CogOp::apply_dynamic_spatial_relation, {out, pevs, np.sem["ref"], prep.sem["rel"]}});
      GrammarUnit& u = make_phrase(ts, "pp", prep, np);
      u.sem["in"] = in;
      u.sem["ref"] = out;
      return true;
    }
  }
  return false;
}

bool verb_phrase(TransientStructure& ts, GrammarDirection dir) {
  for (GrammarUnit& verb : ts.units) {
    if (verb.attached || verb.word_class != WordClass::verb) continue;
    for (GrammarUnit& pp : ts.units) {
      if (pp.attached || pp.phrase_type != "pp") continue;
      if (dir == GrammarDirection::produce) {
        if (pp.sem["in"] != verb.sem["evout"]) continue;
        GrammarUnit& u = make_phrase(ts, "vp", verb, pp);
        u.sem["subj"] = verb.sem["subj"];
        u.sem["ref"] = pp.sem["ref"];
        u.sem["ctx"] = verb.sem["ctx"];
        return true;
      }
      if (!adjacent(verb, pp)) continue;
      const std::string in = pp.sem["in"];
      GrammarUnit& u = make_phrase(ts, "vp", verb, pp);
      u.sem["subj"] = verb.sem["subj"];
      u.sem["ref"] = pp.sem["ref"];
      u.sem["ctx"] = verb.sem["ctx"];
      rename_var(ts, in, verb.sem["evout"]);
      return true;
    }
  }
  return false;
}

bool clause(TransientStructure& ts, GrammarDirection dir) {
  for (GrammarUnit& np : ts.units) {
    if (np.attached || np.phrase_type != "np") continue;
    for (GrammarUnit& vp : ts.units) {
      if (vp.attached || vp.phrase_type != "vp") continue;
      if (dir == GrammarDirection::produce) {
        if (vp.sem["subj"] != np.sem["ref"]) continue;
        GrammarUnit& u = make_phrase(ts, "clause", np, vp);
        u.sem["ref"] = vp.sem["ref"];
        return true;
      }
      if (!adjacent(np, vp)) continue;
      const std::string subj = vp.sem["subj"];
      GrammarUnit& u = make_phrase(ts, "clause", np, vp);
      u.sem["ref"] = vp.sem["ref"];
      rename_var(ts, subj, np.sem["ref"]);
      return true;
    }
  }
  return false;
}

}  // namespace

bool apply_construction(TransientStructure& ts, const Construction& cxn,
                        GrammarDirection direction) {
  switch (cxn.kind) {
    case CxnKind::lexical:
      return direction == GrammarDirection::produce ? lexical_produce(ts, cxn)
                                                    : lexical_parse(ts, cxn);
    case CxnKind::functional:
      return functional_apply(ts, cxn, direction);
    case CxnKind::phrasal:
      if (cxn.name == "adj-noun-nominal") return adj_noun_nominal(ts, direction);
      if (cxn.name == "bare-noun-nominal") return bare_noun_nominal(ts, direction);
      if (cxn.name == "determined-np") return determined_np(ts, direction);
      if (cxn.name == "prep-phrase") return prep_phrase(ts, direction);
      if (cxn.name == "verb-phrase") return verb_phrase(ts, direction);
      if (cxn.name == "clause") return clause(ts, direction);
      return false;
  }
  return false;
}

namespace {

void run_layer(TransientStructure& ts, const std::vector<Construction>& grammar,
               CxnKind kind, GrammarDirection direction) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Construction& cxn : grammar) {
      if (cxn.kind != kind) continue;
      while (apply_construction(ts, cxn, direction)) changed = true;
    }
  }
}

void linearize(const TransientStructure& ts, const GrammarUnit& unit,
               std::vector<std::string>& out) {
  if (unit.children.empty()) {
    out.insert(out.end(), unit.form.begin(), unit.form.end());
    return;
  }
  for (int child : unit.children) linearize(ts, ts.units[child], out);
}

std::string element_text(const BindStatement& b) {
  std::string s = "(bind ";
  s += sem_category_name(b.entity.category);
  s += " " + b.variable + " " + b.entity.value + ")";
  return s;
}

}  // namespace

Fallible<Utterance> produce(const IrlProgram& program,
                            const std::vector<Construction>& grammar) {
  validate_program(program, /*allow_partial=*/true);
  TransientStructure ts = TransientStructure::for_production(program);
  run_layer(ts, grammar, CxnKind::lexical, GrammarDirection::produce);
  run_layer(ts, grammar, CxnKind::functional, GrammarDirection::produce);
  run_layer(ts, grammar, CxnKind::phrasal, GrammarDirection::produce);

  for (size_t i = 0; i < program.binds.size(); ++i)
    if (!ts.bind_claimed[i])
      return Fallible<Utterance>::failure("unexpressible: " +
                                          element_text(program.binds[i]));
  for (size_t i = 0; i < program.nodes.size(); ++i)
    if (!ts.node_claimed[i])
      return Fallible<Utterance>::failure(
          "unexpressible: (" + std::string(cog_op_name(program.nodes[i].op)) + " ...)");

  const GrammarUnit* top = nullptr;
  for (const GrammarUnit& u : ts.units) {
    if (u.attached) continue;
    if (top)
      return Fallible<Utterance>::failure("unexpressible: disconnected expression");
    top = &u;
  }
  if (!top) return Fallible<Utterance>::failure("unexpressible: empty program");

  Utterance utterance;
  linearize(ts, *top, utterance.tokens);
  if (utterance.tokens.empty())
    return Fallible<Utterance>::failure("unexpressible: empty utterance");
  return Fallible<Utterance>::success(std::move(utterance));
}

Fallible<ParseOutput> parse(const Utterance& utterance,
                            const std::vector<Construction>& grammar) {
  TransientStructure ts = TransientStructure::for_parsing(utterance);
  run_layer(ts, grammar, CxnKind::lexical, GrammarDirection::parse);

  for (size_t i = 0; i < ts.tokens.size(); ++i)
    if (!ts.token_covered[i])
      ts.warnings.push_back("unknown token: " + ts.tokens[i]);
  if (ts.units.empty())
    return Fallible<ParseOutput>::failure("unparseable");

  run_layer(ts, grammar, CxnKind::functional, GrammarDirection::parse);
  run_layer(ts, grammar, CxnKind::phrasal, GrammarDirection::parse);

  // All operations ground in the one scene context.
  IrlProgram program = ts.contributions;
  std::vector<std::string> ctx_vars;
  for (const CogOpNode& n : program.nodes)
    if (n.op == CogOp::apply_class || n.op == CogOp::apply_event)
      if (std::find(ctx_vars.begin(), ctx_vars.end(), n.args[1]) == ctx_vars.end())
        ctx_vars.push_back(n.args[1]);
  if (!ctx_vars.empty()) {
    const std::string ctx = ctx_vars.front();
    for (const std::string& v : ctx_vars)
      for (CogOpNode& n : program.nodes)
        for (std::string& a : n.args)
          if (a == v) a = ctx;
    program.nodes.push_back({CogOp::get_context, {ctx}});
  }

  ParseOutput out;
  out.program = canonical_program(program);
  out.warnings = ts.warnings;
  return Fallible<ParseOutput>::success(std::move(out));
}

}  // namespace spatlang
