#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spatlang/common.hpp"
#include "spatlang/events.hpp"
#include "spatlang/geometry.hpp"

namespace spatlang {

// ---------------------------------------------------------------------
// Color prototypes

struct ColorPrototypes {
  std::map<std::string, std::array<double, 3>> prototypes;  // name -> YCbCr

  // The five standard colors (YCbCr, BT.601 full range).
  static const ColorPrototypes& defaults();
};

// Nearest prototype by Euclidean distance; ties go to the
// lexicographically smallest name. Throws on an empty prototype map.
std::string classify_color(const std::array<double, 3>& sample,
                           const ColorPrototypes& prototypes);

// ---------------------------------------------------------------------
// Semantic programs

enum class SemCategory {
  object_class,
  color_category,
  dynamic_spatial_relation,
  selector,
  event_profile,
  participant_role,
};

std::string_view sem_category_name(SemCategory c);

struct SemEntity {
  SemCategory category = SemCategory::object_class;
  std::string value;
  friend bool operator==(const SemEntity&, const SemEntity&) = default;
};

struct BindStatement {
  std::string variable;  // "?..."
  SemEntity entity;
  friend bool operator==(const BindStatement&, const BindStatement&) = default;
};

enum class CogOp {
  get_context,
  apply_class,
  apply_color,
  apply_determiner,
  apply_event,
  apply_role,
  apply_profile,
  apply_dynamic_spatial_relation,
};

std::string_view cog_op_name(CogOp op);
int cog_op_arity(CogOp op);

struct CogOpNode {
  CogOp op = CogOp::get_context;
  std::vector<std::string> args;  // args[0] is the output variable
  friend bool operator==(const CogOpNode&, const CogOpNode&) = default;
};

struct IrlProgram {
  std::vector<CogOpNode> nodes;
  std::vector<BindStatement> binds;

  bool empty() const { return nodes.empty() && binds.empty(); }
  friend bool operator==(const IrlProgram&, const IrlProgram&) = default;
};

// Structural checks: arities, one producer per variable, no output
// cycles. Full well-formedness additionally demands a connected
// variable-sharing graph and a producer for every input; partial
// programs (from partial parses) relax those.
void validate_program(const IrlProgram& program, bool allow_partial);

// s-expression text, one element per line:
//   (bind color-category ?c-1 yellow)
//   (apply-color ?out-1 ?in-1 ?c-1)
std::string serialize_program(const IrlProgram& program);
IrlProgram parse_program(std::string_view text);  // throws std::invalid_argument

// Canonical form: variables renamed by structural signature, binds
// before nodes, each block sorted lexicographically. Equal canonical
// text means bind-and-node equivalence up to variable renaming.
IrlProgram canonical_program(const IrlProgram& program);
std::string canonical_text(const IrlProgram& program);

// ---------------------------------------------------------------------
// Evaluation

enum class EventProfile { source, path, goal };

std::string_view profile_name(EventProfile p);

// across focuses the path, into the goal, out-of the source.
EventProfile profile_for_relation(std::string_view relation);

// A movement event flowing through evaluation: one moves atom plus
// annotations added by apply-profile / apply-dynamic-spatial-relation.
struct MotionEvent {
  std::string subject;
  Direction dir = Direction::left;
  TickInterval interval;
  std::optional<EventProfile> profile;
  std::string relation;  // set by apply-dynamic-spatial-relation
  std::string landmark;
  friend bool operator==(const MotionEvent&, const MotionEvent&) = default;
};

struct SceneRef {
  int index = 0;  // 0 = scene_a, 1 = scene_b
  friend bool operator==(const SceneRef&, const SceneRef&) = default;
};

using EntitySet = std::vector<std::string>;   // sorted ids
using EventSet = std::vector<MotionEvent>;

using Value = std::variant<SceneRef, EntitySet, EventSet, SemEntity>;

struct Solution {
  std::map<std::string, Value> bindings;
  double score = 1.0;
  int scene_index = 0;  // scene the context variable was bound to
};

// Executes binds, then nodes in data-availability order; get-context
// branches over both scenes. Successful branches are expanded per
// candidate of the target (unconsumed) variable, scored and sorted by
// descending score. A branch fails as soon as any operation yields an
// empty set or the dataflow sticks.
std::vector<Solution> evaluate(const IrlProgram& program, const ScenePair& context,
                               const AbstractionParams& params,
                               const ColorPrototypes& prototypes);

// ---------------------------------------------------------------------
// Conceptualization and interpretation

struct Chunk {
  std::string name;
  IrlProgram fragment;
  std::vector<std::string> open_vars;  // inputs to satisfy / outputs offered
  bool root_capable = true;       // may start a program (delivers a referent)
  bool provider_capable = true;   // may fill another chunk's open input
};

// Chunk library covering the grammar fragment: context, determined
// (colored) noun phrases, mover events, profiled relations, plus one
// value chunk per known semantic entity.
std::vector<Chunk> default_chunks();

struct SearchConfig {
  int max_nodes = 12;
  int max_expansions = 5000;
};

// Best-first search over chunk compositions, smallest program first
// (ties: lexicographic canonical text). Returns the first program that
// evaluates to at least one solution on the topic scene and none on the
// other.
Fallible<IrlProgram> conceptualize(const ScenePair& pair, int topic,
                                   const std::vector<Chunk>& chunks,
                                   const SearchConfig& config,
                                   const AbstractionParams& params,
                                   const ColorPrototypes& prototypes);

struct Interpretation {
  int scene_index = 0;
  double score = 0.0;
  IrlProgram program;  // the evaluated program (completed if needed)
};

// Evaluates the program against the pair and picks the scene of the
// highest-scoring solution (ties: scene_a). A program with open inputs
// (partial parse) is first completed by the same search mechanism as
// conceptualize, seeded with the fragment.
Fallible<Interpretation> interpret(const IrlProgram& program, const ScenePair& pair,
                                   const AbstractionParams& params,
                                   const ColorPrototypes& prototypes,
                                   const std::vector<Chunk>& chunks = {},
                                   const SearchConfig& config = {});

}  // namespace spatlang
