#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "spatlang/grammar.hpp"
#include "spatlang/semantics.hpp"

using namespace spatlang;
using namespace spatlang::testing;

namespace {

const AbstractionParams kParams;
const ColorPrototypes& kProtos = ColorPrototypes::defaults();

IrlProgram fig4() { return example_program("yellow", "block", "across"); }

// Pair with two green blocks in scene_a and none in scene_b.
ScenePair two_green_blocks() {
  MotionScript a = simple_script({{0, 0}, {0, 0}}, {5},
                                 {region("reg-1", "red", {3, 3, 5, 5})});
  BlockScript second;
  second.id = "obj-2";
  second.color.ycbcr = {{152.0, 45.0, 23.0}};  // classifies as green
  second.waypoints = {{8, 8}, {8, 8}};
  second.leg_ticks = {5};
  a.blocks.push_back(second);
  MotionScript b;
  b.statics = {region("reg-1", "red", {3, 3, 5, 5})};
  ScenePair pair{gen_scene(a, 0.0, 1), gen_scene(b, 0.0, 1)};
  return pair;
}

}  // namespace

TEST_CASE("classify_color basics") {
  CHECK(classify_color({76, 85, 255}, kProtos) == "red");
  CHECK(classify_color({150, 44, 21}, kProtos) == "green");
  // Ties break toward the lexicographically smallest name.
  const auto& blue = kProtos.prototypes.at("blue");
  const auto& green = kProtos.prototypes.at("green");
  const std::array<double, 3> midpoint{(blue[0] + green[0]) / 2, (blue[1] + green[1]) / 2,
                                       (blue[2] + green[2]) / 2};
  CHECK(classify_color(midpoint, kProtos) == "blue");
  CHECK_THROWS_AS(classify_color({0, 0, 0}, ColorPrototypes{}), std::invalid_argument);
}

TEST_CASE("classify_color matches a brute-force nearest-neighbor scan") {
  Rng rng(8);
  for (int iter = 0; iter < 100; ++iter) {
    const std::array<double, 3> sample{rng.uniform(0, 255), rng.uniform(0, 255),
                                       rng.uniform(0, 255)};
    std::string best;
    double best_d = 1e300;
    for (const auto& [name, proto] : kProtos.prototypes) {
      const double d = std::sqrt((sample[0] - proto[0]) * (sample[0] - proto[0]) +
                                 (sample[1] - proto[1]) * (sample[1] - proto[1]) +
                                 (sample[2] - proto[2]) * (sample[2] - proto[2]));
      if (d < best_d) {
        best_d = d;
        best = name;
      }
    }
    CHECK(classify_color(sample, kProtos) == best);
  }
}

TEST_CASE("program serialization round-trips") {
  const IrlProgram p = fig4();
  const IrlProgram reparsed = parse_program(serialize_program(p));
  CHECK(canonical_text(reparsed) == canonical_text(p));

  CHECK_THROWS_AS(parse_program("(frobnicate ?x)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_program("(bind nope ?x y)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_program("(bind selector ?x"), std::invalid_argument);
}

TEST_CASE("canonical form is invariant under renaming and reordering") {
  IrlProgram p = fig4();
  IrlProgram q = p;
  auto rename = [](std::string v) { return v + "-renamed"; };
  for (BindStatement& b : q.binds) b.variable = rename(b.variable);
  for (CogOpNode& n : q.nodes)
    for (std::string& a : n.args) a = rename(a);
  std::reverse(q.nodes.begin(), q.nodes.end());
  std::reverse(q.binds.begin(), q.binds.end());
  CHECK(canonical_text(p) == canonical_text(q));
  CHECK(canonical_text(p) != canonical_text(example_program("green", "block", "across")));
}

TEST_CASE("validate_program rejects malformed programs") {
  IrlProgram bad;
  bad.nodes.push_back({CogOp::apply_class, {"?a", "?b"}});  // arity
  CHECK_THROWS_AS(validate_program(bad, true), std::invalid_argument);

  IrlProgram dup;
  dup.binds.push_back({"?x", {SemCategory::selector, "unique"}});
  dup.binds.push_back({"?x", {SemCategory::selector, "unique"}});
  CHECK_THROWS_AS(validate_program(dup, true), std::invalid_argument);

  // Disconnected pieces fail the strict check but pass the partial one.
  IrlProgram split;
  split.binds.push_back({"?x", {SemCategory::selector, "unique"}});
  split.binds.push_back({"?y", {SemCategory::color_category, "red"}});
  CHECK_THROWS_AS(validate_program(split, false), std::invalid_argument);
  CHECK_NOTHROW(validate_program(split, true));
}

TEST_CASE("evaluate grounds the crossing program in the crossing scene only") {
  const ScenePair pair = crossing_pair();
  const auto solutions = evaluate(fig4(), pair, kParams, kProtos);
  REQUIRE(solutions.size() == 1);
  CHECK(solutions[0].scene_index == 0);
  CHECK(solutions[0].score > 0.0);
  CHECK(solutions[0].score <= 1.0);

  const auto& ctx = std::get<SceneRef>(solutions[0].bindings.at("?ctx"));
  CHECK(ctx.index == 0);
}

TEST_CASE("evaluate returns nothing when a filter empties") {
  const ScenePair pair = crossing_pair();  // yellow block, no green entities
  const auto solutions =
      evaluate(example_program("green", "block", "across"), pair, kParams, kProtos);
  CHECK(solutions.empty());
}

TEST_CASE("apply-determiner uniqueness semantics") {
  const ScenePair pair = two_green_blocks();

  IrlProgram no_det = parse_program(R"(
    (bind object-class ?cls block)
    (bind color-category ?col green)
    (get-context ?ctx)
    (apply-class ?objs ?ctx ?cls)
    (apply-color ?out ?objs ?col)
  )");
  const auto open = evaluate(no_det, pair, kParams, kProtos);
  REQUIRE(open.size() == 2);  // both candidates enumerated
  std::vector<std::string> ids;
  for (const Solution& s : open) {
    const auto& set = std::get<EntitySet>(s.bindings.at("?out"));
    REQUIRE(set.size() == 1);
    ids.push_back(set[0]);
    CHECK(s.scene_index == 0);
  }
  std::sort(ids.begin(), ids.end());
  CHECK(ids == std::vector<std::string>{"obj-1", "obj-2"});

  IrlProgram with_det = parse_program(R"(
    (bind object-class ?cls block)
    (bind color-category ?col green)
    (bind selector ?sel unique)
    (get-context ?ctx)
    (apply-class ?objs ?ctx ?cls)
    (apply-color ?cobjs ?objs ?col)
    (apply-determiner ?out ?cobjs ?sel)
  )");
  CHECK(evaluate(with_det, pair, kParams, kProtos).empty());
}

TEST_CASE("filtering operations only shrink sets") {
  const ScenePair pair = two_green_blocks();
  IrlProgram p = parse_program(R"(
    (bind object-class ?cls block)
    (bind color-category ?col green)
    (get-context ?ctx)
    (apply-class ?objs ?ctx ?cls)
    (apply-color ?out ?objs ?col)
  )");
  for (const Solution& s : evaluate(p, pair, kParams, kProtos)) {
    const auto& classed = std::get<EntitySet>(s.bindings.at("?objs"));
    for (const std::string& id : std::get<EntitySet>(s.bindings.at("?out")))
      CHECK(std::find(classed.begin(), classed.end(), id) != classed.end());
  }
}

TEST_CASE("evaluation is deterministic and order-independent") {
  const ScenePair pair = crossing_pair();
  const IrlProgram p = fig4();
  const auto once = evaluate(p, pair, kParams, kProtos);
  const auto twice = evaluate(p, pair, kParams, kProtos);
  REQUIRE(once.size() == twice.size());
  for (size_t i = 0; i < once.size(); ++i) {
    CHECK(once[i].score == twice[i].score);
    CHECK(once[i].scene_index == twice[i].scene_index);
  }

  // Reversing the node list is a topological reordering: same solutions.
  IrlProgram reordered = p;
  std::reverse(reordered.nodes.begin(), reordered.nodes.end());
  const auto shuffled = evaluate(reordered, pair, kParams, kProtos);
  REQUIRE(shuffled.size() == once.size());
  for (size_t i = 0; i < once.size(); ++i) {
    CHECK(shuffled[i].score == once[i].score);
    CHECK(shuffled[i].scene_index == once[i].scene_index);
  }
}

TEST_CASE("numeric colors grade the score") {
  // The canonical block's color sits near but not on the green
  // prototype, so the color filter contributes a factor below one.
  ScenePair pair{canonical_scene(), canonical_scene()};
  IrlProgram p = parse_program(R"(
    (bind object-class ?cls block)
    (bind color-category ?col green)
    (bind selector ?sel unique)
    (get-context ?ctx)
    (apply-class ?objs ?ctx ?cls)
    (apply-color ?cobjs ?objs ?col)
    (apply-determiner ?out ?cobjs ?sel)
  )");
  const auto solutions = evaluate(p, pair, kParams, kProtos);
  REQUIRE(solutions.size() == 2);
  CHECK(solutions[0].score > 0.0);
  CHECK(solutions[0].score < 1.0);
  CHECK(solutions[0].score >= solutions[1].score);
}

TEST_CASE("profile and relation must agree") {
  const ScenePair pair = crossing_pair();
  IrlProgram p = fig4();
  for (BindStatement& b : p.binds)
    if (b.entity.category == SemCategory::event_profile) b.entity.value = "goal";
  CHECK(evaluate(p, pair, kParams, kProtos).empty());
}

TEST_CASE("conceptualize finds a crossing discriminator") {
  const ScenePair pair = crossing_pair();
  const auto program =
      conceptualize(pair, 0, default_chunks(), SearchConfig{}, kParams, kProtos);
  REQUIRE(program.ok());

  bool has_across_bind = false, has_dsr_node = false;
  for (const BindStatement& b : program->binds)
    if (b.entity.category == SemCategory::dynamic_spatial_relation &&
        b.entity.value == "across")
      has_across_bind = true;
  for (const CogOpNode& n : program->nodes)
    if (n.op == CogOp::apply_dynamic_spatial_relation) has_dsr_node = true;
  CHECK(has_across_bind);
  CHECK(has_dsr_node);

  // Replay: the returned program discriminates the topic.
  bool on_topic = false, on_other = false;
  for (const Solution& s : evaluate(*program, pair, kParams, kProtos))
    (s.scene_index == 0 ? on_topic : on_other) = true;
  CHECK(on_topic);
  CHECK(!on_other);
}

TEST_CASE("conceptualize prefers the smallest discriminator") {
  // Family 2 differs only in block color: a four-node noun phrase wins.
  const ScenePair pair = family_pair(2, 0, 0.0, 21);
  const auto program =
      conceptualize(pair, 0, default_chunks(), SearchConfig{}, kParams, kProtos);
  REQUIRE(program.ok());
  CHECK(program->nodes.size() == 4);
  bool has_yellow = false;
  for (const BindStatement& b : program->binds)
    if (b.entity.value == "yellow") has_yellow = true;
  CHECK(has_yellow);
}

TEST_CASE("conceptualize fails on identical scenes") {
  const Scene scene = canonical_scene();
  ScenePair pair{scene, scene};
  const auto program =
      conceptualize(pair, 0, default_chunks(), SearchConfig{}, kParams, kProtos);
  CHECK(!program.ok());
  CHECK(program.error() == "indiscriminable");
}

TEST_CASE("conceptualize is deterministic") {
  const ScenePair pair = crossing_pair();
  const auto p1 = conceptualize(pair, 0, default_chunks(), SearchConfig{}, kParams, kProtos);
  const auto p2 = conceptualize(pair, 0, default_chunks(), SearchConfig{}, kParams, kProtos);
  REQUIRE(p1.ok());
  REQUIRE(p2.ok());
  CHECK(canonical_text(*p1) == canonical_text(*p2));
}

TEST_CASE("interpret picks the matching scene") {
  ScenePair pair = crossing_pair();
  std::swap(pair.a, pair.b);  // crossing now in scene_b
  const auto result = interpret(fig4(), pair, kParams, kProtos);
  REQUIRE(result.ok());
  CHECK(result->scene_index == 1);
  CHECK(result->score > 0.0);
}

TEST_CASE("interpret ties break toward scene_a") {
  const Scene scene = canonical_scene();
  ScenePair pair{scene, scene};
  IrlProgram np = parse_program(R"(
    (bind object-class ?cls block)
    (bind selector ?sel unique)
    (get-context ?ctx)
    (apply-class ?objs ?ctx ?cls)
    (apply-determiner ?out ?objs ?sel)
  )");
  const auto result = interpret(np, pair, kParams, kProtos);
  REQUIRE(result.ok());
  CHECK(result->scene_index == 0);
}

TEST_CASE("interpret fails explicitly on the empty program") {
  const auto result = interpret(IrlProgram{}, crossing_pair(), kParams, kProtos);
  CHECK(!result.ok());
  CHECK(result.error() == "uninterpretable");
}

TEST_CASE("interpret completes a partial program via chunk search") {
  // The subject branch is missing entirely: apply-role's object input is
  // never produced.
  IrlProgram partial = parse_program(R"(
    (bind participant-role ?role mover)
    (bind event-profile ?prof path)
    (bind dynamic-spatial-relation ?rel across)
    (bind object-class ?cls region)
    (bind color-category ?col red)
    (bind selector ?sel unique)
    (get-context ?ctx)
    (apply-event ?evs ?ctx)
    (apply-role ?revs ?evs ?subj ?role)
    (apply-profile ?pevs ?revs ?prof)
    (apply-class ?objs ?ctx ?cls)
    (apply-color ?cobjs ?objs ?col)
    (apply-determiner ?lm ?cobjs ?sel)
    (apply-dynamic-spatial-relation ?out ?pevs ?lm ?rel)
  )");
  const auto bare = interpret(partial, crossing_pair(), kParams, kProtos);
  CHECK(!bare.ok());  // stuck dataflow, no chunks to complete with

  const auto completed =
      interpret(partial, crossing_pair(), kParams, kProtos, default_chunks());
  REQUIRE(completed.ok());
  CHECK(completed->scene_index == 0);
}
