#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "spatlang/events.hpp"

using namespace spatlang;
using namespace spatlang::testing;

namespace {

Fluent topo(Rcc5Rel rel, int start, int end) {
  return {Family::topology, static_cast<int>(rel), "obj-1", "reg-1", {start, end}};
}

Fluent motion(MotionRel rel, int start, int end) {
  return {Family::motion, static_cast<int>(rel), "obj-1", "reg-1", {start, end}};
}

EventAtom moves_atom(Direction dir, int start, int end) {
  return {EventPred::moves, "obj-1", "", dir, {start, end}};
}

std::vector<EventAtom> of_pred(const std::vector<EventAtom>& atoms, EventPred pred) {
  std::vector<EventAtom> out;
  for (const EventAtom& a : atoms)
    if (a.pred == pred) out.push_back(a);
  return out;
}

}  // namespace

TEST_CASE("segment_moves on a single-axis translation") {
  const Scene scene = gen_scene(simple_script({{8, 2}, {0, 2}}, {40}), 0.0, 1);
  const auto atoms = segment_moves(scene, AbstractionParams{});
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0].pred == EventPred::moves);
  CHECK(atoms[0].subject == "obj-1");
  CHECK(*atoms[0].dir == Direction::left);
  CHECK(atoms[0].interval == TickInterval{0, 39});
}

TEST_CASE("segment_moves emits nothing for a static block") {
  const Scene scene = gen_scene(simple_script({{3, 3}, {3, 3}}, {10}), 0.0, 1);
  CHECK(segment_moves(scene, AbstractionParams{}).empty());
}

TEST_CASE("segment_moves splits an L-shaped path by dominant direction") {
  const Scene scene =
      gen_scene(simple_script({{8, 2}, {2, 2}, {2, 8}}, {30, 30}), 0.0, 1);
  const auto atoms = segment_moves(scene, AbstractionParams{});
  REQUIRE(atoms.size() == 2);
  CHECK(*atoms[0].dir == Direction::left);
  CHECK(*atoms[1].dir == Direction::further);
  const AllenRel rel = allen_relation(atoms[0].interval, atoms[1].interval);
  CHECK((rel == AllenRel::before || rel == AllenRel::meets));

  // Same-block intervals never overlap, and they match the per-tick
  // displacement series.
  const Entity& block = scene.entity("obj-1");
  for (const EventAtom& a : atoms)
    for (int t = a.interval.start; t <= a.interval.end; ++t) {
      const double dx = block.track[t + 1].x - block.track[t].x;
      const double dy = block.track[t + 1].y - block.track[t].y;
      CHECK(std::sqrt(dx * dx + dy * dy) > AbstractionParams{}.v_eps);
    }
}

TEST_CASE("detect_transitions finds the entry axiom chain") {
  std::vector<Fluent> fluents{topo(Rcc5Rel::DC, 0, 4), topo(Rcc5Rel::PO, 5, 7),
                              topo(Rcc5Rel::PP, 8, 12), motion(MotionRel::approaching, 3, 9)};
  const auto atoms = detect_transitions(fluents);
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0].pred == EventPred::moves_into);
  CHECK(atoms[0].subject == "obj-1");
  CHECK(atoms[0].ref_id == "reg-1");
  CHECK(atoms[0].interval == TickInterval{5, 7});
}

TEST_CASE("detect_transitions finds the mirrored exit chain") {
  std::vector<Fluent> fluents{topo(Rcc5Rel::PP, 0, 4), topo(Rcc5Rel::PO, 5, 7),
                              topo(Rcc5Rel::DC, 8, 12), motion(MotionRel::receding, 4, 9)};
  const auto atoms = detect_transitions(fluents);
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0].pred == EventPred::moves_out_of);
  CHECK(atoms[0].interval == TickInterval{5, 7});
}

TEST_CASE("detect_transitions ignores a grazing pass") {
  std::vector<Fluent> fluents{topo(Rcc5Rel::DC, 0, 4), topo(Rcc5Rel::PO, 5, 7),
                              topo(Rcc5Rel::DC, 8, 12), motion(MotionRel::approaching, 0, 12)};
  CHECK(detect_transitions(fluents).empty());
}

TEST_CASE("detect_transitions demands the motion condition over the whole PO phase") {
  std::vector<Fluent> fluents{topo(Rcc5Rel::DC, 0, 4), topo(Rcc5Rel::PO, 5, 7),
                              topo(Rcc5Rel::PP, 8, 12),
                              motion(MotionRel::approaching, 6, 9)};  // misses tick 5
  CHECK(detect_transitions(fluents).empty());
}

TEST_CASE("detect_across pairs entry with the nearest later exit") {
  std::vector<EventAtom> atoms{
      moves_atom(Direction::left, 0, 20),
      {EventPred::moves_into, "obj-1", "reg-1", std::nullopt, {5, 7}},
      {EventPred::moves_out_of, "obj-1", "reg-1", std::nullopt, {13, 15}},
  };
  std::vector<Fluent> fluents{topo(Rcc5Rel::DC, 0, 4),  topo(Rcc5Rel::PO, 5, 7),
                              topo(Rcc5Rel::PP, 8, 12), topo(Rcc5Rel::PO, 13, 15),
                              topo(Rcc5Rel::DC, 16, 20)};
  const auto across = detect_across(atoms, fluents);
  REQUIRE(across.size() == 1);
  CHECK(across[0].pred == EventPred::moves_across);
  CHECK(across[0].interval == TickInterval{5, 15});
  // The entry starts the span and the exit finishes it.
  CHECK(allen_relation({5, 7}, across[0].interval) == AllenRel::starts);
  CHECK(allen_relation({13, 15}, across[0].interval) == AllenRel::finishes);
  CHECK(allen_relation(across[0].interval, atoms[0].interval) == AllenRel::during);
}

TEST_CASE("detect_across needs an exit") {
  std::vector<EventAtom> atoms{
      moves_atom(Direction::left, 0, 20),
      {EventPred::moves_into, "obj-1", "reg-1", std::nullopt, {5, 7}},
  };
  CHECK(detect_across(atoms, {}).empty());
}

TEST_CASE("detect_across rejects spans leaving the region in between") {
  // Entry, unrecorded exit (DC gap), re-entry, exit: the first entry must
  // not pair with the final exit across the DC gap.
  std::vector<EventAtom> atoms{
      moves_atom(Direction::left, 0, 40),
      {EventPred::moves_into, "obj-1", "reg-1", std::nullopt, {5, 7}},
      {EventPred::moves_into, "obj-1", "reg-1", std::nullopt, {20, 22}},
      {EventPred::moves_out_of, "obj-1", "reg-1", std::nullopt, {30, 32}},
  };
  std::vector<Fluent> fluents{
      topo(Rcc5Rel::DC, 0, 4),   topo(Rcc5Rel::PO, 5, 7),   topo(Rcc5Rel::PP, 8, 12),
      topo(Rcc5Rel::DC, 13, 19), topo(Rcc5Rel::PO, 20, 22), topo(Rcc5Rel::PP, 23, 29),
      topo(Rcc5Rel::PO, 30, 32), topo(Rcc5Rel::DC, 33, 40)};
  const auto across = detect_across(atoms, fluents);
  REQUIRE(across.size() == 1);
  CHECK(across[0].interval == TickInterval{20, 32});
}

TEST_CASE("detect_across demands a covering moves interval") {
  std::vector<EventAtom> atoms{
      moves_atom(Direction::left, 0, 10),  // ends before the exit
      {EventPred::moves_into, "obj-1", "reg-1", std::nullopt, {5, 7}},
      {EventPred::moves_out_of, "obj-1", "reg-1", std::nullopt, {13, 15}},
  };
  CHECK(detect_across(atoms, {}).empty());
}

TEST_CASE("describe_scene reproduces the canonical eight atoms") {
  const Scene scene = canonical_scene();
  const auto atoms = describe_scene(scene, AbstractionParams{});
  REQUIRE(atoms.size() == 8);

  // Predicate/subject/reference multiset of the canonical narrative.
  std::multiset<std::string> got;
  for (const EventAtom& a : atoms)
    got.insert(std::string(event_pred_name(a.pred)) + " " + a.subject + " " + a.ref_text());
  const std::multiset<std::string> expect{
      "moves obj-12 left",
      "moves obj-12 closer",
      "moves_into obj-12 reg-38",
      "moves_across obj-12 reg-38",
      "moves_into obj-12 reg-37",
      "moves_out_of obj-12 reg-38",
      "moves_out_of obj-12 reg-37",
      "moves_into obj-12 reg-36",
  };
  CHECK(got == expect);

  // Sorted by interval start.
  for (size_t i = 0; i + 1 < atoms.size(); ++i)
    CHECK(atoms[i].interval.start <= atoms[i + 1].interval.start);
}

TEST_CASE("canonical across atom satisfies the axiom constraints") {
  const Scene scene = canonical_scene();
  const auto atoms = describe_scene(scene, AbstractionParams{});
  const auto across = of_pred(atoms, EventPred::moves_across);
  REQUIRE(across.size() == 1);
  CHECK(across[0].ref_id == "reg-38");

  const auto into = of_pred(atoms, EventPred::moves_into);
  const auto out_of = of_pred(atoms, EventPred::moves_out_of);
  const auto entry = std::find_if(into.begin(), into.end(), [&](const EventAtom& a) {
    return a.ref_id == "reg-38";
  });
  const auto exit = std::find_if(out_of.begin(), out_of.end(), [&](const EventAtom& a) {
    return a.ref_id == "reg-38";
  });
  REQUIRE(entry != into.end());
  REQUIRE(exit != out_of.end());
  CHECK(allen_relation(entry->interval, across[0].interval) == AllenRel::starts);
  CHECK(allen_relation(exit->interval, across[0].interval) == AllenRel::finishes);

  const auto moves = of_pred(atoms, EventPred::moves);
  const bool within_one_move = std::any_of(moves.begin(), moves.end(), [&](const EventAtom& m) {
    return allen_relation(across[0].interval, m.interval) == AllenRel::during;
  });
  CHECK(within_one_move);
}

TEST_CASE("describe_scene of a region-only scene is empty") {
  const char* doc = R"({"dt": 0.1, "n_ticks": 4, "entities": [
    {"id": "reg-1", "kind": "region", "color": "red", "rect": [0,0,2,2]},
    {"id": "reg-2", "kind": "region", "color": "blue", "rect": [3,3,5,5]}]})";
  CHECK(describe_scene(load_scene(doc), AbstractionParams{}).empty());
}

TEST_CASE("every across has a matching entry and exit") {
  Rng rng(5);
  for (int iter = 0; iter < 6; ++iter) {
    const double y = rng.uniform(1.5, 2.5);
    const Scene scene = gen_scene(
        simple_script({{0, y}, {9, y}, {9, 8}}, {45, 30},
                      {region("reg-1", "red", {3, 1, 6, 3}),
                       region("reg-2", "blue", {8, 1, 10, 3})}),
        0.01, rng.next());
    const auto atoms = describe_scene(scene, AbstractionParams{});
    for (const EventAtom& a : of_pred(atoms, EventPred::moves_across)) {
      bool entry = false, exit = false;
      for (const EventAtom& other : atoms) {
        if (other.subject != a.subject || other.ref_id != a.ref_id) continue;
        if (other.pred == EventPred::moves_into &&
            other.interval.start == a.interval.start)
          entry = true;
        if (other.pred == EventPred::moves_out_of && other.interval.end == a.interval.end)
          exit = true;
      }
      CHECK(entry);
      CHECK(exit);
    }
  }
}

TEST_CASE("entries and exits alternate per block-region pair") {
  const Scene scene = canonical_scene();
  const auto atoms = describe_scene(scene, AbstractionParams{});
  std::map<std::string, std::vector<EventPred>> sequences;
  for (const EventAtom& a : atoms)
    if (a.pred == EventPred::moves_into || a.pred == EventPred::moves_out_of)
      sequences[a.ref_id].push_back(a.pred);
  for (auto& [region, seq] : sequences)
    for (size_t i = 0; i + 1 < seq.size(); ++i) CHECK(seq[i] != seq[i + 1]);
}

TEST_CASE("no atom interval exceeds the scene range") {
  const Scene scene = canonical_scene();
  for (const EventAtom& a : describe_scene(scene, AbstractionParams{})) {
    CHECK(a.interval.start >= 0);
    CHECK(a.interval.end < scene.n_ticks);
  }
}

TEST_CASE("describe_scene is a pure function") {
  const Scene scene = canonical_scene();
  CHECK(describe_scene(scene, AbstractionParams{}) ==
        describe_scene(scene, AbstractionParams{}));
}

TEST_CASE("event json line") {
  const EventAtom atom{EventPred::moves_into, "obj-12", "reg-38", std::nullopt, {14, 16}};
  CHECK(event_json_line(atom) ==
        R"({"pred": "moves_into", "subject": "obj-12", "ref": "reg-38", "interval": [14, 16]})");
  const EventAtom m{EventPred::moves, "obj-12", "", Direction::left, {0, 39}};
  CHECK(event_json_line(m) ==
        R"({"pred": "moves", "subject": "obj-12", "ref": "left", "interval": [0, 39]})");
}
