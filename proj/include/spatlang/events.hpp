#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spatlang/qualitative.hpp"

namespace spatlang {

enum class Direction { left, right, closer, further };

std::string_view direction_name(Direction d);
std::optional<Direction> direction_from_name(std::string_view name);

enum class EventPred { moves, moves_into, moves_out_of, moves_across };

std::string_view event_pred_name(EventPred p);

// A named motion event: moves(block, direction, I) or
// moves_into/moves_out_of/moves_across(block, region, I).
struct EventAtom {
  EventPred pred = EventPred::moves;
  std::string subject;
  std::string ref_id;               // reference entity (into/out_of/across)
  std::optional<Direction> dir;     // moves only
  TickInterval interval;

  std::string ref_text() const;     // ref_id or the direction name
  friend bool operator==(const EventAtom&, const EventAtom&) = default;
};

// moves(block, dir, I): maximal runs of steps faster than v_eps whose
// dominant displacement axis and sign stay constant. A run over steps
// s..e is reported as the tick interval [s, e], so runs of the same
// block never overlap and adjacent runs satisfy meets.
std::vector<EventAtom> segment_moves(const Scene& scene, const AbstractionParams& params);

// moves_into: DC,PO,PP topology chain with an approaching fluent
// covering the PO phase; the atom interval is the PO interval.
// moves_out_of mirrors it (PP,PO,DC with receding).
std::vector<EventAtom> detect_transitions(const std::vector<Fluent>& fluents);

// moves_across: an entry paired with the nearest later exit of the same
// (block, region), the region never left in between (no DC gap in the
// topology fluents), and the spanned interval lying within one moves
// run (shared endpoints allowed). The atom interval runs from the start
// of the entry to the end of the exit, so the entry starts it and the
// exit finishes it.
std::vector<EventAtom> detect_across(const std::vector<EventAtom>& atoms,
                                     const std::vector<Fluent>& fluents);

// Full pipeline; atoms sorted by interval start, then predicate name,
// then reference.
std::vector<EventAtom> describe_scene(const Scene& scene, const AbstractionParams& params);

// One JSON line: {"pred": ..., "subject": ..., "ref": ..., "interval": [s,e]}
std::string event_json_line(const EventAtom& atom);

// Template-join rendering for human inspection only. color_name maps an
// entity color to a word; numeric colors render anonymously when no
// namer is given.
std::string render_english(
    const Scene& scene, const EventAtom& atom,
    const std::function<std::string(const Color&)>& color_name = {});

}  // namespace spatlang
