#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spatlang/geometry.hpp"
#include "spatlang/intervals.hpp"

namespace spatlang {

// RCC5 topology. DC also covers externally-touching configurations
// (RCC5 has no EC); disjointness is decided on interiors shrunk by
// eps_geo.
enum class Rcc5Rel { DC, PO, PP, PPi, EQ };

// Relative order of two interval projections on one axis, seven jointly
// exhaustive classes per axis. Rendered as left/overlaps_left/along_left/
// horizontally_equal/... horizontally and closer/.../further in depth.
enum class AxisRel {
  low,
  overlaps_low,
  along_low,
  aligned,
  overlaps_high,
  along_high,
  high,
};

struct OrientRel {
  AxisRel horizontal = AxisRel::aligned;
  AxisRel depth = AxisRel::aligned;
  friend bool operator==(const OrientRel&, const OrientRel&) = default;
};

enum class MotionRel { approaching, receding, steady };

struct AbstractionParams {
  double eps_geo = 0.01;   // meters
  int motion_window = 3;   // half-window W, ticks
  double v_eps = 0.01;     // meters of distance change that counts as motion
};

enum class Family { topology, horizontal, depth, motion };

// A qualitative relation between two entities holding over a maximal
// tick interval.
struct Fluent {
  Family family = Family::topology;
  int code = 0;  // enum value within the family
  std::string a;
  std::string b;
  TickInterval interval;

  Rcc5Rel rcc5() const { return static_cast<Rcc5Rel>(code); }
  AxisRel axis() const { return static_cast<AxisRel>(code); }
  MotionRel motion() const { return static_cast<MotionRel>(code); }
  std::string_view relation_name() const;
  friend bool operator==(const Fluent&, const Fluent&) = default;
};

std::string_view rcc5_name(Rcc5Rel rel);
std::string_view horizontal_name(AxisRel rel);
std::string_view depth_name(AxisRel rel);
std::string_view motion_name(MotionRel rel);

Rcc5Rel rcc5_at(const Rect& a, const Rect& b, double eps_geo);
OrientRel orientation_at(const Rect& a, const Rect& b, double eps_geo);

// Eq-style relative movement with the symmetric window t-W .. t+W;
// ticks whose window leaves the scene are steady.
MotionRel motion_at(const Scene& scene, std::string_view a, std::string_view b,
                    int tick, const AbstractionParams& params);

// Maximal-interval fluents for every ordered (block, other-entity) pair
// and every relation family, in deterministic order (args, family,
// start tick).
std::vector<Fluent> extract_fluents(const Scene& scene, const AbstractionParams& params);

// One JSON line: {"rel": ..., "args": [a,b], "interval": [s,e]}
std::string fluent_json_line(const Fluent& f);

}  // namespace spatlang
