#pragma once

#include <string_view>
#include <vector>

namespace spatlang {

// Closed integer tick range. A tick t stands for the sampling slot
// [t, t+1), so two runs abut (Allen meets) when end + 1 == start of the
// next run; maximal runs of a changing per-tick relation chain with meets
// by construction.
struct TickInterval {
  int start = 0;
  int end = 0;  // inclusive

  bool valid() const { return 0 <= start && start <= end; }
  int length() const { return end - start + 1; }
  bool contains(int tick) const { return start <= tick && tick <= end; }
  bool contains(const TickInterval& other) const {
    return start <= other.start && other.end <= end;
  }
  bool overlaps(const TickInterval& other) const {
    return start <= other.end && other.start <= end;
  }
  friend bool operator==(const TickInterval&, const TickInterval&) = default;
};

enum class AllenRel {
  before,
  meets,
  overlaps,
  starts,
  during,
  finishes,
  equal,
  after,
  met_by,
  overlapped_by,
  started_by,
  contains,
  finished_by,
};

// The unique Allen relation between two tick intervals under the
// closed-range reading above.
AllenRel allen_relation(const TickInterval& i, const TickInterval& j);

AllenRel converse(AllenRel rel);
std::string_view allen_name(AllenRel rel);

// Maximal runs of true, in increasing order, pairwise disjoint and
// non-adjacent.
std::vector<TickInterval> intervals_from_series(const std::vector<bool>& series);

}  // namespace spatlang
