#include "spatlang/intervals.hpp"

namespace spatlang {

// Classification works on the half-open images [s, e+1). With integer
// endpoints every image is non-degenerate, so the thirteen cases are
// jointly exhaustive and pairwise disjoint.
AllenRel allen_relation(const TickInterval& i, const TickInterval& j) {
  const int a1 = i.start, b1 = i.end + 1;
  const int a2 = j.start, b2 = j.end + 1;

  if (b1 < a2) return AllenRel::before;
  if (b1 == a2) return AllenRel::meets;
  if (b2 < a1) return AllenRel::after;
  if (b2 == a1) return AllenRel::met_by;

  if (a1 == a2 && b1 == b2) return AllenRel::equal;
  if (a1 == a2) return b1 < b2 ? AllenRel::starts : AllenRel::started_by;
  if (b1 == b2) return a1 > a2 ? AllenRel::finishes : AllenRel::finished_by;
  if (a1 > a2 && b1 < b2) return AllenRel::during;
  if (a1 < a2 && b1 > b2) return AllenRel::contains;
  return a1 < a2 ? AllenRel::overlaps : AllenRel::overlapped_by;
}

AllenRel converse(AllenRel rel) {
  switch (rel) {
    case AllenRel::before: return AllenRel::after;
    case AllenRel::meets: return AllenRel::met_by;
    case AllenRel::overlaps: return AllenRel::overlapped_by;
    case AllenRel::starts: return AllenRel::started_by;
    case AllenRel::during: return AllenRel::contains;
    case AllenRel::finishes: return AllenRel::finished_by;
    case AllenRel::equal: return AllenRel::equal;
    case AllenRel::after: return AllenRel::before;
    case AllenRel::met_by: return AllenRel::meets;
    case AllenRel::overlapped_by: return AllenRel::overlaps;
    case AllenRel::started_by: return AllenRel::starts;
    case AllenRel::contains: return AllenRel::during;
    case AllenRel::finished_by: return AllenRel::finishes;
  }
  return AllenRel::equal;
}

std::string_view allen_name(AllenRel rel) {
  switch (rel) {
    case AllenRel::before: return "before";
    case AllenRel::meets: return "meets";
    case AllenRel::overlaps: return "overlaps";
    case AllenRel::starts: return "starts";
    case AllenRel::during: return "during";
    case AllenRel::finishes: return "finishes";
    case AllenRel::equal: return "equal";
    case AllenRel::after: return "after";
    case AllenRel::met_by: return "met-by";
    case AllenRel::overlapped_by: return "overlapped-by";
    case AllenRel::started_by: return "started-by";
    case AllenRel::contains: return "contains";
    case AllenRel::finished_by: return "finished-by";
  }
  return "?";
}

std::vector<TickInterval> intervals_from_series(const std::vector<bool>& series) {
  std::vector<TickInterval> out;
  int run_start = -1;
  for (int t = 0; t < static_cast<int>(series.size()); ++t) {
    if (series[t]) {
      if (run_start < 0) run_start = t;
    } else if (run_start >= 0) {
      out.push_back({run_start, t - 1});
      run_start = -1;
    }
  }
  if (run_start >= 0) out.push_back({run_start, static_cast<int>(series.size()) - 1});
  return out;
}

}  // namespace spatlang
