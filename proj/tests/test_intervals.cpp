#include <map>

#include "doctest.h"
#include "spatlang/common.hpp"
#include "spatlang/intervals.hpp"

using namespace spatlang;

namespace {

// Independent classifier: checks each of the thirteen definitions on the
// half-open images, written out one by one.
std::vector<AllenRel> oracle_relations(const TickInterval& i, const TickInterval& j) {
  const int a1 = i.start, b1 = i.end + 1;
  const int a2 = j.start, b2 = j.end + 1;
  std::vector<AllenRel> held;
  if (b1 < a2) held.push_back(AllenRel::before);
  if (b1 == a2) held.push_back(AllenRel::meets);
  if (a1 < a2 && a2 < b1 && b1 < b2) held.push_back(AllenRel::overlaps);
  if (a1 == a2 && b1 < b2) held.push_back(AllenRel::starts);
  if (a2 < a1 && b1 < b2) held.push_back(AllenRel::during);
  if (a2 < a1 && b1 == b2) held.push_back(AllenRel::finishes);
  if (a1 == a2 && b1 == b2) held.push_back(AllenRel::equal);
  if (b2 < a1) held.push_back(AllenRel::after);
  if (b2 == a1) held.push_back(AllenRel::met_by);
  if (a2 < a1 && a1 < b2 && b2 < b1) held.push_back(AllenRel::overlapped_by);
  if (a1 == a2 && b2 < b1) held.push_back(AllenRel::started_by);
  if (a1 < a2 && b2 < b1) held.push_back(AllenRel::contains);
  if (a2 < a1 && b1 == b2) {
    // finishes, already covered
  }
  if (a1 < a2 && b1 == b2) held.push_back(AllenRel::finished_by);
  return held;
}

}  // namespace

TEST_CASE("allen relation basics") {
  // Runs separated by a full gap tick are before; abutting runs
  // (end + 1 == start) satisfy meets, which is what chains consecutive
  // maximal fluent runs.
  CHECK(allen_relation({0, 2}, {4, 5}) == AllenRel::before);
  CHECK(allen_relation({0, 2}, {3, 5}) == AllenRel::meets);
  CHECK(allen_relation({0, 5}, {0, 5}) == AllenRel::equal);
  CHECK(allen_relation({1, 3}, {0, 6}) == AllenRel::during);
  CHECK(allen_relation({0, 6}, {1, 3}) == AllenRel::contains);
  CHECK(allen_relation({0, 3}, {2, 6}) == AllenRel::overlaps);
  CHECK(allen_relation({0, 2}, {0, 6}) == AllenRel::starts);
  CHECK(allen_relation({4, 6}, {0, 6}) == AllenRel::finishes);
  CHECK(allen_relation({4, 5}, {0, 2}) == AllenRel::after);
  CHECK(allen_relation({3, 5}, {0, 2}) == AllenRel::met_by);
}

TEST_CASE("allen exhaustiveness and converse over all pairs with endpoints 0..6") {
  for (int s1 = 0; s1 <= 6; ++s1)
    for (int e1 = s1; e1 <= 6; ++e1)
      for (int s2 = 0; s2 <= 6; ++s2)
        for (int e2 = s2; e2 <= 6; ++e2) {
          const TickInterval i{s1, e1}, j{s2, e2};
          const auto held = oracle_relations(i, j);
          REQUIRE(held.size() == 1);
          CHECK(allen_relation(i, j) == held[0]);
          CHECK(allen_relation(j, i) == converse(allen_relation(i, j)));
        }
}

TEST_CASE("interval helpers") {
  CHECK(TickInterval{2, 5}.contains(3));
  CHECK(TickInterval{2, 5}.contains({3, 4}));
  CHECK(TickInterval{2, 5}.contains({2, 5}));
  CHECK(!TickInterval{2, 5}.contains({2, 6}));
  CHECK(TickInterval{2, 5}.overlaps({5, 9}));
  CHECK(!TickInterval{2, 5}.overlaps({6, 9}));
}

TEST_CASE("intervals_from_series on small examples") {
  CHECK(intervals_from_series({true, true, false, true}) ==
        std::vector<TickInterval>{{0, 1}, {3, 3}});
  CHECK(intervals_from_series({false, false, false}).empty());
  CHECK(intervals_from_series({true}) == std::vector<TickInterval>{{0, 0}});
}

TEST_CASE("intervals_from_series properties on random series") {
  Rng rng(42);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = 1 + static_cast<int>(rng.below(60));
    std::vector<bool> series(n);
    for (int t = 0; t < n; ++t) series[t] = rng.below(2) == 1;

    const auto runs = intervals_from_series(series);

    // Union of runs equals the true-set.
    std::vector<bool> rebuilt(n, false);
    for (const TickInterval& r : runs) {
      REQUIRE(r.valid());
      REQUIRE(r.end < n);
      for (int t = r.start; t <= r.end; ++t) rebuilt[t] = true;
    }
    CHECK(rebuilt == series);

    // Sorted, disjoint, maximal: merging neighbors would cross a false
    // tick.
    for (size_t k = 0; k + 1 < runs.size(); ++k) {
      CHECK(runs[k].end + 1 < runs[k + 1].start);
      CHECK(allen_relation(runs[k], runs[k + 1]) == AllenRel::before);
    }
    for (const TickInterval& r : runs) {
      if (r.start > 0) CHECK(!series[r.start - 1]);
      if (r.end + 1 < n) CHECK(!series[r.end + 1]);
    }
  }
}

TEST_CASE("complementary series runs meet") {
  const std::vector<bool> series{true, true, false, false, true};
  std::vector<bool> complement;
  for (bool b : series) complement.push_back(!b);
  const auto pos = intervals_from_series(series);
  const auto neg = intervals_from_series(complement);
  CHECK(allen_relation(pos[0], neg[0]) == AllenRel::meets);
  CHECK(allen_relation(neg[0], pos[1]) == AllenRel::meets);
}
