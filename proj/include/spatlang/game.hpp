#pragma once

#include "spatlang/grammar.hpp"
#include "spatlang/semantics.hpp"

namespace spatlang {

// Everything an agent brings to a game: its chunk library, grammar,
// color calibration and abstraction thresholds. Agents are read-only
// knowledge bundles; no learning happens during a series.
struct Agent {
  std::string id;
  std::vector<Chunk> chunks;
  std::vector<Construction> grammar;
  ColorPrototypes prototypes;
  AbstractionParams params;
  SearchConfig search;

  static Agent standard(std::string id);
};

enum class Outcome { success, failure, speaker_abort, hearer_abort };

std::string_view outcome_name(Outcome o);

struct GameRecord {
  std::string speaker;
  std::string hearer;
  std::string pair_id;
  int topic = 0;  // 0 = scene_a, 1 = scene_b
  std::optional<Utterance> utterance;
  std::optional<int> hearer_choice;
  Outcome outcome = Outcome::failure;
};

struct SeriesStats {
  int games_played = 0;
  int successes = 0;
  int failures = 0;
  int speaker_aborts = 0;
  int hearer_aborts = 0;
  double success_rate = 0.0;
};

struct SeriesReport {
  std::vector<GameRecord> games;
  SeriesStats stats;
};

// One run of the script: the speaker draws a topic, conceptualizes and
// produces; the hearer parses, interprets and signals a scene choice;
// success means the choice matches the topic. The hearer never sees the
// topic, only the utterance and the pair.
GameRecord play_game(const ScenePair& pair, const Agent& speaker, const Agent& hearer,
                     uint64_t seed);

// n games between randomly drawn speaker/hearer (distinct) over randomly
// drawn pairs; deterministic for a fixed seed.
SeriesReport run_series(const std::vector<ScenePair>& pairs,
                        const std::vector<Agent>& agents, int n, uint64_t seed);

std::string series_report_json(const SeriesReport& report);

}  // namespace spatlang
