#include "spatlang/game.hpp"

#include "json.hpp"
#include "spatlang/common.hpp"

namespace spatlang {

Agent Agent::standard(std::string id) {
  Agent a;
  a.id = std::move(id);
  a.chunks = default_chunks();
  a.grammar = default_grammar();
  a.prototypes = ColorPrototypes::defaults();
  return a;
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::success: return "success";
    case Outcome::failure: return "failure";
    case Outcome::speaker_abort: return "speaker-abort";
    case Outcome::hearer_abort: return "hearer-abort";
  }
  return "?";
}

namespace {

// The hearer's side of the script: parse, then find the scene that
// satisfies the meaning. Takes no topic on purpose.
std::optional<int> hearer_choice(const Utterance& utterance, const ScenePair& pair,
                                 const Agent& hearer) {
  const auto parsed = parse(utterance, hearer.grammar);
  if (!parsed) return std::nullopt;
  const auto interpretation = interpret(parsed->program, pair, hearer.params,
                                        hearer.prototypes, hearer.chunks, hearer.search);
  if (!interpretation) return std::nullopt;
  return interpretation->scene_index;
}

}  // namespace

GameRecord play_game(const ScenePair& pair, const Agent& speaker, const Agent& hearer,
                     uint64_t seed) {
  Rng rng(seed);
  GameRecord record;
  record.speaker = speaker.id;
  record.hearer = hearer.id;
  record.topic = static_cast<int>(rng.below(2));

  const auto program = conceptualize(pair, record.topic, speaker.chunks, speaker.search,
                                     speaker.params, speaker.prototypes);
  if (!program) {
    record.outcome = Outcome::speaker_abort;
    return record;
  }
  const auto utterance = produce(*program, speaker.grammar);
  if (!utterance) {
    record.outcome = Outcome::speaker_abort;
    return record;
  }
  record.utterance = *utterance;

  record.hearer_choice = hearer_choice(*utterance, pair, hearer);
  if (!record.hearer_choice) {
    record.outcome = Outcome::hearer_abort;
    return record;
  }
  record.outcome =
      *record.hearer_choice == record.topic ? Outcome::success : Outcome::failure;
  return record;
}

SeriesReport run_series(const std::vector<ScenePair>& pairs,
                        const std::vector<Agent>& agents, int n, uint64_t seed) {
  if (agents.size() < 2)
    throw std::invalid_argument("run_series: need at least two agents");
  if (pairs.empty()) throw std::invalid_argument("run_series: need at least one pair");
  if (n < 1) throw std::invalid_argument("run_series: need n >= 1");

  Rng rng(seed);
  SeriesReport report;
  for (int game = 0; game < n; ++game) {
    const size_t speaker = rng.below(agents.size());
    size_t hearer = rng.below(agents.size() - 1);
    if (hearer >= speaker) ++hearer;
    const size_t pair_index = rng.below(pairs.size());
    const uint64_t game_seed = rng.next();

    GameRecord record =
        play_game(pairs[pair_index], agents[speaker], agents[hearer], game_seed);
    record.pair_id = "pair-" + std::to_string(pair_index);
    report.games.push_back(std::move(record));
  }

  SeriesStats& stats = report.stats;
  stats.games_played = static_cast<int>(report.games.size());
  for (const GameRecord& r : report.games) {
    switch (r.outcome) {
      case Outcome::success: ++stats.successes; break;
      case Outcome::failure: ++stats.failures; break;
      case Outcome::speaker_abort: ++stats.speaker_aborts; break;
      case Outcome::hearer_abort: ++stats.hearer_aborts; break;
    }
  }
  stats.success_rate =
      stats.games_played ? static_cast<double>(stats.successes) / stats.games_played : 0.0;
  return report;
}

std::string series_report_json(const SeriesReport& report) {
  nlohmann::json doc;
  doc["games"] = nlohmann::json::array();
  for (const GameRecord& r : report.games) {
    nlohmann::json jg;
    jg["speaker"] = r.speaker;
    jg["hearer"] = r.hearer;
    jg["pair_id"] = r.pair_id;
    jg["topic"] = r.topic == 0 ? "a" : "b";
    if (r.utterance) jg["utterance"] = r.utterance->text();
    if (r.hearer_choice) jg["hearer_choice"] = *r.hearer_choice == 0 ? "a" : "b";
    jg["outcome"] = std::string(outcome_name(r.outcome));
    doc["games"].push_back(std::move(jg));
  }
  doc["stats"] = {
      {"games_played", report.stats.games_played},
      {"successes", report.stats.successes},
      {"failures", report.stats.failures},
      {"speaker_aborts", report.stats.speaker_aborts},
      {"hearer_aborts", report.stats.hearer_aborts},
      {"success_rate", report.stats.success_rate},
  };
  return doc.dump(2);
}

}  // namespace spatlang
