#include "spatlang/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spatlang/game.hpp"
#include "spatlang/scene_io.hpp"

namespace spatlang {

namespace {

AbstractionParams load_params(const std::string& path) {
  AbstractionParams params;
  if (path.empty()) return params;
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open params file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw SceneError("params file: malformed JSON");
  if (doc.contains("eps_geo")) params.eps_geo = doc["eps_geo"].get<double>();
  if (doc.contains("motion_window")) params.motion_window = doc["motion_window"].get<int>();
  if (doc.contains("v_eps")) params.v_eps = doc["v_eps"].get<double>();
  return params;
}

// Stream sink: --out FILE or the CLI's stdout.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw SceneError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

std::string color_word(const Color& color, const ColorPrototypes& prototypes) {
  if (color.symbolic()) return color.name;
  return classify_color(*color.ycbcr, prototypes);
}

int topic_index(const std::string& topic) {
  if (topic == "a") return 0;
  if (topic == "b") return 1;
  throw CLI::ValidationError("--topic", "must be 'a' or 'b'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in) {
  CLI::App app{"Qualitative grounding of dynamic spatial language in 2-D scenes"};
  app.require_subcommand(1);

  std::string scene_path, pair_path, text, topic = "a", params_path, out_path;
  std::string script_path;
  std::vector<std::string> pair_paths;
  int games = 20;
  uint64_t seed = 1;
  double sigma = 0.0;

  CLI::App* abstract = app.add_subcommand("abstract", "Dump fluents as JSON lines");
  abstract->add_option("--scene", scene_path, "Scene document")->required();
  abstract->add_option("--params", params_path, "Abstraction parameter overrides");
  abstract->add_option("--out", out_path, "Write to file instead of stdout");

  CLI::App* describe = app.add_subcommand("describe", "Dump event atoms as JSON lines");
  describe->add_option("--scene", scene_path, "Scene document")->required();
  describe->add_option("--params", params_path, "Abstraction parameter overrides");
  describe->add_option("--out", out_path, "Write to file instead of stdout");

  CLI::App* produce_cmd = app.add_subcommand("produce", "Program text -> utterance");
  produce_cmd->add_option("--text", text, "Program s-expressions (default: stdin)");

  CLI::App* parse_cmd = app.add_subcommand("parse", "Utterance -> canonical program");
  parse_cmd->add_option("--text", text, "The utterance")->required();

  CLI::App* interpret_cmd =
      app.add_subcommand("interpret", "Pick the scene an utterance describes");
  interpret_cmd->add_option("--pair", pair_path, "Scene pair document")->required();
  interpret_cmd->add_option("--text", text, "The utterance")->required();
  interpret_cmd->add_option("--params", params_path, "Abstraction parameter overrides");

  CLI::App* conceptualize_cmd =
      app.add_subcommand("conceptualize", "Find a program discriminating the topic");
  conceptualize_cmd->add_option("--pair", pair_path, "Scene pair document")->required();
  conceptualize_cmd->add_option("--topic", topic, "Topic scene: a or b")->required();
  conceptualize_cmd->add_option("--params", params_path, "Abstraction parameter overrides");

  CLI::App* game_cmd = app.add_subcommand("game", "Run a language-game series");
  game_cmd->add_option("--pair", pair_paths, "Scene pair document(s)")->required();
  game_cmd->add_option("--games", games, "Number of games");
  game_cmd->add_option("--seed", seed, "Series seed");
  game_cmd->add_option("--params", params_path, "Abstraction parameter overrides");
  game_cmd->add_option("--out", out_path, "Write the report to a file");

  CLI::App* gen_cmd = app.add_subcommand("gen-scenes", "Generate scene documents");
  gen_cmd->add_option("--script", script_path, "Motion script")->required();
  gen_cmd->add_option("--sigma", sigma, "Positional noise sigma (meters)");
  gen_cmd->add_option("--seed", seed, "Noise seed");
  gen_cmd->add_option("--out", out_path, "Write to file instead of stdout");

  std::vector<const char*> argv;
  argv.push_back("spatlang");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const AbstractionParams params = load_params(params_path);

    if (abstract->parsed()) {
      const Scene scene = load_scene_file(scene_path);
      Output sink(out_path, out);
      for (const Fluent& f : extract_fluents(scene, params))
        sink.stream() << fluent_json_line(f) << "\n";
      return 0;
    }

    if (describe->parsed()) {
      const Scene scene = load_scene_file(scene_path);
      const auto& prototypes = ColorPrototypes::defaults();
      Output sink(out_path, out);
      const std::vector<EventAtom> atoms = describe_scene(scene, params);
      for (const EventAtom& a : atoms) sink.stream() << event_json_line(a) << "\n";
      for (const EventAtom& a : atoms)
        sink.stream() << "# "
                      << render_english(scene, a,
                                        [&](const Color& c) {
                                          return color_word(c, prototypes);
                                        })
                      << "\n";
      return 0;
    }

    if (produce_cmd->parsed()) {
      std::string program_text = text;
      if (program_text.empty()) {
        std::ostringstream ss;
        ss << in.rdbuf();
        program_text = ss.str();
      }
      const IrlProgram program = parse_program(program_text);
      const auto utterance = produce(program, default_grammar());
      if (!utterance) {
        err << utterance.error() << "\n";
        return 1;
      }
      out << utterance->text() << "\n";
      return 0;
    }

    if (parse_cmd->parsed()) {
      const auto parsed = parse(Utterance::from_text(text), default_grammar());
      if (!parsed) {
        err << parsed.error() << "\n";
        return 1;
      }
      for (const std::string& w : parsed->warnings) err << "warning: " << w << "\n";
      out << serialize_program(parsed->program);
      return 0;
    }

    if (interpret_cmd->parsed()) {
      const ScenePair pair = load_pair_file(pair_path);
      const auto parsed = parse(Utterance::from_text(text), default_grammar());
      if (!parsed) {
        err << parsed.error() << "\n";
        return 1;
      }
      for (const std::string& w : parsed->warnings) err << "warning: " << w << "\n";
      const auto result = interpret(parsed->program, pair, params,
                                    ColorPrototypes::defaults(), default_chunks());
      if (!result) {
        err << result.error() << "\n";
        return 1;
      }
      nlohmann::json doc{{"scene", result->scene_index == 0 ? "a" : "b"},
                         {"score", result->score}};
      out << doc.dump() << "\n";
      return 0;
    }

    if (conceptualize_cmd->parsed()) {
      const ScenePair pair = load_pair_file(pair_path);
      const auto program = conceptualize(pair, topic_index(topic), default_chunks(),
                                         SearchConfig{}, params,
                                         ColorPrototypes::defaults());
      if (!program) {
        err << program.error() << "\n";
        return 1;
      }
      out << serialize_program(*program);
      return 0;
    }

    if (game_cmd->parsed()) {
      std::vector<ScenePair> pairs;
      for (const std::string& p : pair_paths) pairs.push_back(load_pair_file(p));
      std::vector<Agent> agents{Agent::standard("agent-1"), Agent::standard("agent-2")};
      for (Agent& a : agents) a.params = params;
      const SeriesReport report = run_series(pairs, agents, games, seed);
      Output sink(out_path, out);
      sink.stream() << series_report_json(report) << "\n";
      return 0;
    }

    if (gen_cmd->parsed()) {
      const std::string body = [&] {
        std::ifstream f(script_path);
        if (!f) throw SceneError("cannot open script file: " + script_path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
      }();
      Output sink(out_path, out);
      // A script document with scene_a/scene_b produces a pair document.
      nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
      if (doc.is_object() && doc.contains("scene_a") && doc.contains("scene_b")) {
        ScenePair pair;
        pair.a = gen_scene(load_script(doc["scene_a"].dump()), sigma, seed);
        pair.b = gen_scene(load_script(doc["scene_b"].dump()), sigma, seed + 1);
        sink.stream() << serialize_pair(pair) << "\n";
      } else {
        sink.stream() << serialize_scene(gen_scene(load_script(body), sigma, seed)) << "\n";
      }
      return 0;
    }
  } catch (const SceneError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace spatlang
