#include <sstream>

#include "spatlang/grammar.hpp"

namespace spatlang {

// The fragment shipped with the toolkit: enough to express every
// clause of the form "the <color> <noun> moves <relation> the <color>
// <noun>" plus bare-noun subjects and landmarks, with "is moving"
// accepted as a parse-time alias of "moves".
const std::string& default_grammar_manifest() {
  static const std::string manifest = R"(# spatlang grammar fragment
# lexical <name> <class> <spec> :: <form...> [parse-only]
lexical the-det      determiner  selector:unique   :: the
lexical yellow-adj   adjective   color:yellow      :: yellow
lexical green-adj    adjective   color:green       :: green
lexical red-adj      adjective   color:red         :: red
lexical blue-adj     adjective   color:blue        :: blue
lexical white-adj    adjective   color:white       :: white
lexical block-noun   noun        class:block       :: block
lexical box-noun     noun        class:box         :: box
lexical region-noun  noun        class:region      :: region
lexical robot-noun   noun        class:robot       :: robot
lexical moves-verb   verb        event:move        :: moves
lexical is-moving-verb verb      event:move        :: is moving [parse-only]
lexical across-prep  preposition dsr:across+path   :: across
lexical into-prep    preposition dsr:into+goal     :: into
lexical out-of-prep  preposition dsr:out-of+source :: out of

functional determiner-fn  determiner
functional adjective-fn   adjective
functional noun-fn        noun
functional verb-fn        verb
functional preposition-fn preposition

phrasal adj-noun-nominal
phrasal bare-noun-nominal
phrasal determined-np
phrasal prep-phrase
phrasal verb-phrase
phrasal clause
)";
  return manifest;
}

namespace {

WordClass word_class_from_name(const std::string& name) {
  if (name == "determiner") return WordClass::determiner;
  if (name == "adjective") return WordClass::adjective;
  if (name == "noun") return WordClass::noun;
  if (name == "verb") return WordClass::verb;
  if (name == "preposition") return WordClass::preposition;
  throw std::invalid_argument("grammar manifest: unknown word class " + name);
}

void parse_spec(const std::string& spec, Construction& cxn) {
  const size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("grammar manifest: bad spec " + spec);
  const std::string head = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (head == "selector") {
    cxn.category = SemCategory::selector;
  } else if (head == "color") {
    cxn.category = SemCategory::color_category;
  } else if (head == "class") {
    cxn.category = SemCategory::object_class;
  } else if (head == "event") {
    cxn.event_verb = true;
    return;
  } else if (head == "dsr") {
    cxn.category = SemCategory::dynamic_spatial_relation;
    const size_t plus = rest.find('+');
    if (plus == std::string::npos)
      throw std::invalid_argument("grammar manifest: dsr spec needs +profile");
    cxn.profile_value = rest.substr(plus + 1);
    rest = rest.substr(0, plus);
  } else {
    throw std::invalid_argument("grammar manifest: unknown spec kind " + head);
  }
  cxn.value = rest;
}

}  // namespace

std::vector<Construction> load_grammar_manifest(std::string_view text) {
  std::vector<Construction> grammar;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;

    Construction cxn;
    if (kind == "lexical") {
      cxn.kind = CxnKind::lexical;
      std::string wc, spec, sep;
      if (!(ls >> cxn.name >> wc >> spec >> sep) || sep != "::")
        throw std::invalid_argument("grammar manifest: bad lexical line: " + line);
      cxn.word_class = word_class_from_name(wc);
      parse_spec(spec, cxn);
      std::string token;
      while (ls >> token) {
        if (token == "[parse-only]")
          cxn.parse_only = true;
        else
          cxn.form.push_back(token);
      }
      if (cxn.form.empty())
        throw std::invalid_argument("grammar manifest: lexical row without form: " + line);
    } else if (kind == "functional") {
      cxn.kind = CxnKind::functional;
      std::string wc;
      if (!(ls >> cxn.name >> wc))
        throw std::invalid_argument("grammar manifest: bad functional line: " + line);
      cxn.word_class = word_class_from_name(wc);
    } else if (kind == "phrasal") {
      cxn.kind = CxnKind::phrasal;
      if (!(ls >> cxn.name))
        throw std::invalid_argument("grammar manifest: bad phrasal line: " + line);
    } else {
      throw std::invalid_argument("grammar manifest: unknown construction kind " + kind);
    }
    grammar.push_back(std::move(cxn));
  }
  return grammar;
}

std::vector<Construction> default_grammar() {
  return load_grammar_manifest(default_grammar_manifest());
}

IrlProgram example_program(const std::string& subject_color,
                           const std::string& subject_noun,
                           const std::string& relation,
                           const std::string& landmark_color,
                           const std::string& landmark_noun) {
  const std::string profile(profile_name(profile_for_relation(relation)));
  IrlProgram p;
  p.binds = {
      {"?cls-s", {SemCategory::object_class, subject_noun}},
      {"?col-s", {SemCategory::color_category, subject_color}},
      {"?sel-s", {SemCategory::selector, "unique"}},
      {"?cls-l", {SemCategory::object_class, landmark_noun}},
      {"?col-l", {SemCategory::color_category, landmark_color}},
      {"?sel-l", {SemCategory::selector, "unique"}},
      {"?role", {SemCategory::participant_role, "mover"}},
      {"?prof", {SemCategory::event_profile, profile}},
      {"?rel", {SemCategory::dynamic_spatial_relation, relation}},
  };
  p.nodes = {
      {CogOp::get_context, {"?ctx"}},
      {CogOp::apply_class, {"?objs-s", "?ctx", "?cls-s"}},
      {CogOp::apply_color, {"?cobjs-s", "?objs-s", "?col-s"}},
      {CogOp::apply_determiner, {"?subj", "?cobjs-s", "?sel-s"}},
      {CogOp::apply_event, {"?evs", "?ctx"}},
      {CogOp::apply_role, {"?revs", "?evs", "?subj", "?role"}},
      {CogOp::apply_profile, {"?pevs", "?revs", "?prof"}},
      {CogOp::apply_class, {"?objs-l", "?ctx", "?cls-l"}},
      {CogOp::apply_color, {"?cobjs-l", "?objs-l", "?col-l"}},
      {CogOp::apply_determiner, {"?lm", "?cobjs-l", "?sel-l"}},
      {CogOp::apply_dynamic_spatial_relation, {"?out", "?pevs", "?lm", "?rel"}},
  };
  validate_program(p, /*allow_partial=*/false);
  return p;
}

namespace {

const std::vector<std::string>& fragment_colors() {
  static const std::vector<std::string> colors{"yellow", "green", "red", "blue", "white"};
  return colors;
}
const std::vector<std::string>& fragment_nouns() {
  static const std::vector<std::string> nouns{"block", "box", "region"};
  return nouns;
}
const std::vector<std::pair<std::string, std::string>>& fragment_relations() {
  static const std::vector<std::pair<std::string, std::string>> rels{
      {"across", "across"}, {"into", "into"}, {"out-of", "out of"}};
  return rels;
}

}  // namespace

std::vector<IrlProgram> fragment_programs() {
  std::vector<IrlProgram> programs;
  for (const std::string& color : fragment_colors())
    for (const std::string& noun : fragment_nouns())
      for (const auto& [relation, surface] : fragment_relations())
        programs.push_back(example_program(color, noun, relation));
  return programs;
}

std::vector<std::string> fragment_sentences() {
  std::vector<std::string> sentences;
  for (const std::string& color : fragment_colors())
    for (const std::string& noun : fragment_nouns())
      for (const auto& [relation, surface] : fragment_relations())
        sentences.push_back("the " + color + " " + noun + " moves " + surface +
                            " the red region");
  return sentences;
}

}  // namespace spatlang
