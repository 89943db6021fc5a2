#pragma once

#include <deque>
#include <memory>
#include <set>

#include "spatlang/semantics.hpp"

namespace spatlang {

struct Utterance {
  std::vector<std::string> tokens;  // lowercase words

  std::string text() const;
  static Utterance from_text(std::string_view text);  // lowercases and splits
  friend bool operator==(const Utterance&, const Utterance&) = default;
};

enum class CxnKind { lexical, functional, phrasal };
enum class WordClass { none, determiner, adjective, noun, verb, preposition };

std::string_view word_class_name(WordClass c);

// One construction. Lexical rows are bidirectional mappings between bind
// statements and stems (the motion verb is anchored to its event
// operations instead), functional rows assign word classes, phrasal rows
// combine constituents and carry the structural patterns implemented in
// the engine.
struct Construction {
  std::string name;
  CxnKind kind = CxnKind::lexical;
  WordClass word_class = WordClass::none;
  std::vector<std::string> form;           // lexical: 1-2 surface tokens
  SemCategory category = SemCategory::object_class;
  std::string value;                       // bind value ("yellow", "across", ...)
  std::string profile_value;               // prepositions: companion profile bind
  bool event_verb = false;                 // anchored to apply-event + mover role
  bool parse_only = false;                 // accepted in parsing, never produced
};

// The fragment manifest format, one construction per line:
//   lexical <name> <class> <spec> :: <form...> [parse-only]
//   functional <name> <class>
//   phrasal <name>
// with <spec> one of selector:V, color:V, class:V, dsr:V+PROFILE, event:move.
std::vector<Construction> load_grammar_manifest(std::string_view text);
const std::string& default_grammar_manifest();
std::vector<Construction> default_grammar();

// ---------------------------------------------------------------------
// Transient structure

struct GrammarUnit {
  int id = 0;
  WordClass word_class = WordClass::none;  // set by functional constructions
  WordClass lex_class = WordClass::none;   // class the lexical row targets
  std::string phrase_type;                 // "", nominal, np, pp, vp, clause
  std::vector<std::string> form;           // word units: surface tokens
  std::vector<int> children;               // phrasal units: ordered constituents
  bool attached = false;                   // consumed by a parent unit
  std::map<std::string, std::string> sem;  // role -> variable (ref, ctx, rel, ...)
  int span_start = -1;                     // token span while parsing
  int span_end = -1;
};

struct TransientStructure {
  // production side: the structure owns its copy of the program being
  // expressed, plus claim marks over its elements
  std::shared_ptr<const IrlProgram> program;
  std::vector<bool> bind_claimed;
  std::vector<bool> node_claimed;

  // parsing side: the token buffer and accumulated contributions
  std::vector<std::string> tokens;
  std::vector<bool> token_covered;
  IrlProgram contributions;

  std::deque<GrammarUnit> units;  // deque: references stay valid across add_unit
  std::vector<std::string> warnings;
  int fresh = 0;

  std::string fresh_var(const char* stem);
  GrammarUnit& add_unit();
  int token_count() const;  // surface tokens present across units

  static TransientStructure for_production(const IrlProgram& program);
  static TransientStructure for_parsing(const Utterance& utterance);
};

enum class GrammarDirection { produce, parse };

// Applies the construction once if its match side fits, merging the
// other side's contribution; returns false on no-match. Constructions
// never remove features, and claim marks make re-application a no-match.
bool apply_construction(TransientStructure& ts, const Construction& cxn,
                        GrammarDirection direction);

// ---------------------------------------------------------------------
// Production and parsing

Fallible<Utterance> produce(const IrlProgram& program,
                            const std::vector<Construction>& grammar);

struct ParseOutput {
  IrlProgram program;                 // canonical form; partial when tokens were skipped
  std::vector<std::string> warnings;  // unknown-token notices
};

Fallible<ParseOutput> parse(const Utterance& utterance,
                            const std::vector<Construction>& grammar);

// The covered clause fragment: every (color, noun, relation) combination
// with the fixed "the red region" landmark, as programs. Production of
// program i yields fragment_sentences()[i].
std::vector<IrlProgram> fragment_programs();
std::vector<std::string> fragment_sentences();

// The clause program underlying "the <color> <noun> moves <rel> the
// <lm-color> <lm-noun>".
IrlProgram example_program(const std::string& subject_color,
                           const std::string& subject_noun,
                           const std::string& relation,
                           const std::string& landmark_color = "red",
                           const std::string& landmark_noun = "region");

}  // namespace spatlang
