#pragma once

#include <string>

#include "deduct/engine.hpp"
#include "deduct/logic.hpp"
#include "deduct/trace.hpp"

namespace deduct {

enum class Representation { Sl, Nl };

struct RenderOptions {
  bool include_unbind = true;
  bool include_fail_backtrack = true;
  Representation representation = Representation::Sl;
};

/// Line templates for the rendered reasoning text. The table ships as a
/// versioned resource file (core/resources/trace_templates.json) embedded at
/// build time; rendered wording changes only through that file.
struct TemplateTable {
  int version = 0;

  std::string use_rule;
  std::string reuse_rule;
  std::string bind;
  std::string unbind;
  std::string fail_backtrack;
  std::string new_fact;
  std::string known_fact;
  std::string finish_rule;

  std::string header_predicates;
  std::string header_facts;
  std::string header_rules;
  std::string header_apply;
  std::string header_implied;
  std::string implied_none;

  std::string turn4_query;
  std::string turn4_known_true;
  std::string turn4_implied_true;
  std::string turn4_known_false;
  std::string turn4_implied_false;
  std::string turn4_unknown;
  std::string turn4_cwa_absent_true;
  std::string turn4_cwa_absent_false;
  std::string turn4_option;

  /// The embedded table.
  static const TemplateTable& builtin();
  /// Parses a table from JSON text; missing keys are an error.
  static TemplateTable from_json(const std::string& json_text);
};

class RenderSourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Natural-language sentence for a fact: the stored gloss when present,
/// otherwise the synthesized unary template `<entity> is (not) <predicate>.`
/// Throws RenderSourceError when no gloss exists and the fact is not unary.
std::string nl_sentence(const Fact& fact);

/// Same for a rule; single-variable rules without a gloss synthesize an
/// `If someone is ..., then they are ...` sentence.
std::string nl_sentence(const Rule& rule);

/// Renders the full reasoning text: predicate definitions, known facts,
/// rules, one block per rule application and the enumeration of all newly
/// implied facts. Rule-application blocks appear in trace order (pass by
/// pass, rule order within a pass).
std::string render_turn2(const KnowledgeBase& kb, const Trace& trace,
                         const Closure& closure, const RenderOptions& options = {});

/// Renders the query-resolution text: the parsed query, the supporting
/// known/implied fact (or absence of both polarities) and the option line.
/// `answer` must come from answer_query over the same closure.
std::string render_turn4(const Query& query, const Closure& closure,
                         Assumption assumption, TruthValue answer);

/// Option letter for a truth value: True -> A, False -> B, Unknown -> C.
char option_letter(TruthValue value);

}  // namespace deduct
