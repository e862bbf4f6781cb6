#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "deduct/logic.hpp"

namespace deduct {

// Program text format:
//
//   Predicates:
//   Quiet($x, bool) ::: Is x quiet?
//   Facts:
//   Quiet(Anne, True) ::: Anne is quiet.
//   Rules:
//   Young($x, True) >>> Furry($x, True) ::: Young people are furry.
//   Query:
//   White(Anne, True) ::: Anne is white.
//
// One item per line. `:::` separates the symbolic form from an optional
// gloss, `>>>` separates rule body from heads, `&` joins conjunctions,
// `$`-prefixed names are variables. The Predicates/Facts/Rules headers are
// required (sections may be empty); Query is optional and holds at most one
// line. Unknown block headers are an error.

enum class DiagnosticKind { Syntax, Semantic };

struct Diagnostic {
  int line = 0;  // 1-based
  DiagnosticKind kind = DiagnosticKind::Syntax;
  std::string message;

  bool operator==(const Diagnostic& other) const = default;
};

std::string to_string(DiagnosticKind k);

/// Executability report for one program text. `executable` is true exactly
/// when the text parses with no errors and all knowledge-base invariants
/// hold; warnings never affect executability.
struct ParseReport {
  bool executable = false;
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(ParseReport report);
  const ParseReport& report() const { return report_; }

 private:
  ParseReport report_;
};

/// Parses a full program into a validated KnowledgeBase. Rules are numbered
/// Rule1... in file order. Throws ParseError carrying the aggregated report
/// when the text is not executable.
KnowledgeBase parse_program(const std::string& text);

/// Never throws; collects every diagnosable error instead of failing fast,
/// so corpus statistics stay informative.
ParseReport validate(const std::string& text);

/// Canonical program text in block order Predicates/Facts/Rules/Query.
/// parse_program(render_program(kb)) is structurally equal to kb.
std::string render_program(const KnowledgeBase& kb);

/// Parses one fact line (no gloss handling); used by tests and tools.
/// Throws ParseError on malformed input.
Fact parse_fact_text(const std::string& text);

}  // namespace deduct
