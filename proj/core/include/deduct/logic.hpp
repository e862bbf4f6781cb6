#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deduct/term.hpp"

namespace deduct {

enum class Assumption { Owa, Cwa };
enum class TruthValue { True, False, Unknown };

std::string to_string(Assumption a);
std::string to_string(TruthValue v);
std::optional<Assumption> assumption_from_string(const std::string& s);
std::optional<TruthValue> truth_from_string(const std::string& s);

/// Predicate applied to arguments, with an explicit truth polarity and an
/// optional natural-language gloss. The surface form's trailing True/False
/// token is the polarity, not an argument.
struct Fact {
  std::string predicate;
  std::vector<Term> args;  // at least one
  bool polarity = true;
  std::string gloss;  // empty when absent

  bool is_ground() const;

  /// Canonical symbolic text without the gloss, e.g. `Green(Charlie, True)`.
  /// Serves as the identity key for closure membership.
  std::string sl_text() const;

  /// Full line form: sl_text() plus ` ::: gloss` when a gloss is present.
  std::string line_text() const;

  /// Identity of the logical literal: predicate, args and polarity.
  bool same_literal(const Fact& other) const;

  bool operator==(const Fact& other) const = default;
};

/// Conjunction of body patterns implying one or more head facts.
/// Ids are ordinal (1-based) in declaration order and render as `Rule<k>`.
struct Rule {
  int id = 0;
  std::vector<Fact> body;   // nonempty, may contain variables
  std::vector<Fact> heads;  // nonempty, range-restricted against body
  std::string gloss;

  std::string label() const { return "Rule" + std::to_string(id); }

  /// Symbolic text without gloss: `A($x, True) & B($x, True) >>> C($x, True)`.
  std::string sl_text() const;
  std::string line_text() const;

  bool operator==(const Rule& other) const = default;
};

/// Ground fact whose truth value is asked of the knowledge base.
struct Query {
  Fact fact;
  bool operator==(const Query& other) const = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<std::string> arg_names;  // variable names of the signature
  std::string gloss;

  int arity() const { return static_cast<int>(arg_names.size()); }

  /// Signature text, e.g. `Quiet($x, bool)`.
  std::string signature() const;
  std::string line_text() const;

  bool operator==(const PredicateDecl& other) const = default;
};

struct KnowledgeBase {
  std::vector<PredicateDecl> predicates;
  std::vector<Fact> facts;  // ground
  std::vector<Rule> rules;
  std::optional<Query> query;
  Assumption assumption = Assumption::Owa;  // carried metadata, not program text

  const PredicateDecl* find_predicate(const std::string& name) const;

  /// Structural equality over the program content (predicates, facts, rules,
  /// query). The assumption is not representable in the text format and is
  /// deliberately excluded.
  bool operator==(const KnowledgeBase& other) const {
    return predicates == other.predicates && facts == other.facts &&
           rules == other.rules && query == other.query;
  }
};

/// Variable assignments in binding order. A variable is bound at most once
/// and unbinding is strictly LIFO.
class Bindings {
 public:
  bool contains(const std::string& var) const;
  const Term* lookup(const std::string& var) const;

  /// Binds `var`; value must be ground. Rebinding is an error.
  void bind(const std::string& var, Term value);

  /// Unbinds `var`, which must be the most recently bound variable.
  void unbind(const std::string& var);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::pair<std::string, Term>& entry(size_t i) const { return entries_[i]; }

  bool operator==(const Bindings& other) const = default;

 private:
  std::vector<std::pair<std::string, Term>> entries_;
};

/// Replaces bound variables by their values; unbound variables pass through.
/// Polarity and gloss are preserved. Total function.
Fact substitute(const Fact& pattern, const Bindings& bindings);

/// Matches `pattern` against the ground fact `ground`, extending `bindings`
/// with the newly bound variables in left-to-right argument order. Returns
/// nullopt when predicate, arity, polarity, a constant or an existing
/// binding conflicts.
std::optional<Bindings> unify(const Fact& pattern, const Fact& ground,
                              const Bindings& bindings);

/// Same literal with flipped polarity. Involution.
Fact negate(const Fact& fact);

}  // namespace deduct
