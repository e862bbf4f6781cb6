#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "deduct/logic.hpp"
#include "deduct/trace.hpp"

namespace deduct {

/// Safety valve for saturation; the function-free fragment always
/// terminates, so these defaults are generous.
struct Limits {
  int max_passes = 100;
  int max_derived = 100000;
};

struct Derivation {
  int rule_id = 0;
  Bindings bindings;
};

/// Result of saturating a knowledge base: the initial facts, every implied
/// fact in derivation order, and how each implied fact was obtained.
class Closure {
 public:
  const std::vector<Fact>& initial() const { return initial_; }
  const std::vector<Fact>& implied() const { return implied_; }

  /// Literal membership across initial and implied facts.
  bool contains(const Fact& fact) const;
  bool contains_initial(const Fact& fact) const;

  const Derivation* derivation_of(const Fact& fact) const;

  /// Adds to initial, dropping duplicate literals.
  void seed(const Fact& fact);
  /// Adds to implied; the literal must not be present yet.
  void derive(const Fact& fact, Derivation derivation);

  size_t size() const { return initial_.size() + implied_.size(); }

 private:
  std::vector<Fact> initial_;
  std::vector<Fact> implied_;
  std::map<std::string, size_t> index_;           // sl_text -> position order
  std::map<std::string, Derivation> derivations_;  // sl_text of implied facts
};

class SaturationLimitError : public std::runtime_error {
 public:
  SaturationLimitError(std::string what, Closure closure, Trace trace)
      : std::runtime_error(std::move(what)),
        closure_(std::move(closure)),
        trace_(std::move(trace)) {}

  const Closure& partial_closure() const { return closure_; }
  const Trace& partial_trace() const { return trace_; }

 private:
  Closure closure_;
  Trace trace_;
};

class ContradictionError : public std::runtime_error {
 public:
  ContradictionError(std::string what, Fact fact, Fact negation)
      : std::runtime_error(std::move(what)),
        fact_(std::move(fact)),
        negation_(std::move(negation)) {}

  const Fact& fact() const { return fact_; }
  const Fact& negation() const { return negation_; }

 private:
  Fact fact_;
  Fact negation_;
};

/// Forward-chains the rules over the facts to the least fixpoint, recording
/// every solver action in the trace.
///
/// The iteration is deterministic: passes run the rules in declaration
/// order; within a rule, premises are matched left to right against the
/// facts known when the rule application started (initial facts in
/// declaration order, then implied facts in derivation order), enumerating
/// every complete body match via backtracking. Saturation stops after the
/// first full pass that derives nothing new.
///
/// Throws SaturationLimitError (carrying the partial closure and trace)
/// when the limits are exceeded. A contradictory closure is not an error
/// here; see check_consistency.
std::pair<Closure, Trace> saturate(const KnowledgeBase& kb,
                                   const Limits& limits = {});

/// Answers a ground query against a closure.
///
/// OWA: True when the query fact is present, False when its negation is,
/// Unknown otherwise; throws ContradictionError when both are present.
/// CWA: the positive-polarity version of the query's literal is provable
/// iff present; the query is True exactly when its stated polarity agrees
/// with provability. CWA never answers Unknown.
TruthValue answer_query(const Closure& closure, const Query& query,
                        Assumption assumption);

/// Every pair {f, negate(f)} present in the closure, in store order of the
/// positive member. Empty means consistent.
std::vector<std::pair<Fact, Fact>> check_consistency(const Closure& closure);

}  // namespace deduct
