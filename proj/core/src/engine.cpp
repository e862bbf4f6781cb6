#include "deduct/engine.hpp"

namespace deduct {

bool Closure::contains(const Fact& fact) const {
  return index_.count(fact.sl_text()) > 0;
}

bool Closure::contains_initial(const Fact& fact) const {
  auto it = index_.find(fact.sl_text());
  return it != index_.end() && it->second < initial_.size();
}

const Derivation* Closure::derivation_of(const Fact& fact) const {
  auto it = derivations_.find(fact.sl_text());
  return it == derivations_.end() ? nullptr : &it->second;
}

void Closure::seed(const Fact& fact) {
  std::string key = fact.sl_text();
  if (index_.count(key)) return;
  index_[key] = initial_.size();
  initial_.push_back(fact);
}

void Closure::derive(const Fact& fact, Derivation derivation) {
  std::string key = fact.sl_text();
  if (index_.count(key))
    throw std::logic_error("derive of already stored fact " + key);
  index_[key] = initial_.size() + implied_.size();
  implied_.push_back(fact);
  derivations_[key] = std::move(derivation);
}

namespace {

/// Backtracking enumerator of all complete body matches of one rule against
/// a fixed snapshot of the store, emitting Bind/Unbind/FailBacktrack events
/// as it goes. Head emission happens in the callback.
class RuleApplication {
 public:
  RuleApplication(const Rule& rule, const std::vector<Fact>& snapshot,
                  Trace& trace)
      : rule_(rule), snapshot_(snapshot), trace_(trace) {}

  template <typename OnMatch>
  void enumerate(OnMatch&& on_match) {
    frames_.push_back({});
    int depth = 0;
    while (depth >= 0) {
      if (advance(depth)) {
        if (depth + 1 == static_cast<int>(rule_.body.size())) {
          on_match(bindings_);
          unwind_match(depth);  // resume the scan at the last premise
        } else {
          frames_.push_back({});
          ++depth;
        }
      } else {
        // This visit of premise `depth` is over. A visit that never matched
        // while earlier premises hold bindings is the fail & backtrack case.
        if (!frames_[depth].matched && depth > 0)
          trace_.push(TraceEvent::fail_backtrack(rule_.id, depth + 1));
        frames_.pop_back();
        --depth;
        if (depth >= 0) unwind_match(depth);
      }
    }
  }

 private:
  struct Frame {
    size_t next_candidate = 0;
    size_t bound_count = 0;  // bindings of the current match at this premise
    bool matched = false;
  };

  /// Tries candidates for premise `depth` from the frame's cursor onward;
  /// on a match, records the new bindings and emits Bind events.
  bool advance(int depth) {
    Frame& frame = frames_[depth];
    const Fact& premise = rule_.body[depth];
    while (frame.next_candidate < snapshot_.size()) {
      const Fact& candidate = snapshot_[frame.next_candidate++];
      auto extended = unify(premise, candidate, bindings_);
      if (!extended.has_value()) continue;
      for (size_t i = bindings_.size(); i < extended->size(); ++i)
        trace_.push(TraceEvent::bind(extended->entry(i).first,
                                     extended->entry(i).second));
      frame.bound_count = extended->size() - bindings_.size();
      frame.matched = true;
      bindings_ = std::move(*extended);
      return true;
    }
    return false;
  }

  void unwind_match(int depth) {
    Frame& frame = frames_[depth];
    for (size_t i = 0; i < frame.bound_count; ++i) {
      const std::string var = bindings_.entry(bindings_.size() - 1).first;
      trace_.push(TraceEvent::unbind(var));
      bindings_.unbind(var);
    }
    frame.bound_count = 0;
  }

  const Rule& rule_;
  const std::vector<Fact>& snapshot_;
  Trace& trace_;
  Bindings bindings_;
  std::vector<Frame> frames_;
};

}  // namespace

std::pair<Closure, Trace> saturate(const KnowledgeBase& kb, const Limits& limits) {
  if (limits.max_passes <= 0 || limits.max_derived <= 0)
    throw std::invalid_argument("limits must be positive");
  for (const Rule& rule : kb.rules)
    if (rule.body.empty() || rule.heads.empty())
      throw std::invalid_argument(rule.label() + " has an empty body or head");

  Closure closure;
  for (const Fact& fact : kb.facts) closure.seed(fact);
  Trace trace;
  std::vector<bool> used(kb.rules.size() + 1, false);

  int passes = 0;
  bool derived_in_pass = true;
  while (derived_in_pass && !kb.rules.empty()) {
    if (++passes > limits.max_passes)
      throw SaturationLimitError(
          "saturation exceeded " + std::to_string(limits.max_passes) + " passes",
          std::move(closure), std::move(trace));
    derived_in_pass = false;

    for (const Rule& rule : kb.rules) {
      // Each application matches against the store as of the block start;
      // facts derived inside the block only join later blocks.
      std::vector<Fact> snapshot;
      snapshot.reserve(closure.size());
      for (const Fact& f : closure.initial()) snapshot.push_back(f);
      for (const Fact& f : closure.implied()) snapshot.push_back(f);

      trace.push(TraceEvent::use_rule(rule.id, !used[rule.id]));
      used[rule.id] = true;

      bool limit_hit = false;
      RuleApplication application(rule, snapshot, trace);
      application.enumerate([&](const Bindings& bindings) {
        if (limit_hit) return;
        for (const Fact& head : rule.heads) {
          Fact derived = substitute(head, bindings);
          if (closure.contains(derived)) {
            trace.push(TraceEvent::already_known(derived));
          } else {
            if (static_cast<int>(closure.implied().size()) >= limits.max_derived) {
              limit_hit = true;
              return;
            }
            closure.derive(derived, Derivation{rule.id, bindings});
            trace.push(TraceEvent::new_fact(derived));
            derived_in_pass = true;
          }
        }
      });
      if (limit_hit)
        throw SaturationLimitError(
            "saturation exceeded " + std::to_string(limits.max_derived) +
                " derived facts",
            std::move(closure), std::move(trace));

      trace.push(TraceEvent::finish_rule(rule.id));
    }
  }

  trace.push(TraceEvent::summary_of(closure.implied()));
  return {std::move(closure), std::move(trace)};
}

TruthValue answer_query(const Closure& closure, const Query& query,
                        Assumption assumption) {
  const Fact& fact = query.fact;
  if (assumption == Assumption::Owa) {
    bool positive = closure.contains(fact);
    bool negative = closure.contains(negate(fact));
    if (positive && negative)
      throw ContradictionError("query " + fact.sl_text() +
                                   " is contradictory in the closure",
                               fact, negate(fact));
    if (positive) return TruthValue::True;
    if (negative) return TruthValue::False;
    return TruthValue::Unknown;
  }
  Fact positive_literal = fact;
  positive_literal.polarity = true;
  bool provable = closure.contains(positive_literal);
  return provable == fact.polarity ? TruthValue::True : TruthValue::False;
}

std::vector<std::pair<Fact, Fact>> check_consistency(const Closure& closure) {
  std::vector<std::pair<Fact, Fact>> conflicts;
  auto scan = [&](const std::vector<Fact>& facts) {
    for (const Fact& fact : facts) {
      if (!fact.polarity) continue;
      Fact negation = negate(fact);
      if (closure.contains(negation)) conflicts.emplace_back(fact, negation);
    }
  };
  scan(closure.initial());
  scan(closure.implied());
  return conflicts;
}

}  // namespace deduct
