#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "deduct/corpus.hpp"
#include "deduct/dataset.hpp"
#include "deduct/engine.hpp"
#include "deduct/parser.hpp"

namespace deduct {

/// Knobs for one synthetic puzzle. Counts are positive; the hop depth is the
/// exact length of the shortest derivation of the query subject.
struct PuzzleParams {
  int entity_count = 4;
  int predicate_count = 8;
  int rule_count = 6;
  int max_premises = 2;
  int target_hop_depth = 2;
  Assumption assumption = Assumption::Owa;
  double negation_probability = 0.15;
  uint64_t seed = 0;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GroundingLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force grounding oracle result. Facts are the initial facts in
/// declaration order followed by derived facts in first-derivation order;
/// depths map each fact to the number of rule applications in its shortest
/// derivation (0 for initial facts).
struct OracleClosure {
  std::vector<Fact> facts;
  std::map<std::string, int> depths;  // keyed by Fact::sl_text()

  bool contains(const Fact& fact) const { return depths.count(fact.sl_text()) > 0; }
  /// -1 when the fact is not in the closure.
  int depth_of(const Fact& fact) const;

  /// View as an engine Closure (initial = kb facts) so answer_query can run
  /// over the oracle route.
  Closure as_closure(const KnowledgeBase& kb) const;
};

/// Grounds every rule over all constants occurring in the knowledge base and
/// iterates set union to fixpoint. Shares no matching machinery with
/// saturate; this is the independent oracle. Throws GroundingLimitError when
/// the number of ground rule instances exceeds `grounding_bound`.
OracleClosure oracle_closure(const KnowledgeBase& kb,
                             long grounding_bound = 1000000);

/// The oracle fact set alone.
std::vector<Fact> brute_force_closure(const KnowledgeBase& kb,
                                      long grounding_bound = 1000000);

/// Generates one consistent puzzle whose gold answer is computed by the
/// oracle. When the gold is True (and False under OWA: the negated subject),
/// the query subject's shortest derivation is exactly target_hop_depth.
/// Deterministic per seed. Throws GenerationError when the constraints
/// cannot be met after bounded retries.
LogicalExample generate_puzzle(const PuzzleParams& params);

/// Generates `count` puzzles with seeds base.seed, base.seed+1, ... The base
/// params are treated as maxima: per-puzzle hop depth is drawn from
/// [0, target_hop_depth], entity and rule counts from ranges below the caps.
/// Output order is by index regardless of `workers`.
std::vector<LogicalExample> generate_corpus(const PuzzleParams& base, int count,
                                            int workers = 1);

/// 100 * matches / total, rounded half-up to 2 decimals. Lengths must match
/// and be nonzero.
double score(const std::vector<TruthValue>& predictions,
             const std::vector<TruthValue>& golds);

/// 100 * executable / total, rounded half-up to 2 decimals. Input nonempty.
double parsing_success_rate(const std::vector<ParseReport>& reports);

/// Empirical accuracy of uniform guessing against uniform gold labels over
/// `trials` draws. option_count must be 2 or 3.
double random_baseline(int option_count, int trials, uint64_t seed);

/// Half-up rounding to 2 decimals, and its fixed-point text form.
double round2(double value);
std::string format_pct(double value);

struct MetricsReport {
  int total = 0;
  int executable = 0;
  double parsing_rate = 0.0;
  int scored = 0;
  int correct = 0;
  double accuracy = 0.0;
  double baseline_3option = 0.0;
  double baseline_2option = 0.0;

  std::string to_json() const;
  std::string to_table() const;
};

/// Solver-as-predictor evaluation over a corpus: parsing rate over all
/// examples, answer accuracy against gold over the executable ones, and the
/// random baselines for both option counts.
MetricsReport evaluate_corpus(const std::vector<LogicalExample>& examples,
                              const Limits& limits, uint64_t seed,
                              int workers = 1);

}  // namespace deduct
