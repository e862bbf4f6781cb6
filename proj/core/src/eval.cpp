#include "deduct/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "deduct/render.hpp"
#include "parallel.hpp"

namespace deduct {

namespace {

const std::vector<std::string>& entity_pool() {
  static const std::vector<std::string> pool = {
      "Anne", "Bob",  "Charlie", "Dave", "Erin", "Fiona", "Gary",
      "Harry", "Ivy",  "Jack",    "Kate", "Liam", "Mona",  "Nina",
      "Oscar", "Paula", "Quinn",  "Ruth", "Sam",  "Tina"};
  return pool;
}

const std::vector<std::string>& predicate_pool() {
  static const std::vector<std::string> pool = {
      "Young", "Quiet",  "Furry", "Green", "Red",   "Blue",  "Kind",
      "Smart", "Rough",  "Big",   "Cold",  "Nice",  "White", "Round",
      "Happy", "Strong", "Soft",  "Tall",  "Brave", "Calm"};
  return pool;
}

std::vector<std::string> take_names(const std::vector<std::string>& pool, int count,
                                    const char* prefix) {
  std::vector<std::string> names;
  names.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (i < static_cast<int>(pool.size()))
      names.push_back(pool[i]);
    else
      names.push_back(std::string(prefix) + std::to_string(i + 1));
  }
  return names;
}

/// First k indices of a seeded Fisher-Yates shuffle of [0, n).
std::string lower(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

std::vector<int> sample_distinct(std::mt19937_64& rng, int n, int k) {
  std::vector<int> indices(n);
  for (int i = 0; i < n; ++i) indices[i] = i;
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(rng() % (n - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  return indices;
}

bool draw(std::mt19937_64& rng, double probability) {
  return (rng() % 10000) < static_cast<uint64_t>(probability * 10000.0);
}

Fact unary_fact(const std::string& predicate, const Term& arg, bool polarity) {
  Fact f;
  f.predicate = predicate;
  f.args = {arg};
  f.polarity = polarity;
  return f;
}

/// Substitution for the grounding oracle; deliberately local so the oracle
/// shares no machinery with the engine's unifier.
Fact assign_vars(const Fact& pattern, const std::vector<std::string>& vars,
                 const std::vector<const Term*>& values) {
  Fact out;
  out.predicate = pattern.predicate;
  out.polarity = pattern.polarity;
  out.args.reserve(pattern.args.size());
  for (const Term& t : pattern.args) {
    if (!t.is_variable()) {
      out.args.push_back(t);
      continue;
    }
    size_t index = std::find(vars.begin(), vars.end(), t.text()) - vars.begin();
    out.args.push_back(*values[index]);
  }
  return out;
}

}  // namespace

int OracleClosure::depth_of(const Fact& fact) const {
  auto it = depths.find(fact.sl_text());
  return it == depths.end() ? -1 : it->second;
}

Closure OracleClosure::as_closure(const KnowledgeBase& kb) const {
  Closure closure;
  for (const Fact& f : kb.facts) closure.seed(f);
  for (const Fact& f : facts)
    if (!closure.contains(f)) closure.derive(f, Derivation{});
  return closure;
}

OracleClosure oracle_closure(const KnowledgeBase& kb, long grounding_bound) {
  // Constant universe: every ground term occurring anywhere in the program.
  std::vector<Term> universe;
  auto add_constants = [&](const Fact& f) {
    for (const Term& t : f.args)
      if (!t.is_variable() && std::find(universe.begin(), universe.end(), t) == universe.end())
        universe.push_back(t);
  };
  for (const Fact& f : kb.facts) add_constants(f);
  for (const Rule& r : kb.rules) {
    for (const Fact& f : r.body) add_constants(f);
    for (const Fact& f : r.heads) add_constants(f);
  }

  struct GroundRule {
    std::vector<std::string> body_keys;
    std::vector<Fact> heads;
  };
  std::vector<GroundRule> ground_rules;

  long total_instances = 0;
  for (const Rule& rule : kb.rules) {
    std::vector<std::string> vars;
    auto collect_vars = [&](const Fact& f) {
      for (const Term& t : f.args)
        if (t.is_variable() && std::find(vars.begin(), vars.end(), t.text()) == vars.end())
          vars.push_back(t.text());
    };
    for (const Fact& f : rule.body) collect_vars(f);
    for (const Fact& f : rule.heads) collect_vars(f);

    long instances = 1;
    for (size_t v = 0; v < vars.size(); ++v) {
      instances *= static_cast<long>(universe.size());
      if (universe.empty() || instances > grounding_bound)
        throw GroundingLimitError("grounding universe too large for " + rule.label());
    }
    total_instances += instances;
    if (total_instances > grounding_bound)
      throw GroundingLimitError("grounding exceeds bound of " +
                                std::to_string(grounding_bound) + " instances");

    // Odometer over all assignments of the rule's variables.
    std::vector<size_t> odo(vars.size(), 0);
    while (true) {
      std::vector<const Term*> values(vars.size());
      for (size_t v = 0; v < vars.size(); ++v) values[v] = &universe[odo[v]];
      GroundRule g;
      for (const Fact& f : rule.body)
        g.body_keys.push_back(assign_vars(f, vars, values).sl_text());
      for (const Fact& f : rule.heads) {
        Fact head = assign_vars(f, vars, values);
        head.gloss.clear();
        g.heads.push_back(std::move(head));
      }
      ground_rules.push_back(std::move(g));

      size_t v = 0;
      for (; v < vars.size(); ++v) {
        if (++odo[v] < universe.size()) break;
        odo[v] = 0;
      }
      if (v == vars.size()) break;  // also the single pass of a ground rule
    }
  }

  OracleClosure closure;
  for (const Fact& f : kb.facts) {
    std::string key = f.sl_text();
    if (closure.depths.count(key)) continue;
    closure.depths[key] = 0;
    Fact stored = f;
    stored.gloss.clear();
    closure.facts.push_back(std::move(stored));
  }

  // Relax to fixpoint; depth is minimal proof-tree size (one application
  // plus the sum over premises).
  bool changed = true;
  while (changed) {
    changed = false;
    for (const GroundRule& g : ground_rules) {
      int total = 1;
      bool applicable = true;
      for (const std::string& key : g.body_keys) {
        auto it = closure.depths.find(key);
        if (it == closure.depths.end()) {
          applicable = false;
          break;
        }
        total += it->second;
      }
      if (!applicable) continue;
      for (const Fact& head : g.heads) {
        std::string key = head.sl_text();
        auto it = closure.depths.find(key);
        if (it == closure.depths.end()) {
          closure.depths[key] = total;
          closure.facts.push_back(head);
          changed = true;
        } else if (total < it->second) {
          it->second = total;
          changed = true;
        }
      }
    }
  }
  return closure;
}

std::vector<Fact> brute_force_closure(const KnowledgeBase& kb, long grounding_bound) {
  return oracle_closure(kb, grounding_bound).facts;
}

LogicalExample generate_puzzle(const PuzzleParams& params) {
  if (params.entity_count <= 0 || params.predicate_count <= 0 ||
      params.rule_count <= 0 || params.max_premises <= 0 ||
      params.target_hop_depth < 0)
    throw GenerationError("puzzle params must be positive (hop depth >= 0)");
  const int depth = params.target_hop_depth;
  if (params.predicate_count < depth + 1)
    throw GenerationError("need at least hop depth + 1 predicates");
  if (params.rule_count < depth)
    throw GenerationError("need at least hop depth rules");

  std::mt19937_64 rng(params.seed);
  const std::vector<std::string> entities =
      take_names(entity_pool(), params.entity_count, "E");
  const std::vector<std::string> predicates =
      take_names(predicate_pool(), params.predicate_count, "P");
  const int max_premises = std::min(params.max_premises, params.predicate_count);

  // The desired gold label is fixed up front; attempts retry until a puzzle
  // realizes it, which keeps labels uniform over seeds.
  TruthValue desired;
  if (params.assumption == Assumption::Owa) {
    uint64_t pick = rng() % 3;
    desired = pick == 0 ? TruthValue::True
                        : pick == 1 ? TruthValue::False : TruthValue::Unknown;
  } else {
    desired = rng() % 2 == 0 ? TruthValue::True : TruthValue::False;
  }

  constexpr int kMaxAttempts = 200;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    KnowledgeBase kb;
    kb.assumption = params.assumption;
    for (const std::string& p : predicates) {
      PredicateDecl decl;
      decl.name = p;
      decl.arg_names = {"x"};
      decl.gloss = "Is x " + lower(p) + "?";
      kb.predicates.push_back(std::move(decl));
    }

    // Backbone chain: fact at depth 0, single-premise rules to depth d.
    std::vector<int> chain = sample_distinct(rng, params.predicate_count, depth + 1);
    const Term subject = Term::entity(entities[rng() % entities.size()]);
    std::vector<bool> polarity(depth + 1, true);
    if (params.assumption == Assumption::Owa)
      for (int i = 0; i <= depth; ++i)
        polarity[i] = !draw(rng, params.negation_probability);

    kb.facts.push_back(unary_fact(predicates[chain[0]], subject, polarity[0]));
    const Term var = Term::variable("x");
    for (int i = 0; i < depth; ++i) {
      Rule r;
      r.body = {unary_fact(predicates[chain[i]], var, polarity[i])};
      r.heads = {unary_fact(predicates[chain[i + 1]], var, polarity[i + 1])};
      kb.rules.push_back(std::move(r));
    }

    // Noise rules over the same single variable.
    for (int i = depth; i < params.rule_count; ++i) {
      int premises = 1 + static_cast<int>(rng() % max_premises);
      std::vector<int> body_preds = sample_distinct(rng, params.predicate_count, premises);
      Rule r;
      for (int p : body_preds)
        r.body.push_back(
            unary_fact(predicates[p], var, !draw(rng, params.negation_probability)));
      int head_count = draw(rng, 0.2) ? 2 : 1;
      std::vector<int> head_preds =
          sample_distinct(rng, params.predicate_count, head_count);
      for (int p : head_preds)
        r.heads.push_back(
            unary_fact(predicates[p], var, !draw(rng, params.negation_probability)));
      kb.rules.push_back(std::move(r));
    }
    for (size_t i = 0; i < kb.rules.size(); ++i) kb.rules[i].id = static_cast<int>(i) + 1;

    // Noise facts, avoiding immediate duplicates and stated contradictions.
    for (int i = 0; i < params.entity_count; ++i) {
      Fact f = unary_fact(predicates[rng() % predicates.size()],
                          Term::entity(entities[rng() % entities.size()]),
                          !draw(rng, params.negation_probability));
      bool clashes = false;
      for (const Fact& existing : kb.facts)
        if (existing.same_literal(f) || existing.same_literal(negate(f))) {
          clashes = true;
          break;
        }
      if (!clashes) kb.facts.push_back(std::move(f));
    }

    OracleClosure oracle = oracle_closure(kb);

    // Derivable contradiction: reject the attempt.
    bool inconsistent = false;
    for (const Fact& f : oracle.facts)
      if (f.polarity && oracle.contains(negate(f))) {
        inconsistent = true;
        break;
      }
    if (inconsistent) continue;

    Fact chain_head = unary_fact(predicates[chain[depth]], subject, polarity[depth]);

    Fact query_fact;
    if (desired == TruthValue::True) {
      if (oracle.depth_of(chain_head) != depth) continue;
      query_fact = chain_head;
    } else if (desired == TruthValue::False) {
      if (oracle.depth_of(chain_head) != depth) continue;
      query_fact = negate(chain_head);
      if (params.assumption == Assumption::Owa && oracle.contains(query_fact)) continue;
    } else {
      // Unknown: a literal absent in both polarities.
      std::vector<int> pred_order =
          sample_distinct(rng, params.predicate_count, params.predicate_count);
      std::vector<int> entity_order =
          sample_distinct(rng, params.entity_count, params.entity_count);
      bool found = false;
      for (int p : pred_order) {
        for (int e : entity_order) {
          Fact candidate = unary_fact(predicates[p], Term::entity(entities[e]), true);
          if (!oracle.contains(candidate) && !oracle.contains(negate(candidate))) {
            query_fact = rng() % 2 == 0 ? candidate : negate(candidate);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) continue;
    }

    TruthValue answered =
        answer_query(oracle.as_closure(kb), Query{query_fact}, params.assumption);
    if (answered != desired) continue;

    // Glosses: plain unary sentences for facts, genre sentences for rules.
    for (Fact& f : kb.facts) f.gloss = nl_sentence(f);
    for (Rule& r : kb.rules) {
      bool simple = r.body.size() == 1 && r.heads.size() == 1 && r.body[0].polarity;
      if (simple) {
        auto genre = static_cast<RuleGenre>(rng() % 4);
        bool every = genre == RuleGenre::EveryEach ? rng() % 2 == 0 : true;
        r.gloss = genre_sentence(genre, r.body[0].predicate, r.heads[0].predicate,
                                 r.heads[0].polarity, every);
      } else {
        r.gloss = nl_sentence(r);
      }
    }
    query_fact.gloss = nl_sentence(query_fact);
    kb.query = Query{query_fact};

    LogicalExample ex;
    ex.id = "synthetic-" + std::to_string(params.seed);
    ex.source = "synthetic";
    ex.assumption = params.assumption;
    ex.gold_answer = desired;
    ex.nl_query = query_fact.gloss;
    std::string context;
    for (const Fact& f : kb.facts) context += f.gloss + " ";
    for (const Rule& r : kb.rules) context += r.gloss + " ";
    context += ex.nl_query;
    ex.nl_context = std::move(context);
    ex.sl_program = render_program(kb);
    return ex;
  }
  throw GenerationError("could not satisfy puzzle constraints for seed " +
                        std::to_string(params.seed) + " after " +
                        std::to_string(kMaxAttempts) + " attempts");
}

std::vector<LogicalExample> generate_corpus(const PuzzleParams& base, int count,
                                            int workers) {
  std::vector<LogicalExample> out(count);
  internal::run_indexed(count, workers, [&](size_t i) {
    PuzzleParams params = base;
    params.seed = base.seed + i;
    std::mt19937_64 mix(base.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
    params.target_hop_depth = static_cast<int>(mix() % (base.target_hop_depth + 1));
    int min_entities = std::min(3, base.entity_count);
    params.entity_count =
        min_entities + static_cast<int>(mix() % (base.entity_count - min_entities + 1));
    int min_rules = std::max(params.target_hop_depth, 1);
    params.rule_count =
        min_rules + static_cast<int>(mix() % (std::max(base.rule_count - min_rules, 0) + 1));
    out[i] = generate_puzzle(params);
  });
  return out;
}

double round2(double value) {
  return std::floor(value * 100.0 + 0.5) / 100.0;
}

std::string format_pct(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", round2(value));
  return buffer;
}

double score(const std::vector<TruthValue>& predictions,
             const std::vector<TruthValue>& golds) {
  if (predictions.size() != golds.size())
    throw std::invalid_argument("predictions and golds differ in length");
  if (predictions.empty()) throw std::invalid_argument("nothing to score");
  size_t matches = 0;
  for (size_t i = 0; i < predictions.size(); ++i)
    if (predictions[i] == golds[i]) ++matches;
  return round2(100.0 * static_cast<double>(matches) / predictions.size());
}

double parsing_success_rate(const std::vector<ParseReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("no parse reports");
  size_t executable = 0;
  for (const ParseReport& r : reports)
    if (r.executable) ++executable;
  return round2(100.0 * static_cast<double>(executable) / reports.size());
}

double random_baseline(int option_count, int trials, uint64_t seed) {
  if (option_count != 2 && option_count != 3)
    throw std::invalid_argument("option count must be 2 or 3");
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  std::mt19937_64 rng(seed);
  int matches = 0;
  for (int i = 0; i < trials; ++i) {
    auto gold = rng() % option_count;
    auto guess = rng() % option_count;
    if (gold == guess) ++matches;
  }
  return round2(100.0 * matches / trials);
}

std::string MetricsReport::to_json() const {
  nlohmann::ordered_json j;
  j["total"] = total;
  j["executable"] = executable;
  j["parsing_success_rate"] = parsing_rate;
  j["scored"] = scored;
  j["correct"] = correct;
  j["accuracy"] = accuracy;
  j["random_baseline_3option"] = baseline_3option;
  j["random_baseline_2option"] = baseline_2option;
  return j.dump();
}

std::string MetricsReport::to_table() const {
  std::ostringstream out;
  auto row = [&](const char* name, const std::string& value) {
    out << std::left << std::setw(26) << name << std::right << std::setw(10)
        << value << '\n';
  };
  row("total", std::to_string(total));
  row("executable", std::to_string(executable));
  row("parsing_success_rate", format_pct(parsing_rate));
  row("scored", std::to_string(scored));
  row("correct", std::to_string(correct));
  row("accuracy", format_pct(accuracy));
  row("random_baseline_3option", format_pct(baseline_3option));
  row("random_baseline_2option", format_pct(baseline_2option));
  return out.str();
}

MetricsReport evaluate_corpus(const std::vector<LogicalExample>& examples,
                              const Limits& limits, uint64_t seed, int workers) {
  struct Row {
    bool executable = false;
    bool scored = false;
    TruthValue prediction = TruthValue::Unknown;
  };
  std::vector<Row> rows(examples.size());
  std::vector<ParseReport> reports(examples.size());

  internal::run_indexed(examples.size(), workers, [&](size_t i) {
    reports[i] = validate(examples[i].sl_program);
    rows[i].executable = reports[i].executable;
    if (!rows[i].executable) return;
    try {
      KnowledgeBase kb = parse_program(examples[i].sl_program);
      kb.assumption = examples[i].assumption;
      if (!kb.query.has_value()) return;
      auto [closure, trace] = saturate(kb, limits);
      rows[i].prediction = answer_query(closure, *kb.query, kb.assumption);
      rows[i].scored = true;
    } catch (const std::exception&) {
      // unscored
    }
  });

  MetricsReport report;
  report.total = static_cast<int>(examples.size());
  std::vector<TruthValue> predictions, golds;
  for (size_t i = 0; i < examples.size(); ++i) {
    if (rows[i].executable) ++report.executable;
    if (rows[i].scored) {
      predictions.push_back(rows[i].prediction);
      golds.push_back(examples[i].gold_answer);
      if (rows[i].prediction == examples[i].gold_answer) ++report.correct;
    }
  }
  report.scored = static_cast<int>(predictions.size());
  if (!reports.empty()) report.parsing_rate = parsing_success_rate(reports);
  if (!predictions.empty()) report.accuracy = score(predictions, golds);
  report.baseline_3option = random_baseline(3, 10000, seed);
  report.baseline_2option = random_baseline(2, 10000, seed + 1);
  return report;
}

}  // namespace deduct
