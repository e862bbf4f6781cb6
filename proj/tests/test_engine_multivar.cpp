#include <doctest.h>

#include <random>

#include "deduct/engine.hpp"
#include "deduct/eval.hpp"
#include "deduct/parser.hpp"
#include "deduct/render.hpp"
#include "test_support.hpp"

using namespace deduct;
using namespace deduct::testing;

namespace {

/// Ad-hoc generator for binary-predicate programs with multi-variable
/// rules; exercises join ordering and repeated-variable matching beyond the
/// unary puzzles the corpus generator produces.
KnowledgeBase random_binary_kb(uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> entities = {"a", "b", "c", "d"};
  const std::vector<std::string> unary = {"P", "Q"};
  const std::vector<std::string> binary = {"R", "S", "T"};

  KnowledgeBase kb;
  for (const std::string& name : unary) {
    PredicateDecl d;
    d.name = name;
    d.arg_names = {"x"};
    kb.predicates.push_back(d);
  }
  for (const std::string& name : binary) {
    PredicateDecl d;
    d.name = name;
    d.arg_names = {"x", "y"};
    kb.predicates.push_back(d);
  }

  auto entity = [&] { return Term::entity(entities[rng() % entities.size()]); };
  auto polarity = [&] { return rng() % 5 != 0; };

  int unary_facts = 2 + rng() % 3;
  for (int i = 0; i < unary_facts; ++i) {
    Fact f;
    f.predicate = unary[rng() % unary.size()];
    f.args = {entity()};
    f.polarity = polarity();
    kb.facts.push_back(f);
  }
  int binary_facts = 3 + rng() % 4;
  for (int i = 0; i < binary_facts; ++i) {
    Fact f;
    f.predicate = binary[rng() % binary.size()];
    f.args = {entity(), entity()};
    f.polarity = polarity();
    kb.facts.push_back(f);
  }

  // Rule shapes: transitivity-like joins, projections to unary predicates,
  // swaps with repeated variables.
  const Term x = Term::variable("x");
  const Term y = Term::variable("y");
  const Term z = Term::variable("z");
  auto binary_fact = [&](const std::string& p, Term a, Term b, bool pol) {
    Fact f;
    f.predicate = p;
    f.args = {std::move(a), std::move(b)};
    f.polarity = pol;
    return f;
  };
  auto unary_fact = [&](const std::string& p, Term a, bool pol) {
    Fact f;
    f.predicate = p;
    f.args = {std::move(a)};
    f.polarity = pol;
    return f;
  };

  int rule_count = 2 + rng() % 3;
  for (int i = 0; i < rule_count; ++i) {
    Rule r;
    switch (rng() % 4) {
      case 0:  // join: R(x,y) & R(y,z) -> R(x,z)
        r.body = {binary_fact(binary[rng() % 3], x, y, true),
                  binary_fact(binary[rng() % 3], y, z, true)};
        r.heads = {binary_fact(binary[rng() % 3], x, z, true)};
        break;
      case 1:  // projection: R(x,y) -> P(x)
        r.body = {binary_fact(binary[rng() % 3], x, y, polarity())};
        r.heads = {unary_fact(unary[rng() % 2], x, polarity())};
        break;
      case 2:  // swap: R(x,y) -> S(y,x)
        r.body = {binary_fact(binary[rng() % 3], x, y, true)};
        r.heads = {binary_fact(binary[rng() % 3], y, x, true)};
        break;
      default:  // diagonal with repeated variable: R(x,x) -> Q(x)
        r.body = {binary_fact(binary[rng() % 3], x, x, true)};
        r.heads = {unary_fact(unary[rng() % 2], x, true)};
        break;
    }
    r.id = static_cast<int>(kb.rules.size()) + 1;
    kb.rules.push_back(std::move(r));
  }
  return kb;
}

}  // namespace

TEST_CASE("engine matches the oracle on multi-variable join rules") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    KnowledgeBase kb = random_binary_kb(seed);
    CAPTURE(seed);
    auto [closure, trace] = saturate(kb);
    std::vector<Fact> engine_facts = closure.initial();
    engine_facts.insert(engine_facts.end(), closure.implied().begin(),
                        closure.implied().end());
    REQUIRE(fact_keys(engine_facts) == fact_keys(brute_force_closure(kb)));
    REQUIRE(check_bind_nesting(trace) == "");
    REQUIRE(check_trace_closure_agreement(trace, closure.implied()) == "");
  }
}

TEST_CASE("transitive closure is fully derived") {
  KnowledgeBase kb = parse_program(
      "Predicates:\nEdge($x, $y, bool)\nPath($x, $y, bool)\n"
      "Facts:\nEdge(a, b, True)\nEdge(b, c, True)\nEdge(c, d, True)\n"
      "Rules:\n"
      "Edge($x, $y, True) >>> Path($x, $y, True)\n"
      "Edge($x, $y, True) & Path($y, $z, True) >>> Path($x, $z, True)\n");
  auto [closure, trace] = saturate(kb);
  auto keys = fact_keys(closure.implied());
  CHECK(keys.count("Path(a, b, True)") == 1);
  CHECK(keys.count("Path(a, c, True)") == 1);
  CHECK(keys.count("Path(a, d, True)") == 1);
  CHECK(keys.count("Path(b, d, True)") == 1);
  CHECK(keys.size() == 6);
  CHECK(fact_keys(brute_force_closure(kb)).size() == 9);  // 3 edges + 6 paths

  // two variables bound by the first premise, the third by the second
  bool saw_two_binds_then_one = false;
  for (size_t i = 2; i < trace.size(); ++i)
    if (trace[i - 2].kind == TraceEvent::Kind::Bind &&
        trace[i - 1].kind == TraceEvent::Kind::Bind &&
        trace[i].kind == TraceEvent::Kind::Bind)
      saw_two_binds_then_one = true;
  CHECK(saw_two_binds_then_one);
}

TEST_CASE("repeated variables in premises only match diagonal facts") {
  KnowledgeBase kb = parse_program(
      "Predicates:\nR($x, $y, bool)\nQ($x, bool)\n"
      "Facts:\nR(a, b, True)\nR(c, c, True)\n"
      "Rules:\nR($x, $x, True) >>> Q($x, True)\n");
  auto [closure, trace] = saturate(kb);
  REQUIRE(closure.implied().size() == 1);
  CHECK(closure.implied()[0].sl_text() == "Q(c, True)");
}

TEST_CASE("bind values render with quotes only when needed") {
  KnowledgeBase kb = parse_program(
      "Predicates:\nNamed($x, bool)\nSeen($x, bool)\n"
      "Facts:\nNamed('choo choo', True)\n"
      "Rules:\nNamed($x, True) >>> Seen($x, True)\n");
  auto [closure, trace] = saturate(kb);
  std::string text = render_turn2(kb, trace, closure);
  CHECK(text.find("Bind $x to 'choo choo'") != std::string::npos);
  CHECK(text.find("Obtain a new implied fact: Seen('choo choo', True)") !=
        std::string::npos);
}
