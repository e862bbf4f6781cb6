#include <doctest.h>

#include <stdexcept>

#include "deduct/term.hpp"

using namespace deduct;

TEST_CASE("term factories and surface forms") {
  CHECK(Term::variable("x").to_string() == "$x");
  CHECK(Term::entity("Anne").to_string() == "Anne");
  CHECK(Term::boolean(true).to_string() == "True");
  CHECK(Term::boolean(false).to_string() == "False");
  CHECK(Term::number("12.5").to_string() == "12.5");

  CHECK(Term::variable("x").is_variable());
  CHECK_FALSE(Term::entity("Anne").is_variable());
  CHECK_THROWS_AS(Term::variable(""), std::invalid_argument);
  CHECK_THROWS_AS(Term::entity(""), std::invalid_argument);
}

TEST_CASE("entities quote only when not identifier-shaped") {
  CHECK(Term::entity("Charlie").to_string() == "Charlie");
  CHECK(Term::entity("choo choo").to_string() == "'choo choo'");
  // an entity that happens to be named like a keyword must stay an entity
  CHECK(Term::entity("True").to_string() == "'True'");
  CHECK(Term::entity("123").to_string() == "'123'");
}

TEST_CASE("decimal normalization is exact-value") {
  CHECK(normalize_decimal("007.50") == "7.5");
  CHECK(normalize_decimal("+3.") == "3");
  CHECK(normalize_decimal("-0.0") == "0");
  CHECK(normalize_decimal(".5") == "0.5");
  CHECK(normalize_decimal("-2.25") == "-2.25");
  CHECK(normalize_decimal("10") == "10");
  CHECK_THROWS_AS(normalize_decimal("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(normalize_decimal("abc"), std::invalid_argument);

  CHECK(Term::number("3.0") == Term::number("3"));
  CHECK_FALSE(Term::number("3.1") == Term::number("3"));
}

TEST_CASE("term equality distinguishes kinds") {
  CHECK_FALSE(Term::entity("x") == Term::variable("x"));
  CHECK_FALSE(Term::entity("3") == Term::number("3"));
  CHECK(Term::boolean(true) == Term::boolean(true));
  CHECK_FALSE(Term::boolean(true) == Term::boolean(false));
}
