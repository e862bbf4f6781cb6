#pragma once

#include <string>

namespace deduct {

/// Argument of a fact: a variable, an entity, a decimal number or a boolean.
/// Terms are immutable values; construct through the factory functions.
class Term {
 public:
  enum class Kind { Variable, Entity, Number, Boolean };

  Term() : kind_(Kind::Entity) {}

  static Term variable(std::string name);
  static Term entity(std::string name);
  static Term number(const std::string& decimal);  // normalizes the literal
  static Term boolean(bool value);

  Kind kind() const { return kind_; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_ground() const { return kind_ != Kind::Variable; }

  /// Variable or entity name, or the canonical decimal text of a number.
  const std::string& text() const { return text_; }
  bool bool_value() const { return bool_; }

  /// Surface form: `$x`, `Anne`, `'a name'`, `12.5`, `True`.
  /// Entities are quoted only when they are not identifier-shaped.
  std::string to_string() const;

  bool operator==(const Term& other) const = default;

 private:
  Kind kind_;
  std::string text_;
  bool bool_ = false;
};

/// Exact-value decimal canonicalization: "007.50" -> "7.5", "+3." -> "3".
std::string normalize_decimal(const std::string& literal);

/// True if `s` is usable unquoted: [A-Za-z_][A-Za-z0-9_]* and not a
/// reserved word of the surface syntax (True/False/bool).
bool is_bare_identifier(const std::string& s);

}  // namespace deduct
