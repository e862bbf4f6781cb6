#include "deduct/term.hpp"

#include <cctype>
#include <stdexcept>

namespace deduct {

Term Term::variable(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  Term t;
  t.kind_ = Kind::Variable;
  t.text_ = std::move(name);
  return t;
}

Term Term::entity(std::string name) {
  if (name.empty()) throw std::invalid_argument("entity name must be nonempty");
  Term t;
  t.kind_ = Kind::Entity;
  t.text_ = std::move(name);
  return t;
}

Term Term::number(const std::string& decimal) {
  Term t;
  t.kind_ = Kind::Number;
  t.text_ = normalize_decimal(decimal);
  return t;
}

Term Term::boolean(bool value) {
  Term t;
  t.kind_ = Kind::Boolean;
  t.bool_ = value;
  return t;
}

std::string Term::to_string() const {
  switch (kind_) {
    case Kind::Variable:
      return "$" + text_;
    case Kind::Entity:
      return is_bare_identifier(text_) ? text_ : "'" + text_ + "'";
    case Kind::Number:
      return text_;
    case Kind::Boolean:
      return bool_ ? "True" : "False";
  }
  return {};
}

std::string normalize_decimal(const std::string& literal) {
  std::string s = literal;
  bool negative = false;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits = s.substr(i);
  std::string intpart, fracpart;
  auto dot = digits.find('.');
  if (dot == std::string::npos) {
    intpart = digits;
  } else {
    intpart = digits.substr(0, dot);
    fracpart = digits.substr(dot + 1);
  }
  for (char c : intpart)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("not a decimal literal: " + literal);
  for (char c : fracpart)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("not a decimal literal: " + literal);
  if (intpart.empty() && fracpart.empty())
    throw std::invalid_argument("not a decimal literal: " + literal);

  size_t nz = intpart.find_first_not_of('0');
  intpart = nz == std::string::npos ? "0" : intpart.substr(nz);
  size_t last = fracpart.find_last_not_of('0');
  fracpart = last == std::string::npos ? "" : fracpart.substr(0, last + 1);

  std::string out = intpart;
  if (!fracpart.empty()) out += "." + fracpart;
  if (negative && out != "0") out = "-" + out;
  return out;
}

bool is_bare_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return s != "True" && s != "False" && s != "bool";
}

}  // namespace deduct
