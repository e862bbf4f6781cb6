#include "deduct/logic.hpp"

#include <cctype>
#include <stdexcept>

namespace deduct {

std::string to_string(Assumption a) {
  return a == Assumption::Owa ? "owa" : "cwa";
}

std::string to_string(TruthValue v) {
  switch (v) {
    case TruthValue::True: return "True";
    case TruthValue::False: return "False";
    case TruthValue::Unknown: return "Unknown";
  }
  return {};
}

std::optional<Assumption> assumption_from_string(const std::string& s) {
  if (s == "owa" || s == "OWA") return Assumption::Owa;
  if (s == "cwa" || s == "CWA") return Assumption::Cwa;
  return std::nullopt;
}

std::optional<TruthValue> truth_from_string(const std::string& s) {
  std::string lower;
  lower.reserve(s.size());
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "true") return TruthValue::True;
  if (lower == "false") return TruthValue::False;
  if (lower == "unknown") return TruthValue::Unknown;
  return std::nullopt;
}

bool Fact::is_ground() const {
  for (const Term& t : args)
    if (t.is_variable()) return false;
  return true;
}

std::string Fact::sl_text() const {
  std::string out = predicate + "(";
  for (const Term& t : args) {
    out += t.to_string();
    out += ", ";
  }
  out += polarity ? "True)" : "False)";
  return out;
}

std::string Fact::line_text() const {
  return gloss.empty() ? sl_text() : sl_text() + " ::: " + gloss;
}

bool Fact::same_literal(const Fact& other) const {
  return predicate == other.predicate && args == other.args &&
         polarity == other.polarity;
}

std::string Rule::sl_text() const {
  std::string out;
  for (size_t i = 0; i < body.size(); ++i) {
    if (i) out += " & ";
    out += body[i].sl_text();
  }
  out += " >>> ";
  for (size_t i = 0; i < heads.size(); ++i) {
    if (i) out += " & ";
    out += heads[i].sl_text();
  }
  return out;
}

std::string Rule::line_text() const {
  return gloss.empty() ? sl_text() : sl_text() + " ::: " + gloss;
}

std::string PredicateDecl::signature() const {
  std::string out = name + "(";
  for (const std::string& a : arg_names) out += "$" + a + ", ";
  out += "bool)";
  return out;
}

std::string PredicateDecl::line_text() const {
  return gloss.empty() ? signature() : signature() + " ::: " + gloss;
}

const PredicateDecl* KnowledgeBase::find_predicate(const std::string& name) const {
  for (const PredicateDecl& d : predicates)
    if (d.name == name) return &d;
  return nullptr;
}

bool Bindings::contains(const std::string& var) const {
  return lookup(var) != nullptr;
}

const Term* Bindings::lookup(const std::string& var) const {
  for (const auto& [name, value] : entries_)
    if (name == var) return &value;
  return nullptr;
}

void Bindings::bind(const std::string& var, Term value) {
  if (contains(var))
    throw std::logic_error("variable already bound: $" + var);
  if (value.is_variable())
    throw std::logic_error("binding value must be ground: $" + var);
  entries_.emplace_back(var, std::move(value));
}

void Bindings::unbind(const std::string& var) {
  if (entries_.empty() || entries_.back().first != var)
    throw std::logic_error("unbind out of LIFO order: $" + var);
  entries_.pop_back();
}

Fact substitute(const Fact& pattern, const Bindings& bindings) {
  Fact out = pattern;
  for (Term& t : out.args) {
    if (!t.is_variable()) continue;
    if (const Term* v = bindings.lookup(t.text())) t = *v;
  }
  return out;
}

std::optional<Bindings> unify(const Fact& pattern, const Fact& ground,
                              const Bindings& bindings) {
  if (pattern.predicate != ground.predicate) return std::nullopt;
  if (pattern.args.size() != ground.args.size()) return std::nullopt;
  if (pattern.polarity != ground.polarity) return std::nullopt;
  Bindings extended = bindings;
  for (size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& p = pattern.args[i];
    const Term& g = ground.args[i];
    if (p.is_variable()) {
      if (const Term* bound = extended.lookup(p.text())) {
        if (!(*bound == g)) return std::nullopt;
      } else {
        extended.bind(p.text(), g);
      }
    } else if (!(p == g)) {
      return std::nullopt;
    }
  }
  return extended;
}

Fact negate(const Fact& fact) {
  Fact out = fact;
  out.polarity = !out.polarity;
  return out;
}

}  // namespace deduct
