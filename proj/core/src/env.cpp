#include "uptrans/env.hpp"

#include "uptrans/errors.hpp"

namespace uptrans {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::UnknownConstant: return "UnknownConstant";
    case ErrorKind::NotAFunction: return "NotAFunction";
    case ErrorKind::NotAType: return "NotAType";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::ConversionFailure: return "ConversionFailure";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::IllFormedTelescope: return "IllFormedTelescope";
    case ErrorKind::UnrelatedConstant: return "UnrelatedConstant";
    case ErrorKind::UnresolvedConstant: return "UnresolvedConstant";
    case ErrorKind::DuplicateRelation: return "DuplicateRelation";
    case ErrorKind::IllTyped: return "IllTyped";
    case ErrorKind::MissingPrefix: return "MissingPrefix";
    case ErrorKind::NotALiteral: return "NotALiteral";
    case ErrorKind::PreludeIllTyped: return "PreludeIllTyped";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Usage: return "Usage";
  }
  return "Error";
}

const char* origin_name(Origin o) {
  switch (o) {
    case Origin::Defined: return "defined";
    case Origin::Axiom: return "axiom";
    case Origin::Trusted: return "trusted-prelude";
    case Origin::Primitive: return "primitive";
  }
  return "?";
}

void GlobalEnv::add(Entry e) {
  if (entries_.count(e.name))
    throw make_error(ErrorKind::IllTyped, "constant already declared: " + e.name, e.name);
  e.height = order_.size();
  order_.push_back(e.name);
  auto name = e.name;
  entries_.emplace(std::move(name), std::move(e));
}

const Entry* GlobalEnv::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

const Entry& GlobalEnv::at(const std::string& name) const {
  if (auto* e = find(name)) return *e;
  throw make_error(ErrorKind::UnknownConstant, "unknown constant " + name, name);
}

void GlobalEnv::set_self_relation(const std::string& c, const std::string& witness) {
  self_rel_[c] = witness;
}

const std::string* GlobalEnv::self_relation(const std::string& c) const {
  auto it = self_rel_.find(c);
  return it == self_rel_.end() ? nullptr : &it->second;
}

namespace {

void check_instance(const Entry& e, const Term& c) {
  if (c->levels.size() != e.level_params.size()) {
    auto err = make_error(ErrorKind::LevelMismatch,
                          c->name + " expects " + std::to_string(e.level_params.size()) +
                              " universe level(s), got " + std::to_string(c->levels.size()),
                          c->name);
    err.subject = c;
    throw err;
  }
}

}  // namespace

Term GlobalEnv::type_of(const Term& c) const {
  const Entry& e = at(c->name);
  check_instance(e, c);
  if (e.level_params.empty()) return e.type;
  return subst_levels(e.type, c->levels);
}

std::optional<Term> GlobalEnv::body_of(const Term& c) const {
  const Entry& e = at(c->name);
  if (!e.body) return std::nullopt;
  check_instance(e, c);
  if (e.level_params.empty()) return e.body;
  return subst_levels(*e.body, c->levels);
}

}  // namespace uptrans
