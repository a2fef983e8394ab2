#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uptrans/errors.hpp"
#include "uptrans/term.hpp"

namespace uptrans {

enum class TransportMode { WhiteBox, BlackBox };

struct Decl {
  enum class Kind { Def, Axiom, Trusted, Primitive, Self, RelateType, RelateTerm, Transport, Goal };

  Kind kind = Kind::Def;
  std::string name;                      // declared name; left constant for relate/self
  std::string other;                     // right constant, or transport source
  std::vector<std::string> level_params;
  Term type;                             // def/axiom/trusted/primitive/goal
  std::optional<Term> body;              // def, self with explicit witness
  Term equiv, rel, coh;                  // relate type
  Term proof;                            // relate term
  TransportMode mode = TransportMode::BlackBox;
  size_t line = 0;
};

// Parses a declaration file. Throws Error{ParseError} with line/column.
std::vector<Decl> parse_module(std::string_view text);
// Parses a closed term; `level_params` names the universe variables in scope.
Term parse_term(std::string_view text, const std::vector<std::string>& level_params = {});

struct PrintOptions {
  std::vector<std::string> names;              // names of the free variables, innermost last
  const std::vector<std::string>* level_names = nullptr;
  bool literals = true;                        // fold numerals into n%nat / n%N
};

std::string print_term(const Term& t, const PrintOptions& opts = {});
std::string print_decl(const Decl& d);
std::string print_module(const std::vector<Decl>& decls);

// Error message with the attached terms printed.
std::string describe(const Error& e);

}  // namespace uptrans
