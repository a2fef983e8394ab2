#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uptrans/env.hpp"
#include "uptrans/errors.hpp"
#include "uptrans/eval.hpp"
#include "uptrans/term.hpp"

namespace uptrans {

// Binder types, innermost last. Entry k lives in the context of entries
// 0..k-1.
using LocalCtx = std::vector<Term>;

// One related pair of constants with the witness of their relation. The
// witness may mention the level parameters of `left`; they are instantiated
// at each use.
struct GlobalTriple {
  std::string left;
  std::string right;
  Term witness;
};

using GlobalContext = std::vector<GlobalTriple>;

struct CheckResult {
  bool ok = true;
  std::optional<Error> error;

  static CheckResult success() { return {}; }
  static CheckResult failure(Error e) { return {false, std::move(e)}; }
  explicit operator bool() const { return ok; }
  std::string message() const { return error ? error->what() : std::string(); }
};

Term infer(const GlobalEnv& env, const LocalCtx& ctx, const Term& t, Budget& budget);
Term infer(const GlobalEnv& env, const LocalCtx& ctx, const Term& t);

// Level i of a type whose type reduces to Type_i; NotAType otherwise.
Level infer_level(const GlobalEnv& env, const LocalCtx& ctx, const Term& ty, Budget& budget);

// Throws TypeMismatch / ConversionFailure or any inference error.
void check_type(const GlobalEnv& env, const LocalCtx& ctx, const Term& t, const Term& ty,
                Budget& budget);
CheckResult check(const GlobalEnv& env, const LocalCtx& ctx, const Term& t, const Term& ty,
                  uint64_t budget = kDefaultBudget);

// Convertibility: true iff both sides have alpha-equal normal forms.
bool conv(const GlobalEnv& env, const Term& t, const Term& u, Budget& budget);
bool conv(const GlobalEnv& env, const Term& t, const Term& u, uint64_t budget = kDefaultBudget);

// Telescope check: the n-th witness must inhabit the relation computed from
// the first n-1 triples. Defined with the translations.
CheckResult wf_global_context(const GlobalEnv& env, const GlobalContext& delta,
                              uint64_t budget = kDefaultBudget);

}  // namespace uptrans
