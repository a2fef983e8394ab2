#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "uptrans/env.hpp"
#include "uptrans/kernel.hpp"
#include "uptrans/literals.hpp"
#include "uptrans/syntax.hpp"

namespace uptrans {

// Environment plus global context, the state declarations act on.
struct Library {
  GlobalEnv env;
  GlobalContext delta;
};

struct SourceFile {
  std::string name;
  std::string_view text;
};

const std::vector<SourceFile>& prelude_sources();
std::string_view corpus_source();

// Fills omitted universe instances with zeros when the declaration has no
// level parameters; with parameters an omitted instance is an error. Also
// rejects unknown constants.
Term elaborate(const GlobalEnv& env, const Term& t, size_t level_params);

// Processes def/axiom/trusted/primitive/self/relate declarations. Transport
// and goal declarations are driven by the cli.
void apply_decl(Library& lib, const Decl& d, uint64_t budget = kDefaultBudget);

// Builds the prelude from the embedded sources; PreludeIllTyped on failure.
Library load_prelude();
// Loaded once and shared read-only.
const Library& prelude();
std::string export_prelude();

struct DecEqInstance {
  Term carrier;
  Term decide;  // forall x y, sum (eq x y) (not (eq x y))
};

struct CanonicalEq {
  Term carrier;
  Term can_eq;  // forall x y, eq x y -> eq x y
  DecEqInstance dec;
};

DecEqInstance dec_eq_instance(const std::string& carrier);  // nat, bool, positive, N
CanonicalEq build_canonical_eq(const DecEqInstance& dec);
// can_eq x x p, ready to normalize.
Term apply_can_eq(const CanonicalEq& ce, const Term& x, const Term& p);

struct CorpusEntry {
  std::string name;
  Term term;
  Term type;
};

// Terms the abstraction theorem is checked on, over the full prelude.
std::vector<CorpusEntry> corpus_entries(const GlobalEnv& env);

}  // namespace uptrans
