#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uptrans/env.hpp"
#include "uptrans/term.hpp"

namespace uptrans {

inline constexpr uint64_t kDefaultBudget = 10'000'000;
inline constexpr uint32_t kDefaultMaxDepth = 200'000;

// Step counter shared by every reduction in one job. Exhaustion (of steps or
// of recursion depth) raises BudgetExceeded.
struct Budget {
  explicit Budget(uint64_t limit = kDefaultBudget) : limit(limit) {}
  void tick();
  void enter();
  void leave() { --depth; }

  uint64_t limit;
  uint64_t used = 0;
  uint32_t depth = 0;
  uint32_t max_depth = kDefaultMaxDepth;
};

struct NormResult {
  Term normal_form;
  uint64_t steps = 0;
  bool budget_hit = false;
};

struct AxiomReport {
  bool effective = false;
  bool inconclusive = false;  // budget ran out before a normal form
  std::vector<std::string> stuck_axioms;
  uint64_t steps = 0;
};

// Weak-head normal form: beta, iota, delta for reducible constants, and
// primitive folding.
Term whnf(const GlobalEnv& env, const Term& t, Budget& budget);
// Like whnf but leaves defined constants folded; beta, iota and primitives only.
Term whnf_core(const GlobalEnv& env, const Term& t, Budget& budget);
// Replaces a reducible head constant by its body; nullopt when the head is
// not a reducible constant.
std::optional<Term> unfold_head(const GlobalEnv& env, const Term& t, Budget& budget);
// Full normal form; throws BudgetExceeded.
Term normal_form(const GlobalEnv& env, const Term& t, Budget& budget);
// Full normal form with the budget outcome reported instead of thrown.
NormResult normalize(const GlobalEnv& env, const Term& t, uint64_t budget = kDefaultBudget);
// Strong call-by-value normal form: arguments are evaluated before they are
// substituted, the way a proof assistant's `compute` proceeds. Unary
// numerals are built in full, so large ones exhaust the budget.
Term normal_form_cbv(const GlobalEnv& env, const Term& t, Budget& budget);
NormResult normalize_cbv(const GlobalEnv& env, const Term& t, uint64_t budget = kDefaultBudget);
// Normalizes and lists the axiom constants left in the result.
AxiomReport effectiveness(const GlobalEnv& env, const Term& t, uint64_t budget = kDefaultBudget);

// Runs f on a thread with a large stack and rethrows whatever it threw.
// Deep terms recurse deeply; the default 8 MiB is not enough.
void with_large_stack(const std::function<void()>& f, size_t stack_bytes = size_t{1} << 30);

// Axiom constants occurring in t, sorted and unique.
std::vector<std::string> axioms_in(const GlobalEnv& env, const Term& t);

// Iota table.
struct CtorRule {
  std::string name;
  size_t params;   // leading type parameters of the constructor
  size_t fields;
  size_t minor;    // position of the branch among the eliminator's arguments
  std::vector<size_t> recursive;  // fields that get a recursive call
};

struct ElimRule {
  std::string name;
  size_t major;    // position of the scrutinee
  std::vector<CtorRule> ctors;
};

const ElimRule* elim_rule(const std::string& name);
const std::vector<ElimRule>& elim_rules();
// True for names that are constructors of a built-in inductive.
bool is_constructor(const std::string& name);

}  // namespace uptrans
