#pragma once

#include <map>
#include <string>
#include <vector>

#include "uptrans/env.hpp"
#include "uptrans/kernel.hpp"
#include "uptrans/term.hpp"

namespace uptrans {

// How a witness was assembled, one node per syntax node of the goal. The
// goal is stored in the source context of the node.
struct ResolutionTrace {
  std::string rule;               // FP_Type, FP_forall, FP_Sigma, FP_eq, FP_list, self, hint,
                                  // unfold, var, lam, app, sort, pi
  Term goal;
  std::vector<Level> levels;      // levels picked for the rule
  std::string constant;           // constant used by the rule, if any
  std::vector<ResolutionTrace> children;

  bool operator==(const ResolutionTrace& o) const;
};

struct AbstractionReport {
  std::string name;
  CheckResult left_check, right_check, relation_check;
  Term derived_prime;
  Term derived_witness;

  bool ok() const { return left_check.ok && right_check.ok && relation_check.ok; }
};

// The three translations over a fixed environment and global context. The
// translated context of a source context x1..xn has the binders
// x1, x1', x1_R, ..., xn, xn', xn_R.
class Translator {
 public:
  Translator(const GlobalEnv& env, const GlobalContext& delta, uint64_t budget = kDefaultBudget);

  // Homogeneous parametricity (relations on the universe are arbitrary).
  Term param(const Term& t, const LocalCtx& ctx = {});
  // Constant replacement along the global context.
  Term prime(const Term& t);
  // Univalent parametricity; Sort and Pi give explicit triples.
  Term uparam(const Term& t, const LocalCtx& ctx = {});
  // Relation of a type: the first projection of its univalent translation.
  Term uparam_rel(const Term& A, const LocalCtx& ctx = {});
  // Like uparam on a type, but Sort and Pi go through FP_Type / FP_forall.
  Term resolve(const Term& A, const LocalCtx& ctx, ResolutionTrace* trace);
  // Rebuilds a witness from its trace.
  Term replay(const ResolutionTrace& trace);

  LocalCtx translate_ctx(const LocalCtx& ctx);

  // Left and right copies of a source term inside the translated context.
  static Term left_in(const Term& t, uint32_t depth = 0);
  Term prime_in(const Term& t, uint32_t depth = 0);

  // True when no constant related in the context is reachable from c.
  bool self_relatable(const std::string& c);
  const GlobalTriple* triple(const std::string& left) const;

 private:
  enum class Mode { Param, Univalent, Resolve };

  Term go(Mode mode, const Term& t, LocalCtx& ctx, ResolutionTrace* trace);
  Term constant(Mode mode, const Term& c, ResolutionTrace* trace);
  Level level(const LocalCtx& ctx, const Term& ty);

  const GlobalEnv& env_;
  const GlobalContext& delta_;
  std::map<std::string, size_t> by_left_;
  std::map<std::string, bool> tainted_;
  Budget budget_;
};

Term param_translate(const GlobalEnv& env, const GlobalContext& delta, const Term& t,
                     const LocalCtx& ctx = {});
Term prime_translate(const GlobalEnv& env, const GlobalContext& delta, const Term& t);
Term uparam_translate(const GlobalEnv& env, const GlobalContext& delta, const Term& t,
                      const LocalCtx& ctx = {});
Term uparam_rel(const GlobalEnv& env, const GlobalContext& delta, const Term& A,
                const LocalCtx& ctx = {});
LocalCtx translate_local_ctx(const GlobalEnv& env, const GlobalContext& delta, const LocalCtx& ctx);

// Checks t : A, prime(t) : prime(A) and uparam(t) : uparam_rel(A) t prime(t).
// Never throws; failures land in the report.
AbstractionReport abstraction_check(const GlobalEnv& env, const GlobalContext& delta,
                                    const std::string& name, const Term& t, const Term& A,
                                    uint64_t budget = kDefaultBudget);

}  // namespace uptrans
