#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uptrans/env.hpp"
#include "uptrans/kernel.hpp"
#include "uptrans/translate.hpp"

namespace uptrans {

// Registered term relation, keyed on the head constant.
struct Hint {
  std::string head;
  std::string target;
  std::string witness;
};

struct Resolution {
  Term target;    // the type on the right
  Term witness;   // inhabits URType A target
  ResolutionTrace trace;
};

struct BlackBox {
  Term term;         // forward map of the witness applied to the source
  Term type;
  Term relatedness;  // ur_rel witness source term
};

struct WhiteBox {
  Term term;
  Term type;
  Term relatedness;
};

struct GoalReplacement {
  Term goal;      // the replacement goal
  Term backward;  // maps proofs of the replacement to proofs of the original
  Term witness;
};

// Relates two types. Defines univrel_A_B and the symmetric univrel_B_A and
// appends both triples.
void register_type_relation(GlobalEnv& env, GlobalContext& delta, const std::string& A,
                            const std::string& B, const Term& equiv, const Term& rel, const Term& coh,
                            uint64_t budget = kDefaultBudget);

// Relates two constants. Without a proof the witness is a trusted constant
// at the computed relation type. First-order relations also get the
// symmetric triple.
void register_term_relation(GlobalEnv& env, GlobalContext& delta, const std::string& c,
                            const std::string& c2, const std::optional<Term>& proof,
                            uint64_t budget = kDefaultBudget);

// Appends a triple after checking its witness against the relation of the
// left constant's type.
void register_triple(const GlobalEnv& env, GlobalContext& delta, const std::string& c,
                     const std::string& c2, const Term& witness, uint64_t budget = kDefaultBudget);

std::vector<Hint> hints(const GlobalContext& delta);

Resolution resolve_witness(const GlobalEnv& env, const GlobalContext& delta, const Term& A);
Term replay_trace(const GlobalEnv& env, const GlobalContext& delta, const ResolutionTrace& trace);

BlackBox transport_black_box(const GlobalEnv& env, const GlobalContext& delta, const Term& t,
                             const Term& A, uint64_t budget = kDefaultBudget);
WhiteBox transport_white_box(const GlobalEnv& env, const GlobalContext& delta, const Term& t,
                             uint64_t budget = kDefaultBudget);
GoalReplacement replace_goal(const GlobalEnv& env, const GlobalContext& delta, const Term& P,
                             uint64_t budget = kDefaultBudget);

}  // namespace uptrans
