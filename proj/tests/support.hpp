#pragma once

#include <string>
#include <vector>

#include "uptrans/driver.hpp"
#include "uptrans/eval.hpp"
#include "uptrans/kernel.hpp"
#include "uptrans/literals.hpp"
#include "uptrans/registry.hpp"
#include "uptrans/stdlib.hpp"
#include "uptrans/syntax.hpp"
#include "uptrans/translate.hpp"

namespace test {

using namespace uptrans;

inline const Library& lib() { return prelude(); }
inline const GlobalEnv& env() { return prelude().env; }

// The prelude after the embedded corpus of transports and goals.
inline const Library& replayed() {
  static const Library lib = [] {
    Library l = prelude();
    process(l, Command::Replay, parse_module(corpus_source()));
    return l;
  }();
  return lib;
}

inline Term term(const std::string& s) { return elaborate(env(), parse_term(s), 0); }

inline Term nf(const Term& t, uint64_t budget = kDefaultBudget) {
  Budget b(budget);
  return normal_form(env(), t, b);
}

inline Term ty(const Term& t) { return infer(env(), {}, t); }

inline GlobalContext delta_without(const std::vector<std::string>& names) {
  GlobalContext out;
  for (const GlobalTriple& t : lib().delta) {
    bool drop = false;
    for (auto& n : names) drop = drop || t.left == n || t.right == n;
    if (!drop) out.push_back(t);
  }
  return out;
}

}  // namespace test
