#include <doctest.h>

#include "gen.hpp"
#include "support.hpp"

using namespace test;

TEST_SUITE("kernel") {

TEST_CASE("sorts live one level up") {
  GlobalEnv empty;
  CHECK(alpha_eq(infer(empty, {}, mk_type(0)), mk_type(1)));
  CHECK(alpha_eq(infer(empty, {}, mk_type(3)), mk_type(4)));
}

TEST_CASE("constants and constructors get their declared types") {
  CHECK(alpha_eq(ty(mk_const("plus")), term("nat -> nat -> nat")));
  CHECK(alpha_eq(ty(term("S O")), mk_const("nat")));
  CHECK(alpha_eq(ty(mk_int(7)), mk_const("int16")));
}

TEST_CASE("check accepts and rejects") {
  CHECK(check(env(), {}, mk_const("O"), mk_const("nat")).ok);
  CheckResult r = check(env(), {}, mk_const("O"), mk_const("N"));
  REQUIRE_FALSE(r.ok);
  CHECK(r.error->kind == ErrorKind::ConversionFailure);
  const Entry& diff = env().at("diff");
  CHECK(check(env(), {}, *diff.body, diff.type).ok);
}

TEST_CASE("inference errors carry their kind") {
  auto kind_of = [](const Term& t) {
    try {
      infer(env(), {}, t);
    } catch (const Error& e) {
      return e.kind;
    }
    return ErrorKind::Usage;
  };
  CHECK(kind_of(mk_var(0)) == ErrorKind::UnboundVariable);
  CHECK(kind_of(mk_const("no_such_thing")) == ErrorKind::UnknownConstant);
  CHECK(kind_of(mk_app(mk_const("O"), mk_const("O"))) == ErrorKind::NotAFunction);
  CHECK(kind_of(mk_app(mk_const("S"), mk_const("true"))) == ErrorKind::TypeMismatch);
  CHECK(kind_of(mk_lam("x", mk_const("O"), mk_var(0))) == ErrorKind::NotAType);
}

TEST_CASE("conversion") {
  CHECK(conv(env(), term("fun m : nat => plus O m"), term("fun m : nat => m")));
  CHECK_FALSE(conv(env(), mk_const("nat"), mk_const("N")));
  CHECK(conv(env(), term("plus 2%nat 3%nat"), mk_nat(5)));
  CHECK_FALSE(conv(env(), term("plus 2%nat 3%nat"), mk_nat(6)));
  CHECK(conv(env(), term("plus_N 5%N 3%N"), mk_N(8)));
}

TEST_CASE("conversion runs out of budget") {
  Budget b(50);
  CHECK_THROWS_AS(conv(env(), term("pow 3%nat 5%nat"), mk_nat(243), b), Error);
}

TEST_CASE("substitution and shifting") {
  CHECK(alpha_eq(subst(mk_var(0), 0, mk_const("O")), mk_const("O")));
  CHECK(alpha_eq(shift(mk_type(0), 5, 0), mk_type(0)));
  CHECK(alpha_eq(subst(mk_app(mk_var(0), mk_var(1)), 0, mk_const("S")), mk_app(mk_const("S"), mk_var(0))));
}

TEST_CASE("property: substituting into a lifted term gives it back") {
  TermGen gen(7);
  for (int k = 0; k < 2000; ++k) {
    Term t = gen.term(4, 0, 3);
    Term u = gen.term(3, 0, 2);
    REQUIRE(alpha_eq(subst(shift(t, 1, 0), 0, u), t));
  }
}

TEST_CASE("global context well-formedness") {
  CHECK(wf_global_context(env(), {}).ok);
  const GlobalTriple* nat_N = nullptr;
  const GlobalTriple* plus = nullptr;
  for (auto& t : lib().delta) {
    if (t.left == "nat" && t.right == "N") nat_N = &t;
    if (t.left == "plus") plus = &t;
  }
  REQUIRE(nat_N);
  REQUIRE(plus);
  CHECK(print_term(nat_N->witness) == "univrel_nat_N");
  CHECK(wf_global_context(env(), {*nat_N}).ok);
  CHECK(wf_global_context(env(), {*nat_N, *plus}).ok);
  CheckResult r = wf_global_context(env(), {*plus});
  REQUIRE_FALSE(r.ok);
  CHECK(r.error->kind == ErrorKind::IllFormedTelescope);
  CHECK(wf_global_context(env(), lib().delta).ok);
}

TEST_CASE("property: single reduction steps preserve types on the corpus") {
  std::vector<std::pair<std::string, Term>> cases;
  for (const CorpusEntry& c : corpus_entries(env())) cases.push_back({c.name, c.term});
  for (const char* s : {"plus 2%nat 3%nat", "square 3%nat", "minus 4%nat 1%nat", "leb 2%nat 3%nat",
                        "poly 2%nat", "sequence 1%nat 2%nat", "plus_N 5%N 3%N", "pow_N 2%N 4%N",
                        "to_N 6%nat", "of_N 6%N", "diff O", "lsl 1%int16 3%int16"})
    cases.push_back({s, term(s)});
  for (auto& [name, start] : cases) {
    CAPTURE(name);
    Term A = ty(start);
    Budget b;
    Term t = start;
    for (int step = 0; step < 6; ++step) {
      std::optional<Term> next = unfold_head(env(), t, b);
      if (!next) break;
      t = whnf_core(env(), *next, b);
      REQUIRE(conv(env(), infer(env(), {}, t), A));
    }
  }
}

TEST_CASE("property: conversion is an equivalence on corpus terms") {
  std::vector<CorpusEntry> corpus = corpus_entries(env());
  for (size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(corpus[i].name);
    CHECK(conv(env(), corpus[i].term, corpus[i].term));
    for (size_t j = 0; j < corpus.size(); j += 5)
      CHECK(conv(env(), corpus[i].type, corpus[j].type) == conv(env(), corpus[j].type, corpus[i].type));
  }
  Term a = term("plus 2%nat 3%nat"), b = term("mult 1%nat 5%nat"), c = mk_nat(5);
  CHECK(conv(env(), a, b));
  CHECK(conv(env(), b, c));
  CHECK(conv(env(), a, c));
}

TEST_CASE("property: inference is deterministic") {
  for (const CorpusEntry& c : corpus_entries(env())) {
    CAPTURE(c.name);
    CHECK(alpha_eq(infer(env(), {}, c.term), infer(env(), {}, c.term)));
  }
}

}
