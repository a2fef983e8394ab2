#include <doctest.h>

#include "support.hpp"

using namespace test;

namespace {

uint64_t poly_oracle(uint64_t n) { return 12 * n + 51 * n * n * n * n - n * n * n * n * n; }

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("iota on the zero constructor picks the zero branch") {
  Budget b;
  Term t = term("nat_rect (fun _ : nat => bool) true (fun (_ : nat) (_ : bool) => false) O");
  CHECK(alpha_eq(whnf(env(), t, b), mk_const("true")));
  Term s = term("nat_rect (fun _ : nat => bool) true (fun (_ : nat) (_ : bool) => false) (S O)");
  CHECK(alpha_eq(whnf(env(), s, b), mk_const("false")));
}

TEST_CASE("whnf stops at a constructor head") {
  Budget b;
  Term w = whnf(env(), term("plus 2%nat 3%nat"), b);
  CHECK(is_const(head_of(w), "S"));
  CHECK(read_nat(nf(w)) == 2 + 3);
}

TEST_CASE("whnf folds primitives") {
  Budget b;
  Term w = whnf(env(), term("lsl 1%int16 3%int16"), b);
  REQUIRE(w->kind == Kind::Int);
  CHECK(w->index == (1u << 3));
  CHECK(read_int16(whnf(env(), term("add16 65535%int16 1%int16"), b)) == 0);
}

TEST_CASE("whnf_core leaves definitions folded") {
  Budget b;
  Term t = term("plus 2%nat 3%nat");
  CHECK(alpha_eq(whnf_core(env(), t, b), t));
  CHECK(unfold_head(env(), t, b).has_value());
  CHECK_FALSE(unfold_head(env(), mk_const("O"), b).has_value());
  CHECK_FALSE(unfold_head(env(), mk_const("funext"), b).has_value());
}

TEST_CASE("normal forms of arithmetic") {
  CHECK(read_nat(nf(term("square 3%nat"))) == 3 * 3);
  CHECK(read_N(nf(term("plus_N 5%N 3%N"))) == 0b101 + 0b11);
  CHECK(read_N(nf(term("mult_N 12%N 13%N"))) == 12 * 13);
  CHECK(read_N(nf(term("pow_N 3%N 7%N"))) == 2187);
  CHECK(read_N(nf(term("minus_N 5%N 9%N"))) == 0);
  CHECK(read_nat(nf(term("minus 9%nat 5%nat"))) == 4);
  CHECK(read_bool(nf(term("leb_N 6%N 6%N"))));
  CHECK_FALSE(read_bool(nf(term("leb_N 7%N 6%N"))));
}

TEST_CASE("normalize reports a budget hit instead of throwing") {
  NormResult r = normalize(env(), term("pow 10%nat 10%nat"), 1000);
  CHECK(r.budget_hit);
  NormResult ok = normalize(env(), term("pow 2%nat 3%nat"));
  CHECK_FALSE(ok.budget_hit);
  CHECK(read_nat(ok.normal_form) == 8);
  CHECK(ok.steps > 0);
}

TEST_CASE("normalization goes under binders") {
  Term t = nf(term("fun m : nat => plus (S O) m"));
  CHECK(alpha_eq(t, term("fun m : nat => S m")));
}

TEST_CASE("effectiveness") {
  AxiomReport o = effectiveness(env(), mk_const("O"));
  CHECK(o.effective);
  CHECK(o.stuck_axioms.empty());
  AxiomReport f = effectiveness(env(), mk_const("funext"));
  CHECK_FALSE(f.effective);
  CHECK(f.stuck_axioms == std::vector<std::string>{"funext"});
  AxiomReport big = effectiveness(env(), term("pow 10%nat 10%nat"), 1000);
  CHECK(big.inconclusive);
}

TEST_CASE("call-by-value evaluation builds unary values in full") {
  NormResult r = normalize_cbv(env(), term("poly 3%nat"));
  REQUIRE_FALSE(r.budget_hit);
  CHECK(read_nat(r.normal_form) == poly_oracle(3));
  NormResult deep = normalize_cbv(env(), term("poly 50%nat"));
  CHECK(deep.budget_hit);
}

TEST_CASE("axioms_in lists each axiom once") {
  Term f = mk_const("funext", {Level(0), Level(0)});
  Term t = mk_app(mk_app(f, mk_const("univalence", {Level(0)})), mk_app(f, mk_const("O")));
  CHECK(axioms_in(env(), t) == std::vector<std::string>{"funext", "univalence"});
  CHECK(axioms_in(env(), term("plus 1%nat")).empty());
}

TEST_CASE("property: normalizing a normal form takes no steps") {
  for (const char* s : {"square 3%nat", "plus_N 5%N 3%N", "fun m : nat => plus (S O) m", "to_N 9%nat",
                        "leb 3%nat 2%nat", "sequence 1%nat 2%nat"}) {
    CAPTURE(s);
    NormResult once = normalize(env(), term(s));
    REQUIRE_FALSE(once.budget_hit);
    NormResult twice = normalize(env(), once.normal_form);
    CHECK(twice.steps == 0);
    CHECK(alpha_eq(twice.normal_form, once.normal_form));
  }
}

TEST_CASE("property: a term converts with its normal form") {
  for (const CorpusEntry& c : corpus_entries(env())) {
    CAPTURE(c.name);
    NormResult r = normalize(env(), c.term);
    if (r.budget_hit) continue;
    CHECK(conv(env(), c.term, r.normal_form));
  }
}

TEST_CASE("property: a subterm never takes more steps than its parent") {
  std::vector<std::pair<const char*, const char*>> pairs = {
      {"plus (square 3%nat) 2%nat", "square 3%nat"},
      {"mult (plus 2%nat 2%nat) (plus 1%nat 3%nat)", "plus 1%nat 3%nat"},
      {"to_N (pow 2%nat 5%nat)", "pow 2%nat 5%nat"},
      {"plus_N (mult_N 7%N 9%N) 1%N", "mult_N 7%N 9%N"},
  };
  for (auto& [parent, child] : pairs) {
    CAPTURE(parent);
    CHECK(normalize(env(), term(child)).steps <= normalize(env(), term(parent)).steps);
  }
}

TEST_CASE("property: unary and binary addition agree below 64") {
  for (uint64_t n = 0; n < 64; ++n)
    for (uint64_t m = 0; m < 64; ++m) {
      Term u = nf(mk_app(mk_const("plus"), {mk_nat(n), mk_nat(m)}));
      Term b = nf(mk_app(mk_const("plus_N"), {mk_N(n), mk_N(m)}));
      REQUIRE(read_nat(u) == n + m);
      REQUIRE(read_N(b) == n + m);
      REQUIRE(alpha_eq(nf(mk_app(mk_const("of_N"), b)), u));
      REQUIRE(alpha_eq(nf(mk_app(mk_const("to_N"), u)), b));
    }
}

}
