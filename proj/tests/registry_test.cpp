#include <doctest.h>

#include "support.hpp"

using namespace test;

namespace {

ErrorKind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind;
  }
  return ErrorKind::Usage;
}

bool has_triple(const GlobalContext& delta, const std::string& l, const std::string& r) {
  for (auto& t : delta)
    if (t.left == l && t.right == r) return true;
  return false;
}

BlackBox black_box(const std::string& name) {
  return transport_black_box(env(), lib().delta, mk_const(name), env().at(name).type);
}

}  // namespace

TEST_SUITE("registry") {

TEST_CASE("the prelude registers the unary-binary and machine-integer relations") {
  CHECK(has_triple(lib().delta, "nat", "N"));
  CHECK(has_triple(lib().delta, "N", "nat"));
  CHECK(has_triple(lib().delta, "int16", "ZwB16"));
  CHECK(has_triple(lib().delta, "plus", "plus_N"));
  CHECK(has_triple(lib().delta, "mult", "mult_N"));
  CHECK(has_triple(lib().delta, "lsl", "ZwB_lsl"));
}

TEST_CASE("registering a type relation twice is rejected") {
  Library copy = lib();
  CHECK(error_kind([&] {
          register_type_relation(copy.env, copy.delta, "nat", "N", mk_const("equiv_nat_N"), mk_const("R_nat_N"),
                                 mk_const("coh_nat_N"));
        }) == ErrorKind::DuplicateRelation);
}

TEST_CASE("a term relation with the wrong partner is ill typed") {
  Library copy = lib();
  CHECK(error_kind([&] {
          register_term_relation(copy.env, copy.delta, "pred", "succ_N", mk_const("univrel_S"));
        }) == ErrorKind::IllTyped);
  CHECK_FALSE(has_triple(copy.delta, "pred", "succ_N"));
}

TEST_CASE("resolution") {
  Resolution fn = resolve_witness(env(), lib().delta, term("nat -> nat -> nat"));
  CHECK(alpha_eq(fn.target, term("N -> N -> N")));
  CHECK(check(env(), {}, fn.witness, mk_app(mk_const("URType", {Level(0)}), {term("nat -> nat -> nat"), fn.target}))
            .ok);
  Resolution stmt = resolve_witness(env(), lib().delta, env().at("plus_comm").type);
  CHECK(alpha_eq(stmt.target, term("forall n m : N, eq N (plus_N n m) (plus_N m n)")));
  Resolution self = resolve_witness(env(), {}, mk_const("nat"));
  CHECK(alpha_eq(self.target, mk_const("nat")));
  CHECK(alpha_eq(self.witness, mk_const("FP_nat")));
  CHECK(self.trace.rule == "self");
}

TEST_CASE("black-box transport") {
  BlackBox zero = transport_black_box(env(), lib().delta, mk_const("O"), mk_const("nat"));
  CHECK(alpha_eq(nf(zero.term), mk_const("N0")));

  BlackBox comm = black_box("plus_comm");
  CHECK(alpha_eq(comm.type, term("forall n m : N, eq N (plus_N n m) (plus_N m n)")));
  CHECK(check(env(), {}, comm.term, comm.type).ok);

  BlackBox pow = black_box("pow_prop");
  // Unary literals prime to successor chains, so the binary statement is met up to conversion.
  CHECK(conv(env(), pow.type, term("forall n : N, eq N (pow_N 3%N (plus_N n 1%N)) (mult_N 3%N (pow_N 3%N n))")));
  CHECK(check(env(), {}, pow.term, pow.type).ok);

  BlackBox sq = black_box("square");
  CHECK(conv(env(), sq.term, term("fun x : N => to_N (square (of_N x))")));
}

TEST_CASE("white-box transport") {
  WhiteBox sq = transport_white_box(env(), lib().delta, *env().at("square").body);
  CHECK(alpha_eq(sq.term, term("fun x : N => mult_N x x")));
  CHECK(alpha_eq(sq.type, term("N -> N")));
  CHECK(effectiveness(env(), sq.term).effective);
  WhiteBox id = transport_white_box(env(), lib().delta, term("fun x : nat => x"));
  CHECK(alpha_eq(id.term, term("fun x : N => x")));
}

TEST_CASE("white-box transport of diff fails where black-box succeeds") {
  CHECK_THROWS_AS(transport_white_box(env(), lib().delta, *env().at("diff").body), Error);
  BlackBox diff = black_box("diff");
  CHECK(check(env(), {}, diff.term, diff.type).ok);
}

TEST_CASE("the higher-order transport is stuck on funext") {
  BlackBox g = black_box("g");
  AxiomReport r = effectiveness(env(), g.term);
  CHECK_FALSE(r.effective);
  CHECK(r.stuck_axioms == std::vector<std::string>{"funext"});
}

TEST_CASE("property: black-box transports agree with unary evaluation below 64") {
  // Black-box multiplication runs through unary products; the acceptance
  // run covers every pair, here a grid keeps the suite fast.
  for (auto [f, stride] : {std::pair{"plus", 1}, {"minus", 1}, {"mult", 3}}) {
    CAPTURE(f);
    Term bb = black_box(f).term;
    for (uint64_t n = 0; n < 64; n += stride)
      for (uint64_t m = 0; m < 64; m += stride) {
        uint64_t unary = read_nat(nf(mk_app(mk_const(f), {mk_nat(n), mk_nat(m)})));
        REQUIRE(read_N(nf(mk_app(bb, {mk_N(n), mk_N(m)}))) == unary);
      }
  }
  Term sq = black_box("square").term;
  for (uint64_t n = 0; n < 64; ++n) REQUIRE(read_N(nf(mk_app(sq, mk_N(n)))) == n * n);
  Term pred = black_box("pred").term;
  for (uint64_t n = 0; n < 64; ++n) REQUIRE(read_N(nf(mk_app(pred, mk_N(n)))) == (n ? n - 1 : 0));
  // Exponentiation is kept to results a unary run can reach.
  Term pow = black_box("pow").term;
  for (uint64_t n = 0; n < 8; ++n)
    for (uint64_t m = 0; m < 5; ++m) {
      uint64_t unary = read_nat(nf(mk_app(mk_const("pow"), {mk_nat(n), mk_nat(m)})));
      REQUIRE(read_N(nf(mk_app(pow, {mk_N(n), mk_N(m)}))) == unary);
    }
}

TEST_CASE("property: white-box and black-box square agree on binary literals") {
  Term wb = transport_white_box(env(), lib().delta, *env().at("square").body).term;
  Term bb = black_box("square").term;
  for (uint64_t n = 0; n < 64; ++n) REQUIRE(alpha_eq(nf(mk_app(wb, mk_N(n))), nf(mk_app(bb, mk_N(n)))));
}

TEST_CASE("property: resolution is deterministic and its trace replays to the witness") {
  for (const char* s : {"nat", "nat -> nat -> nat", "forall n m : nat, eq nat (plus n m) (plus m n)",
                        "list nat", "sigT nat (fun n : nat => eq nat n n)", "Type", "int16 -> int16",
                        "forall (A : Type), A -> A"}) {
    CAPTURE(s);
    Term A = term(s);
    Resolution r1 = resolve_witness(env(), lib().delta, A);
    Resolution r2 = resolve_witness(env(), lib().delta, A);
    CHECK(alpha_eq(r1.witness, r2.witness));
    CHECK(r1.trace == r2.trace);
    CHECK(alpha_eq(replay_trace(env(), lib().delta, r1.trace), r1.witness));
  }
}

TEST_CASE("property: goal replacement is sound") {
  for (const char* s : {"ge (poly 50%nat) 1000%nat", "ge (evalAt poly' 50%nat) 1000%nat",
                        "ge (sequence 2%nat 5%nat) 1000%nat"}) {
    CAPTURE(s);
    const Library& l = replayed();
    Term P = elaborate(l.env, parse_term(s), 0);
    GoalReplacement g = replace_goal(l.env, l.delta, P);
    Term refl = term("eq_refl bool true");
    REQUIRE(check(l.env, {}, refl, g.goal).ok);
    CHECK(check(l.env, {}, mk_app(g.backward, refl), P).ok);
  }
}

}
