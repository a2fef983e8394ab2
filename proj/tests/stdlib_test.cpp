#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace test;

namespace {

Term app(const char* f, std::vector<Term> args) { return mk_app(term(f), args); }

// A proof of x = x that goes through funext.
Term funext_proof(const std::string& carrier, const Term& x) {
  Term C = mk_const(carrier);
  Term id = mk_lam("y", C, mk_var(0));
  Term pointwise = mk_lam("a", C, mk_app(mk_const("eq_refl", {Level(0)}), {C, mk_var(0)}));
  Term fe = mk_app(mk_const("funext", {Level(0), Level(0)}), {C, mk_lam("_", C, C), id, id, pointwise});
  Term at_x = mk_lam("f", mk_arrow(C, C), mk_app(mk_var(0), x));
  return mk_app(mk_const("f_equal", {Level(0), Level(0)}), {mk_arrow(C, C), C, at_x, id, id, fe});
}

Term refl(const std::string& carrier, const Term& x) {
  return mk_app(mk_const("eq_refl", {Level(0)}), {mk_const(carrier), x});
}

// Inhabitation of a closed relation type in normal form: equalities hold
// when both sides coincide, sigma types need both components.
bool inhabited(const Term& T) {
  std::vector<Term> args;
  Term h = spine(T, args);
  if (is_const(h, "eq") && args.size() == 3) return alpha_eq(args[1], args[2]);
  if (is_const(h, "sigT") && args.size() == 2) {
    REQUIRE(args[1]->kind == Kind::Lam);
    REQUIRE_FALSE(has_loose(args[1]->b, 0));
    return inhabited(args[0]) && inhabited(shift(args[1]->b, -1, 1));
  }
  if (is_const(h, "unit")) return true;
  if (is_const(h, "False")) return false;
  FAIL("unexpected relation type " << print_term(T));
  return false;
}

Term nat_list(const std::vector<uint64_t>& xs) {
  Term l = mk_app(mk_const("nil", {Level(0)}), mk_const("nat"));
  for (size_t i = xs.size(); i-- > 0;) l = mk_app(mk_const("cons", {Level(0)}), {mk_const("nat"), mk_nat(xs[i]), l});
  return l;
}

Term N_list(const std::vector<uint64_t>& xs) {
  Term l = mk_app(mk_const("nil", {Level(0)}), mk_const("N"));
  for (size_t i = xs.size(); i-- > 0;) l = mk_app(mk_const("cons", {Level(0)}), {mk_const("N"), mk_N(xs[i]), l});
  return l;
}

}  // namespace

TEST_SUITE("stdlib") {

TEST_CASE("prelude statements have their expected types") {
  CHECK(alpha_eq(env().at("plus_comm").type, term("forall n m : nat, eq nat (plus n m) (plus m n)")));
  Term univ = ty(mk_const("univ_Type", {Level(0)}));
  CHECK(conv(env(), univ,
             term("URCoh@{1} Type Type (fun (A B : Type) => URType A B) (id_equiv@{1} Type)")));
  CHECK(env().at("funext").origin == Origin::Axiom);
  CHECK(env().at("univalence").origin == Origin::Axiom);
  CHECK(effectiveness(env(), mk_const("to_N")).effective);
}

TEST_CASE("prelude sources are embedded and reload to the same environment") {
  CHECK(prelude_sources().size() >= 9);
  Library again = load_prelude();
  CHECK(again.env.order() == env().order());
  CHECK(again.delta.size() == lib().delta.size());
  CHECK(export_prelude().find("def plus ") != std::string::npos);
}

TEST_CASE("elaboration fills universe instances") {
  Term t = elaborate(env(), parse_term("eq nat O O"), 0);
  std::vector<Term> args;
  CHECK(spine(t, args)->levels == std::vector<Level>{Level(0)});
  CHECK_THROWS_AS(elaborate(env(), parse_term("no_such O"), 0), Error);
  CHECK_THROWS_AS(elaborate(env(), parse_term("eq nat O O"), 1), Error);
}

TEST_CASE("literals") {
  CHECK(alpha_eq(mk_N(0), mk_const("N0")));
  CHECK(alpha_eq(mk_N(6), term("Npos (xO (xI xH))")));
  CHECK(read_nat(mk_nat(9)) == 9);
  CHECK(read_N(mk_N(1000)) == 1000);
  CHECK(read_bool(mk_bool(true)));
  CHECK_THROWS_AS(read_nat(term("plus O O")), Error);
  CHECK_FALSE(try_read_N(mk_nat(3)).has_value());
  for (uint64_t n = 1; n < 5000; n += 7) REQUIRE(read_pos(mk_pos(n)) == n);
}

TEST_CASE("int16 primitives") {
  CHECK(prim_eval(PrimOp::Lsl, 1, 3) == (1 << 3));
  CHECK(prim_eval(PrimOp::Lsl, 1234, 0) == 1234);
  CHECK(prim_eval(PrimOp::Lsl, 1, 16) == 0);
  CHECK(prim_eval(PrimOp::Add16, 65535, 1) == 0);
  CHECK(prim_eval(PrimOp::Mul16, 256, 256) == 0);
  CHECK(prim_op("lsl") == PrimOp::Lsl);
  CHECK_FALSE(prim_op("plus").has_value());
}

TEST_CASE("canonical equality") {
  CanonicalEq nat = build_canonical_eq(dec_eq_instance("nat"));
  Term three = mk_nat(3);
  Term p = funext_proof("nat", three);
  REQUIRE(check(env(), {}, p, term("eq nat 3%nat 3%nat")).ok);
  CHECK_FALSE(axioms_in(env(), nf(p)).empty());
  CHECK(alpha_eq(nf(apply_can_eq(nat, three, p)), refl("nat", three)));

  CanonicalEq b = build_canonical_eq(dec_eq_instance("bool"));
  CHECK(alpha_eq(nf(apply_can_eq(b, mk_bool(true), refl("bool", mk_bool(true)))), refl("bool", mk_bool(true))));

  CanonicalEq n = build_canonical_eq(dec_eq_instance("N"));
  CHECK(alpha_eq(nf(apply_can_eq(n, mk_N(5), funext_proof("N", mk_N(5)))), refl("N", mk_N(5))));
  CHECK_THROWS_AS(dec_eq_instance("list"), Error);
}

TEST_CASE("property: section and retraction below 2^10") {
  for (uint64_t n = 0; n < 1024; ++n) {
    REQUIRE(read_nat(nf(app("of_N", {app("to_N", {mk_nat(n)})}))) == n);
    REQUIRE(read_N(nf(app("to_N", {app("of_N", {mk_N(n)})}))) == n);
  }
}

TEST_CASE("property: lsl matches host shifts on 10^4 random pairs") {
  std::mt19937 rng(2024);
  for (int k = 0; k < 10000; ++k) {
    uint16_t x = rng() & 0xffff, p = rng() % 20;
    uint32_t expected = p >= 16 ? 0 : (uint32_t{x} << p) % 65536;
    Term shifted = mk_app(mk_const("lsl"), {mk_int(x), mk_int(p)});
    REQUIRE(read_N(nf(mk_app(mk_const("int16_to_N"), shifted))) == expected);
  }
}

TEST_CASE("property: related lists have the same length and related elements") {
  Term rel = uparam_rel(env(), lib().delta, term("list nat"));
  std::vector<std::vector<uint64_t>> lists;
  std::vector<uint64_t> cur;
  std::function<void(size_t)> gen = [&](size_t left) {
    lists.push_back(cur);
    if (!left) return;
    for (uint64_t x = 0; x < 8; ++x) {
      cur.push_back(x);
      gen(left - 1);
      cur.pop_back();
    }
  };
  gen(4);
  REQUIRE(lists.size() == 1 + 8 + 64 + 512 + 4096);
  auto related = [&](const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    return inhabited(nf(mk_app(rel, {nat_list(a), N_list(b)})));
  };
  std::mt19937 rng(5);
  for (const auto& a : lists) {
    REQUIRE(related(a, a));
    const auto& other = lists[rng() % lists.size()];
    REQUIRE(related(a, other) == (a == other));
    if (!a.empty()) {
      auto changed = a;
      changed[rng() % a.size()] ^= 1 + rng() % 7;
      REQUIRE_FALSE(related(a, changed));
      REQUIRE_FALSE(related(a, std::vector<uint64_t>(a.begin(), a.end() - 1)));
    }
  }
  for (size_t i = 0; i < 73; ++i)
    for (size_t j = 0; j < 73; ++j) REQUIRE(related(lists[i], lists[j]) == (lists[i] == lists[j]));
}

TEST_CASE("property: computed prelude entries are effective") {
  // The universe and function-type witnesses are built from univalence and
  // funext themselves; every other computed entry must be axiom-free.
  const std::set<std::string> built_on_axioms = {"univ_Type", "FP_Type", "Equiv_Pi", "univ_Pi", "FP_forall"};
  std::set<std::string> stuck;
  for (const std::string& name : env().order()) {
    const Entry& e = env().at(name);
    if (e.origin != Origin::Defined) continue;
    std::vector<Level> zeros(e.level_params.size(), Level(0));
    AxiomReport r = effectiveness(env(), mk_const(name, zeros));
    REQUIRE_FALSE(r.inconclusive);
    if (!r.effective) stuck.insert(name);
  }
  CHECK(stuck == built_on_axioms);
}

}
