#include "uptrans/registry.hpp"

namespace uptrans {

namespace {

std::vector<Level> generic_levels(size_t n) {
  std::vector<Level> out;
  for (uint32_t k = 0; k < n; ++k) out.push_back(Level::param(k));
  return out;
}

[[noreturn]] void ill_typed(const std::string& what, const CheckResult& r) {
  Error e(ErrorKind::IllTyped, what + " is ill-typed: " + r.message());
  e.name = what;
  if (r.error) {
    e.subject = r.error->subject;
    e.expected = r.error->expected;
    e.actual = r.error->actual;
  }
  throw e;
}

void require(const GlobalEnv& env, const std::string& what, const Term& t, const Term& ty,
             uint64_t budget) {
  CheckResult r = check(env, {}, t, ty, budget);
  if (!r) ill_typed(what, r);
}

bool related_left(const GlobalContext& delta, const std::string& c) {
  for (auto& t : delta)
    if (t.left == c) return true;
  return false;
}

[[noreturn]] void duplicate(const std::string& a, const std::string& b) {
  throw make_error(ErrorKind::DuplicateRelation, "relation already registered for " + a + " / " + b, a);
}

void define(GlobalEnv& env, const std::string& name, const std::vector<std::string>& levels,
            Term type, std::optional<Term> body, const std::string& anchor) {
  Entry e;
  e.name = name;
  e.level_params = levels;
  e.type = std::move(type);
  e.origin = body ? Origin::Defined : Origin::Trusted;
  e.reducible = body.has_value();
  e.body = std::move(body);
  e.anchor = anchor;
  env.add(std::move(e));
}

// Arrow chain of base constants, A1 -> ... -> An -> B; returns n.
std::optional<size_t> first_order_arity(const Term& T) {
  size_t n = 0;
  Term cur = T;
  while (cur->kind == Kind::Pi) {
    if (cur->a->kind != Kind::Const || has_loose(cur->b, 0)) return std::nullopt;
    cur = shift(cur->b, -1, 0);
    ++n;
  }
  if (cur->kind != Kind::Const) return std::nullopt;
  return n;
}

void add_symmetric(GlobalEnv& env, GlobalContext& delta, const std::string& c, const std::string& c2,
                   const Term& witness, const Term& type2, size_t n, uint64_t budget) {
  if (related_left(delta, c2)) return;
  Translator tr(env, delta, budget);
  Term goal = mk_app(tr.uparam_rel(type2), {mk_const(c2), mk_const(c)});
  std::vector<std::pair<std::string, Term>> binders;
  Budget b(budget);
  Term cur = goal;
  for (size_t k = 0; k < 3 * n; ++k) {
    cur = whnf(env, cur, b);
    if (cur->kind != Kind::Pi)
      throw make_error(ErrorKind::IllTyped, "relation of " + c2 + " is not a product", c2);
    binders.emplace_back(cur->name, cur->a);
    cur = cur->b;
  }
  uint32_t top = static_cast<uint32_t>(3 * n - 1);
  Term body = witness;
  Term lhs = mk_const(c), rhs = mk_const(c2);
  for (uint32_t k = 0; k < n; ++k) {
    body = mk_app(body, {mk_var(top - (3 * k + 1)), mk_var(top - 3 * k), mk_var(top - (3 * k + 2))});
    lhs = mk_app(lhs, mk_var(top - (3 * k + 1)));
    rhs = mk_app(rhs, mk_var(top - 3 * k));
  }
  // A self-related codomain relates by equality, which has to be flipped.
  Term cod = type2;
  for (size_t k = 0; k < n; ++k) cod = shift(cod->b, -1, 0);
  if (!related_left(delta, cod->name)) {
    Budget lb(budget);
    Level l = infer_level(env, {}, cod, lb);
    body = mk_app(mk_const("eq_sym", {l}), {cod, lhs, rhs, body});
  }
  for (size_t k = binders.size(); k-- > 0;) body = mk_lam(binders[k].first, binders[k].second, body);
  require(env, "symmetric relation of " + c2, body, goal, budget);
  Term w2 = body;
  if (n > 0) {
    std::string name = "univrel_" + c2;
    define(env, name, {}, goal, body, "symmetric relation");
    w2 = mk_const(name);
  }
  delta.push_back({c2, c, w2});
}

}  // namespace

void register_type_relation(GlobalEnv& env, GlobalContext& delta, const std::string& A,
                            const std::string& B, const Term& equiv, const Term& rel, const Term& coh,
                            uint64_t budget) {
  if (related_left(delta, A) || related_left(delta, B)) duplicate(A, B);
  Term tA = mk_const(A), tB = mk_const(B);
  Budget b(budget);
  Level i, j;
  try {
    i = infer_level(env, {}, tA, b);
    j = infer_level(env, {}, tB, b);
  } catch (const Error& err) {
    throw make_error(ErrorKind::IllTyped, std::string("relating non-types: ") + err.what(), A);
  }
  if (i != j)
    throw make_error(ErrorKind::LevelMismatch, A + " and " + B + " live in different universes", A);
  require(env, "rel", rel, mk_arrow(tA, mk_arrow(tB, mk_sort(i))), budget);
  require(env, "equiv", equiv, mk_app(mk_const("Equiv", {i}), {tA, tB}), budget);
  require(env, "coh", coh, mk_app(mk_const("URCoh", {i}), {tA, tB, rel, equiv}), budget);
  std::string fwd = "univrel_" + A + "_" + B, bwd = "univrel_" + B + "_" + A;
  define(env, fwd, {}, mk_app(mk_const("URType", {i}), {tA, tB}),
         mk_app(mk_const("mkUR", {i}), {tA, tB, rel, equiv, coh}), "type relation");
  define(env, bwd, {}, mk_app(mk_const("URType", {i}), {tB, tA}),
         mk_app(mk_const("UR_sym", {i}), {tA, tB, mk_const(fwd)}), "symmetric type relation");
  delta.push_back({A, B, mk_const(fwd)});
  delta.push_back({B, A, mk_const(bwd)});
}

void register_term_relation(GlobalEnv& env, GlobalContext& delta, const std::string& c,
                            const std::string& c2, const std::optional<Term>& proof, uint64_t budget) {
  if (related_left(delta, c)) duplicate(c, c2);
  const Entry& e = env.at(c);
  env.at(c2);
  std::vector<Level> params = generic_levels(e.level_params.size());
  Term rel, type2;
  {
    Translator tr(env, delta, budget);
    try {
      rel = tr.uparam_rel(e.type);
      type2 = tr.prime(e.type);
    } catch (const Error& err) {
      if (err.kind != ErrorKind::UnrelatedConstant) throw;
      Error m(ErrorKind::MissingPrefix,
              "type of " + c + " mentions " + err.name + ", which is not related yet");
      m.name = err.name;
      throw m;
    }
  }
  require(env, c2 + " at the translated type of " + c, mk_const(c2, params), type2, budget);
  Term goal = mk_app(rel, {mk_const(c, params), mk_const(c2, params)});
  std::string wname = "univrel_" + c;
  Term witness;
  if (proof) {
    CheckResult r = check(env, {}, *proof, goal, budget);
    if (!r) ill_typed("relation " + c + " / " + c2, r);
    if ((*proof)->kind == Kind::Const && (*proof)->levels == params) {
      witness = *proof;
    } else {
      define(env, wname, e.level_params, goal, *proof, "term relation");
      witness = mk_const(wname, params);
    }
  } else {
    define(env, wname, e.level_params, goal, std::nullopt, "term relation");
    witness = mk_const(wname, params);
  }
  delta.push_back({c, c2, witness});
  if (e.level_params.empty())
    if (auto n = first_order_arity(e.type)) add_symmetric(env, delta, c, c2, witness, type2, *n, budget);
}

void register_triple(const GlobalEnv& env, GlobalContext& delta, const std::string& c,
                     const std::string& c2, const Term& witness, uint64_t budget) {
  if (related_left(delta, c)) duplicate(c, c2);
  const Entry& e = env.at(c);
  std::vector<Level> params = generic_levels(e.level_params.size());
  Term goal = mk_app(uparam_rel(env, delta, e.type), {mk_const(c, params), mk_const(c2, params)});
  require(env, "relation " + c + " / " + c2, witness, goal, budget);
  delta.push_back({c, c2, witness});
}

std::vector<Hint> hints(const GlobalContext& delta) {
  std::vector<Hint> out;
  for (auto& t : delta)
    if (t.witness->kind == Kind::Const) out.push_back({t.left, t.right, t.witness->name});
  return out;
}

Resolution resolve_witness(const GlobalEnv& env, const GlobalContext& delta, const Term& A) {
  Translator tr(env, delta);
  Resolution r;
  try {
    r.witness = tr.resolve(A, {}, &r.trace);
    r.target = tr.prime(A);
  } catch (Error& err) {
    if (err.kind == ErrorKind::UnrelatedConstant) err.kind = ErrorKind::UnresolvedConstant;
    throw;
  }
  return r;
}

Term replay_trace(const GlobalEnv& env, const GlobalContext& delta, const ResolutionTrace& trace) {
  return Translator(env, delta).replay(trace);
}

BlackBox transport_black_box(const GlobalEnv& env, const GlobalContext& delta, const Term& t,
                             const Term& A, uint64_t budget) {
  Resolution r = resolve_witness(env, delta, A);
  Budget b(budget);
  Level i = infer_level(env, {}, A, b);
  require(env, "derived relation", r.witness, mk_app(mk_const("URType", {i}), {A, r.target}), budget);
  BlackBox out;
  out.type = r.target;
  out.term = mk_app(mk_const("ur_fwd", {i}), {A, r.target, r.witness, t});
  out.relatedness = mk_app(mk_const("ur_rel_fwd", {i}), {A, r.target, r.witness, t});
  require(env, "transported term", out.term, out.type, budget);
  require(env, "relatedness", out.relatedness,
          mk_app(mk_const("ur_rel", {i}), {A, r.target, r.witness, t, out.term}), budget);
  return out;
}

WhiteBox transport_white_box(const GlobalEnv& env, const GlobalContext& delta, const Term& t,
                             uint64_t budget) {
  Budget b(budget);
  Term A = infer(env, {}, t, b);
  Translator tr(env, delta, budget);
  WhiteBox out;
  out.term = tr.prime(t);
  out.type = tr.prime(A);
  out.relatedness = tr.uparam(t);
  check_type(env, {}, out.term, out.type, b);
  Budget b2(budget);
  check_type(env, {}, out.relatedness, mk_app(tr.uparam_rel(A), {t, out.term}), b2);
  return out;
}

GoalReplacement replace_goal(const GlobalEnv& env, const GlobalContext& delta, const Term& P,
                             uint64_t budget) {
  Resolution r = resolve_witness(env, delta, P);
  Budget b(budget);
  Level i = infer_level(env, {}, P, b);
  require(env, "goal relation", r.witness, mk_app(mk_const("URType", {i}), {P, r.target}), budget);
  GoalReplacement out;
  out.goal = r.target;
  out.witness = r.witness;
  out.backward = mk_app(mk_const("e_inv", {i}),
                        {P, r.target, mk_app(mk_const("ur_equiv", {i}), {P, r.target, r.witness})});
  return out;
}

}  // namespace uptrans
