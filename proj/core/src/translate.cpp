#include "uptrans/translate.hpp"

namespace uptrans {

namespace {

struct Push {
  Push(LocalCtx& ctx, Term t) : ctx(ctx) { ctx.push_back(std::move(t)); }
  ~Push() { ctx.pop_back(); }
  LocalCtx& ctx;
};

// Free variable k >= cutoff goes to cutoff + 3 (k - cutoff) + offset.
Term spread(const Term& t, uint32_t cutoff, uint32_t offset) {
  if (t->loose <= cutoff) return t;
  switch (t->kind) {
    case Kind::Var: return mk_var(cutoff + 3 * (t->index - cutoff) + offset);
    case Kind::App: return mk_app(spread(t->a, cutoff, offset), spread(t->b, cutoff, offset));
    case Kind::Lam:
      return mk_lam(t->name, spread(t->a, cutoff, offset), spread(t->b, cutoff + 1, offset));
    case Kind::Pi:
      return mk_pi(t->name, spread(t->a, cutoff, offset), spread(t->b, cutoff + 1, offset));
    default: return t;
  }
}

Term ur_rel_app(Level i, Term A, Term B, Term w) {
  return mk_app(mk_const("ur_rel", {i}), {std::move(A), std::move(B), std::move(w)});
}

[[noreturn]] void unrelated(const std::string& name, const Term& t) {
  Error e(ErrorKind::UnrelatedConstant, "constant " + name + " is not related in the global context");
  e.name = name;
  e.subject = t;
  throw e;
}

std::string primed(const std::string& n) { return n + "'"; }
std::string related(const std::string& n) { return n + "_R"; }

}  // namespace

bool ResolutionTrace::operator==(const ResolutionTrace& o) const {
  return rule == o.rule && alpha_eq(goal, o.goal) && levels == o.levels && constant == o.constant &&
         children == o.children;
}

Translator::Translator(const GlobalEnv& env, const GlobalContext& delta, uint64_t budget)
    : env_(env), delta_(delta), budget_(budget) {
  for (size_t i = 0; i < delta.size(); ++i) by_left_[delta[i].left] = i;
}

const GlobalTriple* Translator::triple(const std::string& left) const {
  auto it = by_left_.find(left);
  return it == by_left_.end() ? nullptr : &delta_[it->second];
}

bool Translator::self_relatable(const std::string& c) {
  if (by_left_.count(c)) return false;
  if (auto it = tainted_.find(c); it != tainted_.end()) return !it->second;
  tainted_[c] = false;
  const Entry* e = env_.find(c);
  bool bad = false;
  auto visit = [&](const Term& k) {
    if (!bad && !self_relatable(k->name)) bad = true;
  };
  if (e) {
    for_each_const(e->type, visit);
    if (e->body) for_each_const(*e->body, visit);
  }
  tainted_[c] = bad;
  return !bad;
}

Level Translator::level(const LocalCtx& ctx, const Term& ty) {
  return infer_level(env_, ctx, ty, budget_);
}

Term Translator::left_in(const Term& t, uint32_t depth) { return spread(t, depth, 2); }

Term Translator::prime_in(const Term& t, uint32_t depth) { return spread(prime(t), depth, 1); }

Term Translator::prime(const Term& t) {
  switch (t->kind) {
    case Kind::Const: {
      if (auto* tr = triple(t->name)) return mk_const(tr->right, t->levels);
      if (!self_relatable(t->name)) unrelated(t->name, t);
      return t;
    }
    case Kind::Int:
      if (triple("int16")) unrelated("int16", t);
      return t;
    case Kind::App: return mk_app(prime(t->a), prime(t->b));
    case Kind::Lam: return mk_lam(t->name, prime(t->a), prime(t->b));
    case Kind::Pi: return mk_pi(t->name, prime(t->a), prime(t->b));
    default: return t;
  }
}

Term Translator::constant(Mode mode, const Term& c, ResolutionTrace* trace) {
  if (trace) trace->constant = c->name;
  if (auto* tr = triple(c->name)) {
    if (trace) trace->rule = "hint";
    return subst_levels(tr->witness, c->levels);
  }
  if (!self_relatable(c->name)) unrelated(c->name, c);
  if (const std::string* w = env_.self_relation(c->name)) {
    if (trace) {
      trace->rule = c->name == "sigT" ? "FP_Sigma" : c->name == "eq" ? "FP_eq"
                    : c->name == "list" ? "FP_list" : "self";
      trace->constant = *w;
    }
    return mk_const(*w, c->levels);
  }
  const Entry* e = env_.find(c->name);
  if (e && e->reducible && e->body) {
    LocalCtx empty;
    ResolutionTrace* child = nullptr;
    if (trace) {
      trace->rule = "unfold";
      trace->children.push_back({});
      child = &trace->children.back();
      child->goal = *env_.body_of(c);
    }
    return go(mode, *env_.body_of(c), empty, child);
  }
  unrelated(c->name, c);
}

Term Translator::go(Mode mode, const Term& t, LocalCtx& ctx, ResolutionTrace* trace) {
  if (trace) trace->goal = t;
  auto child = [&](const Term& goal) -> ResolutionTrace* {
    if (!trace) return nullptr;
    trace->children.push_back({});
    trace->children.back().goal = goal;
    return &trace->children.back();
  };
  switch (t->kind) {
    case Kind::Var:
      if (trace) trace->rule = "var";
      return mk_var(3 * t->index);
    case Kind::Int: {
      if (triple("int16")) unrelated("int16", t);
      if (trace) trace->rule = "self";
      return mk_app(mk_const("eq_refl", {Level(0)}), {mk_const("int16"), t});
    }
    case Kind::Const: return constant(mode, t, trace);
    case Kind::Sort: {
      Term s = t;
      if (mode == Mode::Param) {
        if (trace) trace->rule = "psort";
        return mk_lam("A", s, mk_lam("B", s, mk_pi("_", mk_var(1), mk_pi("_", mk_var(1), s))));
      }
      if (trace) trace->levels = {t->level};
      if (mode == Mode::Resolve) {
        if (trace) trace->rule = "FP_Type";
        return mk_const("FP_Type", {t->level});
      }
      if (trace) trace->rule = "sort";
      Level up = t->level.succ();
      Term rel = mk_lam("A", s, mk_lam("B", s, mk_app(mk_const("URType", {t->level}), {mk_var(1), mk_var(0)})));
      return mk_app(mk_const("mkUR", {up}),
                    {s, s, rel, mk_app(mk_const("id_equiv", {up}), {s}), mk_const("univ_Type", {t->level})});
    }
    case Kind::App: {
      if (trace) trace->rule = "app";
      Term f = go(mode, t->a, ctx, child(t->a));
      Term x = go(mode, t->b, ctx, child(t->b));
      return mk_app(f, {left_in(t->b), prime_in(t->b), x});
    }
    case Kind::Lam: {
      const std::string& n = t->name;
      Term LA = left_in(t->a), PA = prime_in(t->a);
      Term WA = go(mode, t->a, ctx, child(t->a));
      Term rel;
      if (mode == Mode::Param) {
        if (trace) trace->rule = "plam";
        rel = mk_app(shift(WA, 2), {mk_var(1), mk_var(0)});
      } else {
        Level i = level(ctx, t->a);
        if (trace) {
          trace->rule = "lam";
          trace->levels = {i};
        }
        rel = mk_app(ur_rel_app(i, shift(LA, 2), shift(PA, 2), shift(WA, 2)), {mk_var(1), mk_var(0)});
      }
      Push p(ctx, t->a);
      Term body = go(mode, t->b, ctx, child(t->b));
      return mk_lam(n, LA, mk_lam(primed(n), shift(PA, 1), mk_lam(related(n), rel, body)));
    }
    case Kind::Pi: {
      const std::string& n = t->name == "_" ? std::string("x") : t->name;
      Term LA = left_in(t->a), PA = prime_in(t->a);
      Term WA = go(mode, t->a, ctx, child(t->a));
      if (mode == Mode::Param) {
        if (trace) trace->rule = "ppi";
        Term WB;
        {
          Push p(ctx, t->a);
          WB = go(mode, t->b, ctx, child(t->b));
        }
        // Binders: f g x x' x_R, with the codomain relation under x x' x_R.
        Term LPi = left_in(t), PPi = prime_in(t);
        Term relA = mk_app(shift(WA, 4), {mk_var(1), mk_var(0)});
        Term body = mk_app(shift(WB, 2, 3), {mk_app(mk_var(4), mk_var(2)), mk_app(mk_var(3), mk_var(1))});
        return mk_lam("f", LPi,
                      mk_lam("g", shift(PPi, 1),
                             mk_pi(n, shift(LA, 2),
                                   mk_pi(primed(n), shift(PA, 3), mk_pi(related(n), relA, body)))));
      }
      Level i = level(ctx, t->a);
      Level j;
      Term WB;
      {
        Push p(ctx, t->a);
        j = level(ctx, t->b);
        WB = go(mode, t->b, ctx, child(t->b));
      }
      if (trace) trace->levels = {i, j};
      Term LB = left_in(t->b, 1), PB = prime_in(t->b, 1);
      Term famL = mk_lam(n, LA, LB);
      Term famP = mk_lam(primed(n), PA, PB);
      Term relA = mk_app(ur_rel_app(i, shift(LA, 2), shift(PA, 2), shift(WA, 2)), {mk_var(1), mk_var(0)});
      Term famR = mk_lam(n, LA, mk_lam(primed(n), shift(PA, 1), mk_lam(related(n), relA, WB)));
      std::vector<Term> args = {LA, PA, WA, famL, famP, famR};
      if (mode == Mode::Resolve) {
        if (trace) trace->rule = "FP_forall";
        return mk_app(mk_const("FP_forall", {i, j}), args);
      }
      if (trace) trace->rule = "pi";
      Level ij = Level::max(i, j);
      return mk_app(mk_const("mkUR", {ij}),
                    {mk_pi(n, LA, LB), mk_pi(primed(n), PA, PB), mk_app(mk_const("PiRel", {i, j}), args),
                     mk_app(mk_const("Equiv_Pi", {i, j}), args), mk_app(mk_const("univ_Pi", {i, j}), args)});
    }
  }
  return t;
}

Term Translator::param(const Term& t, const LocalCtx& ctx) {
  budget_.used = 0;
  LocalCtx local = ctx;
  return go(Mode::Param, t, local, nullptr);
}

Term Translator::uparam(const Term& t, const LocalCtx& ctx) {
  budget_.used = 0;
  LocalCtx local = ctx;
  return go(Mode::Univalent, t, local, nullptr);
}

Term Translator::resolve(const Term& A, const LocalCtx& ctx, ResolutionTrace* trace) {
  budget_.used = 0;
  LocalCtx local = ctx;
  return go(Mode::Resolve, A, local, trace);
}

Term Translator::uparam_rel(const Term& A, const LocalCtx& ctx) {
  budget_.used = 0;
  LocalCtx local = ctx;
  Term W = go(Mode::Univalent, A, local, nullptr);
  return ur_rel_app(level(ctx, A), left_in(A), prime_in(A), W);
}

LocalCtx Translator::translate_ctx(const LocalCtx& ctx) {
  LocalCtx src, out;
  for (const Term& A : ctx) {
    Term LA = left_in(A), PA = prime_in(A);
    Term WA = go(Mode::Univalent, A, src, nullptr);
    Level i = level(src, A);
    out.push_back(LA);
    out.push_back(shift(PA, 1));
    out.push_back(mk_app(ur_rel_app(i, shift(LA, 2), shift(PA, 2), shift(WA, 2)), {mk_var(1), mk_var(0)}));
    src.push_back(A);
  }
  return out;
}

Term Translator::replay(const ResolutionTrace& tr) {
  const Term& g = tr.goal;
  auto kid = [&](size_t k) { return replay(tr.children.at(k)); };
  const std::string& r = tr.rule;
  if (r == "var") return mk_var(3 * g->index);
  if (r == "hint") return subst_levels(triple(g->name)->witness, g->levels);
  if (r == "self" || r == "FP_Sigma" || r == "FP_eq" || r == "FP_list") {
    if (g->kind == Kind::Int) return mk_app(mk_const("eq_refl", {Level(0)}), {mk_const("int16"), g});
    return mk_const(tr.constant, g->levels);
  }
  if (r == "unfold") return kid(0);
  if (r == "FP_Type") return mk_const("FP_Type", {tr.levels.at(0)});
  if (r == "app") return mk_app(kid(0), {left_in(g->b), prime_in(g->b), kid(1)});
  if (r == "FP_forall" || r == "pi") {
    Level i = tr.levels.at(0), j = tr.levels.at(1);
    const std::string n = g->name == "_" ? std::string("x") : g->name;
    Term LA = left_in(g->a), PA = prime_in(g->a), WA = kid(0), WB = kid(1);
    Term relA = mk_app(ur_rel_app(i, shift(LA, 2), shift(PA, 2), shift(WA, 2)), {mk_var(1), mk_var(0)});
    std::vector<Term> args = {LA, PA, WA, mk_lam(n, LA, left_in(g->b, 1)),
                              mk_lam(primed(n), PA, prime_in(g->b, 1)),
                              mk_lam(n, LA, mk_lam(primed(n), shift(PA, 1), mk_lam(related(n), relA, WB)))};
    if (r == "FP_forall") return mk_app(mk_const("FP_forall", {i, j}), args);
    return mk_app(mk_const("mkUR", {Level::max(i, j)}),
                  {mk_pi(n, LA, left_in(g->b, 1)), mk_pi(primed(n), PA, prime_in(g->b, 1)),
                   mk_app(mk_const("PiRel", {i, j}), args), mk_app(mk_const("Equiv_Pi", {i, j}), args),
                   mk_app(mk_const("univ_Pi", {i, j}), args)});
  }
  if (r == "lam") {
    Level i = tr.levels.at(0);
    Term LA = left_in(g->a), PA = prime_in(g->a), WA = kid(0);
    Term rel = mk_app(ur_rel_app(i, shift(LA, 2), shift(PA, 2), shift(WA, 2)), {mk_var(1), mk_var(0)});
    return mk_lam(g->name, LA, mk_lam(primed(g->name), shift(PA, 1), mk_lam(related(g->name), rel, kid(1))));
  }
  if (r == "sort") {
    Term s = g;
    Level up = g->level.succ();
    Term rel = mk_lam("A", s, mk_lam("B", s, mk_app(mk_const("URType", {g->level}), {mk_var(1), mk_var(0)})));
    return mk_app(mk_const("mkUR", {up}),
                  {s, s, rel, mk_app(mk_const("id_equiv", {up}), {s}), mk_const("univ_Type", {g->level})});
  }
  throw make_error(ErrorKind::IllTyped, "cannot replay rule " + r);
}

Term param_translate(const GlobalEnv& env, const GlobalContext& delta, const Term& t,
                     const LocalCtx& ctx) {
  return Translator(env, delta).param(t, ctx);
}

Term prime_translate(const GlobalEnv& env, const GlobalContext& delta, const Term& t) {
  return Translator(env, delta).prime(t);
}

Term uparam_translate(const GlobalEnv& env, const GlobalContext& delta, const Term& t,
                      const LocalCtx& ctx) {
  return Translator(env, delta).uparam(t, ctx);
}

Term uparam_rel(const GlobalEnv& env, const GlobalContext& delta, const Term& A, const LocalCtx& ctx) {
  return Translator(env, delta).uparam_rel(A, ctx);
}

LocalCtx translate_local_ctx(const GlobalEnv& env, const GlobalContext& delta, const LocalCtx& ctx) {
  return Translator(env, delta).translate_ctx(ctx);
}

AbstractionReport abstraction_check(const GlobalEnv& env, const GlobalContext& delta,
                                    const std::string& name, const Term& t, const Term& A,
                                    uint64_t budget) {
  AbstractionReport rep;
  rep.name = name;
  rep.left_check = check(env, {}, t, A, budget);
  Translator tr(env, delta, budget);
  Term PA;
  try {
    rep.derived_prime = tr.prime(t);
    PA = tr.prime(A);
    rep.right_check = check(env, {}, rep.derived_prime, PA, budget);
  } catch (const Error& e) {
    rep.right_check = CheckResult::failure(e);
    rep.relation_check = CheckResult::failure(e);
    return rep;
  }
  try {
    rep.derived_witness = tr.uparam(t);
    Term rel = mk_app(tr.uparam_rel(A), {t, rep.derived_prime});
    rep.relation_check = check(env, {}, rep.derived_witness, rel, budget);
  } catch (const Error& e) {
    rep.relation_check = CheckResult::failure(e);
  }
  return rep;
}

CheckResult wf_global_context(const GlobalEnv& env, const GlobalContext& delta, uint64_t budget) {
  for (size_t n = 0; n < delta.size(); ++n) {
    GlobalContext prefix(delta.begin(), delta.begin() + static_cast<std::ptrdiff_t>(n));
    const GlobalTriple& g = delta[n];
    try {
      const Entry& left = env.at(g.left);
      std::vector<Level> params;
      for (uint32_t k = 0; k < left.level_params.size(); ++k) params.push_back(Level::param(k));
      Term rel = uparam_rel(env, prefix, left.type);
      Term goal = mk_app(rel, {mk_const(g.left, params), mk_const(g.right, params)});
      CheckResult r = check(env, {}, g.witness, goal, budget);
      if (!r.ok) {
        Error e(ErrorKind::IllFormedTelescope,
                "triple " + std::to_string(n) + " (" + g.left + ", " + g.right + "): " + r.message());
        e.name = g.left;
        e.position = n;
        return CheckResult::failure(e);
      }
    } catch (const Error& err) {
      Error e(ErrorKind::IllFormedTelescope,
              "triple " + std::to_string(n) + " (" + g.left + ", " + g.right + "): " + err.what());
      e.name = g.left;
      e.position = n;
      return CheckResult::failure(e);
    }
  }
  return CheckResult::success();
}

}  // namespace uptrans
