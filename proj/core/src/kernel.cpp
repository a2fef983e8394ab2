#include "uptrans/kernel.hpp"

namespace uptrans {

namespace {

struct DepthGuard {
  explicit DepthGuard(Budget& b) : b(b) { b.enter(); }
  ~DepthGuard() { b.leave(); }
  Budget& b;
};

struct Push {
  Push(LocalCtx& ctx, Term t) : ctx(ctx) { ctx.push_back(std::move(t)); }
  ~Push() { ctx.pop_back(); }
  LocalCtx& ctx;
};

Term infer_in(const GlobalEnv& env, LocalCtx& ctx, const Term& t, Budget& budget);

Level sort_level(const GlobalEnv& env, LocalCtx& ctx, const Term& ty, Budget& budget) {
  Term s = whnf(env, infer_in(env, ctx, ty, budget), budget);
  if (s->kind != Kind::Sort) {
    Error e(ErrorKind::NotAType, "expected a type");
    e.subject = ty;
    e.actual = s;
    throw e;
  }
  return s->level;
}

Term infer_in(const GlobalEnv& env, LocalCtx& ctx, const Term& t, Budget& budget) {
  DepthGuard guard(budget);
  switch (t->kind) {
    case Kind::Sort: return mk_sort(t->level.succ());
    case Kind::Var: {
      if (t->index >= ctx.size()) {
        Error e(ErrorKind::UnboundVariable, "unbound variable #" + std::to_string(t->index));
        e.subject = t;
        throw e;
      }
      return shift(ctx[ctx.size() - 1 - t->index], t->index + 1);
    }
    case Kind::Const: {
      if (!env.find(t->name)) {
        Error e(ErrorKind::UnknownConstant, "unknown constant " + t->name);
        e.name = t->name;
        e.subject = t;
        throw e;
      }
      return env.type_of(t);
    }
    case Kind::Int: return mk_const("int16");
    case Kind::Pi: {
      Level l1 = sort_level(env, ctx, t->a, budget);
      Push p(ctx, t->a);
      Level l2 = sort_level(env, ctx, t->b, budget);
      return mk_sort(Level::max(l1, l2));
    }
    case Kind::Lam: {
      sort_level(env, ctx, t->a, budget);
      Push p(ctx, t->a);
      Term body_ty = infer_in(env, ctx, t->b, budget);
      return mk_pi(t->name, t->a, body_ty);
    }
    case Kind::App: {
      Term fty = whnf(env, infer_in(env, ctx, t->a, budget), budget);
      if (fty->kind != Kind::Pi) {
        Error e(ErrorKind::NotAFunction, "application of a non-function");
        e.subject = t->a;
        e.actual = fty;
        throw e;
      }
      Term aty = infer_in(env, ctx, t->b, budget);
      if (!conv(env, aty, fty->a, budget)) {
        Error e(ErrorKind::TypeMismatch, "argument type mismatch");
        e.subject = t->b;
        e.expected = fty->a;
        e.actual = aty;
        throw e;
      }
      return instantiate(fty->b, t->b);
    }
  }
  return t;
}

}  // namespace

Term infer(const GlobalEnv& env, const LocalCtx& ctx, const Term& t, Budget& budget) {
  LocalCtx local = ctx;
  return infer_in(env, local, t, budget);
}

Term infer(const GlobalEnv& env, const LocalCtx& ctx, const Term& t) {
  Budget budget;
  return infer(env, ctx, t, budget);
}

Level infer_level(const GlobalEnv& env, const LocalCtx& ctx, const Term& ty, Budget& budget) {
  LocalCtx local = ctx;
  return sort_level(env, local, ty, budget);
}

void check_type(const GlobalEnv& env, const LocalCtx& ctx, const Term& t, const Term& ty,
                Budget& budget) {
  Term actual = infer(env, ctx, t, budget);
  if (!conv(env, actual, ty, budget)) {
    Error e(ErrorKind::ConversionFailure, "type does not match the expected type");
    e.subject = t;
    e.expected = ty;
    e.actual = actual;
    throw e;
  }
}

CheckResult check(const GlobalEnv& env, const LocalCtx& ctx, const Term& t, const Term& ty,
                  uint64_t limit) {
  Budget budget(limit);
  try {
    check_type(env, ctx, t, ty, budget);
    return CheckResult::success();
  } catch (const Error& e) {
    return CheckResult::failure(e);
  }
}

namespace {

size_t head_height(const GlobalEnv& env, const Term& t) {
  Term h = t;
  while (h->kind == Kind::App) h = h->a;
  const Entry* e = h->kind == Kind::Const ? env.find(h->name) : nullptr;
  return e ? e->height : 0;
}

bool same_head_args(const GlobalEnv& env, const Term& x, const Term& y, Budget& budget) {
  std::vector<Term> xs, ys;
  Term hx = spine(x, xs), hy = spine(y, ys);
  if (hx->kind != Kind::Const || hy->kind != Kind::Const || hx->name != hy->name ||
      hx->levels != hy->levels || xs.size() != ys.size())
    return false;
  for (size_t i = 0; i < xs.size(); ++i)
    if (!conv(env, xs[i], ys[i], budget)) return false;
  return true;
}

}  // namespace

// Lazy unfolding: compare without unfolding first, then unfold the side
// whose head was defined later, so shared definitions meet folded.
bool conv(const GlobalEnv& env, const Term& t, const Term& u, Budget& budget) {
  if (alpha_eq(t, u)) return true;
  DepthGuard guard(budget);
  Term x = whnf_core(env, t, budget);
  Term y = whnf_core(env, u, budget);
  for (;;) {
    if (alpha_eq(x, y) || same_head_args(env, x, y, budget)) return true;
    size_t hx = head_height(env, x), hy = head_height(env, y);
    std::optional<Term> ux = hx >= hy ? unfold_head(env, x, budget) : std::nullopt;
    std::optional<Term> uy = hy >= hx ? unfold_head(env, y, budget) : std::nullopt;
    if (!ux && !uy) {
      // The later head is opaque; the other side may still unfold.
      ux = unfold_head(env, x, budget);
      uy = unfold_head(env, y, budget);
      if (!ux && !uy) break;
    }
    if (ux) x = whnf_core(env, *ux, budget);
    if (uy) y = whnf_core(env, *uy, budget);
  }
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Kind::Sort: return x->level == y->level;
    case Kind::Var:
    case Kind::Int: return x->index == y->index;
    case Kind::Const: return x->name == y->name && x->levels == y->levels;
    case Kind::Lam:
    case Kind::Pi: return conv(env, x->a, y->a, budget) && conv(env, x->b, y->b, budget);
    case Kind::App: {
      std::vector<Term> xs, ys;
      Term hx = spine(x, xs), hy = spine(y, ys);
      if (xs.size() != ys.size() || !conv(env, hx, hy, budget)) return false;
      for (size_t i = 0; i < xs.size(); ++i)
        if (!conv(env, xs[i], ys[i], budget)) return false;
      return true;
    }
  }
  return false;
}

bool conv(const GlobalEnv& env, const Term& t, const Term& u, uint64_t limit) {
  Budget budget(limit);
  return conv(env, t, u, budget);
}

}  // namespace uptrans
