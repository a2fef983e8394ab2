#include "uptrans/eval.hpp"

#include <pthread.h>

#include <algorithm>
#include <exception>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "uptrans/errors.hpp"
#include "uptrans/literals.hpp"

namespace uptrans {

void Budget::tick() {
  if (++used > limit)
    throw make_error(ErrorKind::BudgetExceeded,
                     "step budget of " + std::to_string(limit) + " exhausted");
}

void Budget::enter() {
  if (++depth > max_depth) {
    --depth;
    throw make_error(ErrorKind::BudgetExceeded,
                     "reduction depth above " + std::to_string(max_depth));
  }
}

namespace {

struct DepthGuard {
  explicit DepthGuard(Budget& b) : b(b) { b.enter(); }
  ~DepthGuard() { b.leave(); }
  Budget& b;
};

std::vector<ElimRule> make_rules() {
  return {
      {"nat_rect", 3, {{"O", 0, 0, 1, {}}, {"S", 0, 1, 2, {0}}}},
      {"bool_rect", 3, {{"true", 0, 0, 1, {}}, {"false", 0, 0, 2, {}}}},
      {"unit_rect", 2, {{"tt", 0, 0, 1, {}}}},
      {"False_rect", 1, {}},
      {"positive_rect", 4, {{"xI", 0, 1, 1, {0}}, {"xO", 0, 1, 2, {0}}, {"xH", 0, 0, 3, {}}}},
      {"N_rect", 3, {{"N0", 0, 0, 1, {}}, {"Npos", 0, 1, 2, {}}}},
      {"list_rect", 4, {{"nil", 1, 0, 2, {}}, {"cons", 1, 2, 3, {1}}}},
      {"sigT_rect", 4, {{"existT", 2, 2, 3, {}}}},
      {"eq_rect", 5, {{"eq_refl", 2, 0, 3, {}}}},
      {"sum_rect", 5, {{"inl", 2, 1, 3, {}}, {"inr", 2, 1, 4, {}}}},
  };
}

const std::unordered_map<std::string, const ElimRule*>& rule_index() {
  static const auto index = [] {
    std::unordered_map<std::string, const ElimRule*> m;
    for (auto& r : elim_rules()) m[r.name] = &r;
    return m;
  }();
  return index;
}

// Arguments are kept on a stack with the first argument on top.
struct Stack {
  std::vector<Term> items;
  size_t size() const { return items.size(); }
  Term& arg(size_t i) { return items[items.size() - 1 - i]; }
  void drop(size_t n) { items.resize(items.size() - n); }
};

Term rebuild(Term head, const Stack& s) {
  for (size_t i = s.items.size(); i-- > 0;) head = mk_app(std::move(head), s.items[i]);
  return head;
}

bool try_iota(const GlobalEnv& env, const ElimRule& rule, const Term& elim, Stack& s,
              Budget& budget, Term& head) {
  if (s.size() <= rule.major) return false;
  Term scrut = whnf(env, s.arg(rule.major), budget);
  s.arg(rule.major) = scrut;
  std::vector<Term> cargs;
  Term ch = spine(scrut, cargs);
  if (ch->kind != Kind::Const) return false;
  for (auto& c : rule.ctors) {
    if (c.name != ch->name) continue;
    if (cargs.size() != c.params + c.fields) return false;
    Term r = s.arg(c.minor);
    for (size_t f = 0; f < c.fields; ++f) r = mk_app(r, cargs[c.params + f]);
    for (size_t f : c.recursive) {
      Term rec = elim;
      for (size_t i = 0; i < rule.major; ++i) rec = mk_app(rec, s.arg(i));
      r = mk_app(r, mk_app(rec, cargs[c.params + f]));
    }
    budget.tick();
    s.drop(rule.major + 1);
    head = r;
    return true;
  }
  return false;
}

bool try_prim(const GlobalEnv& env, const Term& c, Stack& s, Budget& budget, Term& head) {
  if (auto op = prim_op(c->name)) {
    if (s.size() < 2) return false;
    Term x = whnf(env, s.arg(0), budget);
    Term y = whnf(env, s.arg(1), budget);
    s.arg(0) = x;
    s.arg(1) = y;
    if (x->kind != Kind::Int || y->kind != Kind::Int) return false;
    budget.tick();
    head = mk_int(prim_eval(*op, static_cast<uint16_t>(x->index), static_cast<uint16_t>(y->index)));
    s.drop(2);
    return true;
  }
  if (c->name == "int16_to_N") {
    if (s.size() < 1) return false;
    Term x = whnf(env, s.arg(0), budget);
    s.arg(0) = x;
    if (x->kind != Kind::Int) return false;
    budget.tick();
    head = mk_N(x->index);
    s.drop(1);
    return true;
  }
  if (c->name == "int16_of_N") {
    if (s.size() < 1) return false;
    Term x = normal_form(env, s.arg(0), budget);
    s.arg(0) = x;
    auto v = try_read_N(x);
    if (!v) return false;
    budget.tick();
    head = mk_int(static_cast<uint16_t>(*v & 0xffff));
    s.drop(1);
    return true;
  }
  return false;
}

}  // namespace

const std::vector<ElimRule>& elim_rules() {
  static const std::vector<ElimRule> rules = make_rules();
  return rules;
}

const ElimRule* elim_rule(const std::string& name) {
  auto& idx = rule_index();
  auto it = idx.find(name);
  return it == idx.end() ? nullptr : it->second;
}

bool is_constructor(const std::string& name) {
  static const std::set<std::string> ctors = [] {
    std::set<std::string> s;
    for (auto& r : elim_rules())
      for (auto& c : r.ctors) s.insert(c.name);
    return s;
  }();
  return ctors.count(name) > 0;
}

namespace {

Term whnf_impl(const GlobalEnv& env, const Term& t, Budget& budget, bool delta) {
  DepthGuard guard(budget);
  Term head = t;
  Stack s;
  for (;;) {
    switch (head->kind) {
      case Kind::App:
        s.items.push_back(head->b);
        head = head->a;
        continue;
      case Kind::Lam:
        if (s.size() == 0) break;
        budget.tick();
        head = instantiate(head->b, s.items.back());
        s.items.pop_back();
        continue;
      case Kind::Const: {
        if (auto* rule = elim_rule(head->name)) {
          if (try_iota(env, *rule, head, s, budget, head)) continue;
          break;
        }
        if (try_prim(env, head, s, budget, head)) continue;
        const Entry* e = delta ? env.find(head->name) : nullptr;
        if (e && e->reducible && e->body) {
          budget.tick();
          head = *env.body_of(head);
          continue;
        }
        break;
      }
      default: break;
    }
    break;
  }
  return rebuild(head, s);
}

}  // namespace

Term whnf(const GlobalEnv& env, const Term& t, Budget& budget) { return whnf_impl(env, t, budget, true); }

Term whnf_core(const GlobalEnv& env, const Term& t, Budget& budget) {
  return whnf_impl(env, t, budget, false);
}

std::optional<Term> unfold_head(const GlobalEnv& env, const Term& t, Budget& budget) {
  std::vector<Term> args;
  Term h = spine(t, args);
  if (h->kind != Kind::Const) return std::nullopt;
  const Entry* e = env.find(h->name);
  if (!e || !e->reducible || !e->body) return std::nullopt;
  budget.tick();
  return mk_app(*env.body_of(h), args);
}

namespace {

struct TermHash {
  size_t operator()(const Term& t) const { return t->hash; }
};
struct TermEq {
  bool operator()(const Term& x, const Term& y) const { return x == y || alpha_eq(x, y); }
};
// Normal forms already computed in this run. Call-by-name duplicates
// arguments freely; sharing their normal forms keeps the work linear in the
// number of distinct subterms.
using NormMemo = std::unordered_map<Term, Term, TermHash, TermEq>;

Term nf(const GlobalEnv& env, const Term& t, Budget& budget, NormMemo& memo) {
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  DepthGuard guard(budget);
  Term w = whnf(env, t, budget);
  Term out = w;
  switch (w->kind) {
    case Kind::Lam:
    case Kind::Pi: {
      Term a = nf(env, w->a, budget, memo);
      Term b = nf(env, w->b, budget, memo);
      if (a != w->a || b != w->b) out = w->kind == Kind::Lam ? mk_lam(w->name, a, b) : mk_pi(w->name, a, b);
      break;
    }
    case Kind::App: {
      std::vector<Term> args;
      Term h = spine(w, args);
      for (auto& a : args) a = nf(env, a, budget, memo);
      out = mk_app(h, args);
      break;
    }
    default: break;
  }
  memo.emplace(t, out);
  return out;
}

}  // namespace

Term normal_form(const GlobalEnv& env, const Term& t, Budget& budget) {
  NormMemo memo;
  return nf(env, t, budget, memo);
}

namespace {

struct PtrHash {
  size_t operator()(const Term& t) const { return std::hash<const Node*>()(t.get()); }
};
using CbvMemo = std::unordered_map<Term, Term, PtrHash>;
constexpr size_t kCbvMemoLimit = 1 << 18;

Term cbv(const GlobalEnv& env, const Term& t, Budget& budget, CbvMemo& memo);

// Folds a primitive over literal arguments; nullopt when it does not apply.
std::optional<Term> cbv_prim(const Term& c, std::vector<Term>& vals, size_t& used) {
  if (auto op = prim_op(c->name)) {
    if (vals.size() < 2 || vals[0]->kind != Kind::Int || vals[1]->kind != Kind::Int) return std::nullopt;
    used = 2;
    return mk_int(prim_eval(*op, static_cast<uint16_t>(vals[0]->index), static_cast<uint16_t>(vals[1]->index)));
  }
  if (c->name == "int16_to_N" && !vals.empty() && vals[0]->kind == Kind::Int) {
    used = 1;
    return mk_N(vals[0]->index);
  }
  if (c->name == "int16_of_N" && !vals.empty()) {
    if (auto v = try_read_N(vals[0])) {
      used = 1;
      return mk_int(static_cast<uint16_t>(*v & 0xffff));
    }
  }
  return std::nullopt;
}

// Applies an unevaluated head to evaluated arguments (first argument first).
Term cbv_apply(const GlobalEnv& env, Term h, std::vector<Term> vals, Budget& budget, CbvMemo& memo) {
  for (;;) {
    DepthGuard guard(budget);
    switch (h->kind) {
      case Kind::App: {
        std::vector<Term> args;
        h = spine(h, args);
        // Branches of an eliminator are evaluated only once chosen, like the
        // branches of a match; the scrutinee and later arguments are strict.
        const ElimRule* rule = h->kind == Kind::Const ? elim_rule(h->name) : nullptr;
        for (size_t i = 0; i < args.size(); ++i)
          if (!rule || i >= rule->major) args[i] = cbv(env, args[i], budget, memo);
        vals.insert(vals.begin(), args.begin(), args.end());
        continue;
      }
      case Kind::Lam: {
        if (vals.empty()) return h;
        budget.tick();
        Term body = instantiate(h->b, vals.front());
        vals.erase(vals.begin());
        h = cbv(env, body, budget, memo);
        if (vals.empty()) return h;
        if (h->kind == Kind::App) {
          std::vector<Term> args;
          h = spine(h, args);
          vals.insert(vals.begin(), args.begin(), args.end());
        }
        continue;
      }
      case Kind::Const: {
        if (const ElimRule* rule = elim_rule(h->name)) {
          if (vals.size() <= rule->major) return mk_app(h, vals);
          std::vector<Term> cargs;
          Term ch = spine(vals[rule->major], cargs);
          const CtorRule* hit = nullptr;
          if (ch->kind == Kind::Const)
            for (auto& c : rule->ctors)
              if (c.name == ch->name && cargs.size() == c.params + c.fields) hit = &c;
          if (!hit) return mk_app(h, vals);
          budget.tick();
          std::vector<Term> next;
          for (size_t f = 0; f < hit->fields; ++f) next.push_back(cargs[hit->params + f]);
          for (size_t f : hit->recursive) {
            std::vector<Term> rec(vals.begin(), vals.begin() + rule->major);
            rec.push_back(cargs[hit->params + f]);
            // Evaluated where the branch uses it, as a recursive call would be.
            next.push_back(mk_app(h, rec));
          }
          next.insert(next.end(), vals.begin() + rule->major + 1, vals.end());
          h = vals[hit->minor];
          vals = std::move(next);
          continue;
        }
        size_t used = 0;
        if (auto r = cbv_prim(h, vals, used)) {
          budget.tick();
          h = *r;
          vals.erase(vals.begin(), vals.begin() + used);
          continue;
        }
        const Entry* e = env.find(h->name);
        if (e && e->reducible && e->body) {
          budget.tick();
          h = *env.body_of(h);
          continue;
        }
        return mk_app(h, vals);
      }
      default: return mk_app(h, vals);
    }
  }
}

// Weak evaluation: abstractions are values and their bodies wait for an
// argument.
Term cbv(const GlobalEnv& env, const Term& t, Budget& budget, CbvMemo& memo) {
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  DepthGuard guard(budget);
  Term out;
  switch (t->kind) {
    case Kind::App:
    case Kind::Const: out = cbv_apply(env, t, {}, budget, memo); break;
    default: out = t;
  }
  // The memo is only a cache; dropping it bounds the memory held by
  // intermediate terms.
  if (memo.size() > kCbvMemoLimit) memo.clear();
  memo.emplace(t, out);
  memo.emplace(out, out);
  return out;
}

// Reads a weak value back into a normal form by evaluating under binders.
Term read_back(const GlobalEnv& env, const Term& v, Budget& budget, CbvMemo& memo) {
  DepthGuard guard(budget);
  switch (v->kind) {
    case Kind::Lam:
    case Kind::Pi: {
      Term a = read_back(env, cbv(env, v->a, budget, memo), budget, memo);
      Term b = read_back(env, cbv(env, v->b, budget, memo), budget, memo);
      if (a == v->a && b == v->b) return v;
      return v->kind == Kind::Lam ? mk_lam(v->name, a, b) : mk_pi(v->name, a, b);
    }
    case Kind::App: {
      std::vector<Term> args;
      Term h = spine(v, args);
      for (auto& a : args) a = read_back(env, cbv(env, a, budget, memo), budget, memo);
      return mk_app(h, args);
    }
    default: return v;
  }
}

}  // namespace

Term normal_form_cbv(const GlobalEnv& env, const Term& t, Budget& budget) {
  CbvMemo memo;
  return read_back(env, cbv(env, t, budget, memo), budget, memo);
}

NormResult normalize_cbv(const GlobalEnv& env, const Term& t, uint64_t limit) {
  Budget budget(limit);
  NormResult r;
  try {
    r.normal_form = normal_form_cbv(env, t, budget);
  } catch (const Error& e) {
    if (e.kind != ErrorKind::BudgetExceeded) throw;
    r.normal_form = t;
    r.budget_hit = true;
  }
  r.steps = std::min(budget.used, budget.limit);
  return r;
}

NormResult normalize(const GlobalEnv& env, const Term& t, uint64_t limit) {
  Budget budget(limit);
  NormResult r;
  try {
    r.normal_form = normal_form(env, t, budget);
  } catch (const Error& e) {
    if (e.kind != ErrorKind::BudgetExceeded) throw;
    r.normal_form = t;
    r.budget_hit = true;
  }
  r.steps = std::min(budget.used, budget.limit);
  return r;
}

std::vector<std::string> axioms_in(const GlobalEnv& env, const Term& t) {
  // Normal forms share subterms heavily; visit each node once.
  std::set<std::string> found;
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> todo{t.get()};
  while (!todo.empty()) {
    const Node* n = todo.back();
    todo.pop_back();
    if (!n || !seen.insert(n).second) continue;
    if (n->kind == Kind::Const) {
      if (auto* e = env.find(n->name); e && e->origin == Origin::Axiom) found.insert(n->name);
      continue;
    }
    todo.push_back(n->a.get());
    todo.push_back(n->b.get());
  }
  return {found.begin(), found.end()};
}

AxiomReport effectiveness(const GlobalEnv& env, const Term& t, uint64_t limit) {
  AxiomReport rep;
  NormResult r = normalize(env, t, limit);
  rep.steps = r.steps;
  if (r.budget_hit) {
    rep.inconclusive = true;
    return rep;
  }
  rep.stuck_axioms = axioms_in(env, r.normal_form);
  rep.effective = rep.stuck_axioms.empty();
  return rep;
}

void with_large_stack(const std::function<void()>& f, size_t stack_bytes) {
  struct Job {
    const std::function<void()>* f;
    std::exception_ptr error;
  } job{&f, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, stack_bytes);
  pthread_t th;
  auto entry = [](void* p) -> void* {
    auto* j = static_cast<Job*>(p);
    try {
      (*j->f)();
    } catch (...) {
      j->error = std::current_exception();
    }
    return nullptr;
  };
  int rc = pthread_create(&th, &attr, entry, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    f();
    return;
  }
  pthread_join(th, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

}  // namespace uptrans
