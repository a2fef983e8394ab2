#include "uptrans/term.hpp"

#include <algorithm>
#include <functional>

namespace uptrans {

namespace {

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

}  // namespace

Level Level::param(uint32_t index, uint32_t offset) {
  Level l;
  l.terms_.push_back({index, offset});
  return l;
}

Level Level::max(const Level& a, const Level& b) {
  Level l;
  l.base_ = std::max(a.base_, b.base_);
  l.terms_ = a.terms_;
  l.terms_.insert(l.terms_.end(), b.terms_.begin(), b.terms_.end());
  l.canon();
  return l;
}

void Level::canon() {
  std::sort(terms_.begin(), terms_.end());
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second = std::max(out.back().second, t.second);
    else
      out.push_back(t);
  }
  terms_ = std::move(out);
  for (auto& t : terms_)
    if (base_ <= t.second) base_ = 0;
}

Level Level::succ(uint32_t n) const {
  Level l = *this;
  if (l.terms_.empty() || l.base_ > 0) l.base_ += n;
  for (auto& t : l.terms_) t.second += n;
  l.canon();
  return l;
}

Level Level::subst(const std::vector<Level>& args) const {
  Level out(base_);
  for (auto& [p, k] : terms_) {
    if (p < args.size()) {
      out = Level::max(out, args[p].succ(k));
    } else {
      out = Level::max(out, Level::param(p, k));
    }
  }
  return out;
}

uint32_t Level::arity() const {
  uint32_t n = 0;
  for (auto& t : terms_) n = std::max(n, t.first + 1);
  return n;
}

std::string Level::str(const std::vector<std::string>* names) const {
  if (terms_.empty()) return std::to_string(base_);
  std::vector<std::string> parts;
  if (base_ > 0) parts.push_back(std::to_string(base_));
  for (auto& [p, k] : terms_) {
    std::string s = names && p < names->size() ? (*names)[p] : "u" + std::to_string(p);
    if (k > 0) s += "+" + std::to_string(k);
    parts.push_back(s);
  }
  if (parts.size() == 1) return parts[0];
  std::string s = parts.back();
  for (size_t i = parts.size() - 1; i-- > 0;) s = "max(" + parts[i] + ", " + s + ")";
  return s;
}

size_t Level::hash() const {
  size_t h = base_;
  for (auto& [p, k] : terms_) h = mix(mix(h, p + 1), k);
  return h;
}

namespace {

Term finish(Node n) {
  size_t h = static_cast<size_t>(n.kind) * 1315423911u;
  switch (n.kind) {
    case Kind::Sort: h = mix(h, n.level.hash()); break;
    case Kind::Var:
    case Kind::Int: h = mix(h, n.index); break;
    case Kind::Const:
      h = mix(h, std::hash<std::string>{}(n.name));
      for (auto& l : n.levels) h = mix(h, l.hash());
      break;
    case Kind::App:
    case Kind::Lam:
    case Kind::Pi: h = mix(mix(h, n.a->hash), n.b->hash); break;
  }
  n.hash = h;
  return std::make_shared<const Node>(std::move(n));
}

}  // namespace

Term mk_sort(Level l) {
  Node n{Kind::Sort};
  n.level = std::move(l);
  return finish(std::move(n));
}

Term mk_type(uint32_t i) { return mk_sort(Level(i)); }

Term mk_var(uint32_t i) {
  Node n{Kind::Var};
  n.index = i;
  n.loose = i + 1;
  return finish(std::move(n));
}

Term mk_const(std::string name, std::vector<Level> levels) {
  Node n{Kind::Const};
  n.name = std::move(name);
  n.levels = std::move(levels);
  return finish(std::move(n));
}

Term mk_app(Term f, Term x) {
  Node n{Kind::App};
  n.loose = std::max(f->loose, x->loose);
  n.a = std::move(f);
  n.b = std::move(x);
  return finish(std::move(n));
}

Term mk_app(Term f, const std::vector<Term>& args) {
  for (auto& a : args) f = mk_app(std::move(f), a);
  return f;
}

Term mk_app(Term f, std::initializer_list<Term> args) {
  for (auto& a : args) f = mk_app(std::move(f), a);
  return f;
}

namespace {

Term mk_binder(Kind k, std::string name, Term dom, Term body) {
  Node n{k};
  n.name = std::move(name);
  n.loose = std::max(dom->loose, body->loose > 0 ? body->loose - 1 : 0);
  n.a = std::move(dom);
  n.b = std::move(body);
  return finish(std::move(n));
}

}  // namespace

Term mk_lam(std::string name, Term dom, Term body) {
  return mk_binder(Kind::Lam, std::move(name), std::move(dom), std::move(body));
}

Term mk_pi(std::string name, Term dom, Term body) {
  return mk_binder(Kind::Pi, std::move(name), std::move(dom), std::move(body));
}

Term mk_arrow(Term dom, Term cod) { return mk_pi("_", std::move(dom), shift(cod, 1)); }

Term mk_int(uint16_t v) {
  Node n{Kind::Int};
  n.index = v;
  return finish(std::move(n));
}

Term spine(const Term& t, std::vector<Term>& args) {
  args.clear();
  const Node* cur = t.get();
  Term head = t;
  while (cur->kind == Kind::App) {
    args.push_back(cur->b);
    head = cur->a;
    cur = head.get();
  }
  std::reverse(args.begin(), args.end());
  return head;
}

Term head_of(const Term& t) {
  Term h = t;
  while (h->kind == Kind::App) h = h->a;
  return h;
}

Term shift(const Term& t, int64_t amount, uint32_t cutoff) {
  if (amount == 0 || t->loose <= cutoff) return t;
  switch (t->kind) {
    case Kind::Var: return mk_var(static_cast<uint32_t>(t->index + amount));
    case Kind::App: return mk_app(shift(t->a, amount, cutoff), shift(t->b, amount, cutoff));
    case Kind::Lam:
      return mk_lam(t->name, shift(t->a, amount, cutoff), shift(t->b, amount, cutoff + 1));
    case Kind::Pi:
      return mk_pi(t->name, shift(t->a, amount, cutoff), shift(t->b, amount, cutoff + 1));
    default: return t;
  }
}

Term subst(const Term& t, uint32_t depth, const Term& u) {
  if (t->loose <= depth) return t;
  switch (t->kind) {
    case Kind::Var:
      if (t->index == depth) return shift(u, depth);
      return mk_var(t->index - 1);
    case Kind::App: return mk_app(subst(t->a, depth, u), subst(t->b, depth, u));
    case Kind::Lam: return mk_lam(t->name, subst(t->a, depth, u), subst(t->b, depth + 1, u));
    case Kind::Pi: return mk_pi(t->name, subst(t->a, depth, u), subst(t->b, depth + 1, u));
    default: return t;
  }
}

Term subst_levels(const Term& t, const std::vector<Level>& args) {
  switch (t->kind) {
    case Kind::Sort: return t->level.concrete() ? t : mk_sort(t->level.subst(args));
    case Kind::Const: {
      if (t->levels.empty()) return t;
      std::vector<Level> ls;
      ls.reserve(t->levels.size());
      for (auto& l : t->levels) ls.push_back(l.subst(args));
      return mk_const(t->name, std::move(ls));
    }
    case Kind::App: {
      auto a = subst_levels(t->a, args), b = subst_levels(t->b, args);
      if (a == t->a && b == t->b) return t;
      return mk_app(a, b);
    }
    case Kind::Lam:
    case Kind::Pi: {
      auto a = subst_levels(t->a, args), b = subst_levels(t->b, args);
      if (a == t->a && b == t->b) return t;
      return t->kind == Kind::Lam ? mk_lam(t->name, a, b) : mk_pi(t->name, a, b);
    }
    default: return t;
  }
}

uint32_t level_arity(const Term& t) {
  switch (t->kind) {
    case Kind::Sort: return t->level.arity();
    case Kind::Const: {
      uint32_t n = 0;
      for (auto& l : t->levels) n = std::max(n, l.arity());
      return n;
    }
    case Kind::App:
    case Kind::Lam:
    case Kind::Pi: return std::max(level_arity(t->a), level_arity(t->b));
    default: return 0;
  }
}

bool alpha_eq(const Term& t, const Term& u) {
  if (t == u) return true;
  if (t->hash != u->hash || t->kind != u->kind || t->loose != u->loose) return false;
  switch (t->kind) {
    case Kind::Sort: return t->level == u->level;
    case Kind::Var:
    case Kind::Int: return t->index == u->index;
    case Kind::Const: return t->name == u->name && t->levels == u->levels;
    case Kind::App:
    case Kind::Lam:
    case Kind::Pi: return alpha_eq(t->a, u->a) && alpha_eq(t->b, u->b);
  }
  return false;
}

bool has_loose(const Term& t, uint32_t index) {
  if (t->loose <= index) return false;
  switch (t->kind) {
    case Kind::Var: return t->index == index;
    case Kind::App: return has_loose(t->a, index) || has_loose(t->b, index);
    case Kind::Lam:
    case Kind::Pi: return has_loose(t->a, index) || has_loose(t->b, index + 1);
    default: return false;
  }
}

size_t term_size(const Term& t) {
  switch (t->kind) {
    case Kind::App:
    case Kind::Lam:
    case Kind::Pi: return 1 + term_size(t->a) + term_size(t->b);
    default: return 1;
  }
}

}  // namespace uptrans
