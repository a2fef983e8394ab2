#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace uptrans {

// Universe level of the form max(base, u_1 + k_1, ..., u_n + k_n) over
// level parameters u_i. A level without parameters is a plain index.
class Level {
 public:
  Level() = default;
  explicit Level(uint32_t n) : base_(n) {}

  static Level param(uint32_t index, uint32_t offset = 0);
  static Level max(const Level& a, const Level& b);

  bool concrete() const { return terms_.empty(); }
  uint32_t value() const { return base_; }
  uint32_t base() const { return base_; }
  const std::vector<std::pair<uint32_t, uint32_t>>& terms() const { return terms_; }

  Level succ(uint32_t n = 1) const;
  Level subst(const std::vector<Level>& args) const;
  // One past the highest parameter index mentioned.
  uint32_t arity() const;

  std::string str(const std::vector<std::string>* names = nullptr) const;
  size_t hash() const;

  bool operator==(const Level& o) const { return base_ == o.base_ && terms_ == o.terms_; }
  bool operator!=(const Level& o) const { return !(*this == o); }

 private:
  void canon();

  uint32_t base_ = 0;
  std::vector<std::pair<uint32_t, uint32_t>> terms_;
};

enum class Kind : uint8_t { Sort, Var, Const, App, Lam, Pi, Int };

struct Node;
using Term = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  uint32_t index = 0;    // Var index, Int value
  uint32_t loose = 0;    // one past the highest loose de Bruijn index
  size_t hash = 0;       // structural hash, ignores binder names
  Level level;           // Sort
  std::string name;      // Const name, binder name hint
  std::vector<Level> levels;  // Const universe instance
  Term a, b;             // App: function, argument. Lam/Pi: domain, body.
};

Term mk_sort(Level l);
Term mk_type(uint32_t i);
Term mk_var(uint32_t i);
Term mk_const(std::string name, std::vector<Level> levels = {});
Term mk_app(Term f, Term x);
Term mk_app(Term f, const std::vector<Term>& args);
Term mk_app(Term f, std::initializer_list<Term> args);
Term mk_lam(std::string name, Term dom, Term body);
Term mk_pi(std::string name, Term dom, Term body);
// Non-dependent arrow; `cod` lives in the same context as `dom`.
Term mk_arrow(Term dom, Term cod);
Term mk_int(uint16_t v);

inline bool is(const Term& t, Kind k) { return t->kind == k; }
inline bool is_const(const Term& t, const std::string& n) {
  return t->kind == Kind::Const && t->name == n;
}

// Head and arguments of an application spine, arguments left to right.
Term spine(const Term& t, std::vector<Term>& args);
Term head_of(const Term& t);

// Add `amount` to every variable with index >= cutoff.
Term shift(const Term& t, int64_t amount, uint32_t cutoff = 0);
// Replace variable `depth` by `u`, lowering the variables above it.
Term subst(const Term& t, uint32_t depth, const Term& u);
inline Term instantiate(const Term& body, const Term& u) { return subst(body, 0, u); }
// Replace level parameters by the given instance.
Term subst_levels(const Term& t, const std::vector<Level>& args);
// One past the highest level parameter mentioned anywhere in t.
uint32_t level_arity(const Term& t);

bool alpha_eq(const Term& t, const Term& u);
bool has_loose(const Term& t, uint32_t index);
size_t term_size(const Term& t);

// Calls f on every constant occurrence.
template <class F>
void for_each_const(const Term& t, F&& f) {
  switch (t->kind) {
    case Kind::Const: f(t); break;
    case Kind::App:
    case Kind::Lam:
    case Kind::Pi:
      for_each_const(t->a, f);
      for_each_const(t->b, f);
      break;
    default: break;
  }
}

}  // namespace uptrans
