#include "uptrans/stdlib.hpp"

#include "uptrans/registry.hpp"
#include "uptrans/translate.hpp"

namespace uptrans {

namespace detail {
struct EmbeddedFile {
  const char* name;
  const char* text;
};
extern const EmbeddedFile kPreludeFiles[];
extern const size_t kPreludeFileCount;
extern const char* const kCorpusReplay;
}  // namespace detail

const std::vector<SourceFile>& prelude_sources() {
  static const std::vector<SourceFile> files = [] {
    std::vector<SourceFile> out;
    for (size_t i = 0; i < detail::kPreludeFileCount; ++i)
      out.push_back({detail::kPreludeFiles[i].name, detail::kPreludeFiles[i].text});
    return out;
  }();
  return files;
}

std::string_view corpus_source() { return detail::kCorpusReplay; }

Term elaborate(const GlobalEnv& env, const Term& t, size_t level_params) {
  switch (t->kind) {
    case Kind::Const: {
      const Entry* e = env.find(t->name);
      if (!e) {
        Error err(ErrorKind::UnknownConstant, "unknown constant " + t->name);
        err.name = t->name;
        err.subject = t;
        throw err;
      }
      if (!t->levels.empty() || e->level_params.empty()) return t;
      if (level_params > 0) {
        Error err(ErrorKind::LevelMismatch,
                  t->name + " needs an explicit universe instance in a polymorphic declaration");
        err.name = t->name;
        err.subject = t;
        throw err;
      }
      return mk_const(t->name, std::vector<Level>(e->level_params.size(), Level(0)));
    }
    case Kind::App: {
      Term a = elaborate(env, t->a, level_params), b = elaborate(env, t->b, level_params);
      return a == t->a && b == t->b ? t : mk_app(a, b);
    }
    case Kind::Lam:
    case Kind::Pi: {
      Term a = elaborate(env, t->a, level_params), b = elaborate(env, t->b, level_params);
      if (a == t->a && b == t->b) return t;
      return t->kind == Kind::Lam ? mk_lam(t->name, a, b) : mk_pi(t->name, a, b);
    }
    default: return t;
  }
}

namespace {

std::vector<Level> generic_levels(size_t n) {
  std::vector<Level> out;
  for (uint32_t k = 0; k < n; ++k) out.push_back(Level::param(k));
  return out;
}

void add_entry(GlobalEnv& env, const std::string& name, const std::vector<std::string>& levels,
               Term type, std::optional<Term> body, Origin origin, std::string anchor) {
  Entry e;
  e.name = name;
  e.level_params = levels;
  e.type = std::move(type);
  e.reducible = body.has_value();
  e.body = std::move(body);
  e.origin = origin;
  e.anchor = std::move(anchor);
  env.add(std::move(e));
}

void apply_self(Library& lib, const Decl& d, uint64_t budget) {
  const Entry& e = lib.env.at(d.name);
  if (d.level_params.size() != e.level_params.size())
    throw make_error(ErrorKind::LevelMismatch,
                     "self relation of " + d.name + " must bind " + std::to_string(e.level_params.size()) +
                         " universe level(s)",
                     d.name);
  std::vector<Level> params = generic_levels(e.level_params.size());
  Term self = mk_const(d.name, params);
  Term goal = mk_app(uparam_rel(lib.env, {}, e.type), {self, self});
  std::string fp = "FP_" + d.name;
  if (d.body) {
    Term w = elaborate(lib.env, *d.body, d.level_params.size());
    Budget b(budget);
    check_type(lib.env, {}, w, goal, b);
    if (w->kind == Kind::Const && w->levels == params) {
      lib.env.set_self_relation(d.name, w->name);
      return;
    }
    add_entry(lib.env, fp, e.level_params, goal, w, Origin::Defined, "self relation");
  } else {
    add_entry(lib.env, fp, e.level_params, goal, std::nullopt, Origin::Trusted, "self relation");
  }
  lib.env.set_self_relation(d.name, fp);
}

}  // namespace

void apply_decl(Library& lib, const Decl& d, uint64_t budget) {
  GlobalEnv& env = lib.env;
  size_t nl = d.level_params.size();
  switch (d.kind) {
    case Decl::Kind::Def: {
      Term type = elaborate(env, d.type, nl);
      Term body = elaborate(env, *d.body, nl);
      Budget b(budget);
      infer_level(env, {}, type, b);
      check_type(env, {}, body, type, b);
      add_entry(env, d.name, d.level_params, type, body, Origin::Defined, "definition");
      return;
    }
    case Decl::Kind::Axiom:
    case Decl::Kind::Trusted:
    case Decl::Kind::Primitive: {
      Term type = elaborate(env, d.type, nl);
      Budget b(budget);
      infer_level(env, {}, type, b);
      Origin o = d.kind == Decl::Kind::Axiom     ? Origin::Axiom
                 : d.kind == Decl::Kind::Trusted ? Origin::Trusted
                                                 : Origin::Primitive;
      add_entry(env, d.name, d.level_params, type, std::nullopt, o,
                d.kind == Decl::Kind::Primitive ? "built-in" : origin_name(o));
      return;
    }
    case Decl::Kind::Self: apply_self(lib, d, budget); return;
    case Decl::Kind::RelateType:
      register_type_relation(env, lib.delta, d.name, d.other, elaborate(env, d.equiv, 0),
                             elaborate(env, d.rel, 0), elaborate(env, d.coh, 0), budget);
      return;
    case Decl::Kind::RelateTerm: {
      std::optional<Term> proof;
      if (d.proof) proof = elaborate(env, d.proof, 0);
      register_term_relation(env, lib.delta, d.name, d.other, proof, budget);
      return;
    }
    case Decl::Kind::Transport:
    case Decl::Kind::Goal:
      throw make_error(ErrorKind::Usage, "transport and goal declarations are run by the driver", d.name);
  }
}

Library load_prelude() {
  Library lib;
  for (const SourceFile& f : prelude_sources()) {
    std::vector<Decl> decls;
    try {
      decls = parse_module(f.text);
    } catch (const Error& err) {
      Error e(ErrorKind::PreludeIllTyped, f.name + ":" + describe(err));
      e.line = err.line;
      throw e;
    }
    for (const Decl& d : decls) {
      try {
        apply_decl(lib, d);
      } catch (const Error& err) {
        Error e(ErrorKind::PreludeIllTyped, f.name + ":" + std::to_string(d.line) + ": " + d.name +
                                                ": " + describe(err));
        e.name = d.name;
        e.line = d.line;
        throw e;
      }
    }
  }
  return lib;
}

const Library& prelude() {
  static const Library lib = load_prelude();
  return lib;
}

std::string export_prelude() {
  std::string out;
  for (const SourceFile& f : prelude_sources()) {
    out += "-- " + f.name + "\n";
    out += print_module(parse_module(f.text));
    out += "\n";
  }
  return out;
}

DecEqInstance dec_eq_instance(const std::string& carrier) {
  static const std::map<std::string, std::string> procs = {
      {"nat", "dec_nat"}, {"bool", "dec_bool"}, {"positive", "dec_pos"}, {"N", "dec_N"}};
  auto it = procs.find(carrier);
  if (it == procs.end()) throw make_error(ErrorKind::UnknownConstant, "no decision procedure for " + carrier, carrier);
  return {mk_const(carrier), mk_const(it->second)};
}

CanonicalEq build_canonical_eq(const DecEqInstance& dec) {
  CanonicalEq ce;
  ce.carrier = dec.carrier;
  ce.dec = dec;
  ce.can_eq = mk_app(mk_const("can_eq_dec"), {dec.carrier, dec.decide});
  return ce;
}

Term apply_can_eq(const CanonicalEq& ce, const Term& x, const Term& p) {
  return mk_app(ce.can_eq, {x, x, p});
}

std::vector<CorpusEntry> corpus_entries(const GlobalEnv& env) {
  std::vector<CorpusEntry> out;
  // Bodies of definitions against their declared types.
  // Proofs by induction over nat are left out: they typecheck only because
  // plus computes, which its binary partner does not do definitionally.
  for (const char* n : {"idnat", "square", "plus", "mult", "pow", "minus", "leb", "ge", "poly", "nat_rect3",
                        "sequence", "g", "Lib"}) {
    const Entry& e = env.at(n);
    out.push_back({n, *e.body, e.type});
  }
  // Statements as terms of their universe.
  for (const char* n : {"plus_comm", "pow_prop", "diff", "plus_n_O", "plus_n_Sm"}) {
    const Entry& e = env.at(n);
    Budget b;
    out.push_back({std::string(n) + ".statement", e.type, mk_sort(infer_level(env, {}, e.type, b))});
  }
  const std::pair<const char*, const char*> extra[][2] = {
      {{"universe", "Type"}, {"", "Type@{1}"}},
      {{"poly_id", "fun (A : Type) (x : A) => x"}, {"", "forall A : Type, A -> A"}},
      {{"twice", "fun (f : nat -> nat) (x : nat) => f (f x)"}, {"", "(nat -> nat) -> nat -> nat"}},
      {{"pair", "fun (A : Type) (P : A -> Type) (a : A) (p : P a) => existT A P a p"},
       {"", "forall (A : Type) (P : A -> Type) (a : A), P a -> sigT A P"}},
      {{"refl_three", "eq_refl nat 3%nat"}, {"", "eq nat 3%nat 3%nat"}},
      {{"singleton", "cons nat 1%nat (nil nat)"}, {"", "list nat"}},
      {{"add_two", "fun n : nat => S (S n)"}, {"", "nat -> nat"}},
      {{"bool_case", "fun b : bool => bool_rect (fun _ : bool => nat) O (S O) b"}, {"", "bool -> nat"}},
      {{"refl_statement", "forall n : nat, eq nat n n"}, {"", "Type"}},
      {{"sigma_type", "sigT nat (fun n : nat => eq nat n n)"}, {"", "Type"}},
      {{"list_type", "list nat"}, {"", "Type"}},
      {{"list_sum", "fun l : list nat => list_rect nat (fun _ : list nat => nat) O "
                    "(fun (a : nat) (_ : list nat) (r : nat) => plus a r) l"},
       {"", "list nat -> nat"}},
      {{"shift_self", "fun x : int16 => lsl x x"}, {"", "int16 -> int16"}},
      {{"small_goal", "ge (plus 2%nat 3%nat) 4%nat"}, {"", "Type"}},
      {{"sum_literal", "plus 2%nat 3%nat"}, {"", "nat"}},
  };
  for (auto& e : extra) {
    Term t = elaborate(env, parse_term(e[0].second), 0);
    Term ty = elaborate(env, parse_term(e[1].second), 0);
    out.push_back({e[0].first, t, ty});
  }
  return out;
}

}  // namespace uptrans
