#include "uptrans/driver.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "uptrans/registry.hpp"
#include "uptrans/translate.hpp"

namespace uptrans {

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<Command> parse_command(const std::string& s) {
  if (s == "check") return Command::Check;
  if (s == "translate") return Command::Translate;
  if (s == "transport") return Command::Transport;
  if (s == "replay") return Command::Replay;
  if (s == "bench") return Command::Bench;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Status status_of(const Error& e) {
  return e.kind == ErrorKind::BudgetExceeded ? Status::Inconclusive : Status::Fail;
}

Status status_of(const CheckResult& r) {
  if (r.ok) return Status::Ok;
  return r.error && r.error->kind == ErrorKind::BudgetExceeded ? Status::Inconclusive : Status::Fail;
}

void add_def(GlobalEnv& env, const std::string& name, const std::vector<std::string>& levels,
             const Term& type, const Term& body, const std::string& anchor) {
  Entry e;
  e.name = name;
  e.level_params = levels;
  e.type = type;
  e.body = body;
  e.reducible = true;
  e.origin = Origin::Defined;
  e.anchor = anchor;
  env.add(std::move(e));
}

bool related_left(const GlobalContext& delta, const std::string& c) {
  for (auto& t : delta)
    if (t.left == c) return true;
  return false;
}

class Session {
 public:
  Session(Library& lib, Command command, const RunOptions& opts) : command_(command), opts_(opts), lib_(lib) {}

  void process(const std::vector<Decl>& decls) {
    for (const Decl& d : decls) {
      auto t0 = Clock::now();
      Report r;
      r.name = d.name;
      bool emit = false;
      try {
        switch (d.kind) {
          case Decl::Kind::Transport:
            emit = command_ == Command::Transport || command_ == Command::Replay;
            transport(d, r);
            break;
          case Decl::Kind::Goal:
            if (command_ == Command::Bench) {
              bench(d);
            } else {
              emit = command_ == Command::Transport || command_ == Command::Replay;
              goal(d, r);
            }
            break;
          default:
            r.mode = "decl";
            apply_decl(lib_, d, opts_.budget);
            if (d.kind == Decl::Kind::Def) {
              if (command_ == Command::Check) {
                emit = true;
                check(d.name, *lib_.env.at(d.name).body, lib_.env.at(d.name).type, r);
              } else if (command_ == Command::Translate) {
                emit = true;
                translate(d.name, *lib_.env.at(d.name).body, r);
              }
            }
        }
      } catch (const Error& e) {
        emit = true;
        r.status = status_of(e);
        r.message = describe(e);
      }
      r.elapsed_ms = ms_since(t0);
      if (emit) reports_.push_back(std::move(r));
    }
  }

  void check(const std::string& name, const Term& t, const Term& A, Report& r) {
    r.mode = "check";
    AbstractionReport a = abstraction_check(lib_.env, lib_.delta, name, t, A, opts_.budget);
    for (const CheckResult* c : {&a.left_check, &a.right_check, &a.relation_check}) {
      if (c->ok) continue;
      r.status = status_of(*c);
      r.message = c->error ? describe(*c->error) : "check failed";
      return;
    }
    r.derived.push_back({"prime", print_term(a.derived_prime)});
  }

  void translate(const std::string& name, const Term& t, Report& r) {
    (void)name;
    r.mode = "translate";
    r.derived.push_back({"param", print_term(param_translate(lib_.env, lib_.delta, t))});
    r.derived.push_back({"prime", print_term(prime_translate(lib_.env, lib_.delta, t))});
    r.derived.push_back({"uparam", print_term(uparam_translate(lib_.env, lib_.delta, t))});
  }

  void check_corpus() {
    for (const CorpusEntry& c : corpus_entries(lib_.env)) {
      auto t0 = Clock::now();
      Report r;
      r.name = c.name;
      try {
        if (command_ == Command::Check)
          check(c.name, c.term, c.type, r);
        else
          translate(c.name, c.term, r);
      } catch (const Error& e) {
        r.status = status_of(e);
        r.message = describe(e);
      }
      r.elapsed_ms = ms_since(t0);
      reports_.push_back(std::move(r));
    }
  }

  const std::vector<Report>& reports() const { return reports_; }

 private:
  void transport(const Decl& d, Report& r) {
    const Entry& src = lib_.env.at(d.other);
    std::vector<Level> params;
    for (uint32_t k = 0; k < src.level_params.size(); ++k) params.push_back(Level::param(k));
    Term type, term, rel;
    if (d.mode == TransportMode::WhiteBox) {
      r.mode = "whitebox";
      if (!src.body)
        throw make_error(ErrorKind::IllTyped, d.other + " has no body to transport structurally", d.other);
      WhiteBox wb = transport_white_box(lib_.env, lib_.delta, *src.body, opts_.budget);
      type = wb.type, term = wb.term, rel = wb.relatedness;
    } else {
      r.mode = "blackbox";
      BlackBox bb = transport_black_box(lib_.env, lib_.delta, mk_const(d.other, params), src.type, opts_.budget);
      type = bb.type, term = bb.term, rel = bb.relatedness;
    }
    add_def(lib_.env, d.name, src.level_params, type, term, "transport of " + d.other);
    r.derived.push_back({"type", print_term(type)});
    r.derived.push_back({"term", print_term(term)});
    if (!related_left(lib_.delta, d.other)) {
      std::string wname = "univrel_" + d.other;
      Term goal = mk_app(uparam_rel(lib_.env, lib_.delta, src.type),
                         {mk_const(d.other, params), mk_const(d.name, params)});
      add_def(lib_.env, wname, src.level_params, goal, rel, "relatedness of " + d.name);
      register_triple(lib_.env, lib_.delta, d.other, d.name, mk_const(wname, params), opts_.budget);
    }
    AxiomReport eff = effectiveness(lib_.env, mk_const(d.name, params), opts_.budget);
    r.steps = eff.steps;
    r.axioms = eff.stuck_axioms;
    if (eff.inconclusive) {
      r.status = Status::Inconclusive;
      r.message = "normal form not reached within the step budget";
    }
  }

  // Proves the replacement goal by evaluation and maps the proof back.
  void goal(const Decl& d, Report& r) {
    r.mode = "goal";
    Term P = elaborate(lib_.env, d.type, 0);
    GoalReplacement g = replace_goal(lib_.env, lib_.delta, P, opts_.budget);
    r.derived.push_back({"goal", print_term(g.goal)});
    Term refl = mk_app(mk_const("eq_refl", {Level(0)}), {mk_const("bool"), mk_const("true")});
    Budget b(opts_.budget);
    try {
      check_type(lib_.env, {}, refl, g.goal, b);
    } catch (const Error& e) {
      r.steps = b.used;
      throw;
    }
    r.steps = b.used;
    Term proof = mk_app(g.backward, refl);
    Budget b2(opts_.budget);
    check_type(lib_.env, {}, proof, P, b2);
    add_def(lib_.env, d.name, {}, P, proof, "goal");
    r.derived.push_back({"proof", print_term(proof)});
  }

  // Proves a goal by computation the way `compute` would: the operands of
  // the comparison are evaluated to values first, then the comparison.
  void evaluate_goal(const Term& P, Report& r) {
    Budget b(opts_.budget);
    Term truth = mk_app(mk_const("eq", {Level(0)}), {mk_const("bool"), mk_const("true"), mk_const("true")});
    try {
      std::vector<Term> operands;
      Term head = spine(P, operands);
      for (auto& o : operands) o = normal_form_cbv(lib_.env, o, b);
      Term nf = normal_form_cbv(lib_.env, mk_app(head, operands), b);
      r.steps = b.used;
      if (!alpha_eq(nf, truth)) {
        r.status = Status::Fail;
        r.message = "goal evaluates to " + print_term(nf);
      }
    } catch (const Error& e) {
      r.steps = std::min(b.used, b.limit);
      if (e.kind != ErrorKind::BudgetExceeded) throw;
      r.status = Status::Inconclusive;
      r.message = e.what();
    }
  }

  // The direct route evaluates the goal as stated; the replaced route
  // evaluates the goal obtained through the registered relations.
  void bench(const Decl& d) {
    Term P = elaborate(lib_.env, d.type, 0);
    for (bool replaced : {false, true}) {
      auto t0 = Clock::now();
      Report r;
      r.name = d.name;
      r.mode = replaced ? "replaced" : "direct";
      try {
        Term goal = P;
        if (replaced) {
          goal = replace_goal(lib_.env, lib_.delta, P, opts_.budget).goal;
          r.derived.push_back({"goal", print_term(goal)});
        }
        evaluate_goal(goal, r);
      } catch (const Error& e) {
        r.status = status_of(e);
        r.message = describe(e);
      }
      r.elapsed_ms = ms_since(t0);
      reports_.push_back(std::move(r));
    }
  }

  Command command_;
  RunOptions opts_;
  Library& lib_;
  std::vector<Report> reports_;
};

}  // namespace

RunResult run(Command command, const std::vector<SourceFile>& files, const RunOptions& opts) {
  RunResult out;
  std::vector<std::vector<Decl>> modules;
  for (const SourceFile& f : files) {
    try {
      modules.push_back(parse_module(f.text));
    } catch (const Error& e) {
      Report r;
      r.name = f.name;
      r.status = Status::Fail;
      r.mode = "parse";
      r.message = f.name + ":" + std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + e.what();
      out.reports.push_back(std::move(r));
      out.exit_code = 2;
      return out;
    }
  }
  with_large_stack([&] {
    Library lib = prelude();
    Session s(lib, command, opts);
    if (command == Command::Replay) s.process(parse_module(corpus_source()));
    if (modules.empty() && (command == Command::Check || command == Command::Translate)) s.check_corpus();
    for (auto& m : modules) s.process(m);
    out.reports = s.reports();
  });
  for (auto& r : out.reports)
    if (r.status == Status::Fail) out.exit_code = 1;
  return out;
}

std::vector<Report> process(Library& lib, Command command, const std::vector<Decl>& decls,
                            const RunOptions& opts) {
  Session s(lib, command, opts);
  s.process(decls);
  return s.reports();
}

std::string emit_report(const std::vector<Report>& reports, ReportFormat format) {
  std::ostringstream os;
  for (const Report& r : reports) {
    if (format == ReportFormat::JsonLines) {
      nlohmann::ordered_json j;
      j["name"] = r.name;
      j["status"] = status_name(r.status);
      j["steps"] = r.steps;
      j["axioms"] = r.axioms;
      j["mode"] = r.mode;
      if (!r.message.empty()) j["message"] = r.message;
      os << j.dump() << "\n";
      continue;
    }
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.1f ms", r.elapsed_ms);
    os << status_name(r.status) << " " << r.name << " [" << r.mode << "] steps=" << r.steps << " axioms=";
    if (r.axioms.empty()) os << "none";
    for (size_t k = 0; k < r.axioms.size(); ++k) os << (k ? "," : "") << r.axioms[k];
    os << " (" << elapsed << ")\n";
    for (auto& [label, text] : r.derived) os << "  " << label << ": " << text << "\n";
    if (!r.message.empty()) os << "  " << r.message << "\n";
  }
  return os.str();
}

}  // namespace uptrans
