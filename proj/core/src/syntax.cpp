#include "uptrans/syntax.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "uptrans/literals.hpp"

namespace uptrans {

namespace {

const std::set<std::string>& reserved() {
  static const std::set<std::string> words = {
      "fun",  "forall",    "Type",  "let",  "in",   "def", "axiom", "trusted",
      "primitive", "self", "relate", "transport", "goal", "via", "rel", "coh",
      "by",   "from"};
  return words;
}

struct Token {
  enum Kind { Ident, Number, Sym, End } kind;
  std::string text;
  size_t line, col;
};

[[noreturn]] void parse_error(const std::string& msg, size_t line, size_t col) {
  Error e(ErrorKind::ParseError,
          std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  e.line = line;
  e.column = col;
  throw e;
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  size_t i = 0, line = 1, col = 1;
  auto adv = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
      while (i < s.size() && s[i] != '\n') adv(1);
      continue;
    }
    if (c == '(' && i + 1 < s.size() && s[i + 1] == '*') {
      size_t l = line, cl = col;
      adv(2);
      while (i + 1 < s.size() && !(s[i] == '*' && s[i + 1] == ')')) adv(1);
      if (i + 1 >= s.size()) parse_error("unterminated comment", l, cl);
      adv(2);
      continue;
    }
    size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                              s[j] == '\''))
        ++j;
      out.push_back({Token::Ident, std::string(s.substr(i, j - i)), l, cl});
      adv(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Number, std::string(s.substr(i, j - i)), l, cl});
      adv(j - i);
      continue;
    }
    static const char* syms[] = {":=", "=>", "->", "@{", "(", ")", "{", "}", ":", ",", "%", "+"};
    bool matched = false;
    for (const char* sym : syms) {
      std::string_view sv(sym);
      if (s.substr(i, sv.size()) == sv) {
        out.push_back({Token::Sym, std::string(sv), l, cl});
        adv(sv.size());
        matched = true;
        break;
      }
    }
    if (!matched) parse_error(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  bool at_end() const { return peek().kind == Token::End; }

  Term closed_term(const std::vector<std::string>& levels) {
    levels_ = levels;
    scope_.clear();
    Term t = term();
    if (!at_end()) fail("unexpected '" + peek().text + "'");
    return t;
  }

  Decl decl() {
    const Token& t = peek();
    Decl d;
    d.line = t.line;
    levels_.clear();
    scope_.clear();
    if (accept_word("def")) {
      d.kind = Decl::Kind::Def;
      d.name = ident();
      d.level_params = level_binders();
      levels_ = d.level_params;
      expect(":");
      d.type = term();
      expect(":=");
      d.body = term();
    } else if (accept_word("axiom") || accept_word("trusted") || accept_word("primitive")) {
      const std::string& w = toks_[pos_ - 1].text;
      d.kind = w == "axiom" ? Decl::Kind::Axiom
               : w == "trusted" ? Decl::Kind::Trusted
                                : Decl::Kind::Primitive;
      d.name = ident();
      d.level_params = level_binders();
      levels_ = d.level_params;
      expect(":");
      d.type = term();
    } else if (accept_word("self")) {
      d.kind = Decl::Kind::Self;
      d.name = ident();
      d.level_params = level_binders();
      levels_ = d.level_params;
      if (accept(":=")) d.body = term();
    } else if (accept_word("relate")) {
      std::string what = ident();
      if (what == "type") {
        d.kind = Decl::Kind::RelateType;
        d.name = ident();
        d.other = ident();
        expect_word("via");
        d.equiv = term();
        expect_word("rel");
        d.rel = term();
        expect_word("coh");
        d.coh = term();
      } else if (what == "term") {
        d.kind = Decl::Kind::RelateTerm;
        d.name = ident();
        d.other = ident();
        expect_word("by");
        if (!accept_word("trusted")) d.proof = term();
      } else {
        fail("expected 'type' or 'term' after 'relate'");
      }
    } else if (accept_word("transport")) {
      d.kind = Decl::Kind::Transport;
      d.name = ident();
      expect_word("from");
      d.other = ident();
      std::string mode = ident();
      if (mode == "whitebox")
        d.mode = TransportMode::WhiteBox;
      else if (mode == "blackbox")
        d.mode = TransportMode::BlackBox;
      else
        fail("expected 'whitebox' or 'blackbox'");
    } else if (accept_word("goal")) {
      d.kind = Decl::Kind::Goal;
      d.name = ident();
      expect(":");
      d.type = term();
      expect_word("by");
      if (ident() != "compute") fail("expected 'compute'");
    } else {
      fail("expected a declaration, got '" + t.text + "'");
    }
    return d;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    parse_error(msg, peek().line, peek().col);
  }

  bool accept(const char* sym) {
    if (peek().kind == Token::Sym && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(const char* sym) {
    if (!accept(sym)) fail(std::string("expected '") + sym + "'");
  }

  bool accept_word(const char* w) {
    if (peek().kind == Token::Ident && peek().text == w) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_word(const char* w) {
    if (!accept_word(w)) fail(std::string("expected '") + w + "'");
  }

  std::string ident() {
    if (peek().kind != Token::Ident || reserved().count(peek().text))
      fail("expected a name, got '" + peek().text + "'");
    return toks_[pos_++].text;
  }

  std::vector<std::string> level_binders() {
    std::vector<std::string> out;
    if (!accept("@{")) return out;
    while (!accept("}")) out.push_back(ident());
    return out;
  }

  Level level_atom() {
    if (peek().kind == Token::Number) return Level(static_cast<uint32_t>(std::stoul(toks_[pos_++].text)));
    if (accept_word("max")) {
      expect("(");
      Level a = level();
      expect(",");
      Level b = level();
      expect(")");
      return Level::max(a, b);
    }
    if (accept("(")) {
      Level l = level();
      expect(")");
      return l;
    }
    std::string n = ident();
    for (size_t i = 0; i < levels_.size(); ++i)
      if (levels_[i] == n) return Level::param(static_cast<uint32_t>(i));
    fail("unknown universe variable " + n);
  }

  Level level() {
    Level l = level_atom();
    while (accept("+")) {
      if (peek().kind != Token::Number) fail("expected a number after '+'");
      l = l.succ(static_cast<uint32_t>(std::stoul(toks_[pos_++].text)));
    }
    return l;
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Token::Number) return true;
    if (t.kind == Token::Sym) return t.text == "(";
    if (t.kind == Token::Ident) return t.text == "Type" || !reserved().count(t.text);
    return false;
  }

  // Binder groups: `x y : T` or `(x y : T) (z : U)`.
  std::vector<std::pair<std::string, Term>> binders() {
    std::vector<std::pair<std::string, Term>> out;
    auto group = [&](bool paren) {
      std::vector<std::string> names;
      while (peek().kind == Token::Ident && !reserved().count(peek().text)) names.push_back(ident());
      if (names.empty()) fail("expected a binder name");
      expect(":");
      Term ty = term();
      if (paren) expect(")");
      // The type was parsed before the group's names were bound, so each copy
      // is shifted past the names bound earlier in the same group.
      for (size_t j = 0; j < names.size(); ++j) {
        out.push_back({names[j], shift(ty, static_cast<int64_t>(j), 0)});
        scope_.push_back(names[j]);
      }
    };
    if (peek().kind == Token::Sym && peek().text == "(") {
      while (accept("(")) group(true);
    } else {
      group(false);
    }
    return out;
  }

  Term term() {
    if (accept_word("fun")) {
      size_t mark = scope_.size();
      auto bs = binders();
      expect("=>");
      Term body = term();
      scope_.resize(mark);
      for (size_t i = bs.size(); i-- > 0;) body = mk_lam(bs[i].first, bs[i].second, body);
      return body;
    }
    if (accept_word("forall")) {
      size_t mark = scope_.size();
      auto bs = binders();
      expect(",");
      Term body = term();
      scope_.resize(mark);
      for (size_t i = bs.size(); i-- > 0;) body = mk_pi(bs[i].first, bs[i].second, body);
      return body;
    }
    if (accept_word("let")) {
      std::string n = ident();
      expect(":");
      Term ty = term();
      expect(":=");
      Term val = term();
      expect_word("in");
      (void)ty;
      scope_.push_back(n);
      Term body = term();
      scope_.pop_back();
      // Transparent: the body sees the value, not an opaque variable.
      return instantiate(body, val);
    }
    Term lhs = app();
    if (accept("->")) {
      scope_.push_back("");
      Term rhs = term();
      scope_.pop_back();
      return mk_pi("_", lhs, rhs);
    }
    return lhs;
  }

  Term app() {
    Term t = atom();
    while (starts_atom()) t = mk_app(t, atom());
    return t;
  }

  Term atom() {
    const Token& t = peek();
    if (t.kind == Token::Number) {
      ++pos_;
      uint64_t n = std::stoull(t.text);
      if (!accept("%")) parse_error("numeric literal needs a type annotation such as %nat", t.line, t.col);
      std::string ty = ident();
      if (ty == "nat") return mk_nat(n);
      if (ty == "N") return mk_N(n);
      if (ty == "positive") return mk_pos(n);
      if (ty == "int16") {
        if (n > 0xffff) parse_error("int16 literal out of range", t.line, t.col);
        return mk_int(static_cast<uint16_t>(n));
      }
      parse_error("unknown literal annotation %" + ty, t.line, t.col);
    }
    if (accept("(")) {
      Term inner = term();
      expect(")");
      return inner;
    }
    if (accept_word("Type")) {
      if (accept("@{")) {
        Level l = level();
        expect("}");
        return mk_sort(l);
      }
      return mk_type(0);
    }
    std::string n = ident();
    for (size_t i = scope_.size(); i-- > 0;)
      if (scope_[i] == n) return mk_var(static_cast<uint32_t>(scope_.size() - 1 - i));
    std::vector<Level> ls;
    if (accept("@{")) {
      while (!accept("}")) ls.push_back(level());
    }
    return mk_const(n, std::move(ls));
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<std::string> scope_;
  std::vector<std::string> levels_;
};

// ---------------------------------------------------------------- printing

void collect_consts(const Term& t, std::set<std::string>& out) {
  for_each_const(t, [&](const Term& c) { out.insert(c->name); });
}

class Printer {
 public:
  explicit Printer(const PrintOptions& o) : opts_(o), names_(o.names) {}

  std::string run(const Term& t) {
    std::ostringstream os;
    go(os, t, 0);
    return os.str();
  }

 private:
  std::string fresh(const std::string& hint, const Term& body, bool used) {
    std::string base = hint.empty() || hint == "_" ? (used ? "x" : "_") : hint;
    if (base == "_") return base;
    std::set<std::string> consts;
    collect_consts(body, consts);
    auto taken = [&](const std::string& n) {
      if (consts.count(n) || reserved().count(n)) return true;
      for (auto& s : names_)
        if (s == n) return true;
      return false;
    };
    if (!taken(base)) return base;
    for (int k = 0;; ++k) {
      std::string n = base + std::to_string(k);
      if (!taken(n)) return n;
    }
  }

  std::string level_str(const Level& l) const { return l.str(opts_.level_names); }

  bool literal(std::ostream& os, const Term& t) {
    if (!opts_.literals) return false;
    if (t->kind == Kind::App) {
      if (auto n = try_read_nat(t)) {
        os << *n << "%nat";
        return true;
      }
      if (auto n = try_read_N(t)) {
        os << *n << "%N";
        return true;
      }
    }
    return false;
  }

  void go(std::ostream& os, const Term& t, int prec) {
    switch (t->kind) {
      case Kind::Sort:
        if (t->level == Level(0))
          os << "Type";
        else
          os << "Type@{" << level_str(t->level) << "}";
        return;
      case Kind::Var:
        if (t->index < names_.size())
          os << names_[names_.size() - 1 - t->index];
        else
          os << "#" << t->index;
        return;
      case Kind::Int: os << t->index << "%int16"; return;
      case Kind::Const:
        os << t->name;
        if (!t->levels.empty()) {
          os << "@{";
          for (size_t i = 0; i < t->levels.size(); ++i) os << (i ? " " : "") << level_str(t->levels[i]);
          os << "}";
        }
        return;
      case Kind::App: {
        if (literal(os, t)) return;
        std::vector<Term> args;
        Term h = spine(t, args);
        if (prec > 1) os << "(";
        go(os, h, 2);
        for (auto& a : args) {
          os << " ";
          go(os, a, 2);
        }
        if (prec > 1) os << ")";
        return;
      }
      case Kind::Lam: {
        if (prec > 0) os << "(";
        os << "fun ";
        Term cur = t;
        size_t pushed = 0;
        bool first = true;
        while (cur->kind == Kind::Lam) {
          std::string n = fresh(cur->name, cur->b, has_loose(cur->b, 0));
          os << (first ? "" : " ") << "(" << n << " : ";
          go(os, cur->a, 0);
          os << ")";
          names_.push_back(n);
          ++pushed;
          first = false;
          cur = cur->b;
        }
        os << " => ";
        go(os, cur, 0);
        names_.resize(names_.size() - pushed);
        if (prec > 0) os << ")";
        return;
      }
      case Kind::Pi: {
        if (prec > 0) os << "(";
        if (!has_loose(t->b, 0)) {
          go(os, t->a, 1);
          os << " -> ";
          names_.push_back("_");
          go(os, t->b, 0);
          names_.pop_back();
        } else {
          os << "forall ";
          Term cur = t;
          size_t pushed = 0;
          bool first = true;
          while (cur->kind == Kind::Pi && has_loose(cur->b, 0)) {
            std::string n = fresh(cur->name, cur->b, true);
            os << (first ? "" : " ") << "(" << n << " : ";
            go(os, cur->a, 0);
            os << ")";
            names_.push_back(n);
            ++pushed;
            first = false;
            cur = cur->b;
          }
          os << ", ";
          go(os, cur, 0);
          names_.resize(names_.size() - pushed);
        }
        if (prec > 0) os << ")";
        return;
      }
    }
  }

  const PrintOptions& opts_;
  std::vector<std::string> names_;
};

std::string level_binder_str(const std::vector<std::string>& ls) {
  if (ls.empty()) return "";
  std::string s = "@{";
  for (size_t i = 0; i < ls.size(); ++i) s += (i ? " " : "") + ls[i];
  return s + "}";
}

}  // namespace

std::vector<Decl> parse_module(std::string_view text) {
  Parser p(text);
  std::vector<Decl> out;
  while (!p.at_end()) out.push_back(p.decl());
  return out;
}

Term parse_term(std::string_view text, const std::vector<std::string>& level_params) {
  Parser p(text);
  return p.closed_term(level_params);
}

std::string print_term(const Term& t, const PrintOptions& opts) { return Printer(opts).run(t); }

std::string print_decl(const Decl& d) {
  PrintOptions o;
  o.level_names = &d.level_params;
  auto pt = [&](const Term& t) { return print_term(t, o); };
  std::string lv = level_binder_str(d.level_params);
  switch (d.kind) {
    case Decl::Kind::Def: return "def " + d.name + lv + " : " + pt(d.type) + " := " + pt(*d.body);
    case Decl::Kind::Axiom: return "axiom " + d.name + lv + " : " + pt(d.type);
    case Decl::Kind::Trusted: return "trusted " + d.name + lv + " : " + pt(d.type);
    case Decl::Kind::Primitive: return "primitive " + d.name + lv + " : " + pt(d.type);
    case Decl::Kind::Self:
      return "self " + d.name + lv + (d.body ? " := " + pt(*d.body) : std::string());
    case Decl::Kind::RelateType:
      return "relate type " + d.name + " " + d.other + " via " + pt(d.equiv) + " rel " + pt(d.rel) +
             " coh " + pt(d.coh);
    case Decl::Kind::RelateTerm:
      return "relate term " + d.name + " " + d.other + " by " + (d.proof ? pt(d.proof) : "trusted");
    case Decl::Kind::Transport:
      return "transport " + d.name + " from " + d.other +
             (d.mode == TransportMode::WhiteBox ? " whitebox" : " blackbox");
    case Decl::Kind::Goal: return "goal " + d.name + " : " + pt(d.type) + " by compute";
  }
  return "";
}

std::string print_module(const std::vector<Decl>& decls) {
  std::string s;
  for (auto& d : decls) s += print_decl(d) + "\n";
  return s;
}

std::string describe(const Error& e) {
  std::string s = std::string(error_kind_name(e.kind)) + ": " + e.what();
  PrintOptions o;
  if (e.subject) s += "\n  term: " + print_term(e.subject, o);
  if (e.expected) s += "\n  expected: " + print_term(e.expected, o);
  if (e.actual) s += "\n  actual: " + print_term(e.actual, o);
  return s;
}

}  // namespace uptrans
