#include "uptrans/literals.hpp"

#include "uptrans/errors.hpp"

namespace uptrans {

namespace {

const Term& c_O() { static const Term t = mk_const("O"); return t; }
const Term& c_S() { static const Term t = mk_const("S"); return t; }
const Term& c_xH() { static const Term t = mk_const("xH"); return t; }
const Term& c_xO() { static const Term t = mk_const("xO"); return t; }
const Term& c_xI() { static const Term t = mk_const("xI"); return t; }
const Term& c_N0() { static const Term t = mk_const("N0"); return t; }
const Term& c_Npos() { static const Term t = mk_const("Npos"); return t; }

[[noreturn]] void not_literal(const Term& t, const char* what) {
  auto e = make_error(ErrorKind::NotALiteral, std::string("not a ") + what + " literal");
  e.subject = t;
  throw e;
}

}  // namespace

Term mk_nat(uint64_t n) {
  if (n > (uint64_t{1} << 16))
    throw make_error(ErrorKind::Usage, "unary literal above 2^16: " + std::to_string(n));
  Term t = c_O();
  for (uint64_t i = 0; i < n; ++i) t = mk_app(c_S(), t);
  return t;
}

Term mk_pos(uint64_t n) {
  if (n == 0) throw make_error(ErrorKind::Usage, "positive literal must be >= 1");
  if (n == 1) return c_xH();
  return mk_app(n % 2 ? c_xI() : c_xO(), mk_pos(n / 2));
}

Term mk_N(uint64_t n) { return n == 0 ? c_N0() : mk_app(c_Npos(), mk_pos(n)); }

Term mk_bool(bool b) {
  static const Term t = mk_const("true"), f = mk_const("false");
  return b ? t : f;
}

std::optional<uint64_t> try_read_nat(const Term& t) {
  uint64_t n = 0;
  const Node* cur = t.get();
  while (cur->kind == Kind::App && cur->a->kind == Kind::Const && cur->a->name == "S") {
    ++n;
    cur = cur->b.get();
  }
  if (cur->kind == Kind::Const && cur->name == "O") return n;
  return std::nullopt;
}

uint64_t read_nat(const Term& t) {
  if (auto n = try_read_nat(t)) return *n;
  not_literal(t, "nat");
}

namespace {

std::optional<uint64_t> try_read_pos(const Term& t, int depth) {
  if (depth > 63) return std::nullopt;
  if (t->kind == Kind::Const && t->name == "xH") return 1;
  if (t->kind == Kind::App && t->a->kind == Kind::Const) {
    bool one = t->a->name == "xI";
    if (!one && t->a->name != "xO") return std::nullopt;
    auto r = try_read_pos(t->b, depth + 1);
    if (!r) return std::nullopt;
    return *r * 2 + (one ? 1 : 0);
  }
  return std::nullopt;
}

}  // namespace

uint64_t read_pos(const Term& t) {
  if (auto n = try_read_pos(t, 0)) return *n;
  not_literal(t, "positive");
}

std::optional<uint64_t> try_read_N(const Term& t) {
  if (t->kind == Kind::Const && t->name == "N0") return 0;
  if (t->kind == Kind::App && is_const(t->a, "Npos")) return try_read_pos(t->b, 0);
  return std::nullopt;
}

uint64_t read_N(const Term& t) {
  if (auto n = try_read_N(t)) return *n;
  not_literal(t, "N");
}

bool read_bool(const Term& t) {
  if (is_const(t, "true")) return true;
  if (is_const(t, "false")) return false;
  not_literal(t, "bool");
}

uint16_t read_int16(const Term& t) {
  if (t->kind == Kind::Int) return static_cast<uint16_t>(t->index);
  not_literal(t, "int16");
}

uint16_t prim_eval(PrimOp op, uint16_t x, uint16_t y) {
  switch (op) {
    case PrimOp::Lsl: return y >= 16 ? 0 : static_cast<uint16_t>(uint32_t{x} << y);
    case PrimOp::Add16: return static_cast<uint16_t>(uint32_t{x} + y);
    case PrimOp::Mul16: return static_cast<uint16_t>(uint32_t{x} * y);
  }
  return 0;
}

std::optional<PrimOp> prim_op(const std::string& name) {
  if (name == "lsl") return PrimOp::Lsl;
  if (name == "add16") return PrimOp::Add16;
  if (name == "mul16") return PrimOp::Mul16;
  return std::nullopt;
}

}  // namespace uptrans
