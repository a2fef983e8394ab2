#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "uptrans/term.hpp"

namespace uptrans {

inline constexpr uint64_t kLiteralBound = uint64_t{1} << 32;

Term mk_nat(uint64_t n);
Term mk_pos(uint64_t n);  // n >= 1
Term mk_N(uint64_t n);
Term mk_bool(bool b);

// Decoders throw NotALiteral on anything that is not a closed
// constructor tree of the right type.
uint64_t read_nat(const Term& t);
uint64_t read_pos(const Term& t);
uint64_t read_N(const Term& t);
bool read_bool(const Term& t);
uint16_t read_int16(const Term& t);

std::optional<uint64_t> try_read_nat(const Term& t);
std::optional<uint64_t> try_read_N(const Term& t);

enum class PrimOp { Lsl, Add16, Mul16 };

// Host semantics modulo 2^16; a shift by 16 or more gives 0.
uint16_t prim_eval(PrimOp op, uint16_t x, uint16_t y);
std::optional<PrimOp> prim_op(const std::string& name);

}  // namespace uptrans
