#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rvcsim {

using Addr = std::uint32_t;
using Word = std::uint32_t;
using Half = std::uint16_t;

enum class Op : std::uint8_t {
  LUI, AUIPC, JAL, JALR,
  BEQ, BNE, BLT, BGE, BLTU, BGEU,
  LB, LH, LW, LBU, LHU,
  SB, SH, SW,
  ADDI, SLTI, SLTIU, XORI, ORI, ANDI, SLLI, SRLI, SRAI,
  ADD, SUB, SLL, SLT, SLTU, XOR, SRL, SRA, OR, AND,
  FENCE, ECALL, EBREAK,
  CSRR,  // read-only counter access (csrrs rd, csr, x0); imm holds the CSR number
  ILLEGAL,
};

std::string_view op_name(Op op);

// Counter CSRs accepted by CSRR.
inline constexpr std::uint32_t kCsrCycle = 0xC00;
inline constexpr std::uint32_t kCsrTime = 0xC01;
inline constexpr std::uint32_t kCsrInstret = 0xC02;
inline constexpr std::uint32_t kCsrCycleH = 0xC80;
inline constexpr std::uint32_t kCsrTimeH = 0xC81;
inline constexpr std::uint32_t kCsrInstretH = 0xC82;

// Word produced by decompress() for reserved or unsupported compressed
// encodings; decode32 reports it as ILLEGAL.
inline constexpr Word kIllegalWord = 0xFFFFFFFFu;

/// One instruction after decode. Register and immediate fields that the
/// operation does not use are zero, so two decodes of the same semantics
/// compare equal field by field.
struct DecodedInst {
  Op op = Op::ILLEGAL;
  std::uint8_t rd = 0;
  std::uint8_t rs1 = 0;
  std::uint8_t rs2 = 0;
  std::int32_t imm = 0;
  bool comp = false;
  std::uint8_t len = 4;
  Word raw = 0;  // original bits (low 16 when compressed)

  bool is_load() const { return op >= Op::LB && op <= Op::LHU; }
  bool is_store() const { return op >= Op::SB && op <= Op::SW; }
  bool is_cond_branch() const { return op >= Op::BEQ && op <= Op::BGEU; }
  bool is_jump() const { return op == Op::JAL || op == Op::JALR; }
  bool is_control() const { return is_cond_branch() || is_jump(); }
  bool is_halt() const { return op == Op::ECALL || op == Op::EBREAK; }
  bool writes_rd() const;
  bool reads_rs1() const;
  bool reads_rs2() const;

  /// (op, rd, rs1, rs2, imm) equality; ignores comp/len/raw.
  bool same_semantics(const DecodedInst& other) const {
    return op == other.op && rd == other.rd && rs1 == other.rs1 &&
           rs2 == other.rs2 && imm == other.imm;
  }
};

struct RawInst {
  Word bits = 0;
  std::uint8_t len = 4;
};

constexpr bool is_compressed(Half halfword) { return (halfword & 0b11u) != 0b11u; }

DecodedInst decode32(Word word);
DecodedInst decode16(Half halfword);
/// Decodes either length from the raw bits.
DecodedInst decode(RawInst raw);

/// Expands a compressed instruction to its RV32I equivalent. Reserved and
/// unsupported (floating-point) encodings expand to kIllegalWord. Throws
/// std::invalid_argument if the halfword is not a compressed encoding.
Word decompress(Half halfword);

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Form { Full, Compressed };

/// Encodes the semantic fields of inst. Throws EncodeError("not compressible")
/// when a compressed form is requested but no RV32C encoding fits.
RawInst encode(const DecodedInst& inst, Form form);
Word encode32(const DecodedInst& inst);
std::optional<Half> try_encode16(const DecodedInst& inst);

/// "OP rd, rs1, rs2, imm", e.g. "ADDI x10, x0, x0, 1".
std::string disassemble(const DecodedInst& inst);

// Convenience constructors for building instruction descriptions.
namespace asm_ {
DecodedInst r(Op op, unsigned rd, unsigned rs1, unsigned rs2);
DecodedInst i(Op op, unsigned rd, unsigned rs1, std::int32_t imm);
DecodedInst s(Op op, unsigned rs1, unsigned rs2, std::int32_t imm);  // store: rs2 -> imm(rs1)
DecodedInst b(Op op, unsigned rs1, unsigned rs2, std::int32_t offset);
DecodedInst u(Op op, unsigned rd, std::int32_t value);  // value carries the low 12 bits as zero
DecodedInst jal(unsigned rd, std::int32_t offset);
DecodedInst jalr(unsigned rd, unsigned rs1, std::int32_t imm);
DecodedInst csrr(unsigned rd, std::uint32_t csr);
DecodedInst nop();
DecodedInst ecall();
DecodedInst ebreak();
}  // namespace asm_

}  // namespace rvcsim
