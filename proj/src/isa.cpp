#include "rvcsim/isa.hpp"

#include <array>
#include <cstdio>
#include <span>

namespace rvcsim {

namespace {

constexpr std::uint32_t bits(std::uint32_t v, unsigned hi, unsigned lo) {
  return (v >> lo) & ((1u << (hi - lo + 1)) - 1u);
}

constexpr std::int32_t sext(std::uint32_t v, unsigned width) {
  const std::uint32_t m = 1u << (width - 1);
  return static_cast<std::int32_t>((v ^ m) - m);
}

// Compressed immediate layouts as (halfword bit -> immediate bit) pairs.
struct BitMove {
  std::uint8_t hbit;
  std::uint8_t ibit;
};

constexpr std::array<BitMove, 8> kAddi4spnImm{{{12, 5}, {11, 4}, {10, 9}, {9, 8}, {8, 7}, {7, 6}, {6, 2}, {5, 3}}};
constexpr std::array<BitMove, 5> kLwSwImm{{{12, 5}, {11, 4}, {10, 3}, {6, 2}, {5, 6}}};
constexpr std::array<BitMove, 6> kCiImm{{{12, 5}, {6, 4}, {5, 3}, {4, 2}, {3, 1}, {2, 0}}};
constexpr std::array<BitMove, 11> kCjImm{
    {{12, 11}, {11, 4}, {10, 9}, {9, 8}, {8, 10}, {7, 6}, {6, 7}, {5, 3}, {4, 2}, {3, 1}, {2, 5}}};
constexpr std::array<BitMove, 6> kAddi16spImm{{{12, 9}, {6, 4}, {5, 6}, {4, 8}, {3, 7}, {2, 5}}};
constexpr std::array<BitMove, 6> kLuiImm{{{12, 17}, {6, 16}, {5, 15}, {4, 14}, {3, 13}, {2, 12}}};
constexpr std::array<BitMove, 8> kCbImm{{{12, 8}, {11, 4}, {10, 3}, {6, 7}, {5, 6}, {4, 2}, {3, 1}, {2, 5}}};
constexpr std::array<BitMove, 6> kLwspImm{{{12, 5}, {6, 4}, {5, 3}, {4, 2}, {3, 7}, {2, 6}}};
constexpr std::array<BitMove, 6> kSwspImm{{{12, 5}, {11, 4}, {10, 3}, {9, 2}, {8, 7}, {7, 6}}};

std::uint32_t gather(Half h, std::span<const BitMove> map) {
  std::uint32_t v = 0;
  for (auto m : map) v |= ((h >> m.hbit) & 1u) << m.ibit;
  return v;
}

Half scatter(std::uint32_t imm, std::span<const BitMove> map) {
  std::uint32_t h = 0;
  for (auto m : map) h |= ((imm >> m.ibit) & 1u) << m.hbit;
  return static_cast<Half>(h);
}

// RV32I instruction formats.
Word r_type(unsigned f7, unsigned rs2, unsigned rs1, unsigned f3, unsigned rd, unsigned opc) {
  return (f7 << 25) | (rs2 << 20) | (rs1 << 15) | (f3 << 12) | (rd << 7) | opc;
}
Word i_type(std::int32_t imm, unsigned rs1, unsigned f3, unsigned rd, unsigned opc) {
  return (static_cast<Word>(imm) << 20) | (rs1 << 15) | (f3 << 12) | (rd << 7) | opc;
}
Word s_type(std::int32_t imm, unsigned rs2, unsigned rs1, unsigned f3, unsigned opc) {
  const auto u = static_cast<Word>(imm);
  return (bits(u, 11, 5) << 25) | (rs2 << 20) | (rs1 << 15) | (f3 << 12) | (bits(u, 4, 0) << 7) | opc;
}
Word b_type(std::int32_t imm, unsigned rs2, unsigned rs1, unsigned f3, unsigned opc) {
  const auto u = static_cast<Word>(imm);
  return (bits(u, 12, 12) << 31) | (bits(u, 10, 5) << 25) | (rs2 << 20) | (rs1 << 15) | (f3 << 12) |
         (bits(u, 4, 1) << 8) | (bits(u, 11, 11) << 7) | opc;
}
Word u_type(std::int32_t imm, unsigned rd, unsigned opc) {
  return (static_cast<Word>(imm) & 0xFFFFF000u) | (rd << 7) | opc;
}
Word j_type(std::int32_t imm, unsigned rd, unsigned opc) {
  const auto u = static_cast<Word>(imm);
  return (bits(u, 20, 20) << 31) | (bits(u, 10, 1) << 21) | (bits(u, 11, 11) << 20) |
         (bits(u, 19, 12) << 12) | (rd << 7) | opc;
}

constexpr unsigned kOpLui = 0x37, kOpAuipc = 0x17, kOpJal = 0x6F, kOpJalr = 0x67, kOpBranch = 0x63,
                   kOpLoad = 0x03, kOpStore = 0x23, kOpImm = 0x13, kOpReg = 0x33, kOpMiscMem = 0x0F,
                   kOpSystem = 0x73;

DecodedInst make(Op op, unsigned rd, unsigned rs1, unsigned rs2, std::int32_t imm) {
  DecodedInst d;
  d.op = op;
  d.rd = static_cast<std::uint8_t>(rd);
  d.rs1 = static_cast<std::uint8_t>(rs1);
  d.rs2 = static_cast<std::uint8_t>(rs2);
  d.imm = imm;
  return d;
}

DecodedInst illegal() { return DecodedInst{}; }

bool is_counter_csr(std::uint32_t csr) {
  switch (csr) {
    case kCsrCycle: case kCsrTime: case kCsrInstret:
    case kCsrCycleH: case kCsrTimeH: case kCsrInstretH:
      return true;
    default:
      return false;
  }
}

DecodedInst decode32_fields(Word w) {
  const unsigned opc = bits(w, 6, 0);
  const unsigned rd = bits(w, 11, 7);
  const unsigned f3 = bits(w, 14, 12);
  const unsigned rs1 = bits(w, 19, 15);
  const unsigned rs2 = bits(w, 24, 20);
  const unsigned f7 = bits(w, 31, 25);
  const std::int32_t imm_i = static_cast<std::int32_t>(w) >> 20;
  const std::int32_t imm_s = static_cast<std::int32_t>(bits(w, 11, 7) | (bits(w, 31, 25) << 5)) << 20 >> 20;
  const std::int32_t imm_b =
      sext((bits(w, 31, 31) << 12) | (bits(w, 7, 7) << 11) | (bits(w, 30, 25) << 5) | (bits(w, 11, 8) << 1), 13);
  const std::int32_t imm_u = static_cast<std::int32_t>(w & 0xFFFFF000u);
  const std::int32_t imm_j =
      sext((bits(w, 31, 31) << 20) | (bits(w, 19, 12) << 12) | (bits(w, 20, 20) << 11) | (bits(w, 30, 21) << 1), 21);

  switch (opc) {
    case kOpLui: return make(Op::LUI, rd, 0, 0, imm_u);
    case kOpAuipc: return make(Op::AUIPC, rd, 0, 0, imm_u);
    case kOpJal: return make(Op::JAL, rd, 0, 0, imm_j);
    case kOpJalr:
      if (f3 != 0) return illegal();
      return make(Op::JALR, rd, rs1, 0, imm_i);
    case kOpBranch: {
      static constexpr std::array<Op, 8> ops{Op::BEQ, Op::BNE, Op::ILLEGAL, Op::ILLEGAL,
                                             Op::BLT, Op::BGE, Op::BLTU,    Op::BGEU};
      if (ops[f3] == Op::ILLEGAL) return illegal();
      return make(ops[f3], 0, rs1, rs2, imm_b);
    }
    case kOpLoad: {
      static constexpr std::array<Op, 8> ops{Op::LB,  Op::LH,  Op::LW,      Op::ILLEGAL,
                                             Op::LBU, Op::LHU, Op::ILLEGAL, Op::ILLEGAL};
      if (ops[f3] == Op::ILLEGAL) return illegal();
      return make(ops[f3], rd, rs1, 0, imm_i);
    }
    case kOpStore: {
      static constexpr std::array<Op, 3> ops{Op::SB, Op::SH, Op::SW};
      if (f3 > 2) return illegal();
      return make(ops[f3], 0, rs1, rs2, imm_s);
    }
    case kOpImm:
      switch (f3) {
        case 0: return make(Op::ADDI, rd, rs1, 0, imm_i);
        case 2: return make(Op::SLTI, rd, rs1, 0, imm_i);
        case 3: return make(Op::SLTIU, rd, rs1, 0, imm_i);
        case 4: return make(Op::XORI, rd, rs1, 0, imm_i);
        case 6: return make(Op::ORI, rd, rs1, 0, imm_i);
        case 7: return make(Op::ANDI, rd, rs1, 0, imm_i);
        case 1:
          if (f7 != 0) return illegal();
          return make(Op::SLLI, rd, rs1, 0, static_cast<std::int32_t>(rs2));
        case 5:
          if (f7 == 0x00) return make(Op::SRLI, rd, rs1, 0, static_cast<std::int32_t>(rs2));
          if (f7 == 0x20) return make(Op::SRAI, rd, rs1, 0, static_cast<std::int32_t>(rs2));
          return illegal();
      }
      break;
    case kOpReg:
      if (f7 == 0x00) {
        static constexpr std::array<Op, 8> ops{Op::ADD, Op::SLL, Op::SLT, Op::SLTU,
                                               Op::XOR, Op::SRL, Op::OR,  Op::AND};
        return make(ops[f3], rd, rs1, rs2, 0);
      }
      if (f7 == 0x20 && f3 == 0) return make(Op::SUB, rd, rs1, rs2, 0);
      if (f7 == 0x20 && f3 == 5) return make(Op::SRA, rd, rs1, rs2, 0);
      return illegal();
    case kOpMiscMem:
      if (f3 == 0 || f3 == 1) return make(Op::FENCE, 0, 0, 0, 0);
      return illegal();
    case kOpSystem:
      if (w == 0x00000073u) return make(Op::ECALL, 0, 0, 0, 0);
      if (w == 0x00100073u) return make(Op::EBREAK, 0, 0, 0, 0);
      if (f3 == 2 && rs1 == 0 && is_counter_csr(bits(w, 31, 20)))
        return make(Op::CSRR, rd, 0, 0, static_cast<std::int32_t>(bits(w, 31, 20)));
      return illegal();
  }
  return illegal();
}

// Direct RV32C decode, without going through the 32-bit form.
DecodedInst decode16_fields(Half h) {
  const unsigned quadrant = bits(h, 1, 0);
  const unsigned f3 = bits(h, 15, 13);
  const unsigned rd_full = bits(h, 11, 7);
  const unsigned rs2_full = bits(h, 6, 2);
  const unsigned rdp = bits(h, 4, 2) + 8;   // rd' / rs2'
  const unsigned rs1p = bits(h, 9, 7) + 8;  // rs1' / rd'
  const std::int32_t ci_imm = sext((bits(h, 12, 12) << 5) | bits(h, 6, 2), 6);

  if (quadrant == 0) {
    switch (f3) {
      case 0: {
        const std::uint32_t nzuimm = (bits(h, 12, 11) << 4) | (bits(h, 10, 7) << 6) |
                                     (bits(h, 6, 6) << 2) | (bits(h, 5, 5) << 3);
        if (nzuimm == 0) return illegal();
        return make(Op::ADDI, rdp, 2, 0, static_cast<std::int32_t>(nzuimm));
      }
      case 2:
      case 6: {
        const std::uint32_t uimm = (bits(h, 12, 10) << 3) | (bits(h, 6, 6) << 2) | (bits(h, 5, 5) << 6);
        if (f3 == 2) return make(Op::LW, rdp, rs1p, 0, static_cast<std::int32_t>(uimm));
        return make(Op::SW, 0, rs1p, rdp, static_cast<std::int32_t>(uimm));
      }
      default:
        return illegal();
    }
  }

  if (quadrant == 1) {
    switch (f3) {
      case 0: return make(Op::ADDI, rd_full, rd_full, 0, ci_imm);
      case 1:
      case 5: {
        const std::int32_t off =
            sext((bits(h, 12, 12) << 11) | (bits(h, 11, 11) << 4) | (bits(h, 10, 9) << 8) |
                     (bits(h, 8, 8) << 10) | (bits(h, 7, 7) << 6) | (bits(h, 6, 6) << 7) |
                     (bits(h, 5, 3) << 1) | (bits(h, 2, 2) << 5),
                 12);
        return make(Op::JAL, f3 == 1 ? 1 : 0, 0, 0, off);
      }
      case 2: return make(Op::ADDI, rd_full, 0, 0, ci_imm);
      case 3:
        if (rd_full == 2) {
          const std::int32_t nzimm =
              sext((bits(h, 12, 12) << 9) | (bits(h, 6, 6) << 4) | (bits(h, 5, 5) << 6) |
                       (bits(h, 4, 3) << 7) | (bits(h, 2, 2) << 5),
                   10);
          if (nzimm == 0) return illegal();
          return make(Op::ADDI, 2, 2, 0, nzimm);
        } else {
          if (ci_imm == 0) return illegal();
          return make(Op::LUI, rd_full, 0, 0, static_cast<std::int32_t>(static_cast<std::uint32_t>(ci_imm) << 12));
        }
      case 4: {
        const unsigned shamt = (bits(h, 12, 12) << 5) | bits(h, 6, 2);
        switch (bits(h, 11, 10)) {
          case 0:
            if (shamt & 0x20) return illegal();
            return make(Op::SRLI, rs1p, rs1p, 0, static_cast<std::int32_t>(shamt));
          case 1:
            if (shamt & 0x20) return illegal();
            return make(Op::SRAI, rs1p, rs1p, 0, static_cast<std::int32_t>(shamt));
          case 2:
            return make(Op::ANDI, rs1p, rs1p, 0, ci_imm);
          default: {
            if (bits(h, 12, 12)) return illegal();  // C.SUBW/C.ADDW are RV64-only
            static constexpr std::array<Op, 4> ops{Op::SUB, Op::XOR, Op::OR, Op::AND};
            return make(ops[bits(h, 6, 5)], rs1p, rs1p, rdp, 0);
          }
        }
      }
      case 6:
      case 7: {
        const std::int32_t off =
            sext((bits(h, 12, 12) << 8) | (bits(h, 11, 10) << 3) | (bits(h, 6, 5) << 6) |
                     (bits(h, 4, 3) << 1) | (bits(h, 2, 2) << 5),
                 9);
        return make(f3 == 6 ? Op::BEQ : Op::BNE, 0, rs1p, 0, off);
      }
    }
    return illegal();
  }

  // quadrant 2
  switch (f3) {
    case 0: {
      const unsigned shamt = (bits(h, 12, 12) << 5) | bits(h, 6, 2);
      if (shamt & 0x20) return illegal();
      return make(Op::SLLI, rd_full, rd_full, 0, static_cast<std::int32_t>(shamt));
    }
    case 2: {
      if (rd_full == 0) return illegal();
      const std::uint32_t uimm = (bits(h, 12, 12) << 5) | (bits(h, 6, 4) << 2) | (bits(h, 3, 2) << 6);
      return make(Op::LW, rd_full, 2, 0, static_cast<std::int32_t>(uimm));
    }
    case 4:
      if (bits(h, 12, 12) == 0) {
        if (rs2_full == 0) {
          if (rd_full == 0) return illegal();
          return make(Op::JALR, 0, rd_full, 0, 0);
        }
        return make(Op::ADD, rd_full, 0, rs2_full, 0);
      }
      if (rs2_full == 0) {
        if (rd_full == 0) return make(Op::EBREAK, 0, 0, 0, 0);
        return make(Op::JALR, 1, rd_full, 0, 0);
      }
      return make(Op::ADD, rd_full, rd_full, rs2_full, 0);
    case 6: {
      const std::uint32_t uimm = (bits(h, 12, 9) << 2) | (bits(h, 8, 7) << 6);
      return make(Op::SW, 0, 2, rs2_full, static_cast<std::int32_t>(uimm));
    }
    default:
      return illegal();
  }
}

}  // namespace

std::string_view op_name(Op op) {
  static constexpr std::array<std::string_view, 42> names{
      "LUI",  "AUIPC", "JAL",   "JALR",  "BEQ",  "BNE",  "BLT",  "BGE",    "BLTU",   "BGEU", "LB",
      "LH",   "LW",    "LBU",   "LHU",   "SB",   "SH",   "SW",   "ADDI",   "SLTI",   "SLTIU",
      "XORI", "ORI",   "ANDI",  "SLLI",  "SRLI", "SRAI", "ADD",  "SUB",    "SLL",    "SLT",
      "SLTU", "XOR",   "SRL",   "SRA",   "OR",   "AND",  "FENCE", "ECALL", "EBREAK", "CSRR",
      "ILLEGAL"};
  return names[static_cast<std::size_t>(op)];
}

bool DecodedInst::writes_rd() const {
  if (is_store() || is_cond_branch()) return false;
  switch (op) {
    case Op::FENCE: case Op::ECALL: case Op::EBREAK: case Op::ILLEGAL:
      return false;
    default:
      return true;
  }
}

bool DecodedInst::reads_rs1() const {
  switch (op) {
    case Op::LUI: case Op::AUIPC: case Op::JAL: case Op::FENCE:
    case Op::ECALL: case Op::EBREAK: case Op::CSRR: case Op::ILLEGAL:
      return false;
    default:
      return true;
  }
}

bool DecodedInst::reads_rs2() const {
  return is_cond_branch() || is_store() || (op >= Op::ADD && op <= Op::AND);
}

DecodedInst decode32(Word word) {
  DecodedInst d = decode32_fields(word);
  d.comp = false;
  d.len = 4;
  d.raw = word;
  return d;
}

DecodedInst decode16(Half halfword) {
  DecodedInst d = decode16_fields(halfword);
  d.comp = true;
  d.len = 2;
  d.raw = halfword;
  return d;
}

DecodedInst decode(RawInst raw) {
  if (raw.len == 2) return decode16(static_cast<Half>(raw.bits));
  return decode32(raw.bits);
}

Word decompress(Half h) {
  if (!is_compressed(h)) throw std::invalid_argument("decompress: not a compressed instruction");
  const unsigned quadrant = bits(h, 1, 0);
  const unsigned f3 = bits(h, 15, 13);
  const unsigned rd = bits(h, 11, 7);
  const unsigned rs2 = bits(h, 6, 2);
  const unsigned rdp = bits(h, 4, 2) + 8;
  const unsigned rs1p = bits(h, 9, 7) + 8;
  const std::int32_t ci = sext(gather(h, kCiImm), 6);

  if (quadrant == 0) {
    switch (f3) {
      case 0: {
        const auto nz = static_cast<std::int32_t>(gather(h, kAddi4spnImm));
        if (nz == 0) return kIllegalWord;
        return i_type(nz, 2, 0, rdp, kOpImm);
      }
      case 2: return i_type(static_cast<std::int32_t>(gather(h, kLwSwImm)), rs1p, 2, rdp, kOpLoad);
      case 6: return s_type(static_cast<std::int32_t>(gather(h, kLwSwImm)), rdp, rs1p, 2, kOpStore);
      default: return kIllegalWord;
    }
  }
  if (quadrant == 1) {
    switch (f3) {
      case 0: return i_type(ci, rd, 0, rd, kOpImm);
      case 1: return j_type(sext(gather(h, kCjImm), 12), 1, kOpJal);
      case 2: return i_type(ci, 0, 0, rd, kOpImm);
      case 3:
        if (rd == 2) {
          const std::int32_t nz = sext(gather(h, kAddi16spImm), 10);
          if (nz == 0) return kIllegalWord;
          return i_type(nz, 2, 0, 2, kOpImm);
        } else {
          const std::int32_t nz = sext(gather(h, kLuiImm), 18);
          if (nz == 0) return kIllegalWord;
          return u_type(nz, rd, kOpLui);
        }
      case 4: {
        const unsigned sub = bits(h, 11, 10);
        const unsigned shamt = gather(h, kCiImm);
        if (sub == 0 || sub == 1) {
          if (shamt & 0x20) return kIllegalWord;
          return r_type(sub == 0 ? 0x00 : 0x20, shamt, rs1p, 5, rs1p, kOpImm);
        }
        if (sub == 2) return i_type(ci, rs1p, 7, rs1p, kOpImm);
        if (bits(h, 12, 12)) return kIllegalWord;
        switch (bits(h, 6, 5)) {
          case 0: return r_type(0x20, rdp, rs1p, 0, rs1p, kOpReg);
          case 1: return r_type(0x00, rdp, rs1p, 4, rs1p, kOpReg);
          case 2: return r_type(0x00, rdp, rs1p, 6, rs1p, kOpReg);
          default: return r_type(0x00, rdp, rs1p, 7, rs1p, kOpReg);
        }
      }
      case 5: return j_type(sext(gather(h, kCjImm), 12), 0, kOpJal);
      case 6: return b_type(sext(gather(h, kCbImm), 9), 0, rs1p, 0, kOpBranch);
      default: return b_type(sext(gather(h, kCbImm), 9), 0, rs1p, 1, kOpBranch);
    }
  }
  if (quadrant == 2) {
    switch (f3) {
      case 0: {
        const unsigned shamt = gather(h, kCiImm);
        if (shamt & 0x20) return kIllegalWord;
        return r_type(0x00, shamt, rd, 1, rd, kOpImm);
      }
      case 2:
        if (rd == 0) return kIllegalWord;
        return i_type(static_cast<std::int32_t>(gather(h, kLwspImm)), 2, 2, rd, kOpLoad);
      case 4:
        if (bits(h, 12, 12) == 0) {
          if (rs2 == 0) return rd == 0 ? kIllegalWord : i_type(0, rd, 0, 0, kOpJalr);
          return r_type(0, rs2, 0, 0, rd, kOpReg);
        }
        if (rs2 == 0) return rd == 0 ? 0x00100073u : i_type(0, rd, 0, 1, kOpJalr);
        return r_type(0, rs2, rd, 0, rd, kOpReg);
      case 6: return s_type(static_cast<std::int32_t>(gather(h, kSwspImm)), rs2, 2, 2, kOpStore);
      default: return kIllegalWord;
    }
  }
  return kIllegalWord;
}

Word encode32(const DecodedInst& d) {
  const unsigned rd = d.rd, rs1 = d.rs1, rs2 = d.rs2;
  switch (d.op) {
    case Op::LUI: return u_type(d.imm, rd, kOpLui);
    case Op::AUIPC: return u_type(d.imm, rd, kOpAuipc);
    case Op::JAL: return j_type(d.imm, rd, kOpJal);
    case Op::JALR: return i_type(d.imm, rs1, 0, rd, kOpJalr);
    case Op::BEQ: return b_type(d.imm, rs2, rs1, 0, kOpBranch);
    case Op::BNE: return b_type(d.imm, rs2, rs1, 1, kOpBranch);
    case Op::BLT: return b_type(d.imm, rs2, rs1, 4, kOpBranch);
    case Op::BGE: return b_type(d.imm, rs2, rs1, 5, kOpBranch);
    case Op::BLTU: return b_type(d.imm, rs2, rs1, 6, kOpBranch);
    case Op::BGEU: return b_type(d.imm, rs2, rs1, 7, kOpBranch);
    case Op::LB: return i_type(d.imm, rs1, 0, rd, kOpLoad);
    case Op::LH: return i_type(d.imm, rs1, 1, rd, kOpLoad);
    case Op::LW: return i_type(d.imm, rs1, 2, rd, kOpLoad);
    case Op::LBU: return i_type(d.imm, rs1, 4, rd, kOpLoad);
    case Op::LHU: return i_type(d.imm, rs1, 5, rd, kOpLoad);
    case Op::SB: return s_type(d.imm, rs2, rs1, 0, kOpStore);
    case Op::SH: return s_type(d.imm, rs2, rs1, 1, kOpStore);
    case Op::SW: return s_type(d.imm, rs2, rs1, 2, kOpStore);
    case Op::ADDI: return i_type(d.imm, rs1, 0, rd, kOpImm);
    case Op::SLTI: return i_type(d.imm, rs1, 2, rd, kOpImm);
    case Op::SLTIU: return i_type(d.imm, rs1, 3, rd, kOpImm);
    case Op::XORI: return i_type(d.imm, rs1, 4, rd, kOpImm);
    case Op::ORI: return i_type(d.imm, rs1, 6, rd, kOpImm);
    case Op::ANDI: return i_type(d.imm, rs1, 7, rd, kOpImm);
    case Op::SLLI: return r_type(0x00, static_cast<unsigned>(d.imm) & 31, rs1, 1, rd, kOpImm);
    case Op::SRLI: return r_type(0x00, static_cast<unsigned>(d.imm) & 31, rs1, 5, rd, kOpImm);
    case Op::SRAI: return r_type(0x20, static_cast<unsigned>(d.imm) & 31, rs1, 5, rd, kOpImm);
    case Op::ADD: return r_type(0x00, rs2, rs1, 0, rd, kOpReg);
    case Op::SUB: return r_type(0x20, rs2, rs1, 0, rd, kOpReg);
    case Op::SLL: return r_type(0x00, rs2, rs1, 1, rd, kOpReg);
    case Op::SLT: return r_type(0x00, rs2, rs1, 2, rd, kOpReg);
    case Op::SLTU: return r_type(0x00, rs2, rs1, 3, rd, kOpReg);
    case Op::XOR: return r_type(0x00, rs2, rs1, 4, rd, kOpReg);
    case Op::SRL: return r_type(0x00, rs2, rs1, 5, rd, kOpReg);
    case Op::SRA: return r_type(0x20, rs2, rs1, 5, rd, kOpReg);
    case Op::OR: return r_type(0x00, rs2, rs1, 6, rd, kOpReg);
    case Op::AND: return r_type(0x00, rs2, rs1, 7, rd, kOpReg);
    case Op::FENCE: return 0x0000000Fu;
    case Op::ECALL: return 0x00000073u;
    case Op::EBREAK: return 0x00100073u;
    case Op::CSRR: return i_type(d.imm, 0, 2, rd, kOpSystem);
    case Op::ILLEGAL: break;
  }
  throw EncodeError("cannot encode ILLEGAL");
}

namespace {

bool fits_signed(std::int32_t v, unsigned width) {
  const std::int32_t lo = -(1 << (width - 1));
  const std::int32_t hi = (1 << (width - 1)) - 1;
  return v >= lo && v <= hi;
}

bool is_creg(unsigned r) { return r >= 8 && r <= 15; }

Half ci(unsigned f3, unsigned rd, std::uint32_t imm, unsigned quadrant) {
  return static_cast<Half>((f3 << 13) | (rd << 7) | scatter(imm, kCiImm) | quadrant);
}

}  // namespace

std::optional<Half> try_encode16(const DecodedInst& d) {
  const unsigned rd = d.rd, rs1 = d.rs1, rs2 = d.rs2;
  const auto uimm = static_cast<std::uint32_t>(d.imm);
  switch (d.op) {
    case Op::ADDI:
      if (rs1 == 0 && fits_signed(d.imm, 6)) return ci(2, rd, uimm, 1);  // C.LI
      if (rd == rs1 && fits_signed(d.imm, 6)) return ci(0, rd, uimm, 1);  // C.ADDI / C.NOP
      if (rd == 2 && rs1 == 2 && d.imm != 0 && d.imm % 16 == 0 && fits_signed(d.imm, 10))
        return static_cast<Half>((3u << 13) | (2u << 7) | scatter(uimm, kAddi16spImm) | 1u);
      if (rs1 == 2 && is_creg(rd) && d.imm > 0 && d.imm < 1024 && d.imm % 4 == 0)
        return static_cast<Half>((0u << 13) | scatter(uimm, kAddi4spnImm) | ((rd - 8) << 2));
      return std::nullopt;
    case Op::LUI: {
      if (rd == 2 || (d.imm & 0xFFF) != 0) return std::nullopt;
      const std::int32_t hi = d.imm >> 12;
      if (hi == 0 || !fits_signed(hi, 6)) return std::nullopt;
      return static_cast<Half>((3u << 13) | (rd << 7) | scatter(uimm, kLuiImm) | 1u);
    }
    case Op::SLLI:
      if (rd != rs1 || d.imm < 0 || d.imm > 31) return std::nullopt;
      return ci(0, rd, uimm, 2);
    case Op::SRLI:
    case Op::SRAI:
    case Op::ANDI: {
      if (rd != rs1 || !is_creg(rd)) return std::nullopt;
      if (d.op == Op::ANDI ? !fits_signed(d.imm, 6) : (d.imm < 0 || d.imm > 31)) return std::nullopt;
      const unsigned sub = d.op == Op::SRLI ? 0 : d.op == Op::SRAI ? 1 : 2;
      return static_cast<Half>((4u << 13) | (sub << 10) | ((rd - 8) << 7) | scatter(uimm, kCiImm) | 1u);
    }
    case Op::SUB:
    case Op::XOR:
    case Op::OR:
    case Op::AND: {
      if (rd != rs1 || !is_creg(rd) || !is_creg(rs2)) return std::nullopt;
      const unsigned f2 = d.op == Op::SUB ? 0 : d.op == Op::XOR ? 1 : d.op == Op::OR ? 2 : 3;
      return static_cast<Half>((4u << 13) | (3u << 10) | ((rd - 8) << 7) | (f2 << 5) | ((rs2 - 8) << 2) | 1u);
    }
    case Op::ADD:
      if (rs2 == 0) return std::nullopt;
      if (rs1 == 0) return static_cast<Half>((4u << 13) | (rd << 7) | (rs2 << 2) | 2u);  // C.MV
      if (rd == rs1) return static_cast<Half>((4u << 13) | (1u << 12) | (rd << 7) | (rs2 << 2) | 2u);
      return std::nullopt;
    case Op::LW:
      if (rs1 == 2 && rd != 0 && d.imm >= 0 && d.imm < 256 && d.imm % 4 == 0)
        return static_cast<Half>((2u << 13) | (rd << 7) | scatter(uimm, kLwspImm) | 2u);
      if (is_creg(rd) && is_creg(rs1) && d.imm >= 0 && d.imm < 128 && d.imm % 4 == 0)
        return static_cast<Half>((2u << 13) | scatter(uimm, kLwSwImm) | ((rs1 - 8) << 7) | ((rd - 8) << 2));
      return std::nullopt;
    case Op::SW:
      if (rs1 == 2 && d.imm >= 0 && d.imm < 256 && d.imm % 4 == 0)
        return static_cast<Half>((6u << 13) | scatter(uimm, kSwspImm) | (rs2 << 2) | 2u);
      if (is_creg(rs2) && is_creg(rs1) && d.imm >= 0 && d.imm < 128 && d.imm % 4 == 0)
        return static_cast<Half>((6u << 13) | scatter(uimm, kLwSwImm) | ((rs1 - 8) << 7) | ((rs2 - 8) << 2));
      return std::nullopt;
    case Op::JAL:
      if ((rd != 0 && rd != 1) || d.imm % 2 != 0 || !fits_signed(d.imm, 12)) return std::nullopt;
      return static_cast<Half>(((rd == 1 ? 1u : 5u) << 13) | scatter(uimm, kCjImm) | 1u);
    case Op::JALR:
      if (d.imm != 0 || rs1 == 0 || (rd != 0 && rd != 1)) return std::nullopt;
      return static_cast<Half>((4u << 13) | (rd << 12) | (rs1 << 7) | 2u);
    case Op::BEQ:
    case Op::BNE:
      if (rs2 != 0 || !is_creg(rs1) || d.imm % 2 != 0 || !fits_signed(d.imm, 9)) return std::nullopt;
      return static_cast<Half>(((d.op == Op::BEQ ? 6u : 7u) << 13) | ((rs1 - 8) << 7) | scatter(uimm, kCbImm) | 1u);
    case Op::EBREAK:
      return static_cast<Half>(0x9002);
    default:
      return std::nullopt;
  }
}

RawInst encode(const DecodedInst& inst, Form form) {
  if (form == Form::Compressed) {
    auto h = try_encode16(inst);
    if (!h) throw EncodeError("not compressible");
    return RawInst{*h, 2};
  }
  return RawInst{encode32(inst), 4};
}

std::string disassemble(const DecodedInst& d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s x%u, x%u, x%u, %d", op_name(d.op).data(), unsigned{d.rd},
                unsigned{d.rs1}, unsigned{d.rs2}, d.imm);
  return buf;
}

namespace asm_ {
DecodedInst r(Op op, unsigned rd, unsigned rs1, unsigned rs2) { return make(op, rd, rs1, rs2, 0); }
DecodedInst i(Op op, unsigned rd, unsigned rs1, std::int32_t imm) { return make(op, rd, rs1, 0, imm); }
DecodedInst s(Op op, unsigned rs1, unsigned rs2, std::int32_t imm) { return make(op, 0, rs1, rs2, imm); }
DecodedInst b(Op op, unsigned rs1, unsigned rs2, std::int32_t offset) { return make(op, 0, rs1, rs2, offset); }
DecodedInst u(Op op, unsigned rd, std::int32_t value) { return make(op, rd, 0, 0, value); }
DecodedInst jal(unsigned rd, std::int32_t offset) { return make(Op::JAL, rd, 0, 0, offset); }
DecodedInst jalr(unsigned rd, unsigned rs1, std::int32_t imm) { return make(Op::JALR, rd, rs1, 0, imm); }
DecodedInst csrr(unsigned rd, std::uint32_t csr) { return make(Op::CSRR, rd, 0, 0, static_cast<std::int32_t>(csr)); }
DecodedInst nop() { return make(Op::ADDI, 0, 0, 0, 0); }
DecodedInst ecall() { return make(Op::ECALL, 0, 0, 0, 0); }
DecodedInst ebreak() { return make(Op::EBREAK, 0, 0, 0, 0); }
}  // namespace asm_

}  // namespace rvcsim
