#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "rvcsim/isa.hpp"

using namespace rvcsim;

TEST(IsCompressed, LowTwoBitsRule) {
  EXPECT_TRUE(is_compressed(0x4505));
  EXPECT_FALSE(is_compressed(0x0513));
  EXPECT_TRUE(is_compressed(0x0000));
}

TEST(Decode32, Examples) {
  const DecodedInst a = decode32(0x00100513);
  EXPECT_EQ(a.op, Op::ADDI);
  EXPECT_EQ(a.rd, 10);
  EXPECT_EQ(a.rs1, 0);
  EXPECT_EQ(a.imm, 1);
  EXPECT_FALSE(a.comp);
  EXPECT_EQ(a.len, 4);

  const DecodedInst nop = decode32(0x00000013);
  EXPECT_EQ(nop.op, Op::ADDI);
  EXPECT_EQ(nop.rd, 0);
  EXPECT_EQ(nop.imm, 0);

  EXPECT_EQ(decode32(0xFFFFFFFF).op, Op::ILLEGAL);
}

TEST(Decode32, FenceIsNopAndCountersAreReadable) {
  EXPECT_EQ(decode32(0x0ff0000f).op, Op::FENCE);
  EXPECT_EQ(decode32(0x0000100f).op, Op::FENCE);  // fence.i
  const DecodedInst rd = decode32(0xc0002573);      // csrrs a0, cycle, x0
  EXPECT_EQ(rd.op, Op::CSRR);
  EXPECT_EQ(rd.rd, 10);
  EXPECT_EQ(rd.imm, 0xC00);
  EXPECT_EQ(decode32(0x30002573).op, Op::ILLEGAL);  // mstatus
  EXPECT_EQ(decode32(0xc0001573).op, Op::ILLEGAL);  // csrrw on a counter
  EXPECT_EQ(decode32(0x00000073).op, Op::ECALL);
  EXPECT_EQ(decode32(0x00100073).op, Op::EBREAK);
}

TEST(Decompress, Examples) {
  EXPECT_EQ(decompress(0x4505), 0x00100513u);
  EXPECT_EQ(decompress(0x8082), 0x00008067u);
  EXPECT_EQ(decompress(0x0001), 0x00000013u);
}

// Expansions as printed by a standard RV32IC disassembler.
TEST(Decompress, ToolchainExpansions) {
  struct Case { Half h; Word w; };
  const Case cases[] = {
      {0x0040, 0x00410413},  // c.addi4spn s0, sp, 4
      {0x4188, 0x0005a503},  // c.lw a0, 0(a1)
      {0xc188, 0x00a5a023},  // c.sw a0, 0(a1)
      {0xa001, 0x0000006f},  // c.j 0
      {0x852e, 0x00b00533},  // c.mv a0, a1
      {0x952e, 0x00b50533},  // c.add a0, a1
      {0x9002, 0x00100073},  // c.ebreak
      {0x40b2, 0x00c12083},  // c.lwsp ra, 12(sp)
      {0xc606, 0x00112623},  // c.swsp ra, 12(sp)
      {0x1141, 0xff010113},  // c.addi sp, -16
      {0x7179, 0xfd010113},  // c.addi16sp sp, -48
      {0x6785, 0x000017b7},  // c.lui a5, 0x1
      {0x8385, 0x0017d793},  // c.srli a5, 1
      {0x9782, 0x000780e7},  // c.jalr a5
      {0x57fd, 0xfff00793},  // c.li a5, -1
  };
  for (const auto& c : cases) EXPECT_EQ(decompress(c.h), c.w) << std::hex << c.h;
}

TEST(Decompress, RejectsFullWidthHalfwords) {
  EXPECT_THROW(decompress(0x0513), std::invalid_argument);
}

TEST(Decompress, ReservedFormsAreIllegal) {
  EXPECT_EQ(decode32(decompress(0x0000)).op, Op::ILLEGAL);  // all zero
  EXPECT_EQ(decode32(decompress(0x2000)).op, Op::ILLEGAL);  // c.fld
  EXPECT_EQ(decode32(decompress(0x6000)).op, Op::ILLEGAL);  // c.flw
  EXPECT_EQ(decode32(decompress(0x8002)).op, Op::ILLEGAL);  // c.jr x0
  EXPECT_EQ(decode32(decompress(0x6101)).op, Op::ILLEGAL);  // c.addi16sp with imm 0
  EXPECT_EQ(decode32(decompress(0x9c21)).op, Op::ILLEGAL);  // c.subw (RV64)
}

TEST(Decode16, Examples) {
  const DecodedInst li = decode16(0x4505);
  EXPECT_EQ(li.op, Op::ADDI);
  EXPECT_EQ(li.rd, 10);
  EXPECT_EQ(li.rs1, 0);
  EXPECT_EQ(li.imm, 1);
  EXPECT_TRUE(li.comp);
  EXPECT_EQ(li.len, 2);

  const DecodedInst jr = decode16(0x8082);
  EXPECT_EQ(jr.op, Op::JALR);
  EXPECT_EQ(jr.rd, 0);
  EXPECT_EQ(jr.rs1, 1);
  EXPECT_EQ(jr.imm, 0);
  EXPECT_TRUE(jr.comp);

  const DecodedInst zero = decode16(0x0000);
  EXPECT_EQ(zero.op, Op::ILLEGAL);
  EXPECT_TRUE(zero.comp);
}

TEST(Decode16, MatchesDecompressThenDecode32Exhaustively) {
  const auto t0 = std::chrono::steady_clock::now();
  unsigned checked = 0, illegal = 0;
  for (unsigned h = 0; h < 0x10000; ++h) {
    if (!is_compressed(static_cast<Half>(h))) continue;
    const DecodedInst direct = decode16(static_cast<Half>(h));
    const DecodedInst via = decode32(decompress(static_cast<Half>(h)));
    ASSERT_EQ(direct.op == Op::ILLEGAL, via.op == Op::ILLEGAL) << std::hex << h;
    if (direct.op == Op::ILLEGAL) {
      ++illegal;
      continue;
    }
    ASSERT_TRUE(direct.same_semantics(via)) << std::hex << h << ": " << disassemble(direct) << " vs "
                                            << disassemble(via);
    ASSERT_TRUE(direct.comp);
    ASSERT_EQ(direct.len, 2);
    ++checked;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(checked + illegal, 49152u);
  EXPECT_GT(checked, illegal);
  EXPECT_LT(secs, 1.0);
}

TEST(Encode, Examples) {
  const DecodedInst li = asm_::i(Op::ADDI, 10, 0, 1);
  const RawInst c = encode(li, Form::Compressed);
  EXPECT_EQ(c.bits, 0x4505u);
  EXPECT_EQ(c.len, 2);
  const RawInst f = encode(li, Form::Full);
  EXPECT_EQ(f.bits, 0x00100513u);
  EXPECT_EQ(f.len, 4);
  try {
    encode(asm_::i(Op::ADDI, 10, 0, 100), Form::Compressed);
    FAIL() << "expected EncodeError";
  } catch (const EncodeError& e) {
    EXPECT_NE(std::string(e.what()).find("not compressible"), std::string::npos);
  }
}

TEST(Encode, CompressedRoundTripOverAllLegalHalfwords) {
  unsigned reencoded = 0;
  for (unsigned h = 0; h < 0x10000; ++h) {
    if (!is_compressed(static_cast<Half>(h))) continue;
    const DecodedInst d = decode16(static_cast<Half>(h));
    if (d.op == Op::ILLEGAL) continue;
    const auto back = try_encode16(d);
    if (!back) continue;  // HINT encodings have no canonical compressed form
    ASSERT_TRUE(decode16(*back).same_semantics(d)) << std::hex << h;
    ++reencoded;
  }
  EXPECT_GT(reencoded, 25000u);
}

TEST(Encode, FullRoundTripOverRandomWords) {
  std::mt19937 rng(7);
  unsigned legal = 0;
  for (int n = 0; n < 200000; ++n) {
    const Word w = rng() | 0b11u;
    const DecodedInst d = decode32(w);
    if (d.op == Op::ILLEGAL) continue;
    ++legal;
    const Word back = encode32(d);
    ASSERT_TRUE(decode32(back).same_semantics(d)) << std::hex << w;
    const RawInst raw = encode(d, Form::Full);
    ASSERT_EQ(raw.len, 4);
  }
  EXPECT_GT(legal, 10000u);
}

TEST(Encode, LengthLaw) {
  std::mt19937 rng(11);
  for (int n = 0; n < 20000; ++n) {
    const Word w = rng() | 0b11u;
    const DecodedInst d = decode32(w);
    if (d.op == Op::ILLEGAL) continue;
    if (auto h = try_encode16(d)) {
      EXPECT_TRUE(is_compressed(*h));
      EXPECT_EQ(encode(d, Form::Compressed).len, 2);
    }
    EXPECT_FALSE(is_compressed(static_cast<Half>(encode(d, Form::Full).bits)));
  }
}

TEST(Disassemble, Layout) {
  EXPECT_EQ(disassemble(decode32(0x00100513)), "ADDI x10, x0, x0, 1");
}
