#include <gtest/gtest.h>

#include <sstream>

#include "rvcsim/pipeline.hpp"
#include "rvcsim/program_builder.hpp"
#include "rvcsim/refmodel.hpp"

using namespace rvcsim;

namespace {

CoreRun run(const MemoryImage& img, FetchKind f = FetchKind::DualPC, PredictorScheme b = PredictorScheme::Gshare) {
  PipelineConfig cfg;
  cfg.fetch = f;
  cfg.bpred = b;
  return run_core(img, cfg);
}

}  // namespace

TEST(SelectNextPc, Examples) {
  const Addr pc = 0x100;
  PcCandidates c;
  c.stall = {pc, pc + 2};
  c.plus2 = {pc + 2, pc + 4};
  c.plus4 = {pc + 4, pc + 6};
  c.pred = {0x300, 0x302};
  c.truepc = {0x200, 0x202};

  PcControl comp;
  comp.compressed = true;
  EXPECT_EQ(select_next_pc(c, comp), (PcPair{pc + 2, pc + 4}));

  PcControl full;
  EXPECT_EQ(select_next_pc(c, full), (PcPair{pc + 4, pc + 6}));

  PcControl mis;
  mis.mispredict = true;
  mis.stall = true;
  mis.pred_taken = true;
  EXPECT_EQ(select_next_pc(c, mis), (PcPair{0x200, 0x202}));

  PcControl stall;
  stall.stall = true;
  stall.pred_taken = true;
  EXPECT_EQ(select_next_pc(c, stall), (PcPair{pc, pc + 2}));

  PcControl pred;
  pred.pred_taken = true;
  EXPECT_EQ(select_next_pc(c, pred), (PcPair{0x300, 0x302}));
}

TEST(HazardDetect, Examples) {
  const DecodedInst lw_a0 = asm_::i(Op::LW, 10, 2, 0);
  EXPECT_TRUE(hazard_detect(asm_::i(Op::ADDI, 11, 10, 1), lw_a0));
  EXPECT_FALSE(hazard_detect(asm_::i(Op::ADDI, 11, 11, 1), lw_a0));
  EXPECT_FALSE(hazard_detect(asm_::i(Op::ADDI, 11, 0, 1), asm_::i(Op::LW, 0, 2, 0)));
  EXPECT_TRUE(hazard_detect(asm_::s(Op::SW, 2, 10, 0), lw_a0));   // store data
  EXPECT_TRUE(hazard_detect(asm_::b(Op::BEQ, 0, 10, 8), lw_a0));  // rs2
  EXPECT_FALSE(hazard_detect(asm_::u(Op::LUI, 10, 0x1000), lw_a0));
  EXPECT_FALSE(hazard_detect(asm_::i(Op::ADDI, 11, 10, 1), asm_::i(Op::ADDI, 10, 0, 1)));
}

TEST(ResolveBranch, Examples) {
  const auto taken = compute_taken_pc(0x100, 0x80, 0x82, false);
  const PcPair below32{0x104, 0x106};
  const Resolution r1 = resolve_branch(true, taken, below32, 0x104);
  EXPECT_TRUE(r1.mispredict);
  EXPECT_EQ(r1.truepc, (PcPair{0x180, 0x182}));

  const Resolution r2 = resolve_branch(false, taken, below32, 0x104);
  EXPECT_FALSE(r2.mispredict);
  EXPECT_EQ(r2.truepc, (PcPair{0x104, 0x106}));

  const PcPair below16{0x102, 0x104};
  const Resolution r3 = resolve_branch(true, taken, below16, 0x180);
  EXPECT_FALSE(r3.mispredict);
}

TEST(ComputeTakenPc, Examples) {
  EXPECT_EQ(compute_taken_pc(0x100, -8, -6, false), (PcPair{0xF8, 0xFA}));
  EXPECT_EQ(compute_taken_pc(0x1001, 0, 2, true), (PcPair{0x1000, 0x1002}));
  EXPECT_EQ(compute_taken_pc(0x100, 0x20, 0x22, false), (PcPair{0x120, 0x122}));
  EXPECT_EQ(compute_taken_pc(0x1000, 1, 3, true), (PcPair{0x1000, 0x1002}));
}

TEST(Core, TenAddisFillThePipeline) {
  ProgramBuilder pb;
  for (unsigned k = 0; k < 10; ++k) pb.emit(asm_::i(Op::ADDI, 5 + k, 0, static_cast<std::int32_t>(k)));
  pb.exit_with(0);
  const CoreRun r = run(pb.finish());
  ASSERT_GE(r.log.size(), 10u);
  EXPECT_EQ(r.log[0].cycle, 5u);
  EXPECT_EQ(r.log[9].cycle, 14u);
  EXPECT_EQ(r.stats.fetch_misses, 0u);
}

TEST(Core, ExitImmediately) {
  ProgramBuilder pb;
  pb.exit_with(0);
  const CoreRun r = run(pb.finish());
  EXPECT_EQ(r.stats.instructions, 2u);
  EXPECT_EQ(r.status.reason, StopReason::Exit);
  EXPECT_EQ(r.status.exit_code, 0u);
}

namespace {

// beq x0, x0 to `target`; with no predictor the taken branch always
// mispredicts unless its target is the fall-through.
MemoryImage branch_program(bool skip_code) {
  ProgramBuilder pb;
  const auto target = pb.new_label();
  pb.emit(asm_::i(Op::ADDI, 5, 0, 1));
  pb.branch(Op::BEQ, 0, 0, target);
  if (skip_code)
    for (int k = 0; k < 3; ++k) pb.emit(asm_::i(Op::ADDI, 6, 6, 1));
  pb.bind(target);
  pb.emit(asm_::i(Op::ADDI, 7, 0, 1));
  pb.exit_with(0);
  return pb.finish();
}

}  // namespace

TEST(Core, OneMispredictFlushesThreeSlots) {
  const CoreRun mis = run(branch_program(true), FetchKind::DualPC, PredictorScheme::None);
  EXPECT_EQ(mis.stats.mispredicts, 1u);
  EXPECT_EQ(mis.stats.flushes, 1u);
  EXPECT_EQ(mis.stats.flushed_slots, 3u);
  const CoreRun ok = run(branch_program(false), FetchKind::DualPC, PredictorScheme::None);
  EXPECT_EQ(ok.stats.mispredicts, 0u);
  EXPECT_EQ(mis.stats.instructions, ok.stats.instructions);
  EXPECT_EQ(mis.stats.cycles, ok.stats.cycles + 3);
}

namespace {

MemoryImage load_use_program(bool dependent) {
  ProgramBuilder pb;
  pb.li(8, 0x8000);
  pb.emit(asm_::i(Op::LW, 10, 8, 0));
  pb.emit(asm_::r(Op::ADD, 11, dependent ? 10 : 12, dependent ? 10 : 12));
  pb.exit_with(0);
  return pb.finish();
}

}  // namespace

TEST(Core, LoadUseCostsOneCycle) {
  const CoreRun dep = run(load_use_program(true));
  const CoreRun ind = run(load_use_program(false));
  EXPECT_EQ(dep.stats.load_use_stalls, 1u);
  EXPECT_EQ(ind.stats.load_use_stalls, 0u);
  EXPECT_EQ(dep.stats.cycles, ind.stats.cycles + 1);
}

TEST(Core, ForwardingChainsMatchReference) {
  ProgramBuilder pb;
  pb.li(8, 0x8000);
  pb.li(5, 7);
  pb.emit(asm_::s(Op::SW, 8, 5, 0));
  pb.emit(asm_::i(Op::LW, 10, 8, 0));
  pb.emit(asm_::s(Op::SW, 8, 10, 4));   // load -> store data
  pb.emit(asm_::i(Op::LW, 11, 8, 4));
  pb.emit(asm_::nop());
  pb.emit(asm_::r(Op::ADD, 12, 11, 10));  // load two back
  pb.emit(asm_::r(Op::ADD, 13, 12, 12));  // EX -> EX
  pb.emit(asm_::r(Op::ADD, 14, 13, 12));  // EX and MA
  pb.emit(asm_::i(Op::LW, 9, 8, 0));
  pb.emit(asm_::i(Op::LW, 15, 8, 0));
  pb.emit(asm_::r(Op::ADD, 16, 9, 15));   // two loads in flight
  pb.exit_with(0);
  const auto img = pb.finish();
  const RefRun ref = run_reference(img);
  for (auto f : {FetchKind::DualPC, FetchKind::Buffer, FetchKind::Naive}) {
    const CoreRun r = run(img, f);
    EXPECT_EQ(commit_log_text(r.log), commit_log_text(ref.log));
    EXPECT_EQ(r.log.back().regs[16], 14u);
  }
}

TEST(Core, WrongPathIllegalIsNeverRaised) {
  ProgramBuilder pb;
  const auto skip = pb.new_label();
  pb.branch(Op::BEQ, 0, 0, skip);
  pb.word(0xFFFFFFFF);
  pb.word(0xFFFFFFFF);
  pb.bind(skip);
  pb.exit_with(0);
  const CoreRun r = run(pb.finish(), FetchKind::DualPC, PredictorScheme::None);
  EXPECT_TRUE(r.status.success()) << r.status.describe();
  EXPECT_EQ(r.stats.mispredicts, 1u);
}

TEST(Core, CommittedIllegalStops) {
  ProgramBuilder pb;
  pb.emit(asm_::nop());
  pb.word(0xFFFFFFFF);
  const CoreRun r = run(pb.finish());
  EXPECT_EQ(r.status.reason, StopReason::IllegalInstruction);
  EXPECT_EQ(r.status.pc, 4u);
  EXPECT_EQ(r.log.size(), 1u);
}

TEST(Core, InstretMatchesReferenceAndCycleRunsAhead) {
  ProgramBuilder pb;
  pb.emit(asm_::nop());
  pb.emit(asm_::nop());
  pb.emit(asm_::csrr(10, kCsrInstret));
  pb.emit(asm_::csrr(11, kCsrCycle));
  pb.emit(asm_::ecall());
  const CoreRun r = run(pb.finish());
  EXPECT_EQ(r.status.reason, StopReason::Halt);
  EXPECT_EQ(r.log.back().regs[10], 2u);
  EXPECT_GT(r.log.back().regs[11], 3u);
}

TEST(Core, PredictorAndFetchAreTransparent) {
  ProgramBuilder pb;
  pb.li(9, 50);
  const auto loop = pb.new_label();
  const auto skip = pb.new_label();
  pb.align_to(2);
  pb.bind(loop);
  pb.emit(asm_::i(Op::ADDI, 10, 10, 3), Form::Full);
  pb.emit(asm_::i(Op::ANDI, 11, 10, 4), Form::Full);
  pb.branch(Op::BEQ, 11, 0, skip, Form::Compressed);
  pb.emit(asm_::r(Op::ADD, 12, 12, 10), Form::Compressed);
  pb.bind(skip);
  pb.emit(asm_::i(Op::ADDI, 9, 9, -1), Form::Compressed);
  pb.branch(Op::BNE, 9, 0, loop, Form::Compressed);
  pb.exit_with(0);
  const auto img = pb.finish();
  const std::string ref = commit_log_text(run_reference(img).log);
  std::uint64_t dual_cycles = 0, buf_cycles = 0;
  for (auto f : {FetchKind::DualPC, FetchKind::Buffer, FetchKind::Naive}) {
    for (auto b : {PredictorScheme::Gshare, PredictorScheme::Bimodal, PredictorScheme::None}) {
      const CoreRun r = run(img, f, b);
      EXPECT_EQ(commit_log_text(r.log), ref);
      EXPECT_EQ(r.stats.twin_violations, 0u);
      EXPECT_GT(r.stats.twin_checks, 0u);
      if (f == FetchKind::DualPC) EXPECT_EQ(r.stats.fetch_misses, 0u);
      if (b == PredictorScheme::Gshare && f == FetchKind::DualPC) dual_cycles = r.stats.cycles;
      if (b == PredictorScheme::Gshare && f == FetchKind::Buffer) buf_cycles = r.stats.cycles;
    }
  }
  EXPECT_LE(dual_cycles, buf_cycles);
}

TEST(Core, StepLimit) {
  ProgramBuilder pb;
  pb.emit(asm_::jal(0, 0));
  PipelineConfig cfg;
  cfg.max_cycles = 500;
  const CoreRun r = run_core(pb.finish(), cfg);
  EXPECT_EQ(r.status.reason, StopReason::StepLimit);
  EXPECT_EQ(r.stats.cycles, 500u);
}

TEST(Core, TraceHasOneLinePerCycle) {
  ProgramBuilder pb;
  pb.emit(asm_::nop());
  pb.exit_with(0);
  std::ostringstream trace;
  PipelineConfig cfg;
  cfg.trace = &trace;
  const CoreRun r = run_core(pb.finish(), cfg);
  std::size_t lines = 0;
  for (char ch : trace.str()) lines += ch == '\n';
  EXPECT_EQ(lines, r.stats.cycles);
  EXPECT_NE(trace.str().find("ADDI"), std::string::npos);
}

TEST(Core, StatsInvariants) {
  const CoreRun r = run(branch_program(true));
  EXPECT_DOUBLE_EQ(r.stats.ipc, static_cast<double>(r.stats.instructions) / r.stats.cycles);
  EXPECT_GE(r.stats.bp_hit_rate, 0.0);
  EXPECT_LE(r.stats.bp_hit_rate, 1.0);
}
