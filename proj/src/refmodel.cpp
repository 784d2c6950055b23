#include "rvcsim/refmodel.hpp"

#include <cstdio>

namespace rvcsim {

std::string_view stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::Exit: return "exit";
    case StopReason::Halt: return "halt";
    case StopReason::IllegalInstruction: return "illegal";
    case StopReason::Fault: return "fault";
    case StopReason::StepLimit: return "step-limit";
  }
  return "?";
}

std::string ExitStatus::describe() const {
  char buf[160];
  switch (reason) {
    case StopReason::Exit:
      std::snprintf(buf, sizeof buf, "status=exit code=%u", exit_code);
      break;
    case StopReason::Halt:
      std::snprintf(buf, sizeof buf, "status=halt pc=%08x ir=%08x", pc, raw);
      break;
    case StopReason::IllegalInstruction:
      std::snprintf(buf, sizeof buf, "status=illegal pc=%08x ir=%08x", pc, raw);
      break;
    case StopReason::Fault:
      std::snprintf(buf, sizeof buf, "status=fault kind=%s pc=%08x addr=%08x", fault_name(fault).data(), pc,
                    fault_addr);
      break;
    case StopReason::StepLimit:
      std::snprintf(buf, sizeof buf, "status=step-limit pc=%08x", pc);
      break;
  }
  return buf;
}

namespace {

ExitStatus stop_with(StopReason reason, Addr pc, Word raw) {
  ExitStatus s;
  s.reason = reason;
  s.pc = pc;
  s.raw = raw;
  return s;
}

ExitStatus fault_status(Addr pc, Word raw, FaultKind kind, Addr addr) {
  ExitStatus s = stop_with(StopReason::Fault, pc, raw);
  s.fault = kind;
  s.fault_addr = addr;
  return s;
}

}  // namespace

StepResult step(ArchState& st, const InstMemory& imem, DataMemory& dmem) {
  StepResult res;
  const Addr pc = st.pc;
  if ((pc & 1) != 0 || !imem.in_range(pc)) {
    res.stop = fault_status(pc, 0, (pc & 1) ? FaultKind::Misaligned : FaultKind::OutOfRange, pc);
    return res;
  }
  const Half lo = imem.entry(pc);
  DecodedInst d;
  if (is_compressed(lo)) {
    d = decode32(decompress(lo));
    d.comp = true;
    d.len = 2;
    d.raw = lo;
  } else {
    if (!imem.in_range(pc + 2)) {
      res.stop = fault_status(pc, lo, FaultKind::OutOfRange, pc + 2);
      return res;
    }
    d = decode32(Word{lo} | (Word{imem.entry(pc + 2)} << 16));
  }
  if (d.op == Op::ILLEGAL) {
    res.stop = stop_with(StopReason::IllegalInstruction, pc, d.raw);
    return res;
  }

  const Word a = st.regs[d.rs1];
  const Word b = st.regs[d.rs2];
  const auto imm = static_cast<Word>(d.imm);
  const Addr link = pc + d.len;
  Addr next = link;
  Word result = 0;
  bool write = d.writes_rd();

  auto branch = [&](bool cond) {
    if (cond) next = pc + imm;
  };

  switch (d.op) {
    case Op::LUI: result = imm; break;
    case Op::AUIPC: result = pc + imm; break;
    case Op::JAL: result = link; next = pc + imm; break;
    case Op::JALR: result = link; next = (a + imm) & ~Word{1}; break;
    case Op::BEQ: branch(a == b); break;
    case Op::BNE: branch(a != b); break;
    case Op::BLT: branch(static_cast<std::int32_t>(a) < static_cast<std::int32_t>(b)); break;
    case Op::BGE: branch(static_cast<std::int32_t>(a) >= static_cast<std::int32_t>(b)); break;
    case Op::BLTU: branch(a < b); break;
    case Op::BGEU: branch(a >= b); break;
    case Op::LB: case Op::LH: case Op::LW: case Op::LBU: case Op::LHU: {
      const unsigned size = (d.op == Op::LB || d.op == Op::LBU) ? 1 : (d.op == Op::LW ? 4 : 2);
      const bool sign = d.op == Op::LB || d.op == Op::LH;
      const auto acc = dmem.access(a + imm, size, sign, false, 0);
      if (acc.fault != FaultKind::None) {
        res.stop = fault_status(pc, d.raw, acc.fault, a + imm);
        return res;
      }
      result = acc.value;
      break;
    }
    case Op::SB: case Op::SH: case Op::SW: {
      const unsigned size = d.op == Op::SB ? 1 : (d.op == Op::SH ? 2 : 4);
      const Word value = size == 4 ? b : (b & ((1u << (8 * size)) - 1));
      const auto acc = dmem.access(a + imm, size, false, true, value);
      if (acc.fault != FaultKind::None) {
        res.stop = fault_status(pc, d.raw, acc.fault, a + imm);
        return res;
      }
      if (acc.exit) {
        ExitStatus s = stop_with(StopReason::Exit, pc, d.raw);
        s.exit_code = acc.exit_code;
        res.stop = s;
      }
      break;
    }
    case Op::ADDI: result = a + imm; break;
    case Op::SLTI: result = static_cast<std::int32_t>(a) < d.imm ? 1 : 0; break;
    case Op::SLTIU: result = a < imm ? 1 : 0; break;
    case Op::XORI: result = a ^ imm; break;
    case Op::ORI: result = a | imm; break;
    case Op::ANDI: result = a & imm; break;
    case Op::SLLI: result = a << (imm & 31); break;
    case Op::SRLI: result = a >> (imm & 31); break;
    case Op::SRAI: result = static_cast<Word>(static_cast<std::int32_t>(a) >> (imm & 31)); break;
    case Op::ADD: result = a + b; break;
    case Op::SUB: result = a - b; break;
    case Op::SLL: result = a << (b & 31); break;
    case Op::SLT: result = static_cast<std::int32_t>(a) < static_cast<std::int32_t>(b) ? 1 : 0; break;
    case Op::SLTU: result = a < b ? 1 : 0; break;
    case Op::XOR: result = a ^ b; break;
    case Op::SRL: result = a >> (b & 31); break;
    case Op::SRA: result = static_cast<Word>(static_cast<std::int32_t>(a) >> (b & 31)); break;
    case Op::OR: result = a | b; break;
    case Op::AND: result = a & b; break;
    case Op::FENCE: break;
    case Op::ECALL:
    case Op::EBREAK:
      res.stop = stop_with(StopReason::Halt, pc, d.raw);
      break;
    case Op::CSRR: {
      const bool high = (imm & 0x080) != 0;
      const std::uint64_t v = (imm & 0x7F) == 0x02 ? st.instret : st.cycle;
      result = static_cast<Word>(high ? v >> 32 : v);
      break;
    }
    case Op::ILLEGAL: break;
  }

  if (write && d.rd != 0) st.regs[d.rd] = result;
  st.pc = next;
  ++st.instret;
  ++st.cycle;

  CommitRecord rec;
  rec.pc = pc;
  rec.raw = d.raw;
  rec.regs = st.regs;
  rec.cycle = st.cycle;
  res.commit = rec;
  return res;
}

RefRun run_reference(const MemoryImage& image, const RefConfig& config) {
  Memories mem(image, config.imem_bytes, config.dmem_bytes);
  ArchState st;
  if (config.sp_init) st.regs[2] = static_cast<Word>(config.dmem_bytes);
  RefRun run;
  bool stopped = false;
  while (run.steps < config.max_steps) {
    auto r = step(st, mem.imem, mem.dmem);
    if (r.commit) {
      ++run.steps;
      if (config.keep_log) run.log.push_back(*r.commit);
    }
    if (r.stop) {
      run.status = *r.stop;
      stopped = true;
      break;
    }
  }
  if (!stopped) {
    run.status = ExitStatus{};
    run.status.reason = StopReason::StepLimit;
    run.status.pc = st.pc;
  }
  run.console = mem.dmem.console();
  return run;
}

}  // namespace rvcsim
