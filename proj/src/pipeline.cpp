#include "rvcsim/pipeline.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace rvcsim {

PcPair select_next_pc(const PcCandidates& c, const PcControl& ctl) {
  if (ctl.mispredict) return c.truepc;
  if (ctl.stall) return c.stall;
  if (ctl.pred_taken) return c.pred;
  return ctl.compressed ? c.plus2 : c.plus4;
}

bool hazard_detect(const DecodedInst& if_inst, const DecodedInst& id_inst) {
  if (!id_inst.is_load() || id_inst.rd == 0) return false;
  return (if_inst.reads_rs1() && if_inst.rs1 == id_inst.rd) || (if_inst.reads_rs2() && if_inst.rs2 == id_inst.rd);
}

PcPair compute_taken_pc(Addr base, std::int32_t imm, std::int32_t imm2, bool is_jalr) {
  const Word mask = is_jalr ? ~Word{1} : ~Word{0};
  return {(base + static_cast<Word>(imm)) & mask, (base + static_cast<Word>(imm2)) & mask};
}

Resolution resolve_branch(bool branch_taken, const PcPair& taken, const PcPair& below, Addr predicted_next) {
  Resolution r;
  r.truepc = branch_taken ? taken : below;
  r.mispredict = r.truepc.pc != predicted_next;
  return r;
}

// Everything that travels with an instruction from IF to WB.
struct Core::Slot {
  Addr pc = 0;
  RawInst raw;
  DecodedInst dec;
  bool fetch_miss = false;
  bool load_use_stall = false;
  FaultKind fetch_fault = FaultKind::None;
  Addr fetch_fault_addr = 0;
  // Prediction applied in IF.
  Addr pred_npc = 0;
  bool pred_taken = false;
  std::uint32_t ghr_snapshot = 0;
  // Pipeline predecessor.
  bool prev_comp = false;
  bool prohibit = true;
};

struct Core::IfId {
  bool valid = false;
  Slot s;
};

struct Core::IdEx {
  bool valid = false;
  Slot s;
  std::int32_t imm = 0;
  std::int32_t imm2 = 2;
};

struct Core::ExMa {
  bool valid = false;
  Slot s;
  bool branch_taken = false;
  PcPair taken;
  PcPair below;
  Word alu = 0;
  Word store_data = 0;
};

struct Core::MaWb {
  bool valid = false;
  Slot s;
  Word wb_value = 0;
  bool mispredicted = false;
  std::optional<ExitStatus> stop;
};

struct Core::Latches {
  IfId ifid;
  IdEx idex;
  ExMa exma;
  MaWb mawb;

  // IF-stage state.
  struct Held {
    FetchResult fr;
    bool stalled = false;
  };
  std::optional<Held> held;
  FetchResult pending;
  unsigned busy = 0;
  Prediction reg_pred;
  bool reg_pred_valid = false;
  bool last_valid = false;
  Addr last_fallthrough = 0;
  bool last_comp = false;
};

Core::Core(const MemoryImage& image, const PipelineConfig& config)
    : config_(config),
      mem_(image, config.imem_bytes, config.dmem_bytes),
      fetch_(make_fetch_unit(config.fetch)),
      bp_(config.bpred),
      latches_(std::make_unique<Latches>()),
      pcs_(DualPCState::at(0)) {
  if (config.sp_init) regs_[2] = static_cast<Word>(config.dmem_bytes);
}

Core::~Core() = default;

void Core::check_twin(Addr value, Addr twin, const char* what) {
  ++stats_.twin_checks;
  if (twin == value + 2) return;
  if (stats_.twin_violations++ == 0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "cycle %llu: %s twin %08x != %08x + 2", static_cast<unsigned long long>(cycle_),
                  what, twin, value);
    stats_.first_twin_violation = buf;
  }
}

namespace {

Word alu_op(const DecodedInst& d, Word a, Word b, Addr pc) {
  const auto imm = static_cast<Word>(d.imm);
  const auto sa = static_cast<std::int32_t>(a);
  switch (d.op) {
    case Op::LUI: return imm;
    case Op::AUIPC: return pc + imm;
    case Op::ADDI: return a + imm;
    case Op::SLTI: return sa < d.imm;
    case Op::SLTIU: return a < imm;
    case Op::XORI: return a ^ imm;
    case Op::ORI: return a | imm;
    case Op::ANDI: return a & imm;
    case Op::SLLI: return a << (imm & 31);
    case Op::SRLI: return a >> (imm & 31);
    case Op::SRAI: return static_cast<Word>(sa >> (imm & 31));
    case Op::ADD: return a + b;
    case Op::SUB: return a - b;
    case Op::SLL: return a << (b & 31);
    case Op::SLT: return sa < static_cast<std::int32_t>(b);
    case Op::SLTU: return a < b;
    case Op::XOR: return a ^ b;
    case Op::SRL: return a >> (b & 31);
    case Op::SRA: return static_cast<Word>(sa >> (b & 31));
    case Op::OR: return a | b;
    case Op::AND: return a & b;
    default: return 0;
  }
}

bool branch_cond(Op op, Word a, Word b) {
  switch (op) {
    case Op::BEQ: return a == b;
    case Op::BNE: return a != b;
    case Op::BLT: return static_cast<std::int32_t>(a) < static_cast<std::int32_t>(b);
    case Op::BGE: return static_cast<std::int32_t>(a) >= static_cast<std::int32_t>(b);
    case Op::BLTU: return a < b;
    case Op::BGEU: return a >= b;
    default: return false;
  }
}

unsigned access_size(Op op) {
  switch (op) {
    case Op::LB: case Op::LBU: case Op::SB: return 1;
    case Op::LH: case Op::LHU: case Op::SH: return 2;
    default: return 4;
  }
}

void put_pc(std::ostream& os, const char* name, bool valid, Addr pc) {
  char buf[24];
  if (valid) std::snprintf(buf, sizeof buf, " %s=%08x", name, pc);
  else std::snprintf(buf, sizeof buf, " %s=--------", name);
  os << buf;
}

}  // namespace

std::optional<ExitStatus> Core::tick() {
  if (stopped_) return stopped_;
  auto& L = *latches_;
  ++cycle_;

  if (config_.trace) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%10llu", static_cast<unsigned long long>(cycle_));
    *config_.trace << buf;
    put_pc(*config_.trace, "IF", true, pcs_.pc);
    put_pc(*config_.trace, "ID", L.ifid.valid, L.ifid.s.pc);
    put_pc(*config_.trace, "EX", L.idex.valid, L.idex.s.pc);
    put_pc(*config_.trace, "MA", L.exma.valid, L.exma.s.pc);
    put_pc(*config_.trace, "WB", L.mawb.valid, L.mawb.s.pc);
  }

  // ---------------------------------------------------------------- WB
  if (L.mawb.valid) {
    const MaWb& wb = L.mawb;
    const bool retires = !wb.stop || wb.stop->reason == StopReason::Exit || wb.stop->reason == StopReason::Halt;
    if (retires) {
      if (wb.s.dec.writes_rd() && wb.s.dec.rd != 0) regs_[wb.s.dec.rd] = wb.wb_value;
      ++instret_;
      ++stats_.instructions;
      if (wb.s.fetch_miss) ++stats_.fetch_misses;
      if (wb.s.load_use_stall) ++stats_.load_use_stalls;
      if (wb.s.dec.is_control()) {
        ++stats_.branches;
        if (wb.mispredicted) ++stats_.mispredicts;
      }
      if (config_.keep_log) {
        CommitRecord rec;
        rec.pc = wb.s.pc;
        rec.raw = wb.s.raw.bits;
        rec.regs = regs_;
        rec.cycle = cycle_;
        log_.push_back(rec);
      }
    }
    if (config_.trace) *config_.trace << "  " << disassemble(wb.s.dec);
    if (wb.stop) {
      if (config_.trace) *config_.trace << "  " << wb.stop->describe() << '\n';
      stopped_ = wb.stop;
      finish_stats();
      return stopped_;
    }
  }

  // ---------------------------------------------------------------- MA
  MaWb next_mawb;
  bool flush = false;
  PcPair truepc;
  if (L.exma.valid) {
    const ExMa& ma = L.exma;
    next_mawb.valid = true;
    next_mawb.s = ma.s;
    next_mawb.wb_value = ma.alu;
    const DecodedInst& d = ma.s.dec;
    auto stop_with = [&](StopReason reason) {
      ExitStatus st;
      st.reason = reason;
      st.pc = ma.s.pc;
      st.raw = ma.s.raw.bits;
      next_mawb.stop = st;
    };
    if (ma.s.fetch_fault != FaultKind::None) {
      stop_with(StopReason::Fault);
      next_mawb.stop->fault = ma.s.fetch_fault;
      next_mawb.stop->fault_addr = ma.s.fetch_fault_addr;
    } else if (d.op == Op::ILLEGAL) {
      stop_with(StopReason::IllegalInstruction);
    } else {
      if (d.is_load() || d.is_store()) {
        const Addr addr = ma.alu;
        const auto acc = mem_.dmem.access(addr, access_size(d.op), d.op == Op::LB || d.op == Op::LH, d.is_store(),
                                          ma.store_data);
        if (acc.fault != FaultKind::None) {
          stop_with(StopReason::Fault);
          next_mawb.stop->fault = acc.fault;
          next_mawb.stop->fault_addr = addr;
        } else if (acc.exit) {
          stop_with(StopReason::Exit);
          next_mawb.stop->exit_code = acc.exit_code;
        }
        if (d.is_load()) next_mawb.wb_value = acc.value;
      } else if (d.is_halt()) {
        stop_with(StopReason::Halt);
      }

      const Resolution res = resolve_branch(ma.branch_taken, ma.taken, ma.below, ma.s.pred_npc);
      check_twin(res.truepc.pc, res.truepc.pc2, "TruePC");
      const Addr pred_addr = predecessor_address(ma.s.pc, ma.s.prev_comp);
      if (d.is_control()) {
        bp_.update(pred_addr, ma.s.ghr_snapshot, ma.branch_taken, ma.taken.pc, ma.s.prohibit, d.is_cond_branch());
        if (ma.s.prohibit) ++stats_.prohibited_updates;
      } else if (ma.s.pred_taken && !ma.s.prohibit) {
        bp_.demote(pred_addr, ma.s.ghr_snapshot);
      }
      // A halting instruction needs no redirect; younger work never reaches WB.
      if (res.mispredict && !next_mawb.stop) {
        flush = true;
        truepc = res.truepc;
        next_mawb.mispredicted = true;
      }
    }
  }

  // ---------------------------------------------------------------- EX
  ExMa next_exma;
  if (L.idex.valid && !flush) {
    const IdEx& ex = L.idex;
    const DecodedInst& d = ex.s.dec;
    auto operand = [&](unsigned r) -> Word {
      if (r == 0) return 0;
      const ExMa& older = L.exma;  // now in MA
      if (older.valid && older.s.dec.writes_rd() && older.s.dec.rd == r) {
        if (older.s.dec.is_load())
          throw std::logic_error("load-use interlock missed at pc " + std::to_string(ex.s.pc));
        return older.alu;
      }
      return regs_[r];  // WB of this cycle has already written
    };
    const Word a = d.reads_rs1() ? operand(d.rs1) : 0;
    const Word b = d.reads_rs2() ? operand(d.rs2) : 0;

    next_exma.valid = true;
    next_exma.s = ex.s;
    next_exma.below = {ex.s.pc + (ex.s.dec.comp ? 2u : 4u), ex.s.pc + (ex.s.dec.comp ? 4u : 6u)};
    check_twin(next_exma.below.pc, next_exma.below.pc2, "BelowPC");
    if (d.is_control()) {
      const bool jalr = d.op == Op::JALR;
      next_exma.taken = compute_taken_pc(jalr ? a : ex.s.pc, ex.imm, ex.imm2, jalr);
      next_exma.branch_taken = d.is_jump() || branch_cond(d.op, a, b);
      if (next_exma.branch_taken) check_twin(next_exma.taken.pc, next_exma.taken.pc2, "TakenPC");
      next_exma.alu = next_exma.below.pc;  // link value
    } else if (d.is_load() || d.is_store()) {
      next_exma.alu = a + static_cast<Word>(ex.imm);
      next_exma.store_data = b;
    } else if (d.op == Op::CSRR) {
      const auto csr = static_cast<Word>(ex.imm);
      const bool high = (csr & 0x080) != 0;
      // Older instructions still in flight will retire before this one.
      const std::uint64_t instret = instret_ + (L.exma.valid ? 1 : 0);
      const std::uint64_t v = (csr & 0x7F) == 0x02 ? instret : cycle_;
      next_exma.alu = static_cast<Word>(high ? v >> 32 : v);
    } else {
      next_exma.alu = alu_op(d, a, b, ex.s.pc);
    }
  }

  // ---------------------------------------------------------------- ID
  IdEx next_idex;
  if (L.ifid.valid && !flush) {
    next_idex.valid = true;
    next_idex.s = L.ifid.s;
    if (L.ifid.s.fetch_fault == FaultKind::None) next_idex.s.dec = decode(L.ifid.s.raw);
    next_idex.imm = next_idex.s.dec.imm;
    next_idex.imm2 = next_idex.imm + 2;
    check_twin(static_cast<Addr>(next_idex.imm), static_cast<Addr>(next_idex.imm2), "IMM");
  }

  // ---------------------------------------------------------------- IF
  IfId next_ifid;
  if (flush) {
    ++stats_.flushes;
    stats_.flushed_slots += 1 + (L.ifid.valid ? 1 : 0) + (L.idex.valid ? 1 : 0);
    pcs_ = DualPCState{truepc.pc, truepc.pc2};
    L.held.reset();
    L.busy = 0;
    L.reg_pred_valid = false;
    L.last_valid = false;
    if (config_.trace) *config_.trace << "  FLUSH";
  } else {
    if (!L.held) {
      if (L.busy == 0) {
        const bool redirect = !L.last_valid || L.last_fallthrough != pcs_.pc;
        FetchResult fr = fetch_->fetch(pcs_, redirect, mem_.imem);
        stats_.fetch_cycles += fr.cycles;
        if (fr.cycles > 1) {
          L.busy = fr.cycles - 1;
          L.pending = fr;
        } else {
          L.held = Latches::Held{fr};
        }
      } else if (--L.busy == 0) {
        L.held = Latches::Held{L.pending};
      }
    }

    PcCandidates c;
    c.stall = {pcs_.pc, pcs_.pc2};
    c.plus2 = {pcs_.pc + 2, pcs_.pc2 + 2};
    c.plus4 = {pcs_.pc + 4, pcs_.pc2 + 4};
    PcControl ctl;

    if (!L.held) {
      ctl.stall = true;  // multi-cycle fetch in progress
    } else {
      const FetchResult& fr = L.held->fr;
      const bool fault = fr.fault != FaultKind::None;
      const DecodedInst if_dec = fault ? DecodedInst{} : decode(fr.raw);
      if (!fault && L.ifid.valid && hazard_detect(if_dec, L.ifid.s.dec)) {
        ctl.stall = true;
        L.held->stalled = true;
        if (config_.trace) *config_.trace << "  STALL";
      } else {
        Slot s;
        s.pc = fr.pc;
        s.raw = fault ? RawInst{0, 2} : fr.raw;
        s.dec = if_dec;
        s.fetch_miss = fr.fetch_miss;
        s.load_use_stall = L.held->stalled;
        s.fetch_fault = fr.fault;
        s.fetch_fault_addr = fr.fault_addr;
        s.prev_comp = L.last_comp;
        const bool has_pred = L.reg_pred_valid && L.reg_pred.for_pc == fr.pc;
        s.prohibit = !has_pred;
        s.pred_taken = has_pred && L.reg_pred.taken;
        s.ghr_snapshot = has_pred ? L.reg_pred.ghr : 0;
        c.pred = {L.reg_pred.target, L.reg_pred.target2};
        ctl.pred_taken = s.pred_taken;
        ctl.compressed = s.raw.len == 2;

        const Addr fallthrough = fr.pc + s.raw.len;
        L.reg_pred = bp_.predict(fr.pc, fallthrough);
        L.reg_pred_valid = true;
        L.last_valid = true;
        L.last_fallthrough = fallthrough;
        L.last_comp = s.raw.len == 2;

        s.pred_npc = select_next_pc(c, ctl).pc;
        next_ifid.valid = true;
        next_ifid.s = s;
        L.held.reset();
      }
    }
    const PcPair next = select_next_pc(c, ctl);
    pcs_ = DualPCState{next.pc, next.pc2};
  }
  check_twin(pcs_.pc, pcs_.pc2, "PC");

  if (config_.trace) *config_.trace << '\n';

  L.mawb = std::move(next_mawb);
  L.exma = next_exma;
  L.idex = next_idex;
  L.ifid = next_ifid;

  if (cycle_ >= config_.max_cycles) {
    ExitStatus st;
    st.reason = StopReason::StepLimit;
    st.pc = pcs_.pc;
    stopped_ = st;
    finish_stats();
  }
  return stopped_;
}

void Core::finish_stats() {
  stats_.cycles = cycle_;
  stats_.ipc = cycle_ ? static_cast<double>(stats_.instructions) / static_cast<double>(cycle_) : 0.0;
  stats_.bp_hit_rate = stats_.branches
                           ? static_cast<double>(stats_.branches - stats_.mispredicts) /
                                 static_cast<double>(stats_.branches)
                           : 0.0;
}

ExitStatus Core::run() {
  while (true) {
    if (auto st = tick()) return *st;
  }
}

CoreRun run_core(const MemoryImage& image, const PipelineConfig& config) {
  Core core(image, config);
  CoreRun r;
  r.status = core.run();
  r.stats = core.stats();
  r.console = core.console();
  r.log = core.log();
  return r;
}

}  // namespace rvcsim
