#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "rvcsim/bpred.hpp"
#include "rvcsim/commit_log.hpp"
#include "rvcsim/fetch.hpp"
#include "rvcsim/isa.hpp"
#include "rvcsim/memsys.hpp"
#include "rvcsim/status.hpp"

namespace rvcsim {

struct PcPair {
  Addr pc = 0;
  Addr pc2 = 2;
  bool operator==(const PcPair&) const = default;
};

/// The five next-pc candidates, each with its precomputed +2 twin.
struct PcCandidates {
  PcPair stall;
  PcPair plus2;
  PcPair plus4;
  PcPair pred;
  PcPair truepc;
};

struct PcControl {
  bool mispredict = false;
  bool stall = false;
  bool pred_taken = false;
  bool compressed = false;
};

/// Priority: TruePC > stall > PredPC > sequential (+2 / +4 by length).
PcPair select_next_pc(const PcCandidates& c, const PcControl& ctl);

/// Load-use interlock between the instruction in IF and a load in ID.
bool hazard_detect(const DecodedInst& if_inst, const DecodedInst& id_inst);

/// Branch target and its twin. JALR clears bit 0 on both.
PcPair compute_taken_pc(Addr base, std::int32_t imm, std::int32_t imm2, bool is_jalr);

struct Resolution {
  bool mispredict = false;
  PcPair truepc;
};

/// MA-stage selection between BelowPC and TakenPC pairs.
Resolution resolve_branch(bool branch_taken, const PcPair& taken, const PcPair& below, Addr predicted_next);

struct Stats {
  std::uint64_t cycles = 0;
  std::uint64_t instructions = 0;
  double ipc = 0.0;
  std::uint64_t branches = 0;
  std::uint64_t mispredicts = 0;
  double bp_hit_rate = 0.0;
  std::uint64_t fetch_misses = 0;
  std::uint64_t load_use_stalls = 0;
  std::uint64_t prohibited_updates = 0;

  std::uint64_t flushes = 0;          // every MA redirect, including non-branch false predictions
  std::uint64_t flushed_slots = 0;
  std::uint64_t fetch_cycles = 0;     // total cycles spent in the fetch unit, wrong path included
  std::uint64_t twin_checks = 0;
  std::uint64_t twin_violations = 0;
  std::string first_twin_violation;
};

struct PipelineConfig {
  FetchKind fetch = FetchKind::DualPC;
  PredictorScheme bpred = PredictorScheme::Gshare;
  std::size_t imem_bytes = kDefaultMemBytes;
  std::size_t dmem_bytes = kDefaultMemBytes;
  std::uint64_t max_cycles = 1'000'000'000;
  bool sp_init = false;
  bool keep_log = true;
  std::ostream* trace = nullptr;
};

/// Cycle-accurate IF/ID/EX/MA/WB core.
class Core {
 public:
  Core(const MemoryImage& image, const PipelineConfig& config);
  ~Core();
  Core(const Core&) = delete;
  Core& operator=(const Core&) = delete;

  /// Advances every stage by one cycle. Returns a status once the core stops.
  std::optional<ExitStatus> tick();

  /// Runs until stop or the cycle limit.
  ExitStatus run();

  const Stats& stats() const { return stats_; }
  const CommitLog& log() const { return log_; }
  const RegFile& regs() const { return regs_; }
  const std::string& console() const { return mem_.dmem.console(); }
  const BranchPredictor& predictor() const { return bp_; }
  std::uint64_t cycle() const { return cycle_; }
  DualPCState fetch_pcs() const { return pcs_; }

 private:
  struct Slot;
  struct IfId;
  struct IdEx;
  struct ExMa;
  struct MaWb;
  struct Latches;

  void check_twin(Addr value, Addr twin, const char* what);
  void finish_stats();

  PipelineConfig config_;
  Memories mem_;
  std::unique_ptr<FetchUnit> fetch_;
  BranchPredictor bp_;
  RegFile regs_{};
  std::unique_ptr<Latches> latches_;
  DualPCState pcs_;
  std::uint64_t cycle_ = 0;
  std::uint64_t instret_ = 0;
  Stats stats_;
  CommitLog log_;
  std::optional<ExitStatus> stopped_;
};

struct CoreRun {
  Stats stats;
  CommitLog log;
  std::string console;
  ExitStatus status;
};

CoreRun run_core(const MemoryImage& image, const PipelineConfig& config = {});

}  // namespace rvcsim
