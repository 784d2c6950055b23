#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rvcsim/commit_log.hpp"
#include "rvcsim/memsys.hpp"
#include "rvcsim/status.hpp"

namespace rvcsim {

/// Architectural state of the functional model. The model retires one
/// instruction per step, so cycle == instret.
struct ArchState {
  Addr pc = 0;
  RegFile regs{};
  std::uint64_t cycle = 0;
  std::uint64_t instret = 0;
};

struct StepResult {
  std::optional<CommitRecord> commit;  // absent when the instruction did not retire
  std::optional<ExitStatus> stop;
};

/// Executes the instruction at state.pc. Compressed instructions are
/// expanded and run through the 32-bit decoder.
StepResult step(ArchState& state, const InstMemory& imem, DataMemory& dmem);

struct RefConfig {
  std::size_t imem_bytes = kDefaultMemBytes;
  std::size_t dmem_bytes = kDefaultMemBytes;
  std::uint64_t max_steps = 100'000'000;
  bool sp_init = false;  // x2 := top of data memory
  bool keep_log = true;
};

struct RefRun {
  CommitLog log;
  ExitStatus status;
  std::string console;
  std::uint64_t steps = 0;
};

RefRun run_reference(const MemoryImage& image, const RefConfig& config = {});

}  // namespace rvcsim
