#pragma once

#include <cstdint>
#include <string>

#include "rvcsim/isa.hpp"
#include "rvcsim/memsys.hpp"

namespace rvcsim {

enum class StopReason : std::uint8_t {
  Exit,                // store to the exit register
  Halt,                // ECALL / EBREAK retired
  IllegalInstruction,  // ILLEGAL reached commit
  Fault,               // fetch or data access fault on the committed path
  StepLimit,           // max steps / cycles exhausted
};

/// How a run ended. pc/raw identify the instruction that stopped it.
struct ExitStatus {
  StopReason reason = StopReason::StepLimit;
  Word exit_code = 0;
  Addr pc = 0;
  Word raw = 0;
  FaultKind fault = FaultKind::None;
  Addr fault_addr = 0;

  bool success() const {
    return (reason == StopReason::Exit && exit_code == 0) || reason == StopReason::Halt;
  }
  /// Machine-readable one-liner, e.g. "status=fault kind=misaligned pc=00000010 addr=00000003".
  std::string describe() const;
  bool operator==(const ExitStatus&) const = default;
};

std::string_view stop_reason_name(StopReason reason);

}  // namespace rvcsim
