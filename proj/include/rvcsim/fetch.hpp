#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <utility>

#include "rvcsim/isa.hpp"
#include "rvcsim/memsys.hpp"

namespace rvcsim {

/// Outcome of one architectural fetch.
struct FetchResult {
  RawInst raw;
  Addr pc = 0;
  unsigned cycles = 1;
  bool fetch_miss = false;
  FaultKind fault = FaultKind::None;
  Addr fault_addr = 0;
};

/// The pair of program counters driving the two instruction-memory ports.
/// pc2 always equals pc + 2.
struct DualPCState {
  Addr pc = 0;
  Addr pc2 = 2;

  static DualPCState at(Addr pc) { return {pc, pc + 2}; }
};

/// One spare upper halfword left over from a 32-bit entry read.
struct BufferState {
  bool has_half = false;
  Half half = 0;
  Addr addr = 0;  // address of the buffered halfword, always 2 mod 4

  static BufferState empty() { return {}; }
  static BufferState holding(Half h, Addr a) { return {true, h, a}; }
  bool operator==(const BufferState&) const = default;
};

FetchResult fetch_dualpc(const DualPCState& state, const InstMemory& imem);
std::pair<FetchResult, BufferState> fetch_buffered(BufferState state, Addr pc, bool redirect,
                                                   const InstMemory& imem);
FetchResult fetch_naive32(Addr pc, const InstMemory& imem);

enum class FetchKind { DualPC, Buffer, Naive };

std::string_view fetch_kind_name(FetchKind kind);
std::optional<FetchKind> parse_fetch_kind(std::string_view name);

/// Stateful fetch unit as seen by the core. `redirect` is set when the pc
/// is not the fall-through of the previously fetched instruction.
class FetchUnit {
 public:
  virtual ~FetchUnit() = default;
  virtual FetchKind kind() const = 0;
  virtual FetchResult fetch(const DualPCState& pcs, bool redirect, const InstMemory& imem) = 0;
};

std::unique_ptr<FetchUnit> make_fetch_unit(FetchKind kind);

}  // namespace rvcsim
