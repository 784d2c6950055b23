#include "rvcsim/fetch.hpp"

namespace rvcsim {

namespace {

FetchResult fault_at(Addr pc, FaultKind kind, Addr addr) {
  FetchResult r;
  r.pc = pc;
  r.fault = kind;
  r.fault_addr = addr;
  return r;
}

// Range/alignment check shared by the 32-bit-entry units.
std::optional<FetchResult> check_pc(Addr pc, const InstMemory& imem) {
  if ((pc & 1) != 0) return fault_at(pc, FaultKind::Misaligned, pc);
  if (!imem.in_range(pc)) return fault_at(pc, FaultKind::OutOfRange, pc);
  return std::nullopt;
}

}  // namespace

FetchResult fetch_dualpc(const DualPCState& state, const InstMemory& imem) {
  const auto pair = imem.read_entry_pair(state.pc, state.pc2);
  if (pair.fault != FaultKind::None) return fault_at(state.pc, pair.fault, pair.fault_addr);
  FetchResult r;
  r.pc = state.pc;
  if (is_compressed(pair.first))
    r.raw = RawInst{pair.first, 2};
  else
    r.raw = RawInst{Word{pair.first} | (Word{pair.second} << 16), 4};
  return r;
}

std::pair<FetchResult, BufferState> fetch_buffered(BufferState state, Addr pc, bool redirect,
                                                   const InstMemory& imem) {
  if (redirect) state = BufferState::empty();
  if (auto f = check_pc(pc, imem)) return {*f, BufferState::empty()};

  FetchResult r;
  r.pc = pc;
  const std::size_t index = pc >> 2;

  if ((pc & 2) == 0) {
    const Word w = imem.entry32(index);
    const auto lo = static_cast<Half>(w);
    if (is_compressed(lo)) {
      r.raw = RawInst{lo, 2};
      return {r, BufferState::holding(static_cast<Half>(w >> 16), pc + 2)};
    }
    r.raw = RawInst{w, 4};
    return {r, BufferState::empty()};
  }

  Half low;
  if (state.has_half && state.addr == pc) {
    low = state.half;
    if (is_compressed(low)) {
      r.raw = RawInst{low, 2};
      return {r, BufferState::empty()};
    }
  } else {
    low = static_cast<Half>(imem.entry32(index) >> 16);
    if (is_compressed(low)) {
      r.raw = RawInst{low, 2};
      return {r, BufferState::empty()};
    }
    // Upper half lives in the next entry and needs a second access.
    r.cycles = 2;
    r.fetch_miss = true;
  }
  if (!imem.entry32_in_range(index + 1)) return {fault_at(pc, FaultKind::OutOfRange, pc + 2), BufferState::empty()};
  const Word next = imem.entry32(index + 1);
  r.raw = RawInst{Word{low} | (next << 16), 4};
  return {r, BufferState::holding(static_cast<Half>(next >> 16), pc + 4)};
}

FetchResult fetch_naive32(Addr pc, const InstMemory& imem) {
  if (auto f = check_pc(pc, imem)) return *f;
  FetchResult r;
  r.pc = pc;
  const std::size_t index = pc >> 2;
  const Word w = imem.entry32(index);
  const auto first = static_cast<Half>((pc & 2) ? w >> 16 : w);
  if (is_compressed(first)) {
    r.raw = RawInst{first, 2};
    return r;
  }
  if ((pc & 2) == 0) {
    r.raw = RawInst{w, 4};
    return r;
  }
  if (!imem.entry32_in_range(index + 1)) return fault_at(pc, FaultKind::OutOfRange, pc + 2);
  r.raw = RawInst{Word{first} | (imem.entry32(index + 1) << 16), 4};
  r.cycles = 2;
  r.fetch_miss = true;
  return r;
}

std::string_view fetch_kind_name(FetchKind kind) {
  switch (kind) {
    case FetchKind::DualPC: return "dualpc";
    case FetchKind::Buffer: return "buffer";
    case FetchKind::Naive: return "naive";
  }
  return "?";
}

std::optional<FetchKind> parse_fetch_kind(std::string_view name) {
  if (name == "dualpc") return FetchKind::DualPC;
  if (name == "buffer") return FetchKind::Buffer;
  if (name == "naive") return FetchKind::Naive;
  return std::nullopt;
}

namespace {

class DualPCUnit final : public FetchUnit {
 public:
  FetchKind kind() const override { return FetchKind::DualPC; }
  FetchResult fetch(const DualPCState& pcs, bool, const InstMemory& imem) override {
    return fetch_dualpc(pcs, imem);
  }
};

class BufferUnit final : public FetchUnit {
 public:
  FetchKind kind() const override { return FetchKind::Buffer; }
  FetchResult fetch(const DualPCState& pcs, bool redirect, const InstMemory& imem) override {
    auto [result, next] = fetch_buffered(state_, pcs.pc, redirect, imem);
    state_ = next;
    return result;
  }

 private:
  BufferState state_;
};

class NaiveUnit final : public FetchUnit {
 public:
  FetchKind kind() const override { return FetchKind::Naive; }
  FetchResult fetch(const DualPCState& pcs, bool, const InstMemory& imem) override {
    return fetch_naive32(pcs.pc, imem);
  }
};

}  // namespace

std::unique_ptr<FetchUnit> make_fetch_unit(FetchKind kind) {
  switch (kind) {
    case FetchKind::DualPC: return std::make_unique<DualPCUnit>();
    case FetchKind::Buffer: return std::make_unique<BufferUnit>();
    case FetchKind::Naive: return std::make_unique<NaiveUnit>();
  }
  return nullptr;
}

}  // namespace rvcsim
