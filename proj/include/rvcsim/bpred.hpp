#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rvcsim/isa.hpp"

namespace rvcsim {

enum class PredictorScheme { Gshare, Bimodal, None };

std::string_view scheme_name(PredictorScheme scheme);
std::optional<PredictorScheme> parse_scheme(std::string_view name);

inline constexpr std::size_t kPhtEntries = 8192;
inline constexpr std::size_t kBtbEntries = 512;
inline constexpr unsigned kGhrBits = 13;

/// Address the predictor trains under for a branch at branch_pc: the
/// instruction before it in memory, whose lookup predicted it.
constexpr Addr predecessor_address(Addr branch_pc, bool predecessor_compressed) {
  return branch_pc - (predecessor_compressed ? 2 : 4);
}

/// Registered lookup result. The lookup is keyed by the address of the
/// instruction being fetched and predicts the instruction that follows it
/// in memory (`for_pc`).
struct Prediction {
  bool taken = false;
  Addr target = 0;
  Addr target2 = 2;  // target + 2, from the adder behind the BTB
  Addr for_pc = 0;
  std::uint32_t pht_index = 0;
  std::uint32_t ghr = 0;  // history the index was formed with
};

struct PredictorStats {
  std::uint64_t lookups = 0;
  std::uint64_t updates = 0;
  std::uint64_t prohibited_updates = 0;
};

/// gshare / bimodal direction predictor with a tagless BTB. Updates are
/// written under the address of the branch's predecessor in memory.
class BranchPredictor {
 public:
  explicit BranchPredictor(PredictorScheme scheme, std::size_t pht_entries = kPhtEntries,
                           std::size_t btb_entries = kBtbEntries);

  PredictorScheme scheme() const { return scheme_; }

  std::uint32_t pht_index(Addr pc, std::uint32_t ghr) const;
  std::uint32_t btb_index(Addr pc) const { return (pc >> 1) & (btb_entries_ - 1); }

  /// fallthrough_pc is lookup_pc plus the length of the instruction there.
  Prediction predict(Addr lookup_pc, Addr fallthrough_pc);

  /// Trains the tables under pred_addr with the history snapshot captured
  /// at prediction time. When `prohibit` is set the PHT/BTB are left alone.
  /// The global history register shifts for conditional branches either way.
  void update(Addr pred_addr, std::uint32_t ghr_snapshot, bool taken, Addr target, bool prohibit,
              bool conditional);

  /// Weakens the direction counter for a non-branch that was predicted taken.
  void demote(Addr pred_addr, std::uint32_t ghr_snapshot);

  std::uint32_t ghr() const { return ghr_; }
  std::uint8_t counter(std::uint32_t index) const { return pht_[index]; }
  Addr btb_target(std::uint32_t index) const { return btb_[index]; }
  const PredictorStats& stats() const { return stats_; }

 private:
  PredictorScheme scheme_;
  std::size_t pht_entries_;
  std::size_t btb_entries_;
  std::uint32_t ghr_mask_;
  std::vector<std::uint8_t> pht_;
  std::vector<Addr> btb_;
  std::uint32_t ghr_ = 0;
  PredictorStats stats_;
};

}  // namespace rvcsim
