#include "rvcsim/bpred.hpp"

#include <bit>
#include <stdexcept>

namespace rvcsim {

std::string_view scheme_name(PredictorScheme scheme) {
  switch (scheme) {
    case PredictorScheme::Gshare: return "gshare";
    case PredictorScheme::Bimodal: return "bimodal";
    case PredictorScheme::None: return "none";
  }
  return "?";
}

std::optional<PredictorScheme> parse_scheme(std::string_view name) {
  if (name == "gshare") return PredictorScheme::Gshare;
  if (name == "bimodal") return PredictorScheme::Bimodal;
  if (name == "none") return PredictorScheme::None;
  return std::nullopt;
}

BranchPredictor::BranchPredictor(PredictorScheme scheme, std::size_t pht_entries, std::size_t btb_entries)
    : scheme_(scheme),
      pht_entries_(pht_entries),
      btb_entries_(btb_entries),
      ghr_mask_(static_cast<std::uint32_t>(pht_entries - 1)),
      pht_(pht_entries, 1),  // weakly not-taken
      btb_(btb_entries, 0) {
  if (!std::has_single_bit(pht_entries) || !std::has_single_bit(btb_entries))
    throw std::invalid_argument("predictor table sizes must be powers of two");
}

std::uint32_t BranchPredictor::pht_index(Addr pc, std::uint32_t ghr) const {
  const std::uint32_t base = pc >> 1;
  if (scheme_ == PredictorScheme::Gshare) return (base ^ ghr) & ghr_mask_;
  return base & ghr_mask_;
}

Prediction BranchPredictor::predict(Addr lookup_pc, Addr fallthrough_pc) {
  ++stats_.lookups;
  Prediction p;
  p.for_pc = fallthrough_pc;
  p.ghr = ghr_;
  p.pht_index = pht_index(lookup_pc, ghr_);
  p.target = btb_[btb_index(lookup_pc)];
  p.target2 = p.target + 2;
  p.taken = scheme_ != PredictorScheme::None && pht_[p.pht_index] >= 2;
  return p;
}

void BranchPredictor::update(Addr pred_addr, std::uint32_t ghr_snapshot, bool taken, Addr target, bool prohibit,
                             bool conditional) {
  if (prohibit) {
    ++stats_.prohibited_updates;
  } else if (scheme_ != PredictorScheme::None) {
    ++stats_.updates;
    auto& c = pht_[pht_index(pred_addr, ghr_snapshot)];
    if (taken && c < 3) ++c;
    if (!taken && c > 0) --c;
    if (taken) btb_[btb_index(pred_addr)] = target;
  }
  if (conditional) ghr_ = ((ghr_ << 1) | (taken ? 1u : 0u)) & ghr_mask_;
}

void BranchPredictor::demote(Addr pred_addr, std::uint32_t ghr_snapshot) {
  if (scheme_ == PredictorScheme::None) return;
  auto& c = pht_[pht_index(pred_addr, ghr_snapshot)];
  if (c > 0) --c;
}

}  // namespace rvcsim
