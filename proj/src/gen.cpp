#include "rvcsim/gen.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

#include "rvcsim/program_builder.hpp"

namespace rvcsim {

std::string_view gen_kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::FetchMiss: return "fetchmiss";
    case GenKind::BimodalKiller: return "bimodal-killer";
    case GenKind::LoadUse: return "loaduse";
    case GenKind::Rand: return "rand";
  }
  return "?";
}

std::optional<GenKind> parse_gen_kind(std::string_view name) {
  for (GenKind k : {GenKind::FetchMiss, GenKind::BimodalKiller, GenKind::LoadUse, GenKind::Rand})
    if (gen_kind_name(k) == name) return k;
  return std::nullopt;
}

namespace {

using Label = ProgramBuilder::Label;

nlohmann::json base_manifest(GenKind kind, std::uint64_t seed, std::uint32_t size, std::uint64_t max_commits) {
  return {{"kind", gen_kind_name(kind)}, {"seed", seed}, {"size", size}, {"max_commits", max_commits}};
}

// Loop entered by a jump; the 32-bit head sits at pc = 2 mod 4 so every
// iteration starts with a redirect onto a straddling instruction. The body
// is padded so the loop branch resolves before its next lookup.
GeneratedProgram gen_fetchmiss(std::uint64_t seed, std::uint32_t n) {
  ProgramBuilder pb;
  const Label loop = pb.new_label();
  pb.li(9, static_cast<std::int32_t>(n), false);
  pb.jal(0, loop);
  pb.align_to(2);
  pb.bind(loop);
  pb.emit(asm_::i(Op::ADDI, 10, 10, 1), Form::Full);
  for (int k = 0; k < 4; ++k) pb.emit(asm_::i(Op::ADDI, 11, 11, 1), Form::Compressed);
  pb.emit(asm_::i(Op::ADDI, 9, 9, -1), Form::Compressed);
  pb.branch(Op::BNE, 9, 0, loop, Form::Compressed);
  pb.exit_with(0);
  GeneratedProgram g{pb.finish(), {}};
  const std::uint64_t prologue = n <= 2047 ? 2 : 3;
  g.manifest = base_manifest(GenKind::FetchMiss, seed, n, prologue + 7ull * n + 2);
  g.manifest["expect"] = {{"fetch_misses_buffer", n}, {"fetch_misses_dualpc", 0}, {"min_extra_cycles_buffer", n}};
  return g;
}

// Two branches that alternate in opposite phase each iteration. A per-pc
// counter cannot track them; a history-indexed table can. Every branch is
// preceded by a non-branch so redirect targets never hold a branch.
GeneratedProgram gen_bimodal_killer(std::uint64_t seed, std::uint32_t n) {
  ProgramBuilder pb;
  const Label loop = pb.new_label();
  const Label skip1 = pb.new_label();
  const Label skip2 = pb.new_label();
  pb.li(9, static_cast<std::int32_t>(n), false);
  pb.li(10, 0, false);
  pb.bind(loop);
  pb.emit(asm_::i(Op::XORI, 10, 10, 1), Form::Full);
  pb.branch(Op::BEQ, 10, 0, skip1, Form::Compressed);
  pb.emit(asm_::i(Op::ADDI, 11, 11, 1), Form::Compressed);
  pb.bind(skip1);
  pb.emit(asm_::i(Op::ADDI, 13, 13, 1), Form::Compressed);
  pb.branch(Op::BNE, 10, 0, skip2, Form::Compressed);
  pb.emit(asm_::i(Op::ADDI, 12, 12, 1), Form::Compressed);
  pb.bind(skip2);
  pb.emit(asm_::i(Op::ADDI, 9, 9, -1), Form::Compressed);
  pb.branch(Op::BNE, 9, 0, loop, Form::Compressed);
  pb.exit_with(0);
  GeneratedProgram g{pb.finish(), {}};
  const std::uint64_t prologue = n <= 2047 ? 2 : 3;
  g.manifest = base_manifest(GenKind::BimodalKiller, seed, n, prologue + 7ull * n + 2);
  g.manifest["expect"] = {{"branches", 3ull * n}, {"min_gshare_margin_pts", 20}};
  return g;
}

// Each iteration: lw / dependent add, twice. Both pairs are back to back.
GeneratedProgram gen_loaduse(std::uint64_t seed, std::uint32_t n) {
  ProgramBuilder pb;
  const Label loop = pb.new_label();
  pb.li(8, static_cast<std::int32_t>(kGenDataB), false);
  pb.li(9, static_cast<std::int32_t>(n), false);
  pb.li(13, 0x1234, false);
  pb.emit(asm_::s(Op::SW, 8, 13, 0), Form::Full);
  pb.emit(asm_::s(Op::SW, 8, 13, 4), Form::Full);
  pb.bind(loop);
  pb.emit(asm_::i(Op::LW, 10, 8, 0), Form::Compressed);
  pb.emit(asm_::r(Op::ADD, 11, 11, 10), Form::Compressed);
  pb.emit(asm_::i(Op::LW, 12, 8, 4), Form::Compressed);
  pb.emit(asm_::r(Op::ADD, 11, 11, 12), Form::Compressed);
  pb.emit(asm_::i(Op::ADDI, 9, 9, -1), Form::Compressed);
  pb.branch(Op::BNE, 9, 0, loop, Form::Compressed);
  pb.exit_with(0);
  GeneratedProgram g{pb.finish(), {}};
  const std::uint64_t prologue = 2 + (n <= 2047 ? 1 : 2) + 2 + 2;
  g.manifest = base_manifest(GenKind::LoadUse, seed, n, prologue + 6ull * n + 2);
  g.manifest["expect"] = {{"load_use_stalls", 2ull * n}};
  return g;
}

// Random terminating program. x2 / x8 hold data bases, x9 counts loops,
// x1 is the link register, x3 holds computed-jump bases, x31 is the exit
// scratch. Everything else is fair game for random destinations.
class RandGen {
 public:
  RandGen(std::uint64_t seed, std::uint32_t size) : rng_(seed), size_(std::min(size, kRandMaxCommits)) {}

  GeneratedProgram run(std::uint64_t seed) {
    pb_.li(2, static_cast<std::int32_t>(kGenDataA), coin());
    pb_.li(8, static_cast<std::int32_t>(kGenDataB), coin());
    bound_ = 4;
    // Leave room for the largest block and the exit stub.
    while (bound_ + kMaxBlock + 2 <= size_) top_block();
    pb_.exit_with(0);
    bound_ += 2;
    GeneratedProgram g{pb_.finish(), {}};
    g.manifest = base_manifest(GenKind::Rand, seed, size_, bound_);
    g.manifest["expect"] = {{"terminates", true}, {"logs_match_reference", true}};
    return g;
  }

 private:
  static constexpr std::uint64_t kMaxBlock = 220;
  static constexpr std::array<unsigned, 23> kFree = {5,  6,  7,  10, 11, 12, 13, 14, 15, 16, 17, 18,
                                                     19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29};
  static constexpr std::array<unsigned, 6> kExtraSrc = {0, 1, 2, 8, 9, 3};

  unsigned pick(unsigned n) { return static_cast<unsigned>(rng_() % n); }
  bool coin() { return (rng_() & 1) != 0; }
  unsigned dest() { return kFree[pick(kFree.size())]; }
  unsigned creg_dest() { return 10 + pick(6); }  // x10..x15, reachable by the CA/CB forms
  unsigned src() {
    const unsigned k = pick(kFree.size() + kExtraSrc.size());
    return k < kFree.size() ? kFree[k] : kExtraSrc[k - kFree.size()];
  }
  std::int32_t imm12() { return coin() ? static_cast<std::int32_t>(pick(64)) - 32 : static_cast<std::int32_t>(pick(4096)) - 2048; }

  void put(const DecodedInst& d) { pb_.emit_auto(d, coin()); }

  void alu() {
    static constexpr std::array<Op, 10> kR = {Op::ADD, Op::SUB, Op::SLL, Op::SLT, Op::SLTU,
                                              Op::XOR, Op::SRL, Op::SRA, Op::OR,  Op::AND};
    static constexpr std::array<Op, 6> kI = {Op::ADDI, Op::SLTI, Op::SLTIU, Op::XORI, Op::ORI, Op::ANDI};
    static constexpr std::array<Op, 3> kSh = {Op::SLLI, Op::SRLI, Op::SRAI};
    switch (pick(7)) {
      case 0:
      case 1: {
        // Same rd/rs1 often, so the two-operand compressed forms get used.
        const unsigned rd = coin() ? creg_dest() : dest();
        put(asm_::r(kR[pick(kR.size())], rd, coin() ? rd : src(), src()));
        break;
      }
      case 2:
      case 3: {
        const unsigned rd = coin() ? creg_dest() : dest();
        put(asm_::i(kI[pick(kI.size())], rd, coin() ? rd : src(), imm12()));
        break;
      }
      case 4: {
        const unsigned rd = coin() ? creg_dest() : dest();
        put(asm_::i(kSh[pick(kSh.size())], rd, coin() ? rd : src(), static_cast<std::int32_t>(pick(32))));
        break;
      }
      case 5: {
        const auto hi = static_cast<std::int32_t>(coin() ? pick(64) - 32u : pick(1u << 20)) << 12;
        put(asm_::u(Op::LUI, dest(), hi == 0 ? 0x1000 : hi));
        break;
      }
      default:
        put(asm_::u(Op::AUIPC, dest(), static_cast<std::int32_t>(pick(16)) << 12));
        break;
    }
  }

  DecodedInst load(unsigned rd) {
    static constexpr std::array<Op, 5> kL = {Op::LB, Op::LH, Op::LW, Op::LBU, Op::LHU};
    const Op op = kL[pick(kL.size())];
    const unsigned size = op == Op::LW ? 4 : (op == Op::LH || op == Op::LHU) ? 2 : 1;
    const unsigned base = coin() ? 2 : 8;
    const auto off = static_cast<std::int32_t>(pick((base == 2 ? 256 : 128) / size) * size);
    return asm_::i(op, rd, base, off);
  }

  void store() {
    static constexpr std::array<Op, 3> kS = {Op::SB, Op::SH, Op::SW};
    const Op op = kS[pick(kS.size())];
    const unsigned size = op == Op::SW ? 4 : op == Op::SH ? 2 : 1;
    const unsigned base = coin() ? 2 : 8;
    const auto off = static_cast<std::int32_t>(pick((base == 2 ? 256 : 128) / size) * size);
    put(asm_::s(op, base, coin() ? 10 + pick(6) : src(), off));
  }

  // One committed instruction.
  void simple() {
    const unsigned k = pick(10);
    if (k < 6) alu();
    else if (k < 8) put(load(coin() ? creg_dest() : dest()));
    else store();
  }

  std::uint64_t straight(unsigned max_len) {
    const unsigned n = 1 + pick(max_len);
    for (unsigned i = 0; i < n; ++i) simple();
    return n;
  }

  std::uint64_t load_use() {
    const unsigned rd = creg_dest();
    put(load(rd));
    const unsigned rd2 = coin() ? rd : creg_dest();
    put(asm_::r(coin() ? Op::ADD : Op::XOR, rd2, rd2, rd));
    return 2;
  }

  std::uint64_t forward_branch() {
    static constexpr std::array<Op, 6> kB = {Op::BEQ, Op::BNE, Op::BLT, Op::BGE, Op::BLTU, Op::BGEU};
    const Label skip = pb_.new_label();
    Op op = kB[pick(kB.size())];
    unsigned rs1 = src();
    unsigned rs2 = src();
    Form form = Form::Full;
    if (coin()) {
      op = coin() ? Op::BEQ : Op::BNE;
      rs1 = 10 + pick(6);
      rs2 = 0;
      form = Form::Compressed;
    }
    pb_.branch(op, rs1, rs2, skip, form);
    const std::uint64_t n = straight(4);
    pb_.bind(skip);
    return 1 + n;
  }

  std::uint64_t forward_jump() {
    const Label skip = pb_.new_label();
    pb_.jal(0, skip, coin() ? Form::Compressed : Form::Full);
    straight(3);
    pb_.bind(skip);
    return 1;
  }

  // auipc x3, 0; jalr rd, (target - base + 1)(x3). The odd offset checks
  // that bit 0 of the target is cleared.
  std::uint64_t computed_jump() {
    const Label base = pb_.new_label();
    const Label target = pb_.new_label();
    pb_.bind(base);
    pb_.emit(asm_::u(Op::AUIPC, 3, 0), Form::Full);
    pb_.jalr_rel(0, 3, target, base, coin() ? 1 : 0);
    straight(3);
    pb_.bind(target);
    return 2;
  }

  std::uint64_t call() {
    std::uint64_t cost = 0;
    if (funcs_.empty() || pick(3) == 0) {
      // Define a function inline, jumped over.
      const Label over = pb_.new_label();
      const Label f = pb_.new_label();
      pb_.jal(0, over, coin() ? Form::Compressed : Form::Full);
      cost += 1;
      pb_.bind(f);
      const std::uint64_t len = straight(5) + 1;
      put(asm_::jalr(0, 1, 0));
      pb_.bind(over);
      funcs_.push_back({f, len});
    }
    const auto& [f, len] = funcs_[pick(funcs_.size())];
    const auto dist = static_cast<std::int64_t>(pb_.address_of(f)) - static_cast<std::int64_t>(pb_.here());
    const bool near = dist >= -2000;
    if (!near || coin()) {
      pb_.jal(1, f, near && coin() ? Form::Compressed : Form::Full);
      cost += 1;
    } else {
      const Label base = pb_.new_label();
      pb_.bind(base);
      pb_.emit(asm_::u(Op::AUIPC, 3, 0), Form::Full);
      pb_.jalr_rel(1, 3, f, base, coin() ? 1 : 0);
      cost += 2;
    }
    return cost + len;
  }

  std::uint64_t loop_body_block() {
    switch (pick(4)) {
      case 0: return load_use();
      case 1: return forward_branch();
      default: return straight(4);
    }
  }

  std::uint64_t counted_loop() {
    const unsigned trips = 1 + pick(8);
    pb_.li(9, static_cast<std::int32_t>(trips), coin());
    const Label head = pb_.new_label();
    pb_.bind(head);
    std::uint64_t body = 0;
    const unsigned blocks = 1 + pick(5);
    for (unsigned b = 0; b < blocks; ++b) body += loop_body_block();
    pb_.emit_auto(asm_::i(Op::ADDI, 9, 9, -1), coin());
    pb_.branch(Op::BNE, 9, 0, head, coin() ? Form::Compressed : Form::Full);
    return 1 + trips * (body + 2);
  }

  void top_block() {
    const unsigned k = pick(16);
    if (k < 4) bound_ += straight(4);
    else if (k < 6) bound_ += load_use();
    else if (k < 9) bound_ += forward_branch();
    else if (k < 10) bound_ += forward_jump();
    else if (k < 11) bound_ += computed_jump();
    else if (k < 13) bound_ += call();
    else bound_ += counted_loop();
  }

  std::mt19937_64 rng_;
  std::uint32_t size_;
  ProgramBuilder pb_;
  std::uint64_t bound_ = 0;
  std::vector<std::pair<Label, std::uint64_t>> funcs_;
};

}  // namespace

GeneratedProgram generate_program(GenKind kind, std::uint64_t seed, std::uint32_t size) {
  // rand needs its two base-register loads plus the exit stub.
  if (size == 0 || (kind == GenKind::Rand && size < 6)) throw std::invalid_argument("size too small to hold exit stub");
  switch (kind) {
    case GenKind::FetchMiss: return gen_fetchmiss(seed, size);
    case GenKind::BimodalKiller: return gen_bimodal_killer(seed, size);
    case GenKind::LoadUse: return gen_loaduse(seed, size);
    case GenKind::Rand: return RandGen(seed, size).run(seed);
  }
  throw std::invalid_argument("unknown generator");
}

}  // namespace rvcsim
