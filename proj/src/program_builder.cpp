#include "rvcsim/program_builder.hpp"

#include <stdexcept>

namespace rvcsim {

ProgramBuilder::Label ProgramBuilder::new_label() {
  labels_.push_back(-1);
  return labels_.size() - 1;
}

void ProgramBuilder::bind(Label label) {
  if (labels_.at(label) >= 0) throw std::logic_error("label bound twice");
  labels_[label] = static_cast<std::int64_t>(bytes_.size());
}

Addr ProgramBuilder::address_of(Label label) const {
  if (labels_.at(label) < 0) throw std::logic_error("unbound label");
  return static_cast<Addr>(labels_[label]);
}

void ProgramBuilder::put(RawInst raw) {
  for (unsigned b = 0; b < raw.len; ++b) bytes_.push_back(static_cast<std::uint8_t>(raw.bits >> (8 * b)));
}

void ProgramBuilder::patch(std::size_t offset, RawInst raw) {
  for (unsigned b = 0; b < raw.len; ++b) bytes_[offset + b] = static_cast<std::uint8_t>(raw.bits >> (8 * b));
}

RawInst ProgramBuilder::emit(const DecodedInst& inst, Form form) {
  const RawInst raw = encode(inst, form);
  put(raw);
  return raw;
}

RawInst ProgramBuilder::emit_auto(const DecodedInst& inst, bool prefer_compressed) {
  if (prefer_compressed) {
    if (auto h = try_encode16(inst)) {
      put(RawInst{*h, 2});
      return RawInst{*h, 2};
    }
  }
  return emit(inst, Form::Full);
}

void ProgramBuilder::branch(Op op, unsigned rs1, unsigned rs2, Label target, Form form) {
  const DecodedInst inst = asm_::b(op, rs1, rs2, 0);
  fixups_.push_back({bytes_.size(), inst, form, target, false, 0, 0});
  put(RawInst{0, static_cast<std::uint8_t>(form == Form::Compressed ? 2 : 4)});
}

void ProgramBuilder::jal(unsigned rd, Label target, Form form) {
  const DecodedInst inst = asm_::jal(rd, 0);
  fixups_.push_back({bytes_.size(), inst, form, target, false, 0, 0});
  put(RawInst{0, static_cast<std::uint8_t>(form == Form::Compressed ? 2 : 4)});
}

void ProgramBuilder::jalr_rel(unsigned rd, unsigned rs1, Label target, Label base, std::int32_t extra) {
  const DecodedInst inst = asm_::jalr(rd, rs1, 0);
  fixups_.push_back({bytes_.size(), inst, Form::Full, target, true, base, extra});
  put(RawInst{0, 4});
}

void ProgramBuilder::li(unsigned rd, std::int32_t value, bool prefer_compressed) {
  if (value >= -2048 && value <= 2047) {
    emit_auto(asm_::i(Op::ADDI, rd, 0, value), prefer_compressed);
    return;
  }
  const auto uv = static_cast<std::uint32_t>(value);
  const std::uint32_t hi = (uv + 0x800u) & 0xFFFFF000u;
  const auto lo = static_cast<std::int32_t>(uv - hi);
  emit_auto(asm_::u(Op::LUI, rd, static_cast<std::int32_t>(hi)), prefer_compressed);
  if (lo != 0) emit_auto(asm_::i(Op::ADDI, rd, rd, lo), prefer_compressed);
}

void ProgramBuilder::align_to(unsigned remainder) {
  while (here() % 4 != remainder % 4) emit(asm_::nop(), Form::Compressed);
}

void ProgramBuilder::word(Word w) { put(RawInst{w, 4}); }

void ProgramBuilder::exit_with(unsigned code_reg) {
  emit_auto(asm_::u(Op::LUI, 31, static_cast<std::int32_t>(kExitAddr)));
  emit(asm_::s(Op::SW, 31, code_reg, 0));
}

void ProgramBuilder::putchar_reg(unsigned reg) {
  emit_auto(asm_::u(Op::LUI, 31, static_cast<std::int32_t>(kExitAddr)));
  emit(asm_::s(Op::SW, 31, reg, static_cast<std::int32_t>(kPutcharAddr - kExitAddr)));
}

MemoryImage ProgramBuilder::finish() {
  for (const auto& f : fixups_) {
    DecodedInst inst = f.inst;
    const auto target = static_cast<std::int64_t>(address_of(f.target));
    const auto from = f.relative_to_base ? static_cast<std::int64_t>(address_of(f.base))
                                         : static_cast<std::int64_t>(f.offset);
    inst.imm = static_cast<std::int32_t>(target - from) + f.extra;
    patch(f.offset, encode(inst, f.form));
  }
  fixups_.clear();
  MemoryImage img;
  img.payload = bytes_;
  return img;
}

}  // namespace rvcsim
