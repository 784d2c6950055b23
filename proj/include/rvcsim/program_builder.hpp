#pragma once

#include <cstdint>
#include <vector>

#include "rvcsim/isa.hpp"
#include "rvcsim/memsys.hpp"

namespace rvcsim {

/// Programmatic assembler: emits encoded instructions at increasing
/// addresses from 0 and patches label references on finish().
class ProgramBuilder {
 public:
  using Label = std::size_t;

  Label new_label();
  void bind(Label label);
  Addr here() const { return static_cast<Addr>(bytes_.size()); }
  Addr address_of(Label label) const;

  /// Throws EncodeError if a compressed form is requested and does not fit.
  RawInst emit(const DecodedInst& inst, Form form = Form::Full);
  /// Compressed when the operands allow it and `prefer_compressed` is set.
  RawInst emit_auto(const DecodedInst& inst, bool prefer_compressed = true);

  /// Conditional branch / JAL to a label. The form is fixed now and the
  /// offset is checked against it at finish().
  void branch(Op op, unsigned rs1, unsigned rs2, Label target, Form form = Form::Full);
  void jal(unsigned rd, Label target, Form form = Form::Full);
  /// jalr rd, (target - base + extra)(rs1), where rs1 holds the address of `base`.
  void jalr_rel(unsigned rd, unsigned rs1, Label target, Label base, std::int32_t extra = 0);

  /// Loads a 32-bit constant with ADDI or LUI+ADDI.
  void li(unsigned rd, std::int32_t value, bool prefer_compressed = true);
  /// Pads with C.NOP until here() % 4 == remainder.
  void align_to(unsigned remainder);
  void word(Word w);

  /// lui x31, EXIT page; sw code_reg, 0(x31)
  void exit_with(unsigned code_reg = 0);
  /// putchar of the low byte of `reg` (clobbers x31).
  void putchar_reg(unsigned reg);

  MemoryImage finish();

 private:
  struct Fixup {
    std::size_t offset;
    DecodedInst inst;
    Form form;
    Label target;
    bool relative_to_base;
    Label base;
    std::int32_t extra;
  };
  void put(RawInst raw);
  void patch(std::size_t offset, RawInst raw);

  std::vector<std::uint8_t> bytes_;
  std::vector<std::int64_t> labels_;
  std::vector<Fixup> fixups_;
};

}  // namespace rvcsim
