#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rvcsim/isa.hpp"

namespace rvcsim {

inline constexpr Addr kExitAddr = 0xFFFF0000u;
inline constexpr Addr kPutcharAddr = 0xFFFF0004u;
inline constexpr std::size_t kDefaultMemBytes = 64 * 1024;

enum class FaultKind : std::uint8_t { None, OutOfRange, Misaligned };

std::string_view fault_name(FaultKind kind);

class ImageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ImageFormat { FlatBinary, HexWords };

/// Program image placed at address 0.
struct MemoryImage {
  Addr origin = 0;
  std::vector<std::uint8_t> payload;

  static MemoryImage from_words(std::span<const Word> words);
};

/// Picks HexWords for ".hex" files and FlatBinary otherwise.
ImageFormat guess_format(const std::filesystem::path& path);

/// Throws ImageError for unreadable files and malformed hex lines
/// (the message names the 1-based line number).
MemoryImage load_image(const std::filesystem::path& path, ImageFormat format);
MemoryImage parse_hex_words(std::string_view text);

/// Hex format: one little-endian word per line, payload padded to 4 bytes.
std::string format_hex_words(const MemoryImage& image);
void save_image(const std::filesystem::path& path, const MemoryImage& image, ImageFormat format);

/// Instruction memory made of 16-bit entries, read through two ports.
class InstMemory {
 public:
  explicit InstMemory(std::size_t size_bytes = kDefaultMemBytes);

  std::size_t size_bytes() const { return entries_.size() * 2; }
  bool in_range(Addr addr) const { return addr < size_bytes(); }

  void load(const MemoryImage& image);

  /// Entry holding bytes [addr, addr+1]; addr must be even and in range.
  Half entry(Addr addr) const { return entries_[addr >> 1]; }

  struct PairRead {
    Half first = 0;
    Half second = 0;
    FaultKind fault = FaultKind::None;
    Addr fault_addr = 0;
  };
  /// Both ports in one cycle. Odd or out-of-range addresses fault.
  PairRead read_entry_pair(Addr pc, Addr pc2) const;

  /// Baseline 32-bit-wide view: entry n covers bytes [4n, 4n+3].
  Word entry32(std::size_t index) const;
  bool entry32_in_range(std::size_t index) const { return index * 4 + 3 < size_bytes(); }

 private:
  std::vector<Half> entries_;
};

/// Byte-addressed data memory with the console and exit MMIO registers.
class DataMemory {
 public:
  explicit DataMemory(std::size_t size_bytes = kDefaultMemBytes);

  std::size_t size_bytes() const { return bytes_.size(); }
  void load(const MemoryImage& image);

  struct Access {
    Word value = 0;
    FaultKind fault = FaultKind::None;
    bool exit = false;
    Word exit_code = 0;
  };

  /// size is 1, 2 or 4. Reads sign- or zero-extend per `sign`.
  Access access(Addr addr, unsigned size, bool sign, bool write, Word value);

  const std::string& console() const { return console_; }
  void clear_console() { console_.clear(); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::string console_;
};

/// Both memories initialized from one image (Harvard mirror). Throws
/// ImageError when the image does not fit.
struct Memories {
  InstMemory imem;
  DataMemory dmem;

  Memories(const MemoryImage& image, std::size_t imem_bytes = kDefaultMemBytes,
           std::size_t dmem_bytes = kDefaultMemBytes);
};

}  // namespace rvcsim
