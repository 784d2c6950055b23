#include "rvcsim/memsys.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>

namespace rvcsim {

namespace {

bool is_pow2(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

void check_size(std::size_t size_bytes, const char* what) {
  if (!is_pow2(size_bytes) || size_bytes < 4)
    throw ImageError(std::string(what) + " size must be a power of two >= 4 bytes");
}

}  // namespace

std::string_view fault_name(FaultKind kind) {
  switch (kind) {
    case FaultKind::None: return "none";
    case FaultKind::OutOfRange: return "out-of-range";
    case FaultKind::Misaligned: return "misaligned";
  }
  return "unknown";
}

MemoryImage MemoryImage::from_words(std::span<const Word> words) {
  MemoryImage img;
  img.payload.reserve(words.size() * 4);
  for (Word w : words)
    for (int b = 0; b < 4; ++b) img.payload.push_back(static_cast<std::uint8_t>(w >> (8 * b)));
  return img;
}

ImageFormat guess_format(const std::filesystem::path& path) {
  return path.extension() == ".hex" ? ImageFormat::HexWords : ImageFormat::FlatBinary;
}

MemoryImage parse_hex_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    if (line.empty()) continue;
    if (line.size() != 8 || !std::all_of(line.begin(), line.end(), [](char c) {
          return std::isxdigit(static_cast<unsigned char>(c)) != 0;
        }))
      throw ImageError("malformed hex word at line " + std::to_string(line_no) + ": '" + std::string(line) + "'");
    words.push_back(static_cast<Word>(std::stoul(std::string(line), nullptr, 16)));
  }
  return MemoryImage::from_words(words);
}

MemoryImage load_image(const std::filesystem::path& path, ImageFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError("file not found: " + path.string());
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (format == ImageFormat::HexWords)
    return parse_hex_words(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  MemoryImage img;
  img.payload = std::move(bytes);
  return img;
}

std::string format_hex_words(const MemoryImage& image) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < image.payload.size(); i += 4) {
    Word w = 0;
    for (std::size_t b = 0; b < 4 && i + b < image.payload.size(); ++b)
      w |= static_cast<Word>(image.payload[i + b]) << (8 * b);
    for (int shift = 28; shift >= 0; shift -= 4) out.push_back(kHex[(w >> shift) & 0xF]);
    out.push_back('\n');
  }
  return out;
}

void save_image(const std::filesystem::path& path, const MemoryImage& image, ImageFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageError("cannot write " + path.string());
  if (format == ImageFormat::HexWords) {
    out << format_hex_words(image);
  } else {
    out.write(reinterpret_cast<const char*>(image.payload.data()), static_cast<std::streamsize>(image.payload.size()));
  }
  if (!out) throw ImageError("cannot write " + path.string());
}

InstMemory::InstMemory(std::size_t size_bytes) {
  check_size(size_bytes, "instruction memory");
  entries_.assign(size_bytes / 2, 0);
}

void InstMemory::load(const MemoryImage& image) {
  if (image.origin + image.payload.size() > size_bytes())
    throw ImageError("image of " + std::to_string(image.payload.size()) + " bytes exceeds instruction memory (" +
                     std::to_string(size_bytes()) + " bytes)");
  std::fill(entries_.begin(), entries_.end(), Half{0});
  for (std::size_t i = 0; i < image.payload.size(); ++i) {
    const std::size_t a = image.origin + i;
    entries_[a >> 1] |= static_cast<Half>(image.payload[i] << (8 * (a & 1)));
  }
}

InstMemory::PairRead InstMemory::read_entry_pair(Addr pc, Addr pc2) const {
  PairRead r;
  for (Addr a : {pc, pc2}) {
    if ((a & 1) != 0) {
      r.fault = FaultKind::Misaligned;
      r.fault_addr = a;
      return r;
    }
    if (!in_range(a)) {
      r.fault = FaultKind::OutOfRange;
      r.fault_addr = a;
      return r;
    }
  }
  r.first = entry(pc);
  r.second = entry(pc2);
  return r;
}

Word InstMemory::entry32(std::size_t index) const {
  return Word{entries_[2 * index]} | (Word{entries_[2 * index + 1]} << 16);
}

DataMemory::DataMemory(std::size_t size_bytes) {
  check_size(size_bytes, "data memory");
  bytes_.assign(size_bytes, 0);
}

void DataMemory::load(const MemoryImage& image) {
  if (image.origin + image.payload.size() > size_bytes())
    throw ImageError("image of " + std::to_string(image.payload.size()) + " bytes exceeds data memory (" +
                     std::to_string(size_bytes()) + " bytes)");
  std::fill(bytes_.begin(), bytes_.end(), std::uint8_t{0});
  std::copy(image.payload.begin(), image.payload.end(), bytes_.begin() + image.origin);
  console_.clear();
}

DataMemory::Access DataMemory::access(Addr addr, unsigned size, bool sign, bool write, Word value) {
  Access r;
  if (addr == kExitAddr || addr == kPutcharAddr) {
    if (write) {
      if (addr == kExitAddr) {
        r.exit = true;
        r.exit_code = value;
      } else {
        console_.push_back(static_cast<char>(value & 0xFF));
      }
    }
    return r;
  }
  if ((addr & (size - 1)) != 0) {
    r.fault = FaultKind::Misaligned;
    return r;
  }
  if (static_cast<std::size_t>(addr) + size > bytes_.size()) {
    r.fault = FaultKind::OutOfRange;
    return r;
  }
  if (write) {
    for (unsigned b = 0; b < size; ++b) bytes_[addr + b] = static_cast<std::uint8_t>(value >> (8 * b));
    return r;
  }
  Word v = 0;
  for (unsigned b = 0; b < size; ++b) v |= Word{bytes_[addr + b]} << (8 * b);
  if (sign && size < 4) {
    const Word m = 1u << (8 * size - 1);
    v = (v ^ m) - m;
  }
  r.value = v;
  return r;
}

Memories::Memories(const MemoryImage& image, std::size_t imem_bytes, std::size_t dmem_bytes)
    : imem(imem_bytes), dmem(dmem_bytes) {
  imem.load(image);
  dmem.load(image);
}

}  // namespace rvcsim
