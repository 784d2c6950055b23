#include "rvcsim/commit_log.hpp"

#include <algorithm>
#include <ostream>

namespace rvcsim {

namespace {

constexpr char kHex[] = "0123456789abcdef";

// "PC=" 8 " IR=" 8, then 32 x " Xnn=" 8.
constexpr std::size_t kLineChars = 3 + 8 + 4 + 8 + 32 * 13;

char* put_hex8(char* p, Word v) {
  for (int shift = 28; shift >= 0; shift -= 4) *p++ = kHex[(v >> shift) & 0xF];
  return p;
}

void write_line(char* p, const CommitRecord& rec) {
  p = std::copy_n("PC=", 3, p);
  p = put_hex8(p, rec.pc);
  p = std::copy_n(" IR=", 4, p);
  p = put_hex8(p, rec.raw);
  for (std::size_t i = 0; i < 32; ++i) {
    *p++ = ' ';
    *p++ = 'X';
    *p++ = static_cast<char>('0' + i / 10);
    *p++ = static_cast<char>('0' + i % 10);
    *p++ = '=';
    p = put_hex8(p, rec.regs[i]);
  }
}

std::optional<Word> parse_hex8(std::string_view s) {
  if (s.size() != 8) return std::nullopt;
  Word v = 0;
  for (char c : s) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<Word>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<Word>(c - 'a' + 10);
    else return std::nullopt;
  }
  return v;
}

std::string field_name(std::size_t index) {
  if (index == 0) return "PC";
  if (index == 1) return "IR";
  const auto r = index - 2;
  return std::string("X") + static_cast<char>('0' + r / 10) + static_cast<char>('0' + r % 10);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  while (!line.empty()) {
    const auto sp = line.find(' ');
    out.push_back(line.substr(0, sp));
    if (sp == std::string_view::npos) break;
    line.remove_prefix(sp + 1);
  }
  return out;
}

}  // namespace

std::string format_commit(const CommitRecord& rec) {
  std::string s(kLineChars, ' ');
  write_line(s.data(), rec);
  return s;
}

void write_commit_log(std::ostream& out, const CommitLog& log) {
  for (const auto& rec : log) out << format_commit(rec) << '\n';
}

std::string commit_log_text(const CommitLog& log) {
  std::string s(log.size() * (kLineChars + 1), '\n');
  for (std::size_t i = 0; i < log.size(); ++i) write_line(s.data() + i * (kLineChars + 1), log[i]);
  return s;
}

std::optional<CommitRecord> parse_commit_line(std::string_view line) {
  const auto fields = split_fields(line);
  if (fields.size() != 34) return std::nullopt;
  CommitRecord rec;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string prefix = field_name(i) + "=";
    if (fields[i].substr(0, prefix.size()) != prefix) return std::nullopt;
    const auto v = parse_hex8(fields[i].substr(prefix.size()));
    if (!v) return std::nullopt;
    if (i == 0) rec.pc = *v;
    else if (i == 1) rec.raw = *v;
    else rec.regs[i - 2] = *v;
  }
  return rec;
}

LogDiff diff_commit_logs(std::string_view log_a, std::string_view log_b) {
  const auto a = split_lines(log_a);
  const auto b = split_lines(log_b);
  LogDiff d;
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    const auto ra = parse_commit_line(a[i]);
    const auto rb = parse_commit_line(b[i]);
    if (!ra || !rb) {
      d.identical = false;
      d.malformed = true;
      d.line = i + 1;
      d.line_a = std::string(a[i]);
      d.line_b = std::string(b[i]);
      d.message = "malformed log line " + std::to_string(i + 1) + " in " + (!ra ? "first" : "second") + " log";
      return d;
    }
    if (a[i] == b[i]) continue;
    d.identical = false;
    d.line = i + 1;
    d.line_a = std::string(a[i]);
    d.line_b = std::string(b[i]);
    const auto fa = split_fields(a[i]);
    const auto fb = split_fields(b[i]);
    for (std::size_t f = 0; f < fa.size(); ++f) {
      if (fa[f] != fb[f]) {
        d.field = field_name(f);
        break;
      }
    }
    d.message = "first divergence at line " + std::to_string(d.line) + ", field " + d.field;
    return d;
  }
  if (a.size() != b.size()) {
    d.identical = false;
    d.line = common + 1;
    d.field = "length";
    if (a.size() > common) d.line_a = std::string(a[common]);
    if (b.size() > common) d.line_b = std::string(b[common]);
    d.message = "length mismatch after " + std::to_string(common) + " common lines (" + std::to_string(a.size()) +
                " vs " + std::to_string(b.size()) + ")";
  }
  return d;
}

}  // namespace rvcsim
