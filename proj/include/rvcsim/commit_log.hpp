#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rvcsim/isa.hpp"

namespace rvcsim {

using RegFile = std::array<Word, 32>;

/// One retired instruction: pc, instruction bits and the register file
/// after its writeback. `cycle` is informational and not part of the log.
struct CommitRecord {
  Addr pc = 0;
  Word raw = 0;
  RegFile regs{};
  std::uint64_t cycle = 0;

  bool operator==(const CommitRecord& o) const { return pc == o.pc && raw == o.raw && regs == o.regs; }
};

using CommitLog = std::vector<CommitRecord>;

/// `PC=xxxxxxxx IR=xxxxxxxx X00=xxxxxxxx ... X31=xxxxxxxx`
std::string format_commit(const CommitRecord& rec);
void write_commit_log(std::ostream& out, const CommitLog& log);
std::string commit_log_text(const CommitLog& log);

/// Parses one canonical line. Returns nullopt if the line is malformed.
std::optional<CommitRecord> parse_commit_line(std::string_view line);

struct LogDiff {
  bool identical = true;
  bool malformed = false;
  std::size_t line = 0;          // 1-based line of the first divergence
  std::string line_a, line_b;    // empty when that log ended
  std::string field;             // first differing field, "length" for truncation
  std::string message;
};

/// Compares two commit-log texts line by line.
LogDiff diff_commit_logs(std::string_view log_a, std::string_view log_b);

}  // namespace rvcsim
