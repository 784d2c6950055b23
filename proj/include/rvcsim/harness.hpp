#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rvcsim/bpred.hpp"
#include "rvcsim/commit_log.hpp"
#include "rvcsim/fetch.hpp"
#include "rvcsim/memsys.hpp"
#include "rvcsim/pipeline.hpp"
#include "rvcsim/status.hpp"

namespace rvcsim {

// Process exit codes used by the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitProgramFault = 1;
inline constexpr int kExitMismatch = 2;
inline constexpr int kExitUsage = 3;

enum class Engine { Pipeline, Reference };

std::string_view engine_name(Engine engine);
std::optional<Engine> parse_engine(std::string_view name);

struct RunConfig {
  Engine engine = Engine::Pipeline;
  FetchKind fetch = FetchKind::DualPC;
  PredictorScheme bpred = PredictorScheme::Gshare;
  std::size_t imem_bytes = kDefaultMemBytes;
  std::size_t dmem_bytes = kDefaultMemBytes;
  std::uint64_t max_cycles = 1'000'000'000;
  bool sp_init = false;
  bool keep_log = true;
  std::ostream* trace = nullptr;
};

struct RunOutcome {
  ExitStatus status;
  std::string console;
  CommitLog log;
  std::optional<Stats> stats;  // pipeline engine only
};

RunOutcome execute(const MemoryImage& image, const RunConfig& config);

/// Process exit code for a finished run.
int exit_code_for(const ExitStatus& status);

std::string stats_json(const Stats& stats, PredictorScheme scheme);

/// "<fetch>/<bpred>", e.g. "dualpc/gshare".
std::string config_label(FetchKind fetch, PredictorScheme bpred);

struct BenchConfig {
  FetchKind fetch;
  PredictorScheme bpred;
};

struct BenchCell {
  std::string program;
  BenchConfig config;
  bool ok = false;
  std::string error;
  ExitStatus status;
  Stats stats;
};

struct BenchReport {
  std::vector<std::string> programs;
  std::vector<BenchConfig> configs;
  std::vector<BenchCell> cells;  // program-major, then config order
  /// Programs whose committed instruction count differs between configs.
  std::vector<std::string> count_mismatches;

  const BenchCell& cell(std::size_t program, std::size_t config) const {
    return cells[program * configs.size() + config];
  }
  /// Arithmetic means over programs that completed in this config.
  double mean_ipc(std::size_t config) const;
  std::optional<double> mean_hit_rate(std::size_t config) const;
  bool all_ok() const;

  std::string csv() const;
  std::string table() const;
};

inline constexpr const char* kBenchCsvHeader =
    "config,program,cycles,instructions,ipc,branches,mispredicts,hit_rate,fetch_misses,stalls";

struct BenchOptions {
  std::vector<FetchKind> fetch = {FetchKind::DualPC, FetchKind::Buffer};
  std::vector<PredictorScheme> bpred = {PredictorScheme::Gshare, PredictorScheme::Bimodal,
                                        PredictorScheme::None};
  unsigned jobs = 1;
  std::size_t imem_bytes = kDefaultMemBytes;
  std::size_t dmem_bytes = kDefaultMemBytes;
  std::uint64_t max_cycles = 1'000'000'000;
  bool sp_init = false;
};

/// Programs in the suite are the *.bin and *.hex files of `dir`, sorted by name.
std::vector<std::filesystem::path> list_suite(const std::filesystem::path& dir);

BenchReport run_bench(const std::vector<std::filesystem::path>& programs, const BenchOptions& options);

}  // namespace rvcsim
