#include "rvcsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rvcsim/refmodel.hpp"

namespace rvcsim {

namespace {

// Averages from the evaluation table of the dual-PC design, printed next
// to measured means for comparison only.
constexpr double kPublishedIpcDualPC = 0.857;
constexpr double kPublishedIpcBuffer = 0.846;
constexpr double kPublishedHitDualPC = 0.788;
constexpr double kPublishedHitBuffer = 0.798;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string_view engine_name(Engine engine) {
  return engine == Engine::Pipeline ? "pipeline" : "ref";
}

std::optional<Engine> parse_engine(std::string_view name) {
  if (name == "pipeline") return Engine::Pipeline;
  if (name == "ref") return Engine::Reference;
  return std::nullopt;
}

RunOutcome execute(const MemoryImage& image, const RunConfig& config) {
  RunOutcome out;
  if (config.engine == Engine::Reference) {
    RefConfig rc;
    rc.imem_bytes = config.imem_bytes;
    rc.dmem_bytes = config.dmem_bytes;
    rc.max_steps = config.max_cycles;
    rc.sp_init = config.sp_init;
    rc.keep_log = config.keep_log;
    RefRun r = run_reference(image, rc);
    out.status = r.status;
    out.console = std::move(r.console);
    out.log = std::move(r.log);
    return out;
  }
  PipelineConfig pc;
  pc.fetch = config.fetch;
  pc.bpred = config.bpred;
  pc.imem_bytes = config.imem_bytes;
  pc.dmem_bytes = config.dmem_bytes;
  pc.max_cycles = config.max_cycles;
  pc.sp_init = config.sp_init;
  pc.keep_log = config.keep_log;
  pc.trace = config.trace;
  CoreRun r = run_core(image, pc);
  out.status = r.status;
  out.console = std::move(r.console);
  out.log = std::move(r.log);
  out.stats = r.stats;
  return out;
}

int exit_code_for(const ExitStatus& status) {
  return status.success() ? kExitOk : kExitProgramFault;
}

std::string config_label(FetchKind fetch, PredictorScheme bpred) {
  return std::string(fetch_kind_name(fetch)) + "/" + std::string(scheme_name(bpred));
}

std::string stats_json(const Stats& s, PredictorScheme scheme) {
  nlohmann::ordered_json j;
  j["cycles"] = s.cycles;
  j["instructions"] = s.instructions;
  j["ipc"] = s.ipc;
  j["branches"] = s.branches;
  j["mispredicts"] = s.mispredicts;
  if (scheme == PredictorScheme::None) j["bp_hit_rate"] = nullptr;
  else j["bp_hit_rate"] = s.bp_hit_rate;
  j["fetch_misses"] = s.fetch_misses;
  j["load_use_stalls"] = s.load_use_stalls;
  j["prohibited_updates"] = s.prohibited_updates;
  j["flushes"] = s.flushes;
  j["flushed_slots"] = s.flushed_slots;
  j["twin_checks"] = s.twin_checks;
  j["twin_violations"] = s.twin_violations;
  return j.dump(2);
}

double BenchReport::mean_ipc(std::size_t config) const {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t p = 0; p < programs.size(); ++p) {
    const auto& c = cell(p, config);
    if (!c.ok) continue;
    sum += c.stats.ipc;
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

std::optional<double> BenchReport::mean_hit_rate(std::size_t config) const {
  if (configs[config].bpred == PredictorScheme::None) return std::nullopt;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t p = 0; p < programs.size(); ++p) {
    const auto& c = cell(p, config);
    if (!c.ok) continue;
    sum += c.stats.bp_hit_rate;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

bool BenchReport::all_ok() const {
  return count_mismatches.empty() &&
         std::all_of(cells.begin(), cells.end(), [](const BenchCell& c) { return c.ok; });
}

std::string BenchReport::csv() const {
  std::ostringstream out;
  out << kBenchCsvHeader << '\n';
  for (const auto& c : cells) {
    out << config_label(c.config.fetch, c.config.bpred) << ',' << c.program << ',';
    if (!c.ok) {
      out << "ERROR,,,,,,,\n";
      continue;
    }
    const Stats& s = c.stats;
    out << s.cycles << ',' << s.instructions << ',' << fixed(s.ipc, 6) << ',' << s.branches << ','
        << s.mispredicts << ','
        << (c.config.bpred == PredictorScheme::None ? std::string("N/A") : fixed(s.bp_hit_rate, 6)) << ','
        << s.fetch_misses << ',' << s.load_use_stalls << '\n';
  }
  return out.str();
}

std::string BenchReport::table() const {
  std::ostringstream out;
  std::size_t width = 8;
  for (const auto& p : programs) width = std::max(width, p.size());
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  out << pad("program", width);
  for (const auto& c : configs) out << "  " << pad(config_label(c.fetch, c.bpred), 16);
  out << '\n';
  for (std::size_t p = 0; p < programs.size(); ++p) {
    out << pad(programs[p], width);
    for (std::size_t k = 0; k < configs.size(); ++k) {
      const auto& c = cell(p, k);
      out << "  " << pad(c.ok ? fixed(c.stats.ipc, 3) : std::string("error"), 16);
    }
    out << '\n';
  }
  out << pad("mean IPC", width);
  for (std::size_t k = 0; k < configs.size(); ++k) out << "  " << pad(fixed(mean_ipc(k), 3), 16);
  out << '\n' << pad("mean hit", width);
  for (std::size_t k = 0; k < configs.size(); ++k) {
    const auto h = mean_hit_rate(k);
    out << "  " << pad(h ? fixed(*h, 3) : std::string("N/A"), 16);
  }
  out << "\n\npublished averages (dual-PC / buffered, gshare): IPC " << fixed(kPublishedIpcDualPC, 3) << " / "
      << fixed(kPublishedIpcBuffer, 3) << ", hit rate " << fixed(kPublishedHitDualPC, 3) << " / "
      << fixed(kPublishedHitBuffer, 3) << '\n';
  for (const auto& c : cells)
    if (!c.ok) out << "error: " << c.program << " [" << config_label(c.config.fetch, c.config.bpred) << "]: " << c.error << '\n';
  for (const auto& p : count_mismatches) out << "error: instruction counts differ across configurations for " << p << '\n';
  return out.str();
}

std::vector<std::filesystem::path> list_suite(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ImageError("suite directory not found: " + dir.string());
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".bin" || ext == ".hex")) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw ImageError("empty suite: no .bin or .hex programs in " + dir.string());
  return out;
}

BenchReport run_bench(const std::vector<std::filesystem::path>& programs, const BenchOptions& options) {
  BenchReport report;
  for (const auto& p : programs) report.programs.push_back(p.stem().string());
  for (auto f : options.fetch)
    for (auto b : options.bpred) report.configs.push_back({f, b});
  report.cells.resize(programs.size() * report.configs.size());

  // Images are loaded once, up front; a load failure marks the program's cells.
  std::vector<std::optional<MemoryImage>> images(programs.size());
  std::vector<std::string> load_errors(programs.size());
  for (std::size_t p = 0; p < programs.size(); ++p) {
    try {
      images[p] = load_image(programs[p], guess_format(programs[p]));
    } catch (const std::exception& e) {
      load_errors[p] = e.what();
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < report.cells.size(); i = next++) {
      const std::size_t p = i / report.configs.size();
      BenchCell& cell = report.cells[i];
      cell.program = report.programs[p];
      cell.config = report.configs[i % report.configs.size()];
      if (!images[p]) {
        cell.error = load_errors[p];
        continue;
      }
      try {
        RunConfig rc;
        rc.fetch = cell.config.fetch;
        rc.bpred = cell.config.bpred;
        rc.imem_bytes = options.imem_bytes;
        rc.dmem_bytes = options.dmem_bytes;
        rc.max_cycles = options.max_cycles;
        rc.sp_init = options.sp_init;
        rc.keep_log = false;
        const RunOutcome out = execute(*images[p], rc);
        cell.status = out.status;
        cell.stats = *out.stats;
        cell.ok = out.status.success();
        if (!cell.ok) cell.error = out.status.describe();
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t p = 0; p < programs.size(); ++p) {
    std::optional<std::uint64_t> count;
    for (std::size_t k = 0; k < report.configs.size(); ++k) {
      const auto& c = report.cell(p, k);
      if (!c.ok) continue;
      if (!count) count = c.stats.instructions;
      else if (*count != c.stats.instructions) {
        report.count_mismatches.push_back(report.programs[p]);
        break;
      }
    }
  }
  return report;
}

}  // namespace rvcsim
