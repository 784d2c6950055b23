// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rvcsim/gen.hpp"
#include "rvcsim/harness.hpp"
#include "rvcsim/program_builder.hpp"
#include "rvcsim/refmodel.hpp"

using namespace rvcsim;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  enum Kind { Pass, Fail, Skip } kind = Fail;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr std::array<FetchKind, 3> kFetch = {FetchKind::DualPC, FetchKind::Buffer, FetchKind::Naive};
constexpr std::array<PredictorScheme, 3> kBpred = {PredictorScheme::Gshare, PredictorScheme::Bimodal,
                                                   PredictorScheme::None};

CoreRun run_pipe(const MemoryImage& img, FetchKind f, PredictorScheme b, bool keep_log = true) {
  PipelineConfig cfg;
  cfg.fetch = f;
  cfg.bpred = b;
  cfg.keep_log = keep_log;
  return run_core(img, cfg);
}

// Programs that ran on the dual-PC unit anywhere in this binary, with a
// nonzero fetch-miss count. Criterion 4 requires this to stay empty.
std::vector<std::string> g_dualpc_misses;
std::uint64_t g_dualpc_runs = 0;

void note_dualpc(const std::string& name, const Stats& s) {
  ++g_dualpc_runs;
  if (s.fetch_misses != 0) g_dualpc_misses.push_back(name);
}

// ---------------------------------------------------------------------------

Verdict decode_oracle() {
  const auto t0 = Clock::now();
  unsigned compressed = 0, legal = 0, mismatches = 0;
  for (unsigned h = 0; h < 0x10000; ++h) {
    const auto half = static_cast<Half>(h);
    if (!is_compressed(half)) continue;
    ++compressed;
    const DecodedInst a = decode16(half);
    const DecodedInst b = decode32(decompress(half));
    const bool ia = a.op == Op::ILLEGAL, ib = b.op == Op::ILLEGAL;
    if (ia != ib || (!ia && !a.same_semantics(b))) ++mismatches;
    legal += !ia;
  }
  const double secs = seconds_since(t0);
  const bool ok = mismatches == 0 && compressed == 49152 && secs < 1.0;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("%u compressed halfwords, %u legal, %u mismatches, %.3f s (limit 1 s)", compressed, legal,
              mismatches, secs)};
}

struct DiffSuiteResult {
  unsigned programs = 0;
  unsigned cells = 0;
  unsigned mismatched_cells = 0;
  unsigned failed_runs = 0;
  std::uint64_t max_commits = 0;
  std::uint64_t twin_checks = 0;
  std::uint64_t twin_violations = 0;
  std::string first_problem;
  double secs = 0;
};

DiffSuiteResult run_diff_suite(unsigned count) {
  DiffSuiteResult r;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= count; ++seed) {
    const GeneratedProgram g = generate_program(GenKind::Rand, seed, kRandMaxCommits);
    const RefRun ref = run_reference(g.image);
    const std::string ref_text = commit_log_text(ref.log);
    ++r.programs;
    r.max_commits = std::max<std::uint64_t>(r.max_commits, ref.log.size());
    if (!ref.status.success()) {
      ++r.failed_runs;
      if (r.first_problem.empty()) r.first_problem = fmt("seed %llu ref: %s", (unsigned long long)seed, ref.status.describe().c_str());
    }
    for (auto f : kFetch) {
      for (auto b : kBpred) {
        const CoreRun run = run_pipe(g.image, f, b);
        ++r.cells;
        r.twin_checks += run.stats.twin_checks;
        r.twin_violations += run.stats.twin_violations;
        if (f == FetchKind::DualPC) note_dualpc("rand seed " + std::to_string(seed), run.stats);
        if (!(run.status == ref.status) || !run.status.success()) ++r.failed_runs;
        if (commit_log_text(run.log) != ref_text) {
          ++r.mismatched_cells;
          if (r.first_problem.empty())
            r.first_problem = fmt("seed %llu %s: %s", (unsigned long long)seed, config_label(f, b).c_str(),
                                  diff_commit_logs(ref_text, commit_log_text(run.log)).message.c_str());
        }
        if (run.stats.twin_violations && r.first_problem.empty())
          r.first_problem = "twin: " + run.stats.first_twin_violation;
      }
    }
  }
  r.secs = seconds_since(t0);
  return r;
}

Verdict differential(const DiffSuiteResult& r) {
  const bool ok = r.programs >= 1000 && r.mismatched_cells == 0 && r.failed_runs == 0 &&
                  r.max_commits <= kRandMaxCommits && r.secs < 120.0;
  std::string d = fmt("%u programs x 9 configs = %u cells, %u log mismatches, %u failed runs, max %llu commits, %.1f s (limit 120 s)",
                      r.programs, r.cells, r.mismatched_cells, r.failed_runs,
                      (unsigned long long)r.max_commits, r.secs);
  if (!r.first_problem.empty()) d += "; first: " + r.first_problem;
  return {ok ? Verdict::Pass : Verdict::Fail, d};
}

Verdict twin_invariant(const DiffSuiteResult& r) {
  const bool ok = r.twin_violations == 0 && r.twin_checks > 0;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("%llu twin checks over the differential suite, %llu violations", (unsigned long long)r.twin_checks,
              (unsigned long long)r.twin_violations)};
}

Verdict fetch_miss() {
  const GeneratedProgram g = generate_program(GenKind::FetchMiss, 1, 1000);
  const CoreRun dual = run_pipe(g.image, FetchKind::DualPC, PredictorScheme::Gshare, false);
  const CoreRun buf = run_pipe(g.image, FetchKind::Buffer, PredictorScheme::Gshare, false);
  note_dualpc("fetchmiss", dual.stats);
  const auto extra = static_cast<std::int64_t>(buf.stats.cycles) - static_cast<std::int64_t>(dual.stats.cycles);
  const bool ok = buf.stats.fetch_misses == 1000 && extra >= 1000 && dual.stats.fetch_misses == 0 &&
                  g_dualpc_misses.empty() && dual.status.success() && buf.status.success();
  std::string d = fmt("fetchmiss N=1000: buffer %llu misses, +%lld cycles vs dual-PC; dual-PC nonzero misses on %zu of %llu runs",
                      (unsigned long long)buf.stats.fetch_misses, (long long)extra, g_dualpc_misses.size(),
                      (unsigned long long)g_dualpc_runs);
  if (!g_dualpc_misses.empty()) d += " (first: " + g_dualpc_misses.front() + ")";
  return {ok ? Verdict::Pass : Verdict::Fail, d};
}

// li x9, n; loop: two ALU ops; addi x9, -1; bne x9, x0, loop.
MemoryImage counted_loop(std::uint32_t n) {
  ProgramBuilder pb;
  pb.li(9, static_cast<std::int32_t>(n), false);
  const auto loop = pb.new_label();
  pb.bind(loop);
  pb.emit(asm_::i(Op::ADDI, 10, 10, 1));
  pb.emit(asm_::i(Op::ADDI, 11, 11, 2));
  pb.emit(asm_::i(Op::ADDI, 9, 9, -1));
  pb.branch(Op::BNE, 9, 0, loop);
  pb.exit_with(0);
  return pb.finish();
}

Verdict mispredict_penalty() {
  // Per-iteration cost from the difference of two trip counts, so the
  // warm-up and loop exit cancel out. Without a predictor the taken
  // back edge mispredicts every iteration; trained gshare never does.
  const std::uint32_t n1 = 1000, n2 = 2000;
  auto per_iter = [&](PredictorScheme b, std::uint64_t& mis_delta) {
    const CoreRun a = run_pipe(counted_loop(n1), FetchKind::DualPC, b, false);
    const CoreRun c = run_pipe(counted_loop(n2), FetchKind::DualPC, b, false);
    note_dualpc("counted loop", a.stats);
    mis_delta = c.stats.mispredicts - a.stats.mispredicts;
    return std::make_pair(c.stats.cycles - a.stats.cycles, n2 - n1);
  };
  std::uint64_t mis_bad = 0, mis_good = 0;
  const auto [bad_cycles, bad_iters] = per_iter(PredictorScheme::None, mis_bad);
  const auto [good_cycles, good_iters] = per_iter(PredictorScheme::Gshare, mis_good);
  const bool integral = bad_cycles % bad_iters == 0 && good_cycles % good_iters == 0;
  const auto bad = bad_cycles / bad_iters, good = good_cycles / good_iters;
  const bool ok = integral && mis_bad == n2 - n1 && mis_good == 0 && bad == good + 3;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("always-mispredicted %llu cycles/iter (%llu mispredicts per %u iters), predicted %llu cycles/iter (%llu); delta %lld",
              (unsigned long long)bad, (unsigned long long)mis_bad, n2 - n1, (unsigned long long)good,
              (unsigned long long)mis_good, (long long)bad - (long long)good)};
}

// Per-branch direction oracle with immediate history update, independent
// of the simulator's predictor, on the bimodal-killer outcome stream.
std::pair<double, double> killer_oracle(unsigned iterations) {
  std::vector<std::pair<unsigned, bool>> trace;
  unsigned x = 0;
  for (unsigned i = 0; i < iterations; ++i) {
    x ^= 1;
    trace.push_back({1, x == 0});
    trace.push_back({2, x != 0});
    trace.push_back({3, i + 1 < iterations});
  }
  auto hit_rate = [&](bool hist) {
    std::vector<int> pht(8192, 1);
    unsigned ghr = 0, hits = 0;
    for (const auto& [id, taken] : trace) {
      const unsigned idx = (hist ? (id ^ ghr) : id) & 8191;
      hits += (pht[idx] >= 2) == taken;
      pht[idx] = taken ? std::min(pht[idx] + 1, 3) : std::max(pht[idx] - 1, 0);
      ghr = ((ghr << 1) | taken) & 8191;
    }
    return static_cast<double>(hits) / trace.size();
  };
  return {hit_rate(true), hit_rate(false)};
}

Verdict predictor_ordering() {
  const unsigned iters = 3334;  // 3 branches per iteration: 10,002 branches
  const auto [og, ob] = killer_oracle(iters);
  const GeneratedProgram g = generate_program(GenKind::BimodalKiller, 1, iters);
  const CoreRun gs = run_pipe(g.image, FetchKind::DualPC, PredictorScheme::Gshare, false);
  const CoreRun bm = run_pipe(g.image, FetchKind::DualPC, PredictorScheme::Bimodal, false);
  note_dualpc("bimodal-killer", gs.stats);
  const double margin = gs.stats.bp_hit_rate - bm.stats.bp_hit_rate;
  const bool ok = og - ob >= 0.20 && gs.stats.branches >= 10000 && margin >= 0.20;
  return {ok ? Verdict::Pass : Verdict::Fail,
          fmt("oracle %.1f%% vs %.1f%%; simulated over %llu branches: gshare %.2f%%, bimodal %.2f%%, margin %.1f pts (need 20)",
              100 * og, 100 * ob, (unsigned long long)gs.stats.branches, 100 * gs.stats.bp_hit_rate,
              100 * bm.stats.bp_hit_rate, 100 * margin)};
}

struct Directional {
  bool ok = false;
  std::string detail;
};

Directional directional_check(const std::vector<fs::path>& programs) {
  BenchOptions opt;
  opt.fetch = {FetchKind::DualPC, FetchKind::Buffer};
  opt.bpred = {PredictorScheme::Gshare};
  opt.sp_init = true;
  if (const char* kb = std::getenv("RVCSIM_IMEM_KB")) opt.imem_bytes = std::stoul(kb) * 1024;
  if (const char* kb = std::getenv("RVCSIM_DMEM_KB")) opt.dmem_bytes = std::stoul(kb) * 1024;
  const BenchReport rep = run_bench(programs, opt);
  for (std::size_t p = 0; p < rep.programs.size(); ++p)
    if (rep.cell(p, 0).ok) note_dualpc(rep.programs[p], rep.cell(p, 0).stats);
  const double dual = rep.mean_ipc(0), buf = rep.mean_ipc(1);
  const auto hd = rep.mean_hit_rate(0), hb = rep.mean_hit_rate(1);
  Directional d;
  d.ok = rep.all_ok() && dual > buf && dual > 0.5 && dual < 1.0 && buf > 0.5 && buf < 1.0;
  d.detail = fmt("%zu programs: mean IPC dual-PC %.3f vs buffered %.3f, hit rate %.3f / %.3f, instruction counts %s (published: 0.857 vs 0.846, hit 0.788 / 0.798)",
                 rep.programs.size(), dual, buf, hd.value_or(0), hb.value_or(0),
                 rep.count_mismatches.empty() ? "identical" : "DIFFER");
  if (!rep.all_ok()) d.detail += "; cell errors present";
  return d;
}

Verdict published_direction() {
  if (const char* dir = std::getenv("RVCSIM_EMBENCH_DIR"); dir && *dir) {
    const Directional d = directional_check(list_suite(dir));
    return {d.ok ? Verdict::Pass : Verdict::Fail, "Embench at " + std::string(dir) + ": " + d.detail};
  }
  const fs::path kernels = RVCSIM_KERNEL_DIR;
  if (!fs::is_directory(kernels))
    return {Verdict::Skip, "RVCSIM_EMBENCH_DIR not set and no bundled kernel suite found"};
  const Directional d = directional_check(list_suite(kernels));
  return {d.ok ? Verdict::Pass : Verdict::Fail,
          "Embench binaries not supplied (set RVCSIM_EMBENCH_DIR); directional check on bundled compiled kernels: " +
              d.detail};
}

Verdict determinism() {
  bool ok = true;
  std::string why;
  const GeneratedProgram a = generate_program(GenKind::Rand, 77, 5000);
  const GeneratedProgram b = generate_program(GenKind::Rand, 77, 5000);
  if (a.image.payload != b.image.payload || a.manifest.dump() != b.manifest.dump()) {
    ok = false;
    why += " gen";
  }
  for (auto f : kFetch) {
    const CoreRun x = run_pipe(a.image, f, PredictorScheme::Gshare);
    const CoreRun y = run_pipe(a.image, f, PredictorScheme::Gshare);
    if (commit_log_text(x.log) != commit_log_text(y.log) || stats_json(x.stats, PredictorScheme::Gshare) != stats_json(y.stats, PredictorScheme::Gshare)) {
      ok = false;
      why += " pipeline";
    }
  }
  if (commit_log_text(run_reference(a.image).log) != commit_log_text(run_reference(b.image).log)) {
    ok = false;
    why += " ref";
  }
  const fs::path dir = fs::temp_directory_path() / "rvcsim_acceptance_det";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (std::uint64_t s = 1; s <= 4; ++s)
    save_image(dir / ("rand" + std::to_string(s) + ".bin"), generate_program(GenKind::Rand, s, 3000).image,
               ImageFormat::FlatBinary);
  save_image(dir / "fetchmiss.bin", generate_program(GenKind::FetchMiss, 1, 300).image, ImageFormat::FlatBinary);
  BenchOptions serial, parallel;
  parallel.jobs = 4;
  const auto progs = list_suite(dir);
  const BenchReport r1 = run_bench(progs, serial);
  const BenchReport r2 = run_bench(progs, parallel);
  if (r1.csv() != r2.csv() || r1.table() != r2.table()) {
    ok = false;
    why += " bench";
  }
  fs::remove_all(dir);
  return {ok ? Verdict::Pass : Verdict::Fail,
          ok ? std::string("gen bytes, manifests, commit logs, stats and bench CSV (1 vs 4 workers) identical on repeat")
             : "differences in:" + why};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const char* name, const Verdict& v) {
    const char* tag = v.kind == Verdict::Pass ? "PASS" : v.kind == Verdict::Fail ? "FAIL" : "SKIP";
    std::printf("%s  [%d] %s: %s\n", tag, n, name, v.detail.c_str());
    std::fflush(stdout);
    failures += v.kind == Verdict::Fail;
  };

  report(1, "decode oracle", decode_oracle());
  const DiffSuiteResult suite = run_diff_suite(1000);
  report(2, "differential correctness", differential(suite));
  report(3, "twin-datapath invariant", twin_invariant(suite));
  const Verdict mp = mispredict_penalty();
  const Verdict po = predictor_ordering();
  const Verdict pn = published_direction();
  // Criterion 4 also covers every dual-PC run above, so it reports last among the runs.
  report(4, "fetch-miss reproduction", fetch_miss());
  report(5, "mispredict penalty", mp);
  report(6, "predictor ordering", po);
  report(7, "published-number direction", pn);
  report(8, "determinism", determinism());
  return failures == 0 ? 0 : 1;
}
