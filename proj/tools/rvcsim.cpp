// rvcsim command-line front end: run, diff, bench, gen.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rvcsim/gen.hpp"
#include "rvcsim/harness.hpp"

using namespace rvcsim;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError("file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageError("cannot write " + path);
  out << text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Options {
  std::string program;
  std::string engine = "pipeline";
  std::string fetch = "dualpc";
  std::string bpred = "gshare";
  std::string format;
  std::size_t imem_kb = kDefaultMemBytes / 1024;
  std::size_t dmem_kb = kDefaultMemBytes / 1024;
  std::uint64_t max_cycles = 1'000'000'000;
  std::string log_path;
  std::string stats_path;
  std::string trace_path;
  bool sp_init = false;

  std::string log_a, log_b;

  std::string suite;
  std::string fetch_list = "dualpc,buffer";
  std::string bpred_list = "gshare,bimodal,none";
  unsigned jobs = 1;

  std::string kind;
  std::uint64_t seed = 1;
  std::uint32_t size = 1000;
  std::string out_path;
  std::string manifest_path;
};

ImageFormat format_for(const std::string& flag, const std::string& path) {
  if (flag == "hex") return ImageFormat::HexWords;
  if (flag == "bin") return ImageFormat::FlatBinary;
  return guess_format(path);
}

int cmd_run(const Options& o) {
  RunConfig rc;
  rc.engine = *parse_engine(o.engine);
  rc.fetch = *parse_fetch_kind(o.fetch);
  rc.bpred = *parse_scheme(o.bpred);
  rc.imem_bytes = o.imem_kb * 1024;
  rc.dmem_bytes = o.dmem_kb * 1024;
  rc.max_cycles = o.max_cycles;
  rc.sp_init = o.sp_init;
  rc.keep_log = !o.log_path.empty();
  const MemoryImage image = load_image(o.program, format_for(o.format, o.program));

  std::ofstream trace_file;
  if (!o.trace_path.empty()) {
    if (o.trace_path == "-") {
      rc.trace = &std::cerr;
    } else {
      trace_file.open(o.trace_path);
      if (!trace_file) throw ImageError("cannot write " + o.trace_path);
      rc.trace = &trace_file;
    }
  }

  const RunOutcome out = execute(image, rc);
  std::cout << out.console << std::flush;
  if (!o.log_path.empty()) write_file(o.log_path, commit_log_text(out.log));
  if (out.stats) {
    const std::string label = config_label(rc.fetch, rc.bpred);
    BenchReport one;
    one.programs = {std::filesystem::path(o.program).stem().string()};
    one.configs = {{rc.fetch, rc.bpred}};
    BenchCell cell;
    cell.program = one.programs[0];
    cell.config = one.configs[0];
    cell.ok = true;
    cell.status = out.status;
    cell.stats = *out.stats;
    one.cells = {cell};
    if (!o.stats_path.empty()) write_file(o.stats_path, one.csv());
    std::cerr << stats_json(*out.stats, rc.bpred) << '\n';
  }
  std::cerr << out.status.describe() << '\n';
  return exit_code_for(out.status);
}

int cmd_diff(const Options& o) {
  const LogDiff d = diff_commit_logs(read_file(o.log_a), read_file(o.log_b));
  if (d.identical) {
    std::cout << "identical\n";
    return kExitOk;
  }
  std::cout << d.message << '\n';
  if (d.malformed) {
    std::cerr << "error: " << d.message << '\n';
    return kExitUsage;
  }
  std::cout << "line " << d.line << '\n';
  std::cout << "< " << d.line_a << '\n' << "> " << d.line_b << '\n';
  if (!d.field.empty()) std::cout << "field " << d.field << '\n';
  return kExitMismatch;
}

int cmd_bench(const Options& o) {
  BenchOptions bo;
  bo.fetch.clear();
  bo.bpred.clear();
  for (const auto& f : split_list(o.fetch_list)) {
    const auto k = parse_fetch_kind(f);
    if (!k) throw CLI::ValidationError("--fetch", "unknown fetch unit '" + f + "'");
    bo.fetch.push_back(*k);
  }
  for (const auto& b : split_list(o.bpred_list)) {
    const auto k = parse_scheme(b);
    if (!k) throw CLI::ValidationError("--bpred", "unknown predictor '" + b + "'");
    bo.bpred.push_back(*k);
  }
  bo.jobs = o.jobs;
  bo.imem_bytes = o.imem_kb * 1024;
  bo.dmem_bytes = o.dmem_kb * 1024;
  bo.max_cycles = o.max_cycles;
  bo.sp_init = o.sp_init;
  const BenchReport report = run_bench(list_suite(o.suite), bo);
  if (o.stats_path.empty()) std::cout << report.csv() << '\n';
  else write_file(o.stats_path, report.csv());
  std::cout << report.table();
  return report.all_ok() ? kExitOk : kExitProgramFault;
}

int cmd_gen(const Options& o) {
  const auto kind = parse_gen_kind(o.kind);
  if (!kind) throw CLI::ValidationError("kind", "unknown generator '" + o.kind + "'");
  const GeneratedProgram g = generate_program(*kind, o.seed, o.size);
  const ImageFormat fmt = format_for(o.format, o.out_path);
  save_image(o.out_path, g.image, fmt);
  std::string manifest = o.manifest_path;
  if (manifest.empty()) manifest = std::filesystem::path(o.out_path).replace_extension(".json").string();
  write_file(manifest, g.manifest.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RV32IC five-stage pipeline simulator with dual-PC fetch"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> fetch_names = {"dualpc", "buffer", "naive"};
  const std::vector<std::string> bpred_names = {"gshare", "bimodal", "none"};

  auto* run = app.add_subcommand("run", "Execute a program image");
  run->add_option("program", o.program, "Flat binary or hex-word image")->required();
  run->add_option("--engine", o.engine, "pipeline | ref")->envname("RVCSIM_ENGINE")->check(CLI::IsMember({"pipeline", "ref"}));
  run->add_option("--fetch", o.fetch, "dualpc | buffer | naive")->envname("RVCSIM_FETCH")->check(CLI::IsMember(fetch_names));
  run->add_option("--bpred", o.bpred, "gshare | bimodal | none")->envname("RVCSIM_BPRED")->check(CLI::IsMember(bpred_names));
  run->add_option("--format", o.format, "bin | hex (default: by extension)")->check(CLI::IsMember({"bin", "hex"}));
  run->add_option("--imem-kb", o.imem_kb, "Instruction memory size in KiB")->envname("RVCSIM_IMEM_KB");
  run->add_option("--dmem-kb", o.dmem_kb, "Data memory size in KiB")->envname("RVCSIM_DMEM_KB");
  run->add_option("--max-cycles", o.max_cycles, "Cycle (pipeline) or step (ref) limit")->envname("RVCSIM_MAX_CYCLES");
  run->add_option("--log", o.log_path, "Write the commit log here");
  run->add_option("--stats", o.stats_path, "Write the stats CSV row here");
  run->add_option("--trace", o.trace_path, "Per-cycle pipeline trace file ('-' for stderr)");
  run->add_flag("--sp-init", o.sp_init, "Set x2 to the top of data memory")->envname("RVCSIM_SP_INIT");

  auto* diff = app.add_subcommand("diff", "Compare two commit logs");
  diff->add_option("log_a", o.log_a)->required();
  diff->add_option("log_b", o.log_b)->required();

  auto* bench = app.add_subcommand("bench", "Run every program of a suite under each configuration");
  bench->add_option("suite", o.suite, "Directory of .bin / .hex programs")->required();
  bench->add_option("--fetch", o.fetch_list, "Comma-separated fetch units")->envname("RVCSIM_FETCH");
  bench->add_option("--bpred", o.bpred_list, "Comma-separated predictors")->envname("RVCSIM_BPRED");
  bench->add_option("--jobs", o.jobs, "Concurrent cells")->envname("RVCSIM_JOBS")->check(CLI::PositiveNumber);
  bench->add_option("--imem-kb", o.imem_kb, "Instruction memory size in KiB")->envname("RVCSIM_IMEM_KB");
  bench->add_option("--dmem-kb", o.dmem_kb, "Data memory size in KiB")->envname("RVCSIM_DMEM_KB");
  bench->add_option("--max-cycles", o.max_cycles, "Cycle limit per cell")->envname("RVCSIM_MAX_CYCLES");
  bench->add_option("--stats", o.stats_path, "Write the CSV here instead of stdout");
  bench->add_flag("--sp-init", o.sp_init, "Set x2 to the top of data memory")->envname("RVCSIM_SP_INIT");

  auto* gen = app.add_subcommand("gen", "Generate a stress program and its manifest");
  gen->add_option("kind", o.kind, "fetchmiss | bimodal-killer | loaduse | rand")
      ->required()
      ->check(CLI::IsMember({"fetchmiss", "bimodal-killer", "loaduse", "rand"}));
  gen->add_option("--seed", o.seed, "Generator seed")->envname("RVCSIM_SEED");
  gen->add_option("--size", o.size, "Iterations, or the commit bound for rand");
  gen->add_option("-o,--out", o.out_path, "Output image")->required();
  gen->add_option("--manifest", o.manifest_path, "Manifest path (default: output with .json)");
  gen->add_option("--format", o.format, "bin | hex (default: by extension)")->check(CLI::IsMember({"bin", "hex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(o);
    if (diff->parsed()) return cmd_diff(o);
    if (bench->parsed()) return cmd_bench(o);
    if (gen->parsed()) return cmd_gen(o);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ImageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitProgramFault;
  }
  return kExitUsage;
}
