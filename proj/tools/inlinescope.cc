// Copyright 2026 The InlineScope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// inlinescope: command-line front end.
//
// Exit codes: 0 success, 2 usage, I/O, config or input errors, 3 when every
// sweep build failed, 4 for malformed or missing DWARF. Verdicts and ratios
// are output data and never change the exit code.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "inlinescope/analysis.h"
#include "inlinescope/cost_model.h"
#include "inlinescope/error.h"
#include "inlinescope/features.h"
#include "inlinescope/ground_truth.h"
#include "inlinescope/remarks.h"
#include "inlinescope/sweep.h"

namespace fs = std::filesystem;
using namespace inlinescope;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;
constexpr int kExitAllFailed = 3;
constexpr int kExitDwarf = 4;

enum class LogLevel { kQuiet, kInfo, kDebug };

struct Globals {
  std::string out_dir;
  bool json = false;
  LogLevel log_level = LogLevel::kInfo;
};

Globals g;

void Log(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) <= static_cast<int>(g.log_level)) {
    std::cerr << "inlinescope: " << message << "\n";
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// Writes via a temporary file in the same directory and renames it over the
// target, so readers never see a partial file.
void WriteAtomically(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot rename onto " + path.string());
  }
  Log(LogLevel::kDebug, "wrote " + path.string());
}

// Stdout unless --out is set, in which case the named file.
void Emit(const std::string& file_name, const std::string& content) {
  if (g.out_dir.empty()) {
    std::cout << content;
  } else {
    WriteAtomically(fs::path(g.out_dir) / file_name, content);
  }
}

std::string Stem(const std::string& path) { return fs::path(path).filename().string(); }

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kMalformedDwarf:
    case ErrorCode::kMissingDebugInfo:
      return kExitDwarf;
    case ErrorCode::kNoSuccessfulBuild:
      return kExitAllFailed;
    default:
      return kExitError;
  }
}

std::string Disassemble(const std::string& binary) {
  std::string cmd = "objdump -d -w --section=.text '" + binary + "' 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw Error(ErrorCode::kIo, "cannot run objdump");
  std::string text;
  char buffer[65536];
  for (size_t n; (n = fread(buffer, 1, sizeof(buffer), pipe)) > 0;) text.append(buffer, n);
  if (pclose(pipe) != 0 || text.empty()) {
    throw Error(ErrorCode::kIo, "objdump failed on " + binary);
  }
  return text;
}

bool IsElf(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  in.read(magic, 4);
  return in && magic[0] == 0x7f && magic[1] == 'E' && magic[2] == 'L' && magic[3] == 'F';
}

// Subcommands.

struct GroundTruthArgs {
  std::string binary;
  std::string baseline;
};

int RunGroundTruth(const GroundTruthArgs& args) {
  InliningReport report = ComputeInliningReport(ReadBinaryFile(args.binary), args.binary);
  for (const std::string& w : report.warnings) Log(LogLevel::kInfo, "warning: " + w);
  std::string json = ReportToJson(report);
  std::optional<std::string> flow_json;
  if (!args.baseline.empty()) {
    InliningReport base =
        ComputeInliningReport(ReadBinaryFile(args.baseline), args.baseline);
    flow_json = FlowToJson(DeltaFlow(base, report));
  }
  if (!g.out_dir.empty()) {
    Emit(Stem(args.binary) + ".report.json", json);
    if (flow_json) Emit(Stem(args.binary) + ".flow.json", *flow_json);
  } else if (g.json) {
    std::cout << json;
    if (flow_json) std::cout << *flow_json;
  }
  if (!g.json || !g.out_dir.empty()) {
    char ratio[32];
    std::snprintf(ratio, sizeof(ratio), "%.4f", report.inlining_ratio);
    std::cout << args.binary << ": total=" << report.total_functions
              << " inlined=" << report.inlined_functions
              << " remaining=" << report.remaining_inlined
              << " eliminated=" << report.eliminated_inlined << " ratio=" << ratio << "\n";
    if (flow_json) std::cout << *flow_json;
  }
  return kExitOk;
}

struct RemarksArgs {
  std::string stderr_path;
  std::string binary;
};

int RunRemarks(const RemarksArgs& args) {
  ParsedStream parsed = ParseRemarkStreamDetailed(ReadFile(args.stderr_path));
  Log(LogLevel::kDebug, std::to_string(parsed.unparsed.size()) + " lines not remarks");
  RemarkSummary summary = Summarize(parsed.remarks);
  std::optional<std::string> discrepancy;
  if (!args.binary.empty()) {
    InliningReport report = ComputeInliningReport(ReadBinaryFile(args.binary), args.binary);
    discrepancy = DiscrepancyToJson(Reconcile(parsed.remarks, report));
  }
  if (!g.out_dir.empty()) {
    Emit("remarks.json", RemarksToJson(parsed.remarks));
    Emit("summary.json", SummaryToJson(summary));
    if (discrepancy) Emit("discrepancy.json", *discrepancy);
  } else if (g.json) {
    std::cout << RemarksToJson(parsed.remarks);
  }
  if (!g.json || !g.out_dir.empty()) {
    std::cout << SummaryToJson(summary);
    if (discrepancy) std::cout << *discrepancy;
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string site;
  std::string params;
  std::string opt = "O2";
};

int RunSimulate(const SimulateArgs& args) {
  std::optional<OptLevel> level = ParseOptLevel(args.opt);
  if (!level) throw Error(ErrorCode::kInvalidArgument, "unknown opt level '" + args.opt + "'");
  CallSiteDescription site = SiteFromJson(ReadFile(args.site));
  InlineParams params;
  if (!args.params.empty()) params = ParamsFromJson(ReadFile(args.params));
  InlineDecision decision = Decide(site, *level, params);
  Emit("decision.json", DecisionToJson(decision, *level, params));
  return kExitOk;
}

struct FeaturesArgs {
  std::string input;
  std::string registry_version{kRegistryVersion};
};

int RunFeatures(const FeaturesArgs& args) {
  std::string text = IsElf(args.input) ? Disassemble(args.input) : ReadFile(args.input);
  FeatureTable table = ExtractFeatures(ParseListing(text), args.registry_version);
  for (const std::string& w : table.warnings) Log(LogLevel::kInfo, "warning: " + w);
  Emit(Stem(args.input) + ".features.csv", FeaturesToCsv(table));
  return kExitOk;
}

struct SweepArgs {
  std::string config;
  bool dry_run = false;
  int search_budget = 0;
  bool no_timing = false;
};

int RunSweepCommand(const SweepArgs& args) {
  SweepConfig config = LoadSweepConfig(args.config);
  if (!config.force_debug_info) {
    Log(LogLevel::kQuiet,
        "WARNING: force_debug_info is off; builds without -g have no ground truth");
  }
  if (args.dry_run) {
    std::string text;
    if (config.preset) {
      text += "preset " + *config.preset + ": " +
              std::string(FindPreset(*config.preset).recipe) + "\n";
    }
    std::vector<FlagAssignment> variants = EnumerateVariants(config);
    for (size_t i = 0; i < variants.size(); ++i) {
      std::string flags;
      for (const std::string& f : VariantFlags(config, variants[i])) {
        flags += (flags.empty() ? "" : " ") + f;
      }
      text += std::to_string(i) + "\t" + flags + "\n";
    }
    std::cout << text;
    return kExitOk;
  }
  ReportOptions options;
  options.include_compile_seconds = !args.no_timing;
  if (args.search_budget > 0) {
    SearchResult search = SearchExtreme(config, args.search_budget);
    std::vector<VariantResult> steps;
    for (const SearchStep& s : search.trajectory) steps.push_back(s.result);
    Emit("search.csv", EmitReport(steps, options));
    std::string best;
    for (const std::string& f : search.best_result.flags) best += (best.empty() ? "" : " ") + f;
    char ratio[32];
    std::snprintf(ratio, sizeof(ratio), "%.4f", search.best_result.measurement->ratio);
    Log(LogLevel::kInfo, "best ratio " + std::string(ratio) + " with: " + best);
    return kExitOk;
  }
  Log(LogLevel::kInfo, "building " + std::to_string(EnumerateVariants(config).size()) +
                           " variant(s)");
  std::vector<VariantResult> results = RunSweep(config);
  bool any_ok = false;
  for (const VariantResult& r : results) {
    any_ok |= r.status == BuildStatus::kOk;
    if (r.status != BuildStatus::kOk) {
      Log(LogLevel::kInfo, "variant " + std::to_string(r.variant_index) + ": " + r.cause);
    }
  }
  Emit("sweep.csv", EmitReport(results, options));
  return any_ok ? kExitOk : kExitAllFailed;
}

struct DriftArgs {
  std::string a;
  std::string b;
  int k = 18;
};

// A feature CSV as written by `features`, or anything `features` accepts.
FeatureTable LoadFeatureTable(const std::string& path) {
  if (IsElf(path)) return ExtractFeatures(ParseListing(Disassemble(path)));
  std::string text = ReadFile(path);
  if (text.starts_with("# registry_version=")) return FeaturesFromCsv(text);
  return ExtractFeatures(ParseListing(text));
}

int RunDrift(const DriftArgs& args) {
  DriftReport report = RankFeatures(LoadFeatureTable(args.a), LoadFeatureTable(args.b), args.k);
  Emit("drift.csv", DriftToCsv(report));
  return kExitOk;
}

struct CdfArgs {
  std::vector<std::string> reports;
  std::vector<std::string> labels;
};

int RunCdf(const CdfArgs& args) {
  if (!args.labels.empty() && args.labels.size() != args.reports.size()) {
    throw Error(ErrorCode::kInvalidArgument, "need one --label per report");
  }
  std::vector<std::pair<std::string, CdfSeries>> series;
  for (size_t i = 0; i < args.reports.size(); ++i) {
    std::string label = args.labels.empty() ? fs::path(args.reports[i]).stem().string()
                                            : args.labels[i];
    CdfSeries cdf = InliningCdf(RatiosFromReport(ReadFile(args.reports[i])));
    std::cout << label << ": " << CdfSummary(cdf) << "\n";
    if (!g.out_dir.empty()) Emit(label + ".cdf.csv", CdfToCsv(cdf));
    series.emplace_back(label, std::move(cdf));
  }
  if (!g.out_dir.empty()) Emit("cdf.svg", CdfToSvg(series));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure, explain and amplify compiler function inlining."};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string("inlinescope ") + INLINESCOPE_VERSION +
                           " registry_version=" + std::string(kRegistryVersion));

  std::string log_level = "info";
  app.add_option("--out", g.out_dir, "Directory for output files")->take_last();
  app.add_flag("--json", g.json, "Machine-readable output on stdout");
  app.add_option("--log-level", log_level, "quiet, info or debug")
      ->check(CLI::IsMember({"quiet", "info", "debug"}));
  app.fallthrough();

  std::function<int()> action;

  GroundTruthArgs gt;
  auto* gt_cmd = app.add_subcommand("ground-truth", "Inlining report from DWARF");
  gt_cmd->add_option("binary", gt.binary, "ELF binary with debug info")->required();
  gt_cmd->add_option("--baseline", gt.baseline, "Baseline binary for delta flow");
  gt_cmd->callback([&] { action = [&] { return RunGroundTruth(gt); }; });

  RemarksArgs rm;
  auto* rm_cmd = app.add_subcommand("remarks", "Parse inliner remarks from compiler stderr");
  rm_cmd->add_option("stderr", rm.stderr_path, "Captured compiler stderr")->required();
  rm_cmd->add_option("--binary", rm.binary, "Reconcile against this binary's DWARF");
  rm_cmd->callback([&] { action = [&] { return RunRemarks(rm); }; });

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Replay the inline cost model on a call site");
  sim_cmd->add_option("--site", sim.site, "Call-site JSON")->required();
  sim_cmd->add_option("--params", sim.params, "Inline parameter JSON");
  sim_cmd->add_option("--opt", sim.opt, "Optimization level (O0..O3, Os, Oz)");
  sim_cmd->callback([&] { action = [&] { return RunSimulate(sim); }; });

  FeaturesArgs feat;
  auto* feat_cmd = app.add_subcommand("features", "62-slot static feature table");
  feat_cmd->add_option("input", feat.input, "objdump -d -w listing or ELF binary")->required();
  feat_cmd->add_option("--registry-version", feat.registry_version, "Feature registry");
  feat_cmd->callback([&] { action = [&] { return RunFeatures(feat); }; });

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Build a flag grid and measure inlining");
  sw_cmd->add_option("config", sw.config, "Sweep YAML")->required();
  sw_cmd->add_flag("--dry-run", sw.dry_run, "Print the variant grid without building");
  sw_cmd->add_option("--search", sw.search_budget, "Greedy search with this build budget");
  sw_cmd->add_flag("--no-timing", sw.no_timing, "Leave compile_seconds empty");
  sw_cmd->callback([&] { action = [&] { return RunSweepCommand(sw); }; });

  auto* report_cmd = app.add_subcommand("report", "Drift rankings and ratio CDFs");
  report_cmd->require_subcommand(1);
  DriftArgs drift;
  auto* drift_cmd = report_cmd->add_subcommand("drift", "Rank feature drift between tables");
  drift_cmd->add_option("a", drift.a, "Feature CSV, listing or ELF")->required();
  drift_cmd->add_option("b", drift.b, "Feature CSV, listing or ELF")->required();
  drift_cmd->add_option("-k,--top", drift.k, "Number of features to report");
  drift_cmd->callback([&] { action = [&] { return RunDrift(drift); }; });
  CdfArgs cdf;
  auto* cdf_cmd = report_cmd->add_subcommand("cdf", "Inlining ratio CDF from sweep CSVs");
  cdf_cmd->add_option("reports", cdf.reports, "Sweep report CSVs")->required();
  cdf_cmd->add_option("--label", cdf.labels, "Series labels, one per report");
  cdf_cmd->callback([&] { action = [&] { return RunCdf(cdf); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }
  g.log_level = log_level == "quiet"   ? LogLevel::kQuiet
                : log_level == "debug" ? LogLevel::kDebug
                                       : LogLevel::kInfo;
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "inlinescope: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "inlinescope: " << e.what() << "\n";
    return kExitError;
  }
}
