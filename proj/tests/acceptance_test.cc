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
// Release gate. One line per criterion; the process fails if any line does.
// Tolerances and time limits live next to each check.

#include <stdio.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "inlinescope/analysis.h"
#include "inlinescope/cost_model.h"
#include "inlinescope/error.h"
#include "inlinescope/features.h"
#include "inlinescope/ground_truth.h"
#include "inlinescope/sweep.h"
#include "loop_oracle.h"
#include "parity_support.h"
#include "stats_oracle.h"
#include "test_support.h"

namespace inlinescope {
namespace {

using testing::BruteForceLoops;
using testing::Compiler;
using testing::HaveCompiler;
using testing::ReadText;
using testing::SourcePath;

namespace fs = std::filesystem;

// Collects failed checks; a criterion passes when nothing was recorded.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void Note(const std::string& note) { notes_.push_back(note); }
  bool ok() const { return failed_ == 0; }
  std::string Summary() const {
    std::string out;
    for (const std::string& n : notes_) out += (out.empty() ? "" : "; ") + n;
    for (const std::string& f : failures_) out += (out.empty() ? "" : "; ") + ("FAILED " + f);
    if (failed_ > static_cast<int>(failures_.size())) {
      out += "; +" + std::to_string(failed_ - failures_.size()) + " more";
    }
    return out;
  }

 private:
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
  int failed_ = 0;
};

std::string Num(double v, int digits = 4) {
  char buffer[32];
  snprintf(buffer, sizeof(buffer), "%.*f", digits, v);
  return buffer;
}

// 1. Cost-model constants.
void CostModelConstants(Check& c) {
  InlineParams p;
  const std::pair<OptLevel, int64_t> levels[] = {
      {OptLevel::kOz, 5}, {OptLevel::kOs, 50}, {OptLevel::kO1, 225},
      {OptLevel::kO2, 225}, {OptLevel::kO3, 250}};
  for (auto [level, expected] : levels) {
    int64_t got = InitThreshold(level, p);
    c.Expect(got == expected, std::string(OptLevelName(level)) + " threshold " +
                                  std::to_string(got) + " != " + std::to_string(expected));
  }
  const std::pair<const char*, std::pair<int64_t, int64_t>> defaults[] = {
      {"inline-threshold", {p.inline_threshold, 225}},
      {"inlinehint-threshold", {p.inlinehint_threshold, 335}},
      {"inlinecold-threshold", {p.cold_callsite_threshold, 45}},
      {"hot-callsite-threshold", {p.hot_callsite_threshold, 3000}},
      {"locally-hot-callsite-threshold", {p.locally_hot_callsite_threshold, 525}},
      {"cold-callsite-rel-freq", {p.cold_callsite_rel_freq, 2}},
      {"hot-callsite-rel-freq", {p.hot_callsite_rel_freq, 60}},
      {"inline-call-penalty", {p.inline_call_penalty, 25}},
      {"inline-savings-multiplier", {p.inline_savings_multiplier, 8}},
      {"inline-size-allowance", {p.inline_size_allowance, 100}},
  };
  for (const auto& [name, values] : defaults) {
    c.Expect(values.first == values.second, std::string(name) + " default " +
                                                std::to_string(values.first));
  }
  c.Expect(!p.cost_benefit_analysis, "cost-benefit analysis on by default");
  CallSiteDescription site;
  site.is_last_call_to_static = true;
  site.callee_linkage = Linkage::kInternal;
  int64_t init = InitCost(site, p);
  c.Expect(init == -15000, "last-call-to-static init cost " + std::to_string(init));
  c.Note("5 levels, 10 defaults, bonus -15000");
}

// 2. Attribute precedence.
void AttributePrecedence(Check& c) {
  const std::vector<FnAttr> order = {FnAttr::kOptNone,    FnAttr::kNoInline,
                                     FnAttr::kMinSize,    FnAttr::kOptSize,
                                     FnAttr::kInlineHint, FnAttr::kAlwaysInline};
  int subsets = 0, permutations = 0;
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<FnAttr> members;
    for (size_t i = 0; i < order.size(); ++i) {
      if (mask & (1u << i)) members.push_back(order[i]);
    }
    std::optional<FnAttr> expected;
    if (!members.empty()) expected = members.front();  // order is by priority
    std::vector<size_t> perm(members.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      AttrSet attrs;
      for (size_t i : perm) attrs.insert(members[i]);
      std::optional<FnAttr> got = ResolveAttributes(attrs);
      c.Expect(got == expected, "subset " + std::to_string(mask));
      ++permutations;
    } while (std::next_permutation(perm.begin(), perm.end()));
    ++subsets;
  }
  c.Note(std::to_string(subsets) + " subsets, " + std::to_string(permutations) +
         " insertion orders");
}

// 3. Decision parity against clang 14 remarks.
void DecisionParity(Check& c) {
  std::vector<testing::ParityCase> cases = testing::LoadParityCases();
  std::vector<testing::ParityOutcome> outcomes = testing::RunParity(cases);
  c.Expect(outcomes.size() >= 10, "only " + std::to_string(outcomes.size()) + " snippets");
  size_t verdicts = 0, thresholds = 0, threshold_cases = 0;
  for (const testing::ParityOutcome& o : outcomes) {
    verdicts += o.verdict_match;
    if (o.remark_threshold) {
      ++threshold_cases;
      thresholds += o.threshold_match;
      c.Expect(o.threshold_match, o.name + " threshold");
    }
  }
  // At least 9 in 10.
  c.Expect(verdicts * 10 >= outcomes.size() * 9, "verdicts");
  c.Note("verdicts " + std::to_string(verdicts) + "/" + std::to_string(outcomes.size()) +
         ", thresholds " + std::to_string(thresholds) + "/" + std::to_string(threshold_cases));

  if (!HaveCompiler()) {
    c.Note("no compiler: golden stderr only");
    return;
  }
  size_t same = 0;
  for (const testing::ParityCase& pc : cases) {
    std::string cmd = "cd '" + SourcePath("fixtures/parity") + "' && '" + Compiler() + "'";
    for (const std::string& f : pc.flags) cmd += " '" + f + "'";
    cmd += " -Rpass=inline -Rpass-missed=inline -Rpass-analysis=inline -g0 -c " + pc.name +
           ".c -o /dev/null 2>&1";
    std::string text;
    if (FILE* pipe = popen(cmd.c_str(), "r")) {
      char buffer[4096];
      for (size_t n; (n = fread(buffer, 1, sizeof(buffer), pipe)) > 0;) text.append(buffer, n);
      pclose(pipe);
    }
    std::optional<InlineRemark> fresh = testing::ParityCase::FindRemarkIn(text, pc.caller, pc.callee);
    std::optional<InlineRemark> golden = pc.FindRemark();
    bool match = fresh && golden && fresh->kind == golden->kind &&
                 fresh->threshold == golden->threshold && fresh->cost == golden->cost;
    c.Expect(match, pc.name + " recompiled remark differs from golden");
    same += match;
  }
  c.Note("recompiled " + std::to_string(same) + "/" + std::to_string(cases.size()) +
         " identical");
}

Presence PresenceOf(const InliningReport& r, const std::string& name) {
  for (const FunctionEntry& e : r.entries) {
    if (e.name == name) return e.presence;
  }
  throw Error(ErrorCode::kInvalidArgument, name + " not in " + r.binary_id);
}

InliningReport FixtureReport(const std::string& name) {
  return ComputeInliningReport(ReadBinaryFile(SourcePath("fixtures/bin/" + name)),
                               "fixtures/bin/" + name);
}

// 4. Ground truth on the checked-in binaries.
void GroundTruth(Check& c) {
  int reports = 0;
  for (const auto& entry : fs::directory_iterator(SourcePath("tests/data/reports"))) {
    std::string file = entry.path().filename().string();
    std::string fixture = file.substr(0, file.size() - std::string(".json").size());
    bool same = ReportToJson(FixtureReport(fixture)) == ReadText(entry.path().string());
    c.Expect(same, fixture + " differs from frozen report");
    ++reports;
  }
  c.Expect(reports >= 10, "only " + std::to_string(reports) + " frozen reports");
  c.Expect(PresenceOf(FixtureReport("trio_O0.so"), "util") != Presence::kNeverInlined,
           "always_inline util not inlined at -O0");
  c.Expect(PresenceOf(FixtureReport("trio_O2.so"), "helper") == Presence::kInlinedEliminated,
           "static helper not eliminated at -O2");
  for (const char* f : {"trio_O0.so", "trio_O2.so", "trio_O2_noinline.so", "trio_noai_O0.so",
                        "trio_O2_dwarf4.so", "trio_O2_gcc.so", "trio_O2_m32.so"}) {
    c.Expect(PresenceOf(FixtureReport(f), "worker") == Presence::kNeverInlined,
             std::string("noinline worker inlined in ") + f);
  }
  c.Note(std::to_string(reports) + " reports byte-identical, 3 classification rules");
}

// 5. Ratio arithmetic.
void RatioAnchor(Check& c) {
  std::vector<FunctionEntry> entries;
  auto add = [&](int n, Presence p) {
    for (int i = 0; i < n; ++i) {
      FunctionEntry e;
      e.name = "f" + std::to_string(entries.size());
      e.presence = p;
      e.has_concrete_range = e.symbol_present = p != Presence::kInlinedEliminated;
      if (p != Presence::kNeverInlined) {
        e.inline_attr = InlineAttribute::kInlined;
        e.inline_instance_count = 1;
      }
      entries.push_back(e);
    }
  };
  add(2070 - 1183, Presence::kNeverInlined);
  add(1183 - 997, Presence::kInlinedRemaining);
  add(997, Presence::kInlinedEliminated);
  InliningReport r = MakeReport("anchor", entries, {}, {});
  c.Expect(r.total_functions == 2070 && r.inlined_functions == 1183 &&
               r.eliminated_inlined == 997,
           "counts");
  c.Expect(r.remaining_inlined == 186, "remaining " + std::to_string(r.remaining_inlined));
  c.Expect(Num(r.inlining_ratio) == "0.5715", "ratio " + Num(r.inlining_ratio));
  c.Expect(ReportToJson(r).find("\"ratio\": 0.5715") != std::string::npos, "json ratio");
  c.Note("2070/1183/997 -> " + Num(r.inlining_ratio) + ", remaining " +
         std::to_string(r.remaining_inlined));
}

// 6. Directional corpus properties.
void CorpusDirections(Check& c) {
  std::map<std::string, double> ratio;
  if (HaveCompiler()) {
    ProjectSpec corpus{"corpus", SourcePath("fixtures/src/corpus"),
                       "{CC} {FLAGS} -o corpus main.c stats.c table.c text.c", "corpus"};
    Toolchain toolchain;
    toolchain.compiler_path = Compiler();
    fs::path root = fs::temp_directory_path() / ("inlinescope-accept-" + std::to_string(getpid()));
    fs::create_directories(root);
    const std::pair<std::string, std::vector<std::string>> variants[] = {
        {"O0", {"-O0"}},
        {"O2", {"-O2"}},
        {"Os", {"-Os"}},
        {"Oz", {"-Oz"}},
        {"O3", {"-O3"}},
        {"O2+t10000", {"-O2", "-mllvm", "-inline-threshold=10000"}},
        {"extreme", ExpandRecipe(FindPreset("extreme-coreutils-style").recipe)},
    };
    for (const auto& [name, flags] : variants) {
      BuildArtifacts a = BuildVariant(corpus, flags, toolchain, 300, root.string());
      std::vector<BuildArtifacts> one = {a};
      VariantResult r = EvaluateVariant(one);
      c.Expect(r.status == BuildStatus::kOk, name + ": " + r.cause);
      if (r.measurement) ratio[name] = r.measurement->ratio;
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    c.Note("built with " + Compiler());
  } else {
    for (const char* name : {"O0", "O2", "Os", "Oz", "O3", "extreme"}) {
      ratio[name] = FixtureReport(std::string("corpus_") + name).inlining_ratio;
    }
    c.Note("no compiler: checked-in corpus binaries, threshold 10000 not checked");
  }
  auto r = [&](const std::string& k) { return ratio.count(k) ? ratio[k] : std::nan(""); };
  c.Expect(r("O0") < r("O2"), "O0 < O2");
  c.Expect(r("Oz") <= r("Os"), "Oz <= Os");
  c.Expect(r("Os") <= r("O2"), "Os <= O2");
  if (ratio.count("O2+t10000")) c.Expect(r("O2+t10000") >= r("O2"), "threshold 10000 >= O2");
  c.Expect(r("extreme") >= r("O3"), "extreme >= O3");
  std::string line;
  for (const char* k : {"O0", "O2", "Os", "Oz", "O3", "O2+t10000", "extreme"}) {
    line += std::string(line.empty() ? "" : " ") + k + "=" + Num(r(k));
  }
  c.Note(line);
}

// 7. Feature and statistics oracles.
void FeatureOracles(Check& c) {
  const auto& registry = FeatureRegistry();
  int groups[3] = {0, 0, 0};
  for (const FeatureSlot& s : registry) ++groups[static_cast<int>(s.group)];
  c.Expect(registry.size() == 62, "registry size " + std::to_string(registry.size()));
  c.Expect(groups[0] == 36 && groups[1] == 20 && groups[2] == 6, "group split");

  int listings = 0, rows = 0, small_cfgs = 0;
  for (const char* dir : {"", "hand/"}) {
    for (const auto& e :
         fs::directory_iterator(SourcePath("fixtures/listings/") + dir)) {
      std::string name = e.path().filename().string();
      if (!e.is_regular_file() || !name.ends_with(".lst") || name == "bad_address.lst") continue;
      ++listings;
      Listing listing = ParseListing(ReadText(e.path().string()));
      FeatureTable t = ExtractFeatures(listing);
      std::vector<const FeatureVector*> vectors = {&t.binary};
      for (const auto& [fn, v] : t.functions) vectors.push_back(&v);
      for (const FeatureVector* v : vectors) {
        double sum = 0;
        for (const FeatureSlot& s : registry) {
          if (s.category) sum += v->slot(s.index);
        }
        c.Expect(sum == v->slot(1), name + " category sum");
        ++rows;
      }
      for (const ListingFunction& f : listing.functions) {
        Cfg cfg = BuildCfg(f, listing.arch);
        if (cfg.blocks.size() > 8) continue;
        ++small_cfgs;
        c.Expect(DetectLoops(cfg) == BruteForceLoops(cfg), name + " " + f.name + " loops");
      }
    }
  }

  int samples = 0;
  for (const std::vector<double>& v : testing::RandomSamples(1000, testing::kStatsSeed)) {
    c.Expect(ThreeSigmaFilter(v).kept == testing::NaiveKept(v), "three-sigma");
    c.Expect(Median(v) == testing::NaiveMedian(v), "median");
    ++samples;
  }

  auto table = [](const char* level) {
    return ExtractFeatures(ParseListing(
        ReadText(SourcePath(std::string("fixtures/listings/corpus_") + level + ".lst"))));
  };
  DriftReport drift = RankFeatures(table("O0"), table("O3"), 18);
  c.Expect(drift.top_k.size() == 18, "top_k size " + std::to_string(drift.top_k.size()));
  c.Note("62 slots 36/20/6, " + std::to_string(rows) + " rows in " + std::to_string(listings) +
         " listings, " + std::to_string(small_cfgs) + " small CFGs, " + std::to_string(samples) +
         " samples, top 18");
}

// 8. Sweep determinism and search soundness.
void SweepSoundness(Check& c) {
  SweepConfig config = LoadSweepConfig(SourcePath("fixtures/sweep/monotone.yaml"));
  std::vector<FlagAssignment> grid = EnumerateVariants(config);
  c.Expect(grid.size() == 6, "grid size " + std::to_string(grid.size()));
  c.Expect(grid == EnumerateVariants(config), "enumeration not repeatable");
  for (size_t i = 0; i < grid.size(); ++i) {
    c.Expect(grid[i].choice[0] == i / 2 && grid[i].choice[1] == i % 2, "enumeration order");
  }
  if (!HaveCompiler()) {
    c.Note("no compiler: enumeration only");
    return;
  }
  config.toolchain.compiler_path = Compiler();
  ReportOptions no_timing{.include_compile_seconds = false};
  std::vector<VariantResult> first = RunSweep(config);
  std::string csv = EmitReport(first, no_timing);
  c.Expect(csv == EmitReport(RunSweep(config), no_timing), "reruns differ");
  double grid_max = -1;
  for (const VariantResult& r : first) {
    c.Expect(r.status == BuildStatus::kOk, "variant " + std::to_string(r.variant_index));
    if (r.measurement) grid_max = std::max(grid_max, r.measurement->ratio);
  }
  SearchResult s = SearchExtreme(config, 20);
  double base = s.trajectory.front().result.measurement ? s.trajectory.front().result.measurement->ratio : -1;
  double best = s.best_result.measurement->ratio;
  c.Expect(best >= base, "search best below base");
  c.Expect(best == grid_max, "greedy " + Num(best) + " != grid " + Num(grid_max));
  c.Note("identical CSVs; base " + Num(base) + ", greedy " + Num(best) + ", grid max " +
         Num(grid_max) + " in " + std::to_string(s.trajectory.size()) + " steps");
}

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace inlinescope

int main() {
  using namespace inlinescope;
  const bool toolchain = testing::HaveCompiler();
  const Criterion criteria[] = {
      {1, "cost-model constants", 1, CostModelConstants},
      {2, "attribute precedence", 1, AttributePrecedence},
      {3, "decision parity", toolchain ? 120.0 : 10.0, DecisionParity},
      {4, "ground truth", 10, GroundTruth},
      {5, "ratio anchor", 1, RatioAnchor},
      {6, "corpus directions", 300, CorpusDirections},
      {7, "feature and statistics oracles", 30, FeatureOracles},
      {8, "sweep determinism and search", 300, SweepSoundness},
  };
  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("threw ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.Expect(seconds < criterion.limit_seconds, "over time limit");
    bool pass = check.ok();
    failed += !pass;
    printf("criterion %d: %s  %s [%s] (%.2fs < %.0fs)\n", criterion.number,
           pass ? "PASS" : "FAIL", criterion.title, check.Summary().c_str(), seconds,
           criterion.limit_seconds);
    fflush(stdout);
  }
  printf("%d/8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
