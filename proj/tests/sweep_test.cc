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

#include "inlinescope/sweep.h"

#include <stdlib.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "inlinescope/error.h"
#include "test_support.h"

namespace inlinescope {
namespace {

using ::inlinescope::testing::Compiler;
using ::inlinescope::testing::HaveCompiler;
using ::inlinescope::testing::SourcePath;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

namespace fs = std::filesystem;

template <typename Fn>
ErrorCode CodeOf(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

FlagAxis IntAxis(std::string name, int64_t start, int64_t step, int64_t count) {
  FlagAxis a;
  a.name = std::move(name);
  a.start = start;
  a.step = step;
  a.count = count;
  return a;
}

constexpr char kMinimalYaml[] = R"(
projects:
  - name: p
    source_dir: src
    build_command_template: "{CC} {FLAGS} -o app main.c"
    artifact_glob: app
)";

SweepConfig ParseAndValidate(const std::string& yaml) {
  SweepConfig c = ParseSweepConfig(yaml, "/base");
  ValidateConfig(c);
  return c;
}

TEST(AxisTest, Values) {
  EXPECT_THAT(IntAxis("-inline-threshold", 0, 500, 3).Values(), ElementsAre("0", "500", "1000"));
  EXPECT_THAT(IntAxis("-inline-call-penalty", 25, -25, 2).Values(), ElementsAre("25", "0"));
  FlagAxis flip;
  flip.name = "-inline-cold-callsite";
  flip.kind = AxisKind::kBooleanFlip;
  EXPECT_THAT(flip.Values(), ElementsAre("true", "false"));
  flip.default_value = false;
  EXPECT_THAT(flip.Values(), ElementsAre("false", "true"));
}

TEST(AxisTest, Validation) {
  EXPECT_EQ(CodeOf([] { ValidateAxis(IntAxis("x", 0, 1, 0)); }), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ValidateAxis(IntAxis("x", 0, 0, 3)); }), ErrorCode::kConfig);
}

TEST(AxisTest, Rendering) {
  FlagAxis t = IntAxis("-inline-threshold", 0, 1, 1);
  EXPECT_THAT(RenderAxisFlag(t, "2225", false), ElementsAre("-mllvm", "-inline-threshold=2225"));
  EXPECT_THAT(RenderAxisFlag(t, "2225", true),
              ElementsAre("-mllvm", "-inline-threshold=2225", "-Wl,-mllvm,-inline-threshold=2225"));
  FlagAxis fe;
  fe.name = "-fno-inline-functions";
  fe.kind = AxisKind::kBooleanFlip;
  fe.pass_via = PassVia::kFrontend;
  EXPECT_THAT(RenderAxisFlag(fe, "true", false), ElementsAre("-fno-inline-functions"));
  EXPECT_TRUE(RenderAxisFlag(fe, "false", false).empty());
}

TEST(EnumerateTest, LexicographicFirstAxisMostSignificant) {
  SweepConfig c;
  c.axes = {IntAxis("-inline-threshold", 0, 500, 3), IntAxis("-inline-call-penalty", 25, -25, 2)};
  std::vector<FlagAssignment> v = EnumerateVariants(c);
  ASSERT_EQ(v.size(), 6u);
  for (size_t i = 0; i < v.size(); ++i) {
    EXPECT_EQ(v[i].choice[0], i / 2);
    EXPECT_EQ(v[i].choice[1], i % 2);
  }
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  EXPECT_THAT(VariantFlags(c, v[5]),
              ElementsAre("-mllvm", "-inline-threshold=1000", "-mllvm", "-inline-call-penalty=0"));
}

TEST(EnumerateTest, NoAxesIsOneVariant) {
  SweepConfig c;
  std::vector<FlagAssignment> v = EnumerateVariants(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_TRUE(v[0].choice.empty());
}

TEST(EnumerateTest, GridTooLarge) {
  SweepConfig c;
  c.axes = {IntAxis("a", 0, 1, 100), IntAxis("b", 0, 1, 101)};
  EXPECT_EQ(CodeOf([&] { EnumerateVariants(c); }), ErrorCode::kGridTooLarge);
  c.max_variants = 10100;
  EXPECT_EQ(EnumerateVariants(c).size(), 10100u);
}

TEST(EnumerateTest, CountIsProductOfAxisLengths) {
  for (int64_t a = 1; a <= 4; ++a) {
    for (int64_t b = 1; b <= 4; ++b) {
      SweepConfig c;
      FlagAxis flip;
      flip.name = "f";
      flip.kind = AxisKind::kBooleanFlip;
      c.axes = {IntAxis("a", 0, 1, a), flip, IntAxis("b", 5, -1, b)};
      std::vector<FlagAssignment> v = EnumerateVariants(c);
      EXPECT_EQ(v.size(), static_cast<size_t>(a * 2 * b));
      EXPECT_TRUE(std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end());
    }
  }
}

TEST(ConfigTest, ParsesFixture) {
  SweepConfig c = LoadSweepConfig(SourcePath("fixtures/sweep/monotone.yaml"));
  ASSERT_EQ(c.projects.size(), 1u);
  EXPECT_EQ(c.projects[0].source_dir, SourcePath("fixtures/project/monotone"));
  ASSERT_EQ(c.axes.size(), 2u);
  EXPECT_EQ(c.axes[1].step, -25);
  EXPECT_THAT(c.base_flags, ElementsAre("-O2"));
  EXPECT_EQ(c.per_build_timeout, 120);
  EXPECT_EQ(c.parallelism, 3);
  EXPECT_EQ(c.weighting, Weighting::kFunctionCount);
}

TEST(ConfigTest, DefaultsAndStringFlags) {
  SweepConfig c = ParseAndValidate(std::string(kMinimalYaml) + "base_flags: -O2 -g\n");
  EXPECT_THAT(c.base_flags, ElementsAre("-O2", "-g"));
  EXPECT_EQ(c.per_build_timeout, 900);
  EXPECT_EQ(c.parallelism, 1);
  EXPECT_EQ(c.projects[0].source_dir, "/base/src");
  EXPECT_TRUE(c.force_debug_info);
}

TEST(ConfigTest, EnvironmentOverridesCompiler) {
  const char* old = getenv("INLINESCOPE_CC");
  std::string saved = old ? old : "";
  setenv("INLINESCOPE_CC", "/opt/cc", 1);
  SweepConfig c = ParseAndValidate(kMinimalYaml);
  if (old) {
    setenv("INLINESCOPE_CC", saved.c_str(), 1);
  } else {
    unsetenv("INLINESCOPE_CC");
  }
  EXPECT_EQ(c.toolchain.compiler_path, "/opt/cc");
}

TEST(ConfigTest, Errors) {
  std::string base = kMinimalYaml;
  for (const std::string& bad : {
           base + "bogus_key: 1\n",
           base + "per_build_timeout: 0\n",
           base + "parallelism: 0\n",
           base + "preset: no-such-preset\n",
           base + "weighting: cubic\n",
           base + "axes:\n  - {name: x, start: 0, step: 0, count: 2}\n",
           base + "axes:\n  - {name: x, start: 0, step: 1, count: 0}\n",
           std::string("projects:\n  - {name: p, source_dir: s, build_command_template: "
                       "\"cc -o a\", artifact_glob: a}\n"),
           std::string("projects:\n  - {name: p, source_dir: s, build_command_template: "
                       "\"{FLAGS} {FLAGS}\", artifact_glob: a}\n"),
           std::string("projects: [unterminated\n"),
       }) {
    EXPECT_EQ(CodeOf([&] { ParseAndValidate(bad); }), ErrorCode::kConfig) << bad;
  }
  EXPECT_EQ(CodeOf([] { LoadSweepConfig(SourcePath("fixtures/sweep/bad.yaml")); }),
            ErrorCode::kConfig);
}

TEST(PresetTest, RecipesExpand) {
  EXPECT_EQ(FindPreset("extreme-coreutils-style").recipe,
            "-O3 -flto=full -inline-threshold=200000");
  EXPECT_THAT(ExpandRecipe("-Oz -inline-threshold=2225"),
              ElementsAre("-Oz", "-mllvm", "-inline-threshold=2225"));
  EXPECT_THAT(ExpandRecipe("-O3 -flto=full -inline-threshold=200000"),
              ElementsAre("-O3", "-flto=full", "-mllvm", "-inline-threshold=200000",
                          "-fuse-ld=lld", "-Wl,-mllvm,-inline-threshold=200000"));
  EXPECT_EQ(CodeOf([] { FindPreset("nope"); }), ErrorCode::kConfig);
  for (const Preset& p : Presets()) EXPECT_FALSE(ExpandRecipe(p.recipe).empty()) << p.name;
}

TEST(PresetTest, VariantFlagsOrder) {
  SweepConfig c;
  c.base_flags = {"-Wall"};
  c.preset = "o3-threshold-2225";
  c.axes = {IntAxis("-inline-call-penalty", 0, 1, 1)};
  FlagAssignment a{{0}};
  EXPECT_THAT(VariantFlags(c, a), ElementsAre("-Wall", "-O3", "-mllvm", "-inline-threshold=2225",
                                              "-mllvm", "-inline-call-penalty=0"));
}

TEST(CombineTest, Weighting) {
  std::vector<std::pair<double, uint64_t>> r = {{0.2, 1000}, {0.4, 3000}};
  EXPECT_DOUBLE_EQ(CombineRatios(r, Weighting::kFunctionCount), 0.35);
  EXPECT_DOUBLE_EQ(CombineRatios(r, Weighting::kPlain), 0.3);
}

VariantResult Ok(double ratio, uint64_t total = 2070) {
  VariantResult r;
  Measurement m;
  m.total_functions = total;
  m.inlined = static_cast<uint64_t>(ratio * total + 0.5);
  m.remaining = total - m.inlined;
  m.ratio = ratio;
  m.compile_seconds = 1.25;
  m.binary_bytes = 4096;
  r.measurement = m;
  return r;
}

TEST(ReportTest, Format) {
  EXPECT_EQ(EmitReport({}),
            "variant_index,flags,status,total_functions,inlined,remaining,eliminated,ratio,"
            "compile_seconds,binary_bytes\n");
  VariantResult ok = Ok(1183.0 / 2070.0);
  ok.flags = {"-O2", "-mllvm", "-inline-threshold=2225"};
  VariantResult failed;
  failed.variant_index = 1;
  failed.status = BuildStatus::kTimeout;
  failed.flags = {"-DX=a,b"};
  std::vector<VariantResult> rows = {ok, failed};
  std::string csv = EmitReport(rows);
  EXPECT_THAT(csv, HasSubstr("\n0,-O2 -mllvm -inline-threshold=2225,Ok,2070,1183,887,0,0.5715,"
                             "1.250,4096\n"));
  EXPECT_THAT(csv, HasSubstr("\n1,\"-DX=a,b\",Timeout,,,,,,,\n"));
  EXPECT_THAT(EmitReport(rows, {.include_compile_seconds = false}),
              HasSubstr(",0.5715,,4096\n"));
  EXPECT_THAT(RatiosFromReport(csv), ElementsAre(0.5715));
}

// A fake build: ratio grows with threshold and shrinks with penalty. Unset
// axes sit at clang's defaults, 225 and 25.
VariantEvaluator FakeEvaluator(const SweepConfig& config, int* calls,
                               std::vector<size_t> failing = {}) {
  return [&config, calls, failing](const FlagAssignment& a, const std::vector<std::string>&) {
    ++*calls;
    double score = 0;
    for (size_t i = 0; i < a.choice.size(); ++i) {
      bool penalty = config.axes[i].name == "-inline-call-penalty";
      int64_t v = penalty ? 25 : 225;
      if (a.choice[i]) {
        v = config.axes[i].start + config.axes[i].step * static_cast<int64_t>(*a.choice[i]);
      }
      score += penalty ? -v : v;
    }
    size_t key = 0;
    for (const auto& c : a.choice) key = key * 10 + (c ? *c + 1 : 0);
    if (std::find(failing.begin(), failing.end(), key) != failing.end()) {
      VariantResult r;
      r.status = BuildStatus::kBuildFailed;
      return r;
    }
    return Ok(std::clamp(0.5 + score / 10000.0, 0.0, 1.0));
  };
}

SweepConfig SearchConfig() {
  SweepConfig c;
  c.axes = {IntAxis("-inline-call-penalty", 25, -25, 2), IntAxis("-inline-threshold", 0, 500, 3)};
  return c;
}

TEST(SearchTest, OnePassAtMinimumBudget) {
  SweepConfig c = SearchConfig();
  int calls = 0;
  SearchResult s = SearchExtreme(c, 3, FakeEvaluator(c, &calls));
  EXPECT_EQ(calls, 3);
  ASSERT_EQ(s.trajectory.size(), 3u);
  // Threshold first, ascending; then penalty, descending.
  EXPECT_EQ(s.trajectory[1].assignment.choice[1], 0u);
  EXPECT_EQ(s.trajectory[2].assignment.choice[0], 0u);
  EXPECT_FALSE(s.trajectory[2].accepted);  // 25 is the default
}

TEST(SearchTest, ReachesGridOptimumOnMonotoneObjective) {
  SweepConfig c = SearchConfig();
  int calls = 0;
  SearchResult s = SearchExtreme(c, 50, FakeEvaluator(c, &calls));
  EXPECT_LE(calls, 50);
  EXPECT_EQ(s.best.choice[0], 1u);
  EXPECT_EQ(s.best.choice[1], 2u);
  double grid_max = 0;
  int grid_calls = 0;
  for (const VariantResult& r : RunSweep(c, FakeEvaluator(c, &grid_calls))) {
    grid_max = std::max(grid_max, r.measurement->ratio);
  }
  EXPECT_EQ(s.best_result.measurement->ratio, grid_max);
}

TEST(SearchTest, Soundness) {
  SweepConfig c = SearchConfig();
  for (int budget = 3; budget <= 12; ++budget) {
    int calls = 0;
    SearchResult s = SearchExtreme(c, budget, FakeEvaluator(c, &calls, {0, 13}));
    EXPECT_LE(calls, budget);
    double best = -1;
    for (const SearchStep& step : s.trajectory) {
      if (step.accepted) {
        ASSERT_EQ(step.result.status, BuildStatus::kOk);
        EXPECT_GT(step.result.measurement->ratio, best);
        best = step.result.measurement->ratio;
      }
      if (step.result.status == BuildStatus::kOk) {
        EXPECT_LE(step.result.measurement->ratio, s.best_result.measurement->ratio);
      }
    }
    EXPECT_EQ(best, s.best_result.measurement->ratio);
  }
}

TEST(SearchTest, Errors) {
  SweepConfig c = SearchConfig();
  int calls = 0;
  EXPECT_EQ(CodeOf([&] { SearchExtreme(c, 2, FakeEvaluator(c, &calls)); }),
            ErrorCode::kInvalidArgument);
  VariantEvaluator fail = [](const FlagAssignment&, const std::vector<std::string>&) {
    VariantResult r;
    r.status = BuildStatus::kBuildFailed;
    return r;
  };
  EXPECT_EQ(CodeOf([&] { SearchExtreme(c, 10, fail); }), ErrorCode::kNoSuccessfulBuild);
}

TEST(RunSweepTest, ResultsInEnumerationOrderWithParallelism) {
  SweepConfig c = SearchConfig();
  c.parallelism = 4;
  int calls = 0;
  std::mutex mu;
  VariantEvaluator inner = FakeEvaluator(c, &calls);
  VariantEvaluator locked = [&](const FlagAssignment& a, const std::vector<std::string>& f) {
    std::lock_guard lock(mu);
    return inner(a, f);
  };
  std::vector<VariantResult> results = RunSweep(c, locked);
  ASSERT_EQ(results.size(), 6u);
  std::vector<FlagAssignment> order = EnumerateVariants(c);
  for (size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(results[i].variant_index, i);
    EXPECT_EQ(results[i].flags, VariantFlags(c, order[i]));
  }
}

// The rest needs a real compiler.

class BuildTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!HaveCompiler()) GTEST_SKIP() << "no compiler";
    root_ = fs::temp_directory_path() / ("inlinescope-sweep-test-" + std::to_string(getpid()));
    fs::create_directories(root_);
  }
  void TearDown() override {
    std::error_code ec;
    if (!root_.empty()) fs::remove_all(root_, ec);
  }
  SweepConfig Load(const std::string& name) {
    SweepConfig c = LoadSweepConfig(SourcePath("fixtures/sweep/" + name));
    c.toolchain.compiler_path = Compiler();
    return c;
  }
  fs::path root_;
};

TEST_F(BuildTest, MonotoneSweepIsDeterministicAndMonotone) {
  SweepConfig c = Load("monotone.yaml");
  std::vector<VariantResult> first = RunSweep(c);
  std::vector<VariantResult> second = RunSweep(c);
  ReportOptions no_timing{.include_compile_seconds = false};
  EXPECT_EQ(EmitReport(first, no_timing), EmitReport(second, no_timing));
  ASSERT_EQ(first.size(), 6u);
  for (const VariantResult& r : first) ASSERT_EQ(r.status, BuildStatus::kOk) << r.cause;
  // Higher threshold or lower penalty never inlines less.
  for (size_t i = 0; i < 6; ++i) {
    double ratio = first[i].measurement->ratio;
    if (i + 2 < 6) {
      EXPECT_LE(ratio, first[i + 2].measurement->ratio);
    }
    if (i % 2 == 0) {
      EXPECT_LE(ratio, first[i + 1].measurement->ratio);
    }
  }
  EXPECT_LT(first[0].measurement->ratio, first[5].measurement->ratio);
}

TEST_F(BuildTest, GreedySearchFindsGridMaximum) {
  SweepConfig c = Load("monotone.yaml");
  double grid_max = 0;
  for (const VariantResult& r : RunSweep(c)) grid_max = std::max(grid_max, r.measurement->ratio);
  SearchResult s = SearchExtreme(c, 20);
  EXPECT_EQ(s.best_result.measurement->ratio, grid_max);
}

TEST_F(BuildTest, TimeoutKillsBuild) {
  SweepConfig c = Load("timeout.yaml");
  auto start = std::chrono::steady_clock::now();
  std::vector<VariantResult> results = RunSweep(c);
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].status, BuildStatus::kTimeout);
  EXPECT_FALSE(results[0].measurement);
  EXPECT_LT(elapsed, 10.0);
}

TEST_F(BuildTest, MissingCompilerFailsBeforeRunning) {
  SweepConfig c = Load("monotone.yaml");
  Toolchain t;
  t.compiler_path = "/nonexistent/bin/cc";
  BuildArtifacts a = BuildVariant(c.projects[0], {"-O2"}, t, 30, root_.string());
  EXPECT_EQ(a.status, BuildStatus::kBuildFailed);
  EXPECT_EQ(a.failure, ErrorCode::kBuildFailed);
  EXPECT_THAT(a.cause, HasSubstr("/nonexistent/bin/cc"));
}

TEST_F(BuildTest, CommandCarriesFlagsAndWorkDirsAreUnique) {
  SweepConfig c = Load("monotone.yaml");
  c.preset = "o3-threshold-2225";
  std::vector<std::string> flags = VariantFlags(c, FlagAssignment{{std::nullopt, std::nullopt}});
  BuildArtifacts a = BuildVariant(c.projects[0], flags, c.toolchain, 120, root_.string());
  BuildArtifacts b = BuildVariant(c.projects[0], flags, c.toolchain, 120, root_.string());
  ASSERT_EQ(a.status, BuildStatus::kOk) << a.cause;
  EXPECT_THAT(a.command, HasSubstr("-mllvm"));
  EXPECT_THAT(a.command, HasSubstr("-inline-threshold=2225"));
  EXPECT_THAT(a.command, HasSubstr("-Rpass=inline"));
  EXPECT_THAT(a.command, HasSubstr(" -g"));
  EXPECT_NE(a.work_dir, b.work_dir);
  ASSERT_EQ(a.binaries.size(), 1u);
  EXPECT_TRUE(fs::exists(a.binaries[0]));
  std::vector<BuildArtifacts> both = {a};
  VariantResult r = EvaluateVariant(both);
  ASSERT_EQ(r.status, BuildStatus::kOk) << r.cause;
  EXPECT_TRUE(r.remarks.has_value());
  EXPECT_GT(r.measurement->total_functions, 0u);
}

TEST_F(BuildTest, MissingArtifactIsReported) {
  SweepConfig c = Load("monotone.yaml");
  ProjectSpec p = c.projects[0];
  p.artifact_glob = "not-built-*";
  BuildArtifacts a = BuildVariant(p, {"-O0"}, c.toolchain, 120, root_.string());
  EXPECT_EQ(a.status, BuildStatus::kBuildFailed);
  EXPECT_EQ(a.failure, ErrorCode::kArtifactMissing);
}

TEST_F(BuildTest, CompileErrorKeepsStderrTail) {
  SweepConfig c = Load("monotone.yaml");
  BuildArtifacts a =
      BuildVariant(c.projects[0], {"-include", "/nonexistent/header.h"}, c.toolchain, 120, root_.string());
  EXPECT_EQ(a.status, BuildStatus::kBuildFailed);
  EXPECT_NE(a.exit_code, 0);
  EXPECT_FALSE(a.cause.empty());
}

}  // namespace
}  // namespace inlinescope
