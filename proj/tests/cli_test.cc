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
// Runs the installed-shape binary end to end and checks exit codes and files.

#include <stdio.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "inlinescope/elf_file.h"
#include "inlinescope/ground_truth.h"
#include "json.hpp"
#include "test_support.h"

namespace inlinescope {
namespace {

using ::inlinescope::testing::HaveCompiler;
using ::inlinescope::testing::ReadText;
using ::inlinescope::testing::SourcePath;
using ::testing::HasSubstr;
using ::testing::StartsWith;

namespace fs = std::filesystem;

struct CliRun {
  int rc = -1;
  std::string output;  // stdout and stderr together
};

CliRun Cli(const std::string& args) {
  std::string cmd = "cd '" + SourcePath("") + "' && '" INLINESCOPE_CLI "' " + args + " 2>&1";
  CliRun run;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return run;
  char buffer[4096];
  for (size_t n; (n = fread(buffer, 1, sizeof(buffer), pipe)) > 0;) run.output.append(buffer, n);
  int status = pclose(pipe);
  run.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("inlinescope-cli-" + std::to_string(getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string Out() const { return "--out '" + dir_.string() + "' "; }
  fs::path dir_;
};

TEST_F(CliTest, Version) {
  CliRun r = Cli("--version");
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.output, "inlinescope 0.1.0 registry_version=1\n");
}

TEST_F(CliTest, GroundTruthSummaryAndJson) {
  CliRun r = Cli("ground-truth fixtures/bin/trio_O2.so");
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.output,
            "fixtures/bin/trio_O2.so: total=3 inlined=2 remaining=1 eliminated=1 ratio=0.6667\n");
  CliRun j = Cli("--json ground-truth fixtures/bin/trio_O2.so");
  ASSERT_EQ(j.rc, 0);
  nlohmann::json report = nlohmann::json::parse(j.output);
  EXPECT_EQ(report["totals"]["functions"], 3);
}

TEST_F(CliTest, GroundTruthWritesFilesAtomically) {
  CliRun r = Cli(Out() + "ground-truth fixtures/bin/trio_O2.so --baseline fixtures/bin/trio_O0.so");
  ASSERT_EQ(r.rc, 0) << r.output;
  EXPECT_TRUE(fs::exists(dir_ / "trio_O2.so.report.json"));
  EXPECT_TRUE(fs::exists(dir_ / "trio_O2.so.flow.json"));
  for (const auto& e : fs::directory_iterator(dir_)) {
    EXPECT_THAT(e.path().filename().string(), ::testing::Not(HasSubstr(".tmp"))) << "leftover";
  }
  EXPECT_NO_THROW(nlohmann::json::parse(ReadText((dir_ / "trio_O2.so.report.json").string())));
}

TEST_F(CliTest, MissingFileIsUsageError) {
  CliRun r = Cli("ground-truth fixtures/bin/does_not_exist");
  EXPECT_EQ(r.rc, 2);
  EXPECT_THAT(r.output, HasSubstr("IoError"));
}

TEST_F(CliTest, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(Cli("frobnicate").rc, 2);
  EXPECT_EQ(Cli("").rc, 2);
}

TEST_F(CliTest, CorruptDwarfExitsFour) {
  std::vector<uint8_t> image = ReadBinaryFile(SourcePath("fixtures/bin/trio_O2.so"));
  ElfFile elf = ElfFile::Parse(image);
  const ElfSection* info = elf.FindSection(".debug_info");
  ASSERT_NE(info, nullptr);
  uint64_t offset = info->offset;
  image[offset] = 0xf0;
  image[offset + 1] = 0xff;
  image[offset + 2] = 0xff;
  image[offset + 3] = 0x0f;
  fs::path bad = dir_ / "bad.so";
  std::ofstream(bad, std::ios::binary)
      .write(reinterpret_cast<const char*>(image.data()), static_cast<std::streamsize>(image.size()));
  CliRun r = Cli("ground-truth '" + bad.string() + "'");
  EXPECT_EQ(r.rc, 4);
  EXPECT_THAT(r.output, HasSubstr("MalformedDwarf"));
}

TEST_F(CliTest, SimulateAlwaysInlineAtO0) {
  CliRun r = Cli("simulate --site fixtures/parity/always_o0.site.json --opt O0");
  ASSERT_EQ(r.rc, 0) << r.output;
  EXPECT_EQ(nlohmann::json::parse(r.output)["verdict"], "Always");
  EXPECT_EQ(Cli("simulate --site fixtures/parity/always_o0.site.json --opt O7").rc, 2);
  std::ofstream(dir_ / "broken.json") << "{not json";
  EXPECT_EQ(Cli("simulate --site '" + (dir_ / "broken.json").string() + "'").rc, 2);
}

TEST_F(CliTest, RemarksSummary) {
  CliRun r = Cli(Out() + "remarks fixtures/remarks/remarks_O2.stderr --binary fixtures/bin/remarks_O2");
  ASSERT_EQ(r.rc, 0) << r.output;
  for (const char* f : {"remarks.json", "summary.json", "discrepancy.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
}

TEST_F(CliTest, FeaturesFromListing) {
  CliRun r = Cli("features fixtures/listings/hand/counts.lst");
  ASSERT_EQ(r.rc, 0) << r.output;
  EXPECT_THAT(r.output, StartsWith("# registry_version=1\nfunction,f1,"));
  EXPECT_THAT(r.output, HasSubstr("\nadder,5,"));
  EXPECT_EQ(Cli("features fixtures/listings/hand/counts.lst --registry-version 9").rc, 2);
  EXPECT_EQ(Cli("features fixtures/listings/hand/bad_address.lst").rc, 2);
}

TEST_F(CliTest, SweepDryRunShowsPreset) {
  CliRun r = Cli("sweep fixtures/sweep/extreme.yaml --dry-run");
  ASSERT_EQ(r.rc, 0) << r.output;
  EXPECT_THAT(r.output, StartsWith("preset extreme-coreutils-style: -O3 -flto=full "
                                   "-inline-threshold=200000\n"));
  EXPECT_THAT(r.output, HasSubstr("\n0\t-O3 -flto=full -mllvm -inline-threshold=200000"));
  CliRun grid = Cli("sweep fixtures/sweep/monotone.yaml --dry-run");
  ASSERT_EQ(grid.rc, 0);
  EXPECT_EQ(std::count(grid.output.begin(), grid.output.end(), '\n'), 6);
  EXPECT_EQ(Cli("sweep fixtures/sweep/bad.yaml --dry-run").rc, 2);
}

TEST_F(CliTest, SweepTimeoutExitsThree) {
  if (!HaveCompiler()) GTEST_SKIP() << "no compiler";
  CliRun r = Cli(Out() + "sweep fixtures/sweep/timeout.yaml");
  EXPECT_EQ(r.rc, 3) << r.output;
  std::string csv = ReadText((dir_ / "sweep.csv").string());
  EXPECT_THAT(csv, HasSubstr(",Timeout,"));
}

TEST_F(CliTest, ReportCdfAndDrift) {
  fs::path csv = dir_ / "s.csv";
  std::ofstream(csv) << "variant_index,flags,status,total_functions,inlined,remaining,"
                        "eliminated,ratio,compile_seconds,binary_bytes\n"
                        "0,-O2,Ok,10,5,5,0,0.5000,,100\n"
                        "1,-O3,Ok,10,9,1,0,0.9000,,100\n"
                        "2,-Oz,BuildFailed,,,,,,,\n";
  CliRun r = Cli(Out() + "report cdf '" + csv.string() + "' --label grid");
  ASSERT_EQ(r.rc, 0) << r.output;
  EXPECT_EQ(r.output, "grid: max=0.9000,mean=0.7000\n");
  EXPECT_TRUE(fs::exists(dir_ / "grid.cdf.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "cdf.svg"));

  CliRun d = Cli("report drift fixtures/listings/corpus_O0.lst fixtures/listings/corpus_O3.lst -k 5");
  ASSERT_EQ(d.rc, 0) << d.output;
  EXPECT_THAT(d.output, StartsWith("index,name,median_a,median_b,gap,kept_a,kept_b\n"));
  EXPECT_EQ(std::count(d.output.begin(), d.output.end(), '\n'), 6);
}

}  // namespace
}  // namespace inlinescope
