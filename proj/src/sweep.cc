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

#include <fcntl.h>
#include <glob.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <yaml-cpp/yaml.h>

#include "inlinescope/ground_truth.h"

extern char** environ;

namespace inlinescope {
namespace {

namespace fs = std::filesystem;

std::string StripDashes(std::string_view name) {
  size_t i = name.find_first_not_of('-');
  return std::string(i == std::string_view::npos ? name : name.substr(i));
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

std::string ShellQuote(const std::string& word) {
  bool safe = !word.empty() &&
              std::all_of(word.begin(), word.end(), [](unsigned char c) {
                return std::isalnum(c) || std::string_view("_-+=/.,:@%").find(c) !=
                                              std::string_view::npos;
              });
  if (safe) return word;
  std::string out = "'";
  for (char c : word) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string Join(const std::vector<std::string>& words, bool quote) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out += ' ';
    out += quote ? ShellQuote(w) : w;
  }
  return out;
}

std::string Fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

std::string CsvField(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

bool HasLto(const std::vector<std::string>& flags) {
  return std::any_of(flags.begin(), flags.end(), [](const std::string& f) {
    return f.starts_with("-flto") && f != "-fno-lto";
  });
}

std::optional<std::string> ResolveExecutable(const std::string& path) {
  if (path.empty()) return std::nullopt;
  if (path.find('/') != std::string::npos) {
    if (access(path.c_str(), X_OK) == 0) return path;
    return std::nullopt;
  }
  const char* env_path = std::getenv("PATH");
  std::istringstream dirs(env_path ? env_path : "/usr/bin:/bin");
  for (std::string dir; std::getline(dirs, dir, ':');) {
    std::string candidate = (dir.empty() ? "." : dir) + "/" + path;
    if (access(candidate.c_str(), X_OK) == 0) return candidate;
  }
  return std::nullopt;
}

std::string Tail(const std::string& text, size_t max_lines) {
  size_t pos = text.size();
  if (pos > 0 && text[pos - 1] == '\n') --pos;
  for (size_t lines = 0; pos > 0; --pos) {
    if (text[pos - 1] == '\n' && ++lines == max_lines) break;
  }
  return text.substr(pos);
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string MakeTempDir(const fs::path& parent, const std::string& stem) {
  std::string pattern = (parent / (stem + "-XXXXXX")).string();
  if (mkdtemp(pattern.data()) == nullptr) {
    throw Error(ErrorCode::kIo, "cannot create work directory under " + parent.string());
  }
  return pattern;
}

std::string SafeStem(const std::string& name) {
  std::string stem;
  for (char c : name) stem += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return stem.empty() ? "project" : stem;
}

// Runs `command` under /bin/sh in `dir`. Returns the exit status, or nullopt
// on timeout after the process group has been killed.
std::optional<int> RunShell(const std::string& command, const fs::path& dir,
                            const std::vector<std::string>& env,
                            const fs::path& out_path, const fs::path& err_path,
                            double timeout_seconds) {
  std::vector<char*> envp;
  for (const std::string& e : env) envp.push_back(const_cast<char*>(e.c_str()));
  envp.push_back(nullptr);
  std::string dir_s = dir.string(), out_s = out_path.string(), err_s = err_path.string();
  const char* argv[] = {"sh", "-c", command.c_str(), nullptr};

  pid_t pid = fork();
  if (pid < 0) throw Error(ErrorCode::kIo, "fork failed");
  if (pid == 0) {
    setpgid(0, 0);
    int out = open(out_s.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    int err = open(err_s.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (out < 0 || err < 0 || chdir(dir_s.c_str()) != 0) _exit(126);
    dup2(out, STDOUT_FILENO);
    dup2(err, STDERR_FILENO);
    int devnull = open("/dev/null", O_RDONLY);
    if (devnull >= 0) dup2(devnull, STDIN_FILENO);
    execve("/bin/sh", const_cast<char* const*>(argv), envp.data());
    _exit(127);
  }
  setpgid(pid, pid);
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(timeout_seconds));
  int status = 0;
  while (true) {
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      waitpid(pid, &status, 0);
      return std::nullopt;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  // Stragglers left in the group (backgrounded jobs) go too.
  kill(-pid, SIGKILL);
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

std::vector<std::string> BuildEnvironment(const Toolchain& toolchain,
                                          const std::string& compiler) {
  std::map<std::string, std::string> vars;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    std::string_view entry(*e);
    size_t eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    vars[std::string(entry.substr(0, eq))] = std::string(entry.substr(eq + 1));
  }
  vars["CC"] = compiler;
  for (const auto& [k, v] : toolchain.extra_env) vars[k] = v;
  std::vector<std::string> env;
  for (const auto& [k, v] : vars) env.push_back(k + "=" + v);
  return env;
}

void CheckKeys(const YAML::Node& node, std::initializer_list<std::string_view> allowed,
               std::string_view where) {
  if (!node.IsMap()) throw Error(ErrorCode::kConfig, std::string(where) + " must be a map");
  for (const auto& kv : node) {
    std::string key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorCode::kConfig, "unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
T Get(const YAML::Node& node, const char* key, std::string_view where) {
  try {
    return node[key].as<T>();
  } catch (const YAML::Exception&) {
    throw Error(ErrorCode::kConfig,
                "bad value for '" + std::string(key) + "' in " + std::string(where));
  }
}

std::string Require(const YAML::Node& node, const char* key, std::string_view where) {
  if (!node[key]) {
    throw Error(ErrorCode::kConfig,
                "missing '" + std::string(key) + "' in " + std::string(where));
  }
  return Get<std::string>(node, key, where);
}

FlagAxis ParseAxis(const YAML::Node& node, size_t i) {
  std::string where = "axes[" + std::to_string(i) + "]";
  CheckKeys(node, {"name", "kind", "start", "step", "count", "default", "pass_via"}, where);
  FlagAxis axis;
  axis.name = Require(node, "name", where);
  std::string kind = Require(node, "kind", where);
  if (kind == "IntegerSequence") {
    axis.kind = AxisKind::kIntegerSequence;
    if (!node["start"] || !node["step"] || !node["count"]) {
      throw Error(ErrorCode::kConfig, where + ": IntegerSequence needs start, step, count");
    }
    axis.start = Get<int64_t>(node, "start", where);
    axis.step = Get<int64_t>(node, "step", where);
    axis.count = Get<int64_t>(node, "count", where);
  } else if (kind == "BooleanFlip") {
    axis.kind = AxisKind::kBooleanFlip;
    axis.count = 2;
    if (node["default"]) axis.default_value = Get<bool>(node, "default", where);
  } else {
    throw Error(ErrorCode::kConfig, where + ": unknown kind '" + kind + "'");
  }
  std::string via = node["pass_via"] ? Get<std::string>(node, "pass_via", where)
                                     : std::string("MiddleEnd");
  if (via == "MiddleEnd") {
    axis.pass_via = PassVia::kMiddleEnd;
  } else if (via == "Frontend") {
    axis.pass_via = PassVia::kFrontend;
  } else {
    throw Error(ErrorCode::kConfig, where + ": unknown pass_via '" + via + "'");
  }
  ValidateAxis(axis);
  return axis;
}

std::vector<std::string> StringList(const YAML::Node& node, std::string_view where) {
  if (node.IsScalar()) return SplitWords(node.as<std::string>());
  if (!node.IsSequence()) {
    throw Error(ErrorCode::kConfig, std::string(where) + " must be a list or a string");
  }
  std::vector<std::string> out;
  for (const auto& item : node) out.push_back(item.as<std::string>());
  return out;
}

// Integer value of an axis setting, for ordering.
int64_t AxisInteger(const FlagAxis& axis, size_t index) {
  return axis.start + axis.step * static_cast<int64_t>(index);
}

// Value indices of `axis` in the order the search visits them.
std::vector<size_t> SearchOrder(const FlagAxis& axis) {
  std::vector<size_t> order(axis.Values().size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (axis.kind != AxisKind::kIntegerSequence) return order;
  std::string name = StripDashes(axis.name);
  if (name == "inline-threshold") {
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return AxisInteger(axis, a) < AxisInteger(axis, b);
    });
  } else if (name == "inline-call-penalty") {
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return AxisInteger(axis, a) > AxisInteger(axis, b);
    });
  }
  return order;
}

int AxisPriority(const FlagAxis& axis) {
  std::string name = StripDashes(axis.name);
  if (name == "inline-threshold") return 0;
  if (name == "inline-call-penalty") return 1;
  return 2;
}

bool Improves(const VariantResult& candidate, const std::optional<VariantResult>& incumbent) {
  if (candidate.status != BuildStatus::kOk || !candidate.measurement) return false;
  if (!incumbent || !incumbent->measurement) return true;
  return candidate.measurement->ratio > incumbent->measurement->ratio;
}

constexpr Preset kPresets[] = {
    {"extreme-coreutils-style", "-O3 -flto=full -inline-threshold=200000"},
    {"full-lto", "-O3 -flto=full"},
    {"oz-threshold-2225", "-Oz -inline-threshold=2225"},
    {"o3-threshold-2225", "-O3 -inline-threshold=2225"},
    {"o3", "-O3"},
};

}  // namespace

std::vector<std::string> FlagAxis::Values() const {
  std::vector<std::string> values;
  if (kind == AxisKind::kBooleanFlip) {
    values.push_back(default_value ? "true" : "false");
    values.push_back(default_value ? "false" : "true");
    return values;
  }
  for (int64_t i = 0; i < count; ++i) values.push_back(std::to_string(start + step * i));
  return values;
}

void ValidateAxis(const FlagAxis& axis) {
  if (axis.name.empty()) throw Error(ErrorCode::kConfig, "axis without a name");
  if (axis.kind == AxisKind::kIntegerSequence) {
    if (axis.count < 1) {
      throw Error(ErrorCode::kConfig, "axis " + axis.name + ": count must be at least 1");
    }
    if (axis.step == 0) {
      throw Error(ErrorCode::kConfig, "axis " + axis.name + ": step must be nonzero");
    }
  }
}

std::vector<std::string> RenderAxisFlag(const FlagAxis& axis, std::string_view value,
                                        bool lto) {
  std::string setting = axis.name + "=" + std::string(value);
  if (axis.pass_via == PassVia::kMiddleEnd) {
    std::vector<std::string> out = {"-mllvm", setting};
    if (lto) out.push_back("-Wl,-mllvm," + setting);
    return out;
  }
  if (axis.kind == AxisKind::kBooleanFlip) {
    if (value == "true") return {axis.name};
    return {};
  }
  return {setting};
}

SweepConfig ParseSweepConfig(std::string_view yaml_text, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfig, std::string("invalid YAML: ") + e.what());
  }
  CheckKeys(root,
            {"toolchain", "projects", "axes", "base_flags", "per_build_timeout",
             "parallelism", "preset", "max_variants", "force_debug_info", "weighting",
             "work_root", "keep_work_dirs"},
            "config");
  SweepConfig config;
  if (const YAML::Node tc = root["toolchain"]) {
    CheckKeys(tc, {"compiler_path", "extra_env"}, "toolchain");
    if (tc["compiler_path"]) {
      config.toolchain.compiler_path = Get<std::string>(tc, "compiler_path", "toolchain");
    }
    if (const YAML::Node env = tc["extra_env"]) {
      if (!env.IsMap()) throw Error(ErrorCode::kConfig, "toolchain.extra_env must be a map");
      for (const auto& kv : env) {
        config.toolchain.extra_env[kv.first.as<std::string>()] = kv.second.as<std::string>();
      }
    }
  }
  if (const char* cc = std::getenv("INLINESCOPE_CC"); cc != nullptr && *cc != '\0') {
    config.toolchain.compiler_path = cc;
  }
  if (const YAML::Node projects = root["projects"]) {
    if (!projects.IsSequence()) throw Error(ErrorCode::kConfig, "projects must be a list");
    for (size_t i = 0; i < projects.size(); ++i) {
      std::string where = "projects[" + std::to_string(i) + "]";
      const YAML::Node p = projects[i];
      CheckKeys(p, {"name", "source_dir", "build_command_template", "artifact_glob"}, where);
      ProjectSpec spec;
      spec.name = Require(p, "name", where);
      fs::path src = Require(p, "source_dir", where);
      spec.source_dir = (src.is_relative() ? fs::path(base_dir) / src : src)
                            .lexically_normal()
                            .string();
      spec.build_command_template = Require(p, "build_command_template", where);
      spec.artifact_glob = Require(p, "artifact_glob", where);
      config.projects.push_back(std::move(spec));
    }
  }
  if (const YAML::Node axes = root["axes"]) {
    if (!axes.IsSequence()) throw Error(ErrorCode::kConfig, "axes must be a list");
    for (size_t i = 0; i < axes.size(); ++i) config.axes.push_back(ParseAxis(axes[i], i));
  }
  if (root["base_flags"]) config.base_flags = StringList(root["base_flags"], "base_flags");
  if (root["per_build_timeout"]) {
    config.per_build_timeout = Get<double>(root, "per_build_timeout", "config");
  }
  if (root["parallelism"]) config.parallelism = Get<int>(root, "parallelism", "config");
  if (root["preset"]) config.preset = Get<std::string>(root, "preset", "config");
  if (root["max_variants"]) config.max_variants = Get<uint64_t>(root, "max_variants", "config");
  if (root["force_debug_info"]) {
    config.force_debug_info = Get<bool>(root, "force_debug_info", "config");
  }
  if (root["weighting"]) {
    std::string w = Get<std::string>(root, "weighting", "config");
    if (w == "function_count") {
      config.weighting = Weighting::kFunctionCount;
    } else if (w == "plain") {
      config.weighting = Weighting::kPlain;
    } else {
      throw Error(ErrorCode::kConfig, "weighting must be function_count or plain");
    }
  }
  if (root["work_root"]) {
    fs::path wr = Get<std::string>(root, "work_root", "config");
    config.work_root = (wr.is_relative() ? fs::path(base_dir) / wr : wr).string();
  }
  if (root["keep_work_dirs"]) {
    config.keep_work_dirs = Get<bool>(root, "keep_work_dirs", "config");
  }
  ValidateConfig(config);
  return config;
}

SweepConfig LoadSweepConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot read config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return ParseSweepConfig(text.str(), fs::path(path).parent_path().string());
}

void ValidateConfig(const SweepConfig& config) {
  if (!(config.per_build_timeout > 0)) {
    throw Error(ErrorCode::kConfig, "per_build_timeout must be positive");
  }
  if (config.parallelism < 1) throw Error(ErrorCode::kConfig, "parallelism must be positive");
  for (const ProjectSpec& p : config.projects) {
    size_t first = p.build_command_template.find("{FLAGS}");
    if (first == std::string::npos ||
        p.build_command_template.find("{FLAGS}", first + 1) != std::string::npos) {
      throw Error(ErrorCode::kConfig,
                  "project " + p.name + ": build_command_template needs {FLAGS} exactly once");
    }
  }
  for (const FlagAxis& axis : config.axes) ValidateAxis(axis);
  if (config.preset) FindPreset(*config.preset);
}

std::span<const Preset> Presets() { return kPresets; }

const Preset& FindPreset(std::string_view name) {
  for (const Preset& p : kPresets) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::kConfig, "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> ExpandRecipe(std::string_view recipe) {
  std::vector<std::string> words = SplitWords(recipe);
  bool lto = HasLto(words);
  std::vector<std::string> out;
  std::vector<std::string> link;
  for (const std::string& w : words) {
    if (w.starts_with("-inline-") || w.starts_with("--inline-")) {
      std::string option = "-" + StripDashes(w);
      out.push_back("-mllvm");
      out.push_back(option);
      if (lto) link.push_back("-Wl,-mllvm," + option);
    } else {
      out.push_back(w);
    }
  }
  if (lto) out.push_back("-fuse-ld=lld");
  out.insert(out.end(), link.begin(), link.end());
  return out;
}

std::vector<FlagAssignment> EnumerateVariants(const SweepConfig& config) {
  uint64_t total = 1;
  std::vector<size_t> sizes;
  for (const FlagAxis& axis : config.axes) {
    ValidateAxis(axis);
    size_t n = axis.Values().size();
    sizes.push_back(n);
    if (total > config.max_variants / n + 1) total = config.max_variants + 1;
    else total *= n;
    if (total > config.max_variants) {
      throw Error(ErrorCode::kGridTooLarge,
                  "flag grid exceeds " + std::to_string(config.max_variants) + " variants");
    }
  }
  std::vector<FlagAssignment> variants;
  variants.reserve(total);
  std::vector<size_t> current(sizes.size(), 0);
  while (true) {
    FlagAssignment a;
    for (size_t v : current) a.choice.push_back(v);
    variants.push_back(std::move(a));
    size_t i = sizes.size();
    while (i > 0) {
      --i;
      if (++current[i] < sizes[i]) break;
      current[i] = 0;
      if (i == 0) return variants;
    }
    if (sizes.empty()) return variants;
  }
}

std::vector<std::string> VariantFlags(const SweepConfig& config,
                                      const FlagAssignment& assignment) {
  std::vector<std::string> flags = config.base_flags;
  if (config.preset) {
    std::vector<std::string> recipe = ExpandRecipe(FindPreset(*config.preset).recipe);
    flags.insert(flags.end(), recipe.begin(), recipe.end());
  }
  bool lto = HasLto(flags);
  for (size_t i = 0; i < config.axes.size() && i < assignment.choice.size(); ++i) {
    if (!assignment.choice[i]) continue;
    std::vector<std::string> values = config.axes[i].Values();
    std::vector<std::string> rendered =
        RenderAxisFlag(config.axes[i], values.at(*assignment.choice[i]), lto);
    flags.insert(flags.end(), rendered.begin(), rendered.end());
  }
  return flags;
}

std::string_view BuildStatusName(BuildStatus status) {
  switch (status) {
    case BuildStatus::kOk:
      return "Ok";
    case BuildStatus::kBuildFailed:
      return "BuildFailed";
    case BuildStatus::kTimeout:
      return "Timeout";
  }
  return "Unknown";
}

BuildArtifacts BuildVariant(const ProjectSpec& project, const std::vector<std::string>& flags,
                            const Toolchain& toolchain, double timeout_seconds,
                            const std::string& work_root, bool force_debug_info) {
  BuildArtifacts result;
  result.project = project.name;
  auto fail = [&result](ErrorCode code, BuildStatus status, std::string cause) {
    result.status = status;
    result.failure = code;
    result.cause = std::string(ErrorCodeName(code)) + ": " + std::move(cause);
    return result;
  };

  std::optional<std::string> compiler = ResolveExecutable(toolchain.compiler_path);
  if (!compiler) {
    result.exit_code = -1;
    return fail(ErrorCode::kBuildFailed, BuildStatus::kBuildFailed,
                "compiler not found: " + toolchain.compiler_path);
  }
  std::error_code ec;
  if (!fs::is_directory(project.source_dir, ec)) {
    result.exit_code = -1;
    return fail(ErrorCode::kBuildFailed, BuildStatus::kBuildFailed,
                "source_dir missing: " + project.source_dir);
  }

  fs::create_directories(work_root, ec);
  result.work_dir = MakeTempDir(work_root, SafeStem(project.name));
  fs::path build_dir = fs::path(result.work_dir) / "build";
  fs::copy(project.source_dir, build_dir, fs::copy_options::recursive, ec);
  if (ec) {
    return fail(ErrorCode::kBuildFailed, BuildStatus::kBuildFailed,
                "cannot copy sources: " + ec.message());
  }

  std::vector<std::string> all = flags;
  if (force_debug_info) all.push_back("-g");
  all.push_back("-fdebug-prefix-map=" + build_dir.string() + "=.");
  for (std::string_view f : kRemarkFlags) all.emplace_back(f);

  std::string command = project.build_command_template;
  command.replace(command.find("{FLAGS}"), 7, Join(all, true));
  for (size_t pos; (pos = command.find("{CC}")) != std::string::npos;) {
    command.replace(pos, 4, ShellQuote(*compiler));
  }
  result.command = command;

  fs::path out_path = fs::path(result.work_dir) / "stdout.txt";
  fs::path err_path = fs::path(result.work_dir) / "stderr.txt";
  auto begin = std::chrono::steady_clock::now();
  std::optional<int> exit_code =
      RunShell(command, build_dir, BuildEnvironment(toolchain, *compiler), out_path,
               err_path, timeout_seconds);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  result.stderr_text = ReadText(err_path);

  if (!exit_code) {
    result.exit_code = -1;
    return fail(ErrorCode::kTimeout, BuildStatus::kTimeout,
                "build exceeded " + Fixed(timeout_seconds, 1) + "s");
  }
  result.exit_code = *exit_code;
  if (*exit_code != 0) {
    return fail(ErrorCode::kBuildFailed, BuildStatus::kBuildFailed,
                "exit " + std::to_string(*exit_code) + ": " + Tail(result.stderr_text, 10));
  }

  std::string pattern = (build_dir / project.artifact_glob).string();
  glob_t matches{};
  if (glob(pattern.c_str(), 0, nullptr, &matches) == 0) {
    for (size_t i = 0; i < matches.gl_pathc; ++i) {
      if (fs::is_regular_file(matches.gl_pathv[i], ec)) {
        result.binaries.push_back(matches.gl_pathv[i]);
      }
    }
  }
  globfree(&matches);
  std::sort(result.binaries.begin(), result.binaries.end());
  if (result.binaries.empty()) {
    return fail(ErrorCode::kArtifactMissing, BuildStatus::kBuildFailed,
                "nothing matches " + project.artifact_glob);
  }
  return result;
}

double CombineRatios(std::span<const std::pair<double, uint64_t>> ratios,
                     Weighting weighting) {
  if (ratios.empty()) return 0;
  double num = 0, den = 0;
  for (auto [ratio, functions] : ratios) {
    double w = weighting == Weighting::kPlain ? 1.0 : static_cast<double>(functions);
    num += w * ratio;
    den += w;
  }
  return den > 0 ? num / den : 0;
}

VariantResult EvaluateVariant(std::span<const BuildArtifacts> artifacts,
                              Weighting weighting) {
  VariantResult result;
  std::vector<std::string> causes;
  for (const BuildArtifacts& a : artifacts) {
    if (!a.work_dir.empty()) result.work_dirs.push_back(a.work_dir);
    if (a.status == BuildStatus::kOk) continue;
    if (a.status == BuildStatus::kTimeout || result.status == BuildStatus::kOk) {
      result.status = a.status;
    }
    causes.push_back(a.project + ": " + a.cause);
  }
  auto finish_failed = [&] {
    std::string cause;
    for (const std::string& c : causes) cause += (cause.empty() ? "" : "; ") + c;
    result.cause = cause;
    result.measurement.reset();
    return result;
  };
  if (artifacts.empty()) {
    result.status = BuildStatus::kBuildFailed;
    causes.push_back("no artifacts");
  }
  if (result.status != BuildStatus::kOk) return finish_failed();

  Measurement m;
  std::vector<std::pair<double, uint64_t>> ratios;
  std::vector<InlineRemark> remarks;
  for (const BuildArtifacts& a : artifacts) {
    m.compile_seconds += a.wall_seconds;
    std::vector<InlineRemark> parsed = ParseRemarkStream(a.stderr_text);
    remarks.insert(remarks.end(), parsed.begin(), parsed.end());
    for (const std::string& path : a.binaries) {
      try {
        std::vector<uint8_t> image = ReadBinaryFile(path);
        InliningReport report = ComputeInliningReport(image, path);
        m.total_functions += report.total_functions;
        m.inlined += report.inlined_functions;
        m.remaining += report.remaining_inlined;
        m.eliminated += report.eliminated_inlined;
        m.binary_bytes += image.size();
        ratios.push_back({report.inlining_ratio, report.total_functions});
      } catch (const Error& e) {
        result.status = BuildStatus::kBuildFailed;
        causes.push_back(a.project + ": " + fs::path(path).filename().string() + ": " +
                         e.what());
      }
    }
  }
  if (result.status != BuildStatus::kOk) return finish_failed();
  m.ratio = CombineRatios(ratios, weighting);
  result.measurement = m;
  result.remarks = Summarize(remarks);
  return result;
}

VariantEvaluator BuildingEvaluator(const SweepConfig& config, const std::string& work_root) {
  return [config, work_root](const FlagAssignment&, const std::vector<std::string>& flags) {
    std::vector<BuildArtifacts> artifacts;
    for (const ProjectSpec& project : config.projects) {
      artifacts.push_back(BuildVariant(project, flags, config.toolchain,
                                       config.per_build_timeout, work_root,
                                       config.force_debug_info));
    }
    VariantResult result = EvaluateVariant(artifacts, config.weighting);
    result.flags = flags;
    if (!config.keep_work_dirs) {
      std::error_code ec;
      for (const BuildArtifacts& a : artifacts) {
        if (!a.work_dir.empty()) fs::remove_all(a.work_dir, ec);
      }
    }
    return result;
  };
}

namespace {

// Owns the work root for one run; a generated root is removed afterwards
// unless the config keeps work directories.
class WorkRoot {
 public:
  explicit WorkRoot(const SweepConfig& config) {
    if (!config.work_root.empty()) {
      path_ = config.work_root;
      std::error_code ec;
      fs::create_directories(path_, ec);
    } else {
      path_ = MakeTempDir(fs::temp_directory_path(), "inlinescope");
      owned_ = !config.keep_work_dirs;
    }
  }
  ~WorkRoot() {
    std::error_code ec;
    if (owned_) fs::remove_all(path_, ec);
  }
  WorkRoot(const WorkRoot&) = delete;
  WorkRoot& operator=(const WorkRoot&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  bool owned_ = false;
};

VariantResult SafeEvaluate(const VariantEvaluator& evaluate, const FlagAssignment& a,
                           const std::vector<std::string>& flags) {
  VariantResult result;
  try {
    result = evaluate(a, flags);
  } catch (const std::exception& e) {
    result.status = BuildStatus::kBuildFailed;
    result.measurement.reset();
    result.cause = e.what();
  }
  result.flags = flags;
  if (result.status != BuildStatus::kOk) result.measurement.reset();
  return result;
}

}  // namespace

std::vector<VariantResult> RunSweep(const SweepConfig& config,
                                    const VariantEvaluator& evaluate) {
  std::vector<FlagAssignment> variants = EnumerateVariants(config);
  std::vector<VariantResult> results(variants.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < variants.size();) {
      results[i] = SafeEvaluate(evaluate, variants[i], VariantFlags(config, variants[i]));
      results[i].variant_index = i;
    }
  };
  size_t threads = std::min<size_t>(static_cast<size_t>(config.parallelism), variants.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return results;
}

std::vector<VariantResult> RunSweep(const SweepConfig& config) {
  WorkRoot root(config);
  return RunSweep(config, BuildingEvaluator(config, root.path()));
}

SearchResult SearchExtreme(const SweepConfig& config, int budget,
                           const VariantEvaluator& evaluate) {
  const size_t axes = config.axes.size();
  if (budget < 0 || static_cast<size_t>(budget) < axes + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "budget " + std::to_string(budget) + " is below axes + 1 = " +
                    std::to_string(axes + 1));
  }
  for (const FlagAxis& axis : config.axes) ValidateAxis(axis);

  std::vector<size_t> priority(axes);
  for (size_t i = 0; i < axes; ++i) priority[i] = i;
  std::stable_sort(priority.begin(), priority.end(), [&](size_t a, size_t b) {
    return AxisPriority(config.axes[a]) < AxisPriority(config.axes[b]);
  });
  std::vector<std::vector<size_t>> order;
  for (const FlagAxis& axis : config.axes) order.push_back(SearchOrder(axis));
  std::vector<size_t> cursor(axes, 0);

  SearchResult search;
  std::map<FlagAssignment, VariantResult> seen;
  int builds = 0;
  FlagAssignment incumbent;
  incumbent.choice.assign(axes, std::nullopt);
  std::optional<VariantResult> best;

  auto visit = [&](const FlagAssignment& candidate) {
    auto it = seen.find(candidate);
    VariantResult result;
    if (it != seen.end()) {
      result = it->second;
    } else {
      result = SafeEvaluate(evaluate, candidate, VariantFlags(config, candidate));
      ++builds;
      seen.emplace(candidate, result);
    }
    result.variant_index = search.trajectory.size();
    bool accepted = Improves(result, best);
    if (accepted) {
      incumbent = candidate;
      best = result;
    }
    search.trajectory.push_back({candidate, result, accepted});
  };

  visit(incumbent);
  bool moved = true;
  while (moved && builds < budget) {
    moved = false;
    for (size_t a : priority) {
      if (cursor[a] >= order[a].size()) continue;
      FlagAssignment candidate = incumbent;
      candidate.choice[a] = order[a][cursor[a]];
      if (!seen.contains(candidate) && builds >= budget) break;
      ++cursor[a];
      moved = true;
      visit(candidate);
    }
  }

  if (!best) {
    throw Error(ErrorCode::kNoSuccessfulBuild,
                "all " + std::to_string(search.trajectory.size()) + " variants failed");
  }
  search.best = incumbent;
  search.best_result = *best;
  return search;
}

SearchResult SearchExtreme(const SweepConfig& config, int budget) {
  WorkRoot root(config);
  return SearchExtreme(config, budget, BuildingEvaluator(config, root.path()));
}

std::string EmitReport(std::span<const VariantResult> results, const ReportOptions& options) {
  std::string out =
      "variant_index,flags,status,total_functions,inlined,remaining,eliminated,ratio,"
      "compile_seconds,binary_bytes\n";
  for (const VariantResult& r : results) {
    out += std::to_string(r.variant_index) + "," + CsvField(Join(r.flags, false)) + "," +
           std::string(BuildStatusName(r.status));
    if (r.status == BuildStatus::kOk && r.measurement) {
      const Measurement& m = *r.measurement;
      out += "," + std::to_string(m.total_functions) + "," + std::to_string(m.inlined) + "," +
             std::to_string(m.remaining) + "," + std::to_string(m.eliminated) + "," +
             Fixed(m.ratio, 4) + "," +
             (options.include_compile_seconds ? Fixed(m.compile_seconds, 3) : "") + "," +
             std::to_string(m.binary_bytes);
    } else {
      out += ",,,,,,,";
    }
    out += "\n";
  }
  return out;
}

std::vector<double> RatiosFromReport(std::string_view csv_text) {
  std::istringstream in{std::string(csv_text)};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kEmptyInput, "empty sweep report");
  std::vector<std::string> header = SplitCsvLine(line);
  auto column = [&header](std::string_view name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sweep report lacks a '" + std::string(name) + "' column");
    }
    return static_cast<size_t>(it - header.begin());
  };
  size_t status_col = column("status");
  size_t ratio_col = column("ratio");
  std::vector<double> ratios;
  for (size_t line_no = 2; std::getline(in, line); ++line_no) {
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sweep report line " + std::to_string(line_no) + ": wrong field count");
    }
    if (fields[status_col] != "Ok") continue;
    try {
      ratios.push_back(std::stod(fields[ratio_col]));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sweep report line " + std::to_string(line_no) + ": bad ratio");
    }
  }
  return ratios;
}

}  // namespace inlinescope
