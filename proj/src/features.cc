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

#include "inlinescope/features.h"

#include <algorithm>
#include <charconv>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "inlinescope/error.h"

namespace inlinescope {
namespace {

using Slots = std::array<FeatureSlot, kFeatureCount>;

constexpr std::string_view kBinaryRow = "__binary__";
constexpr std::string_view kIndirectSink = "<indirect>";

// ---------------------------------------------------------------------------
// Mnemonic registries.

const std::unordered_set<std::string_view> kX86Prefixes = {
    "rep",  "repz",   "repe",   "repnz", "repne", "lock",     "notrack",
    "bnd",  "cs",     "ds",     "es",    "fs",    "gs",       "ss",
    "data16", "addr32", "rex",  "rex.W", "xacquire", "xrelease",
};

const std::unordered_map<std::string_view, Category>& X86Table() {
  static const auto* table = [] {
    auto* t = new std::unordered_map<std::string_view, Category>;
    auto add = [t](Category c, std::initializer_list<std::string_view> names) {
      for (auto n : names) t->emplace(n, c);
    };
    add(Category::kDataTransfer,
        {"mov",   "movabs", "movzx", "movsx", "movsxd", "lea",   "push",
         "pop",   "xchg",   "bswap", "cbw",   "cwde",   "cdqe",  "cltq",
         "cqto",  "cltd",   "cwtl",  "cwd",   "cdq",    "cqo",   "movbe",
         "movnti", "pushf", "popf",  "pusha", "popa",   "lahf",  "sahf",
         "xlat",  "cmpxchg", "cmpxchg8b", "cmpxchg16b", "cmova", "cmovae",
         "cmovb", "cmovbe", "cmovc", "cmove", "cmovg",  "cmovge", "cmovl",
         "cmovle", "cmovna", "cmovnae", "cmovnb", "cmovnbe", "cmovnc",
         "cmovne", "cmovng", "cmovnge", "cmovnl", "cmovnle", "cmovno",
         "cmovnp", "cmovns", "cmovnz", "cmovo", "cmovp", "cmovpe", "cmovpo",
         "cmovs", "cmovz", "seta", "setae", "setb", "setbe", "setc", "sete",
         "setg", "setge", "setl", "setle", "setna", "setnae", "setnb",
         "setnbe", "setnc", "setne", "setng", "setnge", "setnl", "setnle",
         "setno", "setnp", "setns", "setnz", "seto", "setp", "setpe",
         "setpo", "sets", "setz"});
    add(Category::kArithmetic,
        {"add", "sub", "adc", "sbb", "inc", "dec", "neg", "mul", "imul", "div",
         "idiv", "xadd", "adcx", "adox", "mulx"});
    add(Category::kLogic,
        {"and", "or", "xor", "not", "andn", "bt", "bts", "btr", "btc", "bsf",
         "bsr", "tzcnt", "lzcnt", "popcnt", "blsi", "blsr", "blsmsk", "bzhi",
         "pdep", "pext"});
    add(Category::kShift,
        {"shl", "shr", "sar", "sal", "rol", "ror", "rcl", "rcr", "shld", "shrd",
         "shlx", "shrx", "sarx", "rorx"});
    add(Category::kCompare, {"cmp", "test"});
    add(Category::kControlTransfer,
        {"jmp", "ja", "jae", "jb", "jbe", "jc", "je", "jg", "jge", "jl", "jle",
         "jna", "jnae", "jnb", "jnbe", "jnc", "jne", "jng", "jnge", "jnl",
         "jnle", "jno", "jnp", "jns", "jnz", "jo", "jp", "jpe", "jpo", "js",
         "jz", "jcxz", "jecxz", "jrcxz", "loop", "loope", "loopne", "loopz",
         "loopnz", "ljmp"});
    add(Category::kCall, {"call", "lcall"});
    add(Category::kReturn, {"ret", "lret"});
    add(Category::kFloatingPoint,
        {"fld", "fst", "fstp", "fild", "fist", "fistp", "fisttp", "fadd",
         "faddp", "fiadd", "fsub", "fsubp", "fsubr", "fsubrp", "fisub", "fmul",
         "fmulp", "fimul", "fdiv", "fdivp", "fdivr", "fdivrp", "fidiv", "fchs",
         "fabs", "fsqrt", "fcom", "fcomp", "fcompp", "fucom", "fucomp",
         "fucompp", "fcomi", "fcomip", "fucomi", "fucomip", "fxch", "fldz",
         "fld1", "fldpi", "fnstcw", "fldcw", "fnstsw", "fwait", "fprem",
         "frndint", "fscale", "fsin", "fcos", "fptan", "fpatan", "fyl2x",
         "fxam", "ftst", "fninit", "fnclex", "fcmove", "fcmovne", "fcmovb",
         "fcmovbe", "fcmovnb", "fcmovnbe", "fcmovu", "fcmovnu", "addsd",
         "addss", "subsd", "subss", "mulsd", "mulss", "divsd", "divss",
         "sqrtsd", "sqrtss", "minsd", "minss", "maxsd", "maxss", "movsd",
         "movss", "ucomisd", "ucomiss", "comisd", "comiss", "cmpsd", "cmpss",
         "cvtsi2sd", "cvtsi2ss", "cvtsi2sdl", "cvtsi2sdq", "cvtsi2ssl",
         "cvtsi2ssq", "cvttsd2si", "cvttss2si", "cvtsd2si", "cvtss2si",
         "cvtsd2ss", "cvtss2sd", "roundsd", "roundss", "rcpss", "rsqrtss",
         "fmadd132sd", "fmadd213sd", "fmadd231sd", "fmadd132ss",
         "fmadd213ss", "fmadd231ss"});
    add(Category::kVector,
        {"movaps", "movups", "movapd", "movupd", "movdqa", "movdqu", "movd",
         "movhps", "movlps", "movhpd", "movlpd", "movhlps", "movlhps",
         "movmskps", "movmskpd", "movntdq", "movntps", "lddqu", "shufps",
         "shufpd", "unpcklps", "unpckhps", "unpcklpd", "unpckhpd", "emms",
         "addps", "addpd", "subps", "subpd", "mulps", "mulpd", "divps",
         "divpd", "sqrtps", "sqrtpd", "minps", "minpd", "maxps", "maxpd",
         "andps", "andpd", "andnps", "andnpd", "orps", "orpd", "xorps",
         "xorpd", "cmpps", "cmppd", "cvtdq2ps", "cvtps2dq", "cvttps2dq",
         "cvtdq2pd", "cvtpd2ps", "cvtps2pd", "cvttpd2dq", "blendps",
         "blendpd", "blendvps", "blendvpd", "insertps", "extractps",
         "vzeroupper", "vzeroall", "vbroadcastss", "vbroadcastsd",
         "vpbroadcastd", "vpbroadcastq", "vpbroadcastb", "vpbroadcastw",
         "vinserti128", "vextracti128", "vinsertf128", "vextractf128",
         "vperm2i128", "vperm2f128", "vpermq", "vpermd"});
    add(Category::kStringOp,
        {"movs", "movsb", "movsw", "movsl", "movsq", "stos", "stosb", "stosw",
         "stosl", "stosq", "stosd", "lods", "lodsb", "lodsw", "lodsl", "lodsq",
         "lodsd", "scas", "scasb", "scasw", "scasl", "scasq", "scasd", "cmps",
         "cmpsb", "cmpsw", "cmpsl", "cmpsq", "ins", "insb", "insw", "insl",
         "outs", "outsb", "outsw", "outsl"});
    add(Category::kMisc,
        {"nop", "endbr64", "endbr32", "hlt", "ud2", "ud1", "int3", "int",
         "into", "syscall", "sysenter", "cpuid", "rdtsc", "rdtscp", "pause",
         "lfence", "mfence", "sfence", "cld", "std", "clc", "stc", "cmc",
         "enter", "leave", "xgetbv", "prefetcht0", "prefetcht1", "prefetcht2",
         "prefetchnta", "prefetchw", "clflush", "rdrand", "rdseed", "wait",
         "iret", "iretq", "cli", "sti", "in", "out", "fnop"});
    return t;
  }();
  return *table;
}

// Vector integer ops share a leading 'p' (paddd, pxor, pshufb, ...).
bool IsPackedInteger(std::string_view m) {
  static const std::unordered_set<std::string_view> kNotVector = {
      "push", "pop", "pause", "popcnt", "pushf", "popf", "pusha", "popa",
      "pdep", "pext", "prefetcht0", "prefetcht1", "prefetcht2",
      "prefetchnta", "prefetchw"};
  return m.size() > 2 && m[0] == 'p' && !kNotVector.contains(m);
}

std::optional<Category> LookupX86(std::string_view m) {
  const auto& table = X86Table();
  if (auto it = table.find(m); it != table.end()) return it->second;
  if (IsPackedInteger(m)) return Category::kVector;
  return std::nullopt;
}

Category CategorizeX86(std::string_view mnemonic) {
  // Drop prefixes; a rep prefix forces the string category.
  bool rep = false;
  std::string_view m = mnemonic;
  while (true) {
    size_t space = m.find(' ');
    if (space == std::string_view::npos) break;
    std::string_view head = m.substr(0, space);
    if (!kX86Prefixes.contains(head)) break;
    rep |= head.starts_with("rep");
    m.remove_prefix(space + 1);
  }
  if (m.find(' ') != std::string_view::npos) return Category::kUnknown;
  if (m.empty()) return rep ? Category::kStringOp : Category::kUnknown;

  if (auto c = LookupX86(m)) {
    // "rep ret" and "rep nop" are padding idioms, not string operations.
    if (rep && *c != Category::kReturn && *c != Category::kMisc) {
      return Category::kStringOp;
    }
    return *c;
  }
  // movzbl, movswq, movslq: zero/sign extension.
  if (m.size() == 6 && (m.starts_with("movz") || m.starts_with("movs")) &&
      std::string_view("bwl").find(m[4]) != std::string_view::npos &&
      std::string_view("wlq").find(m[5]) != std::string_view::npos) {
    return Category::kDataTransfer;
  }
  // AVX: vaddsd -> addsd, vpxor -> pxor.
  if (m.size() > 2 && m[0] == 'v') {
    if (auto c = LookupX86(m.substr(1))) {
      if (*c == Category::kFloatingPoint || *c == Category::kVector) return *c;
    }
  }
  // AT&T operand-size suffix.
  char last = m.back();
  if (m.size() > 2 && (last == 'b' || last == 'w' || last == 'l' || last == 'q')) {
    if (auto c = LookupX86(m.substr(0, m.size() - 1))) {
      if (*c != Category::kStringOp) return *c;
    }
  }
  return Category::kUnknown;
}

const std::unordered_map<std::string_view, Category>& ArmTable() {
  static const auto* table = [] {
    auto* t = new std::unordered_map<std::string_view, Category>;
    auto add = [t](Category c, std::initializer_list<std::string_view> names) {
      for (auto n : names) t->emplace(n, c);
    };
    add(Category::kDataTransfer,
        {"mov", "movw", "movt", "ldr", "ldrb", "ldrh", "ldrsb", "ldrsh",
         "ldrd", "ldrex", "str", "strb", "strh", "strd", "strex", "ldm",
         "ldmia", "ldmfd", "ldmdb", "stm", "stmia", "stmdb", "stmfd", "push",
         "pop", "adr", "sxtb", "sxth", "uxtb", "uxth", "rev", "rev16", "mrs",
         "msr"});
    add(Category::kArithmetic,
        {"add", "adc", "sub", "sbc", "rsb", "rsc", "mul", "mla", "mls", "umull",
         "umlal", "smull", "smlal", "sdiv", "udiv", "qadd", "qsub"});
    add(Category::kLogic, {"and", "orr", "eor", "bic", "mvn", "clz", "orn",
                           "ubfx", "sbfx", "bfi", "bfc", "rbit"});
    add(Category::kShift, {"lsl", "lsr", "asr", "ror", "rrx"});
    add(Category::kCompare, {"cmp", "cmn", "tst", "teq"});
    add(Category::kControlTransfer, {"b", "bx", "cbz", "cbnz", "tbb", "tbh"});
    add(Category::kCall, {"bl", "blx"});
    add(Category::kMisc, {"nop", "svc", "bkpt", "udf", "dmb", "dsb", "isb",
                          "wfi", "wfe", "sev", "it", "ite", "itt", "itee",
                          "itte", "ittt", "iteee", "cpsid", "cpsie"});
    return t;
  }();
  return *table;
}

constexpr std::string_view kArmConditions[] = {
    "eq", "ne", "cs", "cc", "mi", "pl", "vs", "vc", "hi",
    "ls", "ge", "lt", "gt", "le", "al", "hs", "lo"};

bool StripArmCondition(std::string_view& m) {
  if (m.size() < 3) return false;
  std::string_view tail = m.substr(m.size() - 2);
  for (std::string_view c : kArmConditions) {
    if (tail == c) {
      m.remove_suffix(2);
      return true;
    }
  }
  return false;
}

Category CategorizeArm(std::string_view mnemonic) {
  std::string_view m = mnemonic;
  if (size_t dot = m.find(".w"); dot != std::string_view::npos && dot + 2 == m.size()) {
    m.remove_suffix(2);
  } else if (dot = m.find(".n"); dot != std::string_view::npos && dot + 2 == m.size()) {
    m.remove_suffix(2);
  }
  if (m.size() > 1 && m[0] == 'v') {
    // VFP/NEON: scalar data types are floating point, the rest vector.
    bool scalar = m.find(".f32") != std::string_view::npos ||
                  m.find(".f64") != std::string_view::npos;
    bool neon = m.find(".i") != std::string_view::npos ||
                m.find(".u") != std::string_view::npos ||
                m.find(".s") != std::string_view::npos ||
                m.find(".8") != std::string_view::npos;
    if (scalar || m.starts_with("vmov") || m.starts_with("vldr") ||
        m.starts_with("vstr") || m.starts_with("vcvt") || m.starts_with("vmrs") ||
        m.starts_with("vpush") || m.starts_with("vpop")) {
      return neon && !scalar ? Category::kVector : Category::kFloatingPoint;
    }
    return Category::kVector;
  }
  const auto& table = ArmTable();
  auto lookup = [&table](std::string_view s) -> std::optional<Category> {
    if (auto it = table.find(s); it != table.end()) return it->second;
    return std::nullopt;
  };
  if (auto c = lookup(m)) return *c;
  std::string_view stripped = m;
  if (StripArmCondition(stripped)) {
    if (auto c = lookup(stripped)) return *c;
  }
  // Flag-setting forms: adds, subs, movs, lsls, and conditional ones.
  for (std::string_view s : {m, stripped}) {
    if (s.size() > 1 && s.back() == 's') {
      std::string_view base = s.substr(0, s.size() - 1);
      if (auto c = lookup(base)) return *c;
      if (StripArmCondition(base)) {
        if (auto c = lookup(base)) return *c;
      }
    }
  }
  return Category::kUnknown;
}

// ---------------------------------------------------------------------------
// Listing parsing.

std::string_view Trim(std::string_view s) {
  size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::optional<uint64_t> ParseHex(std::string_view s) {
  if (s.empty()) return std::nullopt;
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

[[noreturn]] void SyntaxError(size_t line_no, std::string_view line,
                              std::string_view what) {
  throw Error(ErrorCode::kListingSyntax,
              "line " + std::to_string(line_no) + ": " + std::string(what) +
                  ": '" + std::string(line) + "'");
}

// Hex byte groups ("55", "48 89 e5", "e92d4800") -> byte count, or nullopt.
std::optional<uint32_t> CountBytes(std::string_view field) {
  uint32_t bytes = 0;
  std::istringstream words{std::string(field)};
  std::string word;
  while (words >> word) {
    if (word.size() % 2 != 0 || !ParseHex(word)) return std::nullopt;
    bytes += static_cast<uint32_t>(word.size() / 2);
  }
  return bytes;
}

bool IsNoReturn(std::string_view symbol) {
  static const std::unordered_set<std::string_view> kNames = {
      "abort",        "exit",          "_exit",         "_Exit",
      "quick_exit",   "__stack_chk_fail", "__assert_fail", "__cxa_throw",
      "__cxa_rethrow", "_Unwind_Resume", "__cxa_bad_cast", "longjmp",
      "siglongjmp",   "pthread_exit",  "__fortify_fail", "err",
      "errx",         "__chk_fail",    "_ZSt9terminatev",
  };
  symbol = symbol.substr(0, symbol.find('@'));
  return kNames.contains(symbol);
}

void DecodeControlFlow(Instruction& insn, Arch arch) {
  std::string_view ops = insn.operand_text;
  // Strip the objdump annotation comment ("# 4030 <x>" on x86, "; ..." on ARM).
  size_t comment = ops.find(arch == Arch::kX86_64 ? " #" : ";");
  if (comment != std::string_view::npos) ops = Trim(ops.substr(0, comment));

  static const std::regex kTarget(R"((?:^|[\s,])([0-9a-fA-F]+) <([^>]+)>$)");
  std::match_results<std::string_view::const_iterator> m;
  std::optional<uint64_t> target;
  std::string symbol;
  if (std::regex_search(ops.begin(), ops.end(), m, kTarget)) {
    target = ParseHex(std::string_view(&*m[1].first, m[1].length()));
    symbol = m[2].str();
  }

  Category category = CategorizeInstruction(insn.mnemonic, arch);
  std::string_view mn = insn.mnemonic;
  if (arch == Arch::kX86_64) {
    while (mn.find(' ') != std::string_view::npos) mn.remove_prefix(mn.find(' ') + 1);
    insn.is_call = category == Category::kCall;
    insn.is_return = category == Category::kReturn;
    insn.is_jump = category == Category::kControlTransfer;
    insn.is_conditional = insn.is_jump && !mn.starts_with("jmp") && mn != "ljmp";
    insn.is_indirect = (insn.is_call || insn.is_jump) && ops.starts_with("*");
  } else {
    bool writes_pc = ops.find("pc}") != std::string_view::npos ||
                     ops.starts_with("pc,");
    bool bx_lr = (mn.starts_with("bx")) && ops == "lr";
    insn.is_return = bx_lr || ((mn.starts_with("pop") || mn.starts_with("ldm")) &&
                               writes_pc);
    insn.is_call = category == Category::kCall;
    insn.is_jump = !insn.is_return && category == Category::kControlTransfer;
    std::string_view base = mn.substr(0, mn.find('.'));
    insn.is_conditional =
        insn.is_jump && (base.starts_with("cb") ||
                         (base.size() == 3 && base[0] == 'b' && base != "blx") ||
                         (base.size() == 4 && base.starts_with("bx")));
    insn.is_indirect = (insn.is_call || insn.is_jump) && !target;
  }
  if ((insn.is_call || insn.is_jump) && !insn.is_indirect) {
    insn.explicit_branch_target = target;
    insn.target_symbol = symbol;
  }
}

// ---------------------------------------------------------------------------
// Features.

std::string FormatNumber(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsvLine(std::string_view line, size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature CSV line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(std::move(current));
  return fields;
}

void FillRatios(std::array<double, kFeatureCount>& v) {
  for (const FeatureSlot& slot : FeatureRegistry()) {
    if (slot.aggregation != Aggregation::kWeightedMean) continue;
    double den = v[slot.denominator - 1];
    v[slot.index - 1] = den > 0 ? v[slot.numerator - 1] / den : 0.0;
  }
}

}  // namespace

uint64_t ListingFunction::end_address() const {
  if (instructions.empty()) return start_address;
  const Instruction& last = instructions.back();
  return last.address + last.byte_size;
}

std::string_view CategoryName(Category category) {
  switch (category) {
    case Category::kDataTransfer:
      return "data_transfer";
    case Category::kArithmetic:
      return "arithmetic";
    case Category::kLogic:
      return "logic";
    case Category::kShift:
      return "shift";
    case Category::kCompare:
      return "compare";
    case Category::kControlTransfer:
      return "control_transfer";
    case Category::kCall:
      return "call";
    case Category::kReturn:
      return "return";
    case Category::kFloatingPoint:
      return "floating_point";
    case Category::kVector:
      return "vector";
    case Category::kStringOp:
      return "string_op";
    case Category::kMisc:
      return "misc";
    case Category::kUnknown:
      return "unknown";
  }
  return "unknown";
}

Category CategorizeInstruction(std::string_view mnemonic, Arch arch) {
  std::string lowered(Trim(mnemonic));
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return arch == Arch::kArm32 ? CategorizeArm(lowered) : CategorizeX86(lowered);
}

Listing ParseListing(std::string_view text) {
  static const std::regex kHeader(R"(^([^\s:]+) <(.+)>:$)");
  Listing listing;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line == "..." || line.starts_with("Disassembly of section")) {
      continue;
    }
    if (line.find("file format ") != std::string_view::npos) {
      if (line.find("arm") != std::string_view::npos) listing.arch = Arch::kArm32;
      continue;
    }

    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_match(line.begin(), line.end(), m, kHeader)) {
      auto address = ParseHex(std::string_view(&*m[1].first, m[1].length()));
      if (!address) SyntaxError(line_no, line, "bad function address");
      listing.functions.push_back({m[2].str(), *address, {}});
      continue;
    }

    size_t colon = line.find(':');
    if (colon == std::string_view::npos || raw.find('\t') == std::string_view::npos) {
      SyntaxError(line_no, line, "unrecognized line");
    }
    auto address = ParseHex(line.substr(0, colon));
    if (!address) SyntaxError(line_no, line, "bad instruction address");
    if (listing.functions.empty()) {
      SyntaxError(line_no, line, "instruction outside a function");
    }
    std::string_view rest = line.substr(colon + 1);
    if (!rest.starts_with('\t')) SyntaxError(line_no, line, "missing tab after address");
    rest.remove_prefix(1);
    size_t tab = rest.find('\t');
    std::string_view bytes_field = rest.substr(0, tab);
    auto bytes = CountBytes(bytes_field);
    if (!bytes) SyntaxError(line_no, line, "bad instruction bytes");
    ListingFunction& function = listing.functions.back();
    std::string_view insn_text =
        tab == std::string_view::npos ? std::string_view() : Trim(rest.substr(tab + 1));
    if (insn_text.empty()) {
      // Continuation of a long instruction's byte dump.
      if (function.instructions.empty()) {
        SyntaxError(line_no, line, "byte continuation without an instruction");
      }
      function.instructions.back().byte_size += *bytes;
      continue;
    }
    if (!function.instructions.empty() &&
        *address <= function.instructions.back().address) {
      SyntaxError(line_no, line, "instruction addresses must increase");
    }

    Instruction insn;
    insn.address = *address;
    insn.byte_size = *bytes;
    // Mnemonic words up to the first operand; x86 prefixes join the mnemonic.
    std::string_view words = insn_text;
    std::string mnemonic;
    while (true) {
      size_t split = words.find_first_of(" \t");
      std::string_view word = words.substr(0, split);
      if (!mnemonic.empty()) mnemonic += ' ';
      mnemonic += word;
      words = split == std::string_view::npos ? std::string_view()
                                              : Trim(words.substr(split));
      if (listing.arch == Arch::kArm32 || !kX86Prefixes.contains(word) ||
          words.empty()) {
        break;
      }
    }
    insn.mnemonic = std::move(mnemonic);
    insn.operand_text = std::string(words);
    DecodeControlFlow(insn, listing.arch);
    function.instructions.push_back(std::move(insn));
  }
  return listing;
}

Cfg BuildCfg(const ListingFunction& function, Arch arch) {
  Cfg cfg;
  const auto& insns = function.instructions;
  if (insns.empty()) return cfg;
  const uint64_t begin = function.start_address;
  const uint64_t end = function.end_address();

  std::unordered_map<uint64_t, size_t> index_of;
  for (size_t i = 0; i < insns.size(); ++i) index_of[insns[i].address] = i;

  auto ends_flow = [arch](const Instruction& insn) {
    if (insn.is_return) return true;
    if (insn.is_jump && !insn.is_conditional) return true;
    if (insn.is_call && IsNoReturn(insn.target_symbol)) return true;
    Category c = CategorizeInstruction(insn.mnemonic, arch);
    std::string_view m = insn.mnemonic;
    return c == Category::kMisc && (m == "hlt" || m == "ud2" || m == "udf");
  };
  auto intra = [&](const Instruction& insn) {
    return insn.is_jump && insn.explicit_branch_target &&
           *insn.explicit_branch_target >= begin && *insn.explicit_branch_target < end;
  };

  std::vector<bool> leader(insns.size(), false);
  leader[0] = true;
  for (size_t i = 0; i < insns.size(); ++i) {
    const Instruction& insn = insns[i];
    if (intra(insn)) {
      auto it = index_of.find(*insn.explicit_branch_target);
      if (it != index_of.end()) leader[it->second] = true;
    }
    if ((insn.is_jump || ends_flow(insn)) && i + 1 < insns.size()) {
      leader[i + 1] = true;
    }
  }

  std::vector<size_t> block_of(insns.size());
  for (size_t i = 0; i < insns.size(); ++i) {
    if (leader[i]) cfg.blocks.push_back({i, i, {}, {}});
    cfg.blocks.back().last = i + 1;
    block_of[i] = cfg.blocks.size() - 1;
  }

  auto add_edge = [&cfg](size_t from, size_t to) {
    auto& succ = cfg.blocks[from].successors;
    if (std::find(succ.begin(), succ.end(), to) != succ.end()) return;
    succ.push_back(to);
    cfg.blocks[to].predecessors.push_back(from);
    ++cfg.edge_count;
  };

  for (size_t b = 0; b < cfg.blocks.size(); ++b) {
    const Instruction& tail = insns[cfg.blocks[b].last - 1];
    bool has_next = b + 1 < cfg.blocks.size();
    if (intra(tail)) {
      auto it = index_of.find(*tail.explicit_branch_target);
      if (it == index_of.end()) {
        std::ostringstream msg;
        msg << "DanglingTarget: " << function.name << " 0x" << std::hex
            << tail.address << " -> 0x" << *tail.explicit_branch_target;
        cfg.warnings.push_back(msg.str());
      } else {
        add_edge(b, block_of[it->second]);
      }
    }
    if (tail.is_conditional || !ends_flow(tail)) {
      if (has_next) add_edge(b, b + 1);
    }
  }
  return cfg;
}

Cfg MakeCfg(const std::vector<size_t>& block_sizes,
            const std::vector<std::pair<size_t, size_t>>& edges) {
  Cfg cfg;
  size_t first = 0;
  for (size_t size : block_sizes) {
    cfg.blocks.push_back({first, first + size, {}, {}});
    first += size;
  }
  for (auto [from, to] : edges) {
    if (from >= cfg.blocks.size() || to >= cfg.blocks.size()) {
      throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
    auto& succ = cfg.blocks[from].successors;
    if (std::find(succ.begin(), succ.end(), to) != succ.end()) continue;
    succ.push_back(to);
    cfg.blocks[to].predecessors.push_back(from);
    ++cfg.edge_count;
  }
  return cfg;
}

std::vector<std::optional<size_t>> ImmediateDominators(const Cfg& cfg) {
  const size_t n = cfg.blocks.size();
  std::vector<std::optional<size_t>> idom(n);
  if (n == 0) return idom;

  // Reverse postorder from the entry (iterative DFS).
  std::vector<size_t> postorder;
  std::vector<int> state(n, 0);
  std::vector<std::pair<size_t, size_t>> stack = {{0, 0}};
  state[0] = 1;
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const auto& succ = cfg.blocks[node].successors;
    if (next < succ.size()) {
      size_t s = succ[next++];
      if (state[s] == 0) {
        state[s] = 1;
        stack.push_back({s, 0});
      }
    } else {
      postorder.push_back(node);
      stack.pop_back();
    }
  }
  std::vector<size_t> rpo_index(n, SIZE_MAX);
  for (size_t i = 0; i < postorder.size(); ++i) {
    rpo_index[postorder[i]] = postorder.size() - 1 - i;
  }
  std::vector<size_t> rpo(postorder.rbegin(), postorder.rend());

  // Cooper, Harvey and Kennedy.
  std::vector<size_t> dom(n, SIZE_MAX);
  dom[0] = 0;
  auto intersect = [&](size_t a, size_t b) {
    while (a != b) {
      while (rpo_index[a] > rpo_index[b]) a = dom[a];
      while (rpo_index[b] > rpo_index[a]) b = dom[b];
    }
    return a;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 1; i < rpo.size(); ++i) {
      size_t b = rpo[i];
      size_t candidate = SIZE_MAX;
      for (size_t p : cfg.blocks[b].predecessors) {
        if (dom[p] == SIZE_MAX) continue;
        candidate = candidate == SIZE_MAX ? p : intersect(p, candidate);
      }
      if (candidate != dom[b]) {
        dom[b] = candidate;
        changed = true;
      }
    }
  }
  for (size_t b = 1; b < n; ++b) {
    if (dom[b] != SIZE_MAX) idom[b] = dom[b];
  }
  return idom;
}

std::vector<Loop> DetectLoops(const Cfg& cfg) {
  const size_t n = cfg.blocks.size();
  auto idom = ImmediateDominators(cfg);
  auto reachable = [&](size_t b) { return b == 0 || idom[b].has_value(); };
  auto dominates = [&](size_t a, size_t b) {
    while (true) {
      if (a == b) return true;
      if (b == 0 || !idom[b]) return false;
      b = *idom[b];
    }
  };

  std::map<size_t, Loop> by_header;
  for (size_t t = 0; t < n; ++t) {
    if (!reachable(t)) continue;
    for (size_t h : cfg.blocks[t].successors) {
      if (!dominates(h, t)) continue;
      Loop& loop = by_header[h];
      loop.header = h;
      ++loop.back_edges;
      std::set<size_t> body(loop.blocks.begin(), loop.blocks.end());
      body.insert(h);
      std::vector<size_t> work;
      if (body.insert(t).second) work.push_back(t);
      while (!work.empty()) {
        size_t b = work.back();
        work.pop_back();
        for (size_t p : cfg.blocks[b].predecessors) {
          if (reachable(p) && body.insert(p).second) work.push_back(p);
        }
      }
      loop.blocks.assign(body.begin(), body.end());
    }
  }

  std::vector<Loop> loops;
  for (auto& [header, loop] : by_header) {
    loop.size = 0;
    for (size_t b : loop.blocks) loop.size += cfg.blocks[b].size();
    loops.push_back(std::move(loop));
  }
  for (Loop& loop : loops) {
    loop.depth = 0;
    for (const Loop& outer : loops) {
      if (std::binary_search(outer.blocks.begin(), outer.blocks.end(), loop.header)) {
        ++loop.depth;
      }
    }
  }
  return loops;
}

const std::array<FeatureSlot, kFeatureCount>& FeatureRegistry() {
  using G = SlotGroup;
  using A = Aggregation;
  using C = Category;
  static const Slots slots = {{
      {1, "inst_total", G::kInstruction, A::kSum, {}, false, "Number of instructions."},
      {2, "inst_data_transfer", G::kInstruction, A::kSum, C::kDataTransfer, false, "Data-transfer instructions (mov, lea, push, pop, cmov, set, extensions)."},
      {3, "inst_bytes", G::kInstruction, A::kSum, {}, false, "Code size in bytes."},
      {4, "inst_unknown", G::kInstruction, A::kSum, C::kUnknown, true, "Number of unknown instructions: mnemonics outside the registry."},
      {5, "inst_logic", G::kInstruction, A::kSum, C::kLogic, false, "Bitwise logic and bit-manipulation instructions."},
      {6, "inst_arithmetic", G::kInstruction, A::kSum, C::kArithmetic, true, "Integer arithmetic instructions."},
      {7, "inst_shift", G::kInstruction, A::kSum, C::kShift, false, "Shift and rotate instructions."},
      {8, "inst_arith_muldiv", G::kInstruction, A::kSum, {}, true, "Integer multiply and divide instructions (a subset of slot 6)."},
      {9, "inst_compare", G::kInstruction, A::kSum, C::kCompare, false, "Compare and test instructions."},
      {10, "inst_control_transfer", G::kInstruction, A::kSum, C::kControlTransfer, false, "Jumps and conditional branches."},
      {11, "inst_call", G::kInstruction, A::kSum, C::kCall, false, "Call instructions."},
      {12, "inst_return", G::kInstruction, A::kSum, C::kReturn, false, "Return instructions."},
      {13, "inst_floating_point", G::kInstruction, A::kSum, C::kFloatingPoint, false, "x87 and scalar SSE/VFP floating-point instructions."},
      {14, "inst_vector", G::kInstruction, A::kSum, C::kVector, false, "Packed SIMD instructions."},
      {15, "inst_string_op", G::kInstruction, A::kSum, C::kStringOp, false, "String instructions, including rep-prefixed forms."},
      {16, "inst_misc", G::kInstruction, A::kSum, C::kMisc, false, "Padding, fences, system and other known instructions."},
      {17, "cond_branches", G::kInstruction, A::kSum, {}, false, "Conditional branches."},
      {18, "uncond_jumps", G::kInstruction, A::kSum, {}, false, "Unconditional jumps, direct or indirect."},
      {19, "indirect_calls", G::kInstruction, A::kSum, {}, false, "Calls through a register or memory operand."},
      {20, "direct_calls", G::kInstruction, A::kSum, {}, false, "Calls with an explicit target address."},
      {21, "indirect_jumps", G::kInstruction, A::kSum, {}, false, "Jumps through a register or memory operand."},
      {22, "stack_ops", G::kInstruction, A::kSum, {}, false, "push and pop instructions."},
      {23, "inst_with_immediate", G::kInstruction, A::kSum, {}, false, "Instructions with an immediate operand ($ or #)."},
      {24, "inst_with_memory", G::kInstruction, A::kSum, {}, false, "Instructions with a memory operand."},
      {25, "ratio_data_transfer", G::kInstruction, A::kWeightedMean, {}, false, "Slot 2 / slot 1.", 2, 1},
      {26, "ratio_arithmetic", G::kInstruction, A::kWeightedMean, {}, false, "Slot 6 / slot 1.", 6, 1},
      {27, "ratio_logic", G::kInstruction, A::kWeightedMean, {}, false, "Slot 5 / slot 1.", 5, 1},
      {28, "ratio_shift", G::kInstruction, A::kWeightedMean, {}, false, "Slot 7 / slot 1.", 7, 1},
      {29, "ratio_compare", G::kInstruction, A::kWeightedMean, {}, false, "Slot 9 / slot 1.", 9, 1},
      {30, "ratio_control_transfer", G::kInstruction, A::kWeightedMean, {}, false, "Slot 10 / slot 1.", 10, 1},
      {31, "ratio_call", G::kInstruction, A::kWeightedMean, {}, false, "Slot 11 / slot 1.", 11, 1},
      {32, "ratio_floating_point", G::kInstruction, A::kWeightedMean, {}, false, "Slot 13 / slot 1.", 13, 1},
      {33, "ratio_vector", G::kInstruction, A::kWeightedMean, {}, false, "Slot 14 / slot 1.", 14, 1},
      {34, "ratio_string_op", G::kInstruction, A::kWeightedMean, {}, false, "Slot 15 / slot 1.", 15, 1},
      {35, "ratio_unknown", G::kInstruction, A::kWeightedMean, {}, false, "Slot 4 / slot 1.", 4, 1},
      {36, "mean_inst_bytes", G::kInstruction, A::kWeightedMean, {}, false, "Slot 3 / slot 1.", 3, 1},
      {37, "num_blocks", G::kCfg, A::kSum, {}, false, "Basic blocks."},
      {38, "num_loops", G::kCfg, A::kSum, {}, true, "Natural loops (one per header)."},
      {39, "num_innermost_loops", G::kCfg, A::kSum, {}, true, "Loops that contain no other loop header."},
      {40, "num_edges", G::kCfg, A::kSum, {}, false, "CFG edges."},
      {41, "num_back_edges", G::kCfg, A::kSum, {}, false, "Edges whose target dominates their source."},
      {42, "max_loop_depth", G::kCfg, A::kMax, {}, false, "Deepest loop nesting level."},
      {43, "cyclomatic_complexity", G::kCfg, A::kSum, {}, false, "edges - blocks + 2 (0 for an empty function)."},
      {44, "num_exit_blocks", G::kCfg, A::kSum, {}, false, "Reachable blocks without successors."},
      {45, "num_unreachable_blocks", G::kCfg, A::kSum, {}, false, "Blocks not reachable from the entry."},
      {46, "total_loop_size", G::kCfg, A::kSum, {}, true, "Sum of loop sizes in instructions (nested loops count again)."},
      {47, "mean_block_size", G::kCfg, A::kWeightedMean, {}, false, "Instructions per block.", 1, 37},
      {48, "max_loop_size", G::kCfg, A::kMax, {}, true, "Largest loop size in instructions."},
      {49, "mean_loop_size", G::kCfg, A::kWeightedMean, {}, true, "Slot 46 / slot 38 (0 without loops).", 46, 38},
      {50, "max_block_size", G::kCfg, A::kMax, {}, false, "Largest block in instructions."},
      {51, "mean_out_degree", G::kCfg, A::kWeightedMean, {}, false, "Slot 40 / slot 37.", 40, 37},
      {52, "max_out_degree", G::kCfg, A::kMax, {}, false, "Largest block out-degree."},
      {53, "max_in_degree", G::kCfg, A::kMax, {}, false, "Largest block in-degree."},
      {54, "num_branch_blocks", G::kCfg, A::kSum, {}, false, "Blocks with two or more successors."},
      {55, "num_loop_exit_edges", G::kCfg, A::kSum, {}, false, "Edges leaving a loop body, summed over loops."},
      {56, "loop_instructions", G::kCfg, A::kSum, {}, false, "Instructions inside at least one loop, counted once."},
      {57, "num_callees", G::kCallGraph, A::kSum, {}, false, "Distinct callees, including external ones and the indirect sink."},
      {58, "num_callers", G::kCallGraph, A::kSum, {}, false, "Distinct functions in the listing that call this one."},
      {59, "num_external_callees", G::kCallGraph, A::kSum, {}, false, "Distinct callees not defined in the listing."},
      {60, "is_recursive", G::kCallGraph, A::kSum, {}, false, "1 if the function calls itself directly."},
      {61, "num_tail_calls", G::kCallGraph, A::kSum, {}, false, "Direct jumps to another function."},
      {62, "cg_degree", G::kCallGraph, A::kSum, {}, false, "Slot 57 + slot 58."},
  }};
  return slots;
}

std::string_view SlotGroupName(SlotGroup group) {
  switch (group) {
    case SlotGroup::kInstruction:
      return "instruction";
    case SlotGroup::kCfg:
      return "cfg";
    case SlotGroup::kCallGraph:
      return "cg";
  }
  return "";
}

FeatureTable ExtractFeatures(const Listing& listing,
                             std::string_view registry_version) {
  if (registry_version != kRegistryVersion) {
    throw Error(ErrorCode::kUnknownRegistryVersion,
                "unknown feature registry version '" +
                    std::string(registry_version) + "'");
  }
  FeatureTable table;
  const Arch arch = listing.arch;

  std::unordered_map<uint64_t, std::string> by_address;
  for (const auto& f : listing.functions) by_address.emplace(f.start_address, f.name);

  // Call graph over the whole listing.
  std::map<std::string, std::set<std::string>> callees;
  std::map<std::string, std::set<std::string>> callers;
  std::map<std::string, int> tail_calls;
  for (const auto& f : listing.functions) {
    auto& out = callees[f.name];
    for (const Instruction& insn : f.instructions) {
      bool external_jump = insn.is_jump && !insn.is_conditional &&
                           insn.explicit_branch_target &&
                           (*insn.explicit_branch_target < f.start_address ||
                            *insn.explicit_branch_target >= f.end_address());
      if (!insn.is_call && !external_jump) continue;
      if (external_jump) ++tail_calls[f.name];
      std::string callee;
      if (insn.is_indirect || !insn.explicit_branch_target) {
        callee = kIndirectSink;
      } else if (auto it = by_address.find(*insn.explicit_branch_target);
                 it != by_address.end()) {
        callee = it->second;
        callers[callee].insert(f.name);
      } else {
        callee = insn.target_symbol.substr(0, insn.target_symbol.find('+'));
        if (callee.empty()) callee = kIndirectSink;
      }
      out.insert(callee);
    }
  }
  std::set<std::string> defined;
  for (const auto& f : listing.functions) defined.insert(f.name);

  for (const auto& f : listing.functions) {
    FeatureVector vec;
    auto& v = vec.values;
    auto set = [&v](int slot, double value) { v[slot - 1] = value; };
    auto add = [&v](int slot, double value) { v[slot - 1] += value; };

    std::array<double, kCategoryCount> cats{};
    for (const Instruction& insn : f.instructions) {
      Category c = CategorizeInstruction(insn.mnemonic, arch);
      if (insn.is_return) c = Category::kReturn;
      if (insn.is_call) c = Category::kCall;
      cats[static_cast<int>(c)] += 1;
      add(1, 1);
      add(3, insn.byte_size);
      std::string_view m = insn.mnemonic;
      std::string_view base = m.substr(m.rfind(' ') == std::string_view::npos ? 0 : m.rfind(' ') + 1);
      if (c == Category::kArithmetic &&
          (base.starts_with("mul") || base.starts_with("imul") ||
           base.starts_with("div") || base.starts_with("idiv") ||
           base.starts_with("sdiv") || base.starts_with("udiv") ||
           base.starts_with("mla") || base.starts_with("mls") ||
           base.starts_with("umul") || base.starts_with("smul") ||
           base.starts_with("umla") || base.starts_with("smla"))) {
        add(8, 1);
      }
      if (insn.is_jump && insn.is_conditional) add(17, 1);
      if (insn.is_jump && !insn.is_conditional) add(18, 1);
      if (insn.is_call && insn.is_indirect) add(19, 1);
      if (insn.is_call && !insn.is_indirect) add(20, 1);
      if (insn.is_jump && insn.is_indirect) add(21, 1);
      if (base.starts_with("push") || base.starts_with("pop")) add(22, 1);
      std::string_view ops = insn.operand_text;
      if (size_t k = ops.find(" #"); arch == Arch::kX86_64 && k != std::string_view::npos) {
        ops = ops.substr(0, k);
      }
      if (ops.find(arch == Arch::kX86_64 ? '$' : '#') != std::string_view::npos) add(23, 1);
      if (!insn.is_call && !insn.is_jump &&
          (ops.find('(') != std::string_view::npos || ops.find('[') != std::string_view::npos)) {
        add(24, 1);
      }
    }
    for (const FeatureSlot& slot : FeatureRegistry()) {
      if (slot.category) set(slot.index, cats[static_cast<int>(*slot.category)]);
    }

    Cfg cfg = BuildCfg(f, arch);
    for (auto& w : cfg.warnings) table.warnings.push_back(w);
    auto loops = DetectLoops(cfg);
    auto idom = ImmediateDominators(cfg);
    const double blocks = static_cast<double>(cfg.blocks.size());
    set(37, blocks);
    set(38, static_cast<double>(loops.size()));
    set(40, static_cast<double>(cfg.edge_count));
    set(43, cfg.blocks.empty() ? 0.0 : static_cast<double>(cfg.edge_count) - blocks + 2);
    std::vector<bool> in_loop(cfg.blocks.size(), false);
    for (const Loop& loop : loops) {
      bool innermost = std::none_of(loops.begin(), loops.end(), [&](const Loop& other) {
        return other.header != loop.header &&
               std::binary_search(loop.blocks.begin(), loop.blocks.end(), other.header);
      });
      add(39, innermost ? 1 : 0);
      add(41, static_cast<double>(loop.back_edges));
      set(42, std::max(v[41], static_cast<double>(loop.depth)));
      add(46, static_cast<double>(loop.size));
      set(48, std::max(v[47], static_cast<double>(loop.size)));
      for (size_t b : loop.blocks) {
        in_loop[b] = true;
        for (size_t s : cfg.blocks[b].successors) {
          if (!std::binary_search(loop.blocks.begin(), loop.blocks.end(), s)) add(55, 1);
        }
      }
    }
    double loop_insns = 0;
    for (size_t b = 0; b < cfg.blocks.size(); ++b) {
      const BasicBlock& block = cfg.blocks[b];
      bool reachable = b == 0 || idom[b].has_value();
      if (reachable && block.successors.empty()) add(44, 1);
      if (!reachable) add(45, 1);
      set(50, std::max(v[49], static_cast<double>(block.size())));
      set(52, std::max(v[51], static_cast<double>(block.successors.size())));
      set(53, std::max(v[52], static_cast<double>(block.predecessors.size())));
      if (block.successors.size() >= 2) add(54, 1);
      if (in_loop[b]) loop_insns += static_cast<double>(block.size());
    }
    set(56, loop_insns);

    const auto& out = callees[f.name];
    double external = 0;
    for (const auto& c : out) {
      if (c != kIndirectSink && !defined.contains(c)) external += 1;
    }
    set(57, static_cast<double>(out.size()));
    set(58, static_cast<double>(callers[f.name].size()));
    set(59, external);
    set(60, out.contains(f.name) ? 1 : 0);
    set(61, tail_calls[f.name]);
    set(62, v[56] + v[57]);
    FillRatios(v);

    auto [it, inserted] = table.functions.emplace(f.name, vec);
    if (!inserted) {
      table.warnings.push_back("duplicate function name in listing: " + f.name);
    }
  }

  // Binary aggregate: sums and maxima, then ratios of the summed slots.
  FeatureVector& agg = table.binary;
  for (const FeatureSlot& slot : FeatureRegistry()) {
    double value = 0;
    for (const auto& [name, vec] : table.functions) {
      double x = vec.values[slot.index - 1];
      if (slot.aggregation == Aggregation::kSum) value += x;
      if (slot.aggregation == Aggregation::kMax) value = std::max(value, x);
    }
    agg.values[slot.index - 1] = value;
  }
  FillRatios(agg.values);
  return table;
}

std::string FeaturesToCsv(const FeatureTable& table) {
  std::string out = "# registry_version=" + table.registry_version + "\n";
  out += "function";
  for (int i = 1; i <= kFeatureCount; ++i) out += ",f" + std::to_string(i);
  out += "\n";
  auto row = [&out](std::string_view name, const FeatureVector& vec) {
    out += CsvField(name);
    for (double x : vec.values) out += "," + FormatNumber(x);
    out += "\n";
  };
  for (const auto& [name, vec] : table.functions) row(name, vec);
  row(kBinaryRow, table.binary);
  return out;
}

FeatureTable FeaturesFromCsv(std::string_view text) {
  FeatureTable table;
  size_t line_no = 0;
  size_t pos = 0;
  bool header_seen = false;
  bool version_seen = false;
  bool binary_seen = false;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.starts_with("#")) {
      constexpr std::string_view kKey = "# registry_version=";
      if (line.starts_with(kKey)) {
        table.registry_version = std::string(line.substr(kKey.size()));
        if (table.registry_version != kRegistryVersion) {
          throw Error(ErrorCode::kUnknownRegistryVersion,
                      "unknown feature registry version '" +
                          table.registry_version + "'");
        }
        version_seen = true;
      }
      continue;
    }
    auto fields = SplitCsvLine(line, line_no);
    if (!header_seen) {
      if (fields.size() != kFeatureCount + 1 || fields[0] != "function") {
        throw Error(ErrorCode::kInvalidArgument,
                    "feature CSV header must be function,f1..f62");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != kFeatureCount + 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "feature CSV line " + std::to_string(line_no) + ": expected " +
                      std::to_string(kFeatureCount + 1) + " fields");
    }
    FeatureVector vec;
    vec.registry_version = table.registry_version;
    for (int i = 0; i < kFeatureCount; ++i) {
      const std::string& field = fields[i + 1];
      double value = 0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "feature CSV line " + std::to_string(line_no) +
                        ": bad number '" + field + "'");
      }
      vec.values[i] = value;
    }
    if (fields[0] == kBinaryRow) {
      table.binary = vec;
      binary_seen = true;
    } else {
      table.functions[fields[0]] = vec;
    }
  }
  if (!version_seen) {
    throw Error(ErrorCode::kUnknownRegistryVersion,
                "feature CSV lacks a registry_version line");
  }
  if (!header_seen || !binary_seen) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature CSV needs a header and a __binary__ row");
  }
  table.binary.registry_version = table.registry_version;
  return table;
}

std::string RegistryMarkdownRows() {
  auto aggregation = [](Aggregation a) -> std::string_view {
    switch (a) {
      case Aggregation::kSum:
        return "sum";
      case Aggregation::kWeightedMean:
        return "weighted mean";
      case Aggregation::kMax:
        return "max";
    }
    return "";
  };
  std::string out;
  for (const FeatureSlot& slot : FeatureRegistry()) {
    out += "| " + std::to_string(slot.index) + " | " + std::string(slot.name) +
           " | " + std::string(SlotGroupName(slot.group)) + " | " +
           std::string(aggregation(slot.aggregation)) + " | " +
           (slot.paper_anchored ? "yes" : "no") + " | " +
           std::string(slot.definition) + " |\n";
  }
  return out;
}

}  // namespace inlinescope
