#!/usr/bin/env python3
# Copyright 2026 The InlineScope Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the parity fixtures under fixtures/parity.

For every snippet NAME.c (headers "// flags: ..." and "// site: A -> B") this
writes NAME.site.json, a call-site description derived from clang's IR, and
NAME.stderr, the remark output of compiling the snippet. manifest.json lists
the cases.

Attributes and linkage come from the unoptimized IR so that level-implied
attributes (optnone at -O0, optsize/minsize at -Os/-Oz) stay out of the
description; the simulator adds those itself. Body counts come from the
callee as the optimizer leaves it with inlining disabled, using the inliner's
notion of free instructions.
"""

import json
import os
import re
import subprocess
import sys

CC = os.environ.get("INLINESCOPE_CC", "clang-14")
REMARK_FLAGS = ["-Rpass=inline", "-Rpass-missed=inline",
                "-Rpass-analysis=inline"]
BODY_FLAGS = ["-fno-unroll-loops", "-fno-vectorize", "-fno-slp-vectorize",
              "-mllvm", "-inline-threshold=-100000"]

ATTRS = {
    "alwaysinline": "AlwaysInline",
    "inlinehint": "InlineHint",
    "noinline": "NoInline",
    "optnone": "OptNone",
    "naked": "Naked",
    "minsize": "MinSize",
    "optsize": "OptSize",
    "noduplicate": "NoDuplicate",
}
IGNORED_INTRINSICS = ("llvm.dbg.", "llvm.lifetime.", "llvm.assume",
                      "llvm.experimental.noalias.scope.decl")
FREE_OPS = {"phi", "bitcast", "ptrtoint", "inttoptr", "trunc", "zext",
            "freeze"}


def header(text, key):
    m = re.search(r"^// %s: (.*)$" % key, text, re.M)
    if not m:
        sys.exit("missing '// %s:' header" % key)
    return m.group(1).strip()


def ir(src, flags):
    return subprocess.run([CC] + flags + ["-g0", "-S", "-emit-llvm", src,
                                          "-o", "-"],
                          check=True, capture_output=True, text=True).stdout


def functions(text):
    out = {}
    for m in re.finditer(r"^define (.*?)@([\w.]+)\((.*?)\)(.*?)\{\n(.*?)^\}",
                         text, re.M | re.S):
        out[m.group(2)] = {"prefix": m.group(1), "params": m.group(3),
                           "suffix": m.group(4), "body": m.group(5)}
    return out


def attr_groups(text):
    return {m.group(1): m.group(2).split()
            for m in re.finditer(r"^attributes #(\d+) = \{ (.*) \}$", text,
                                 re.M)}


def fn_attrs(fn, groups):
    words = []
    for ref in re.findall(r"#(\d+)", fn["suffix"]):
        words += groups.get(ref, [])
    words += fn["suffix"].split()
    return words


def linkage(prefix):
    words = prefix.split()
    if "internal" in words:
        return "Internal"
    if "private" in words:
        return "Private"
    if any(w in words for w in ("weak", "linkonce", "weak_odr",
                                "linkonce_odr", "extern_weak")):
        return "Interposable"
    return "External"


def body_summary(name, body):
    counts = {"instruction_count": 0, "simplified_away_count": 0,
              "internal_call_count": 0, "intrinsic_count": 0,
              "vector_instruction_count": 0, "has_complex_branching": False,
              "indirect_to_direct_conversions": 0, "byval_value_args": 0}
    flags = {"recursive": False, "indirect_call": False,
             "indirect_branch": False, "dynamic_alloca": False}
    seen_return = False
    first_block = True
    for raw in body.splitlines():
        line = raw.split(";")[0].strip()
        if not line:
            continue
        if re.match(r"^[\w.]+:$", line):
            first_block = False
            continue
        rhs = line.split(" = ", 1)[1] if " = " in line else line
        op = rhs.split()[0]
        if op in ("tail", "musttail", "notail"):
            op = rhs.split()[1]
        callee = None
        if op in ("call", "invoke"):
            m = re.search(r"@([\w.]+)\(", rhs)
            callee = m.group(1) if m else None
            if callee and callee.startswith(IGNORED_INTRINSICS):
                continue
        counts["instruction_count"] += 1
        if "<" in rhs and re.search(r"<\d+ x ", rhs):
            counts["vector_instruction_count"] += 1
        free = False
        if op in FREE_OPS:
            free = True
        elif op == "ret":
            free = not seen_return
            seen_return = True
        elif op == "br":
            free = not rhs.startswith("br i1 %")
        elif op == "alloca":
            free = first_block and not re.search(r", i\d+ %", rhs)
            flags["dynamic_alloca"] |= not free
        elif op == "getelementptr":
            free = not re.search(r", i\d+ %", rhs)
        elif op == "switch":
            counts["has_complex_branching"] = True
        elif op == "indirectbr":
            flags["indirect_branch"] = True
        elif op in ("call", "invoke"):
            if callee is None:
                flags["indirect_call"] = True
            elif callee.startswith("llvm."):
                counts["intrinsic_count"] += 1
            else:
                counts["internal_call_count"] += 1
                flags["recursive"] |= callee == name
        if free:
            counts["simplified_away_count"] += 1
    return counts, flags


def describe(src, flags, caller, callee):
    plain = ir(src, ["-O2", "-Xclang", "-disable-llvm-passes"])
    groups = attr_groups(plain)
    fns = functions(plain)
    opt_fns = functions(ir(src, flags + BODY_FLAGS))
    callee_attr_words = fn_attrs(fns[callee], groups)
    counts, body_flags = body_summary(callee, opt_fns[callee]["body"])
    uses = len(re.findall(r"@%s\(" % re.escape(callee),
                          "".join(f["body"] for f in opt_fns.values())))
    site = {
        "callee_attrs": sorted(ATTRS[w] for w in callee_attr_words
                               if w in ATTRS),
        "caller_attrs": sorted(ATTRS[w] for w in fn_attrs(fns[caller], groups)
                               if w in ATTRS),
        "callee_linkage": linkage(fns[callee]["prefix"]),
        "callee_is_variadic": "..." in fns[callee]["params"],
        "callee_is_recursive": body_flags["recursive"],
        "callee_returns_twice": "returns_twice" in callee_attr_words,
        "callee_has_indirect_branch": body_flags["indirect_branch"],
        "callee_has_dynamic_alloca": body_flags["dynamic_alloca"],
        "call_is_indirect": False,
        "is_last_call_to_static": (linkage(fns[callee]["prefix"]) == "Internal"
                                   and uses == 1),
        "hotness": "Cold" if "cold" in callee_attr_words else "Neutral",
        "body_summary": counts,
    }
    return site


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    parity = os.path.join(root, "fixtures", "parity")
    os.chdir(parity)
    manifest = []
    for src in sorted(f for f in os.listdir(".") if f.endswith(".c")):
        name = src[:-2]
        text = open(src).read()
        flags = header(text, "flags").split()
        caller, callee = [s.strip() for s in header(text, "site").split("->")]
        site = describe(src, flags, caller, callee)
        with open(name + ".site.json", "w") as f:
            json.dump(site, f, indent=2, sort_keys=True)
            f.write("\n")
        run = subprocess.run([CC] + flags + REMARK_FLAGS +
                             ["-g0", "-c", src, "-o", os.devnull],
                             check=True, capture_output=True, text=True)
        with open(name + ".stderr", "w") as f:
            f.write(run.stderr)
        level = next(f for f in flags if re.fullmatch(r"-O[0-3sz]", f))[1:]
        params = {}
        m = re.search(r"-inline-threshold=(\d+)", " ".join(flags))
        if m:
            params["inline_threshold"] = int(m.group(1))
        manifest.append({"name": name, "flags": flags, "opt_level": level,
                         "caller": caller, "callee": callee,
                         "params": params})
    with open("manifest.json", "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
