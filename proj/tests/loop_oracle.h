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
// Natural loops straight from the definitions: d dominates n iff n is
// unreachable from the entry once d is removed; t -> h is a back edge iff h
// dominates t; the loop of h is h plus everything that reaches a back-edge
// source without passing through h. Quadratic and then some, which is fine
// for small graphs.

#ifndef INLINESCOPE_TESTS_LOOP_ORACLE_H_
#define INLINESCOPE_TESTS_LOOP_ORACLE_H_

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "inlinescope/features.h"

namespace inlinescope::testing {

inline std::vector<bool> ReachableAvoiding(const Cfg& cfg, size_t avoid) {
  std::vector<bool> seen(cfg.blocks.size(), false);
  if (cfg.blocks.empty() || avoid == 0) return seen;
  std::vector<size_t> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    size_t b = stack.back();
    stack.pop_back();
    for (size_t s : cfg.blocks[b].successors) {
      if (s != avoid && !seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    }
  }
  return seen;
}

inline std::vector<Loop> BruteForceLoops(const Cfg& cfg) {
  const size_t n = cfg.blocks.size();
  const size_t kNone = n + 1;
  std::vector<bool> reachable = ReachableAvoiding(cfg, kNone);
  auto dominates = [&](size_t d, size_t x) {
    if (d == x) return true;
    return !ReachableAvoiding(cfg, d)[x];
  };
  std::map<size_t, std::set<size_t>> bodies;
  std::map<size_t, size_t> back_edges;
  for (size_t t = 0; t < n; ++t) {
    if (!reachable[t]) continue;
    for (size_t h : cfg.blocks[t].successors) {
      if (!dominates(h, t)) continue;
      ++back_edges[h];
      std::set<size_t>& body = bodies[h];
      body.insert(h);
      std::vector<size_t> stack;
      if (body.insert(t).second) stack.push_back(t);
      while (!stack.empty()) {
        size_t b = stack.back();
        stack.pop_back();
        for (size_t p : cfg.blocks[b].predecessors) {
          if (reachable[p] && body.insert(p).second) stack.push_back(p);
        }
      }
    }
  }
  std::vector<Loop> loops;
  for (const auto& [header, body] : bodies) {
    Loop loop;
    loop.header = header;
    loop.blocks.assign(body.begin(), body.end());
    loop.back_edges = back_edges[header];
    loop.size = 0;
    for (size_t b : body) loop.size += cfg.blocks[b].size();
    loop.depth = 0;
    for (const auto& [other, other_body] : bodies) loop.depth += other_body.contains(header);
    loops.push_back(loop);
  }
  return loops;
}

}  // namespace inlinescope::testing

#endif  // INLINESCOPE_TESTS_LOOP_ORACLE_H_
