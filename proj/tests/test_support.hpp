// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_TESTS_TEST_SUPPORT_HPP_
#define VERITAX_TESTS_TEST_SUPPORT_HPP_

#include <random>
#include <string>
#include <vector>

#include "veritax/ir/rewrite.hpp"
#include "veritax/ir/term.hpp"

namespace vtest {

using veritax::ir::FnKind;
using veritax::ir::RewriteRule;
using veritax::ir::TermArena;
using veritax::ir::TermId;
using veritax::ir::TermKind;

inline std::shared_ptr<TermArena> builtin_arena() {
  return std::make_shared<TermArena>(veritax::ir::builtin_signature());
}

/// Random ground term over the builtin constructors and a small atom pool.
inline TermId random_term(TermArena& a, std::mt19937_64& rng, int max_depth,
                          bool allow_destructors = true) {
  static const std::vector<std::string> atoms = {"na", "nb", "k1", "k2",
                                                 "ida", "idb"};
  std::uniform_int_distribution<int> coin(0, 99);
  if (max_depth == 0 || coin(rng) < 35) {
    std::uniform_int_distribution<size_t> pick(0, atoms.size() - 1);
    return a.name(atoms[pick(rng)]);
  }
  std::vector<std::string> fns = {"pair", "senc", "aenc", "sign", "h", "pk"};
  if (allow_destructors) {
    fns.insert(fns.end(), {"fst", "snd", "sdec", "adec", "getmsg"});
  }
  std::uniform_int_distribution<size_t> pick(0, fns.size() - 1);
  const std::string& fn = fns[pick(rng)];
  int arity = a.signature().fn(a.signature().find(fn)).arity;
  std::vector<TermId> args;
  for (int i = 0; i < arity; ++i) {
    args.push_back(random_term(a, rng, max_depth - 1, allow_destructors));
  }
  return a.app(fn, args);
}

/// Test-only oracle: applies rules at random positions in random order
/// until no redex remains. Confluence means the result never depends on
/// the choices taken.
inline TermId chaotic_normalize(TermArena& a, TermId t,
                                const std::vector<RewriteRule>& rules,
                                std::mt19937_64& rng) {
  struct Redex {
    std::vector<int> path;
    size_t rule;
  };
  auto subterm_at = [&](TermId root, const std::vector<int>& path) {
    TermId cur = root;
    for (int step : path) cur = a.args(cur)[static_cast<size_t>(step)];
    return cur;
  };
  std::function<TermId(TermId, const std::vector<int>&, size_t, TermId)>
      replace = [&](TermId root, const std::vector<int>& path, size_t idx,
                    TermId repl) -> TermId {
    if (idx == path.size()) return repl;
    auto as = a.args(root);
    std::vector<TermId> args(as.begin(), as.end());
    args[static_cast<size_t>(path[idx])] =
        replace(args[static_cast<size_t>(path[idx])], path, idx + 1, repl);
    return a.app(a.fn(root), args);
  };
  for (int guard = 0; guard < 10000; ++guard) {
    std::vector<Redex> redexes;
    std::function<void(TermId, std::vector<int>&)> scan =
        [&](TermId cur, std::vector<int>& path) {
          for (size_t r = 0; r < rules.size(); ++r) {
            std::unordered_map<TermId, TermId> binding;
            if (a.match(rules[r].lhs, cur, binding)) {
              redexes.push_back({path, r});
            }
          }
          if (a.kind(cur) == TermKind::kApp) {
            auto as = a.args(cur);
            for (size_t i = 0; i < as.size(); ++i) {
              path.push_back(static_cast<int>(i));
              scan(as[i], path);
              path.pop_back();
            }
          }
        };
    std::vector<int> path;
    scan(t, path);
    if (redexes.empty()) return t;
    std::uniform_int_distribution<size_t> pick(0, redexes.size() - 1);
    const Redex& chosen = redexes[pick(rng)];
    TermId sub = subterm_at(t, chosen.path);
    std::unordered_map<TermId, TermId> binding;
    a.match(rules[chosen.rule].lhs, sub, binding);
    TermId reduced = a.substitute(rules[chosen.rule].rhs, binding);
    t = replace(t, chosen.path, 0, reduced);
  }
  throw std::runtime_error("chaotic_normalize did not terminate");
}

}  // namespace vtest

#endif  // VERITAX_TESTS_TEST_SUPPORT_HPP_
