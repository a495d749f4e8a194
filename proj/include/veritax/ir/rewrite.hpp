// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_IR_REWRITE_HPP_
#define VERITAX_IR_REWRITE_HPP_

#include <string>
#include <unordered_map>
#include <vector>

#include "veritax/ir/term.hpp"

namespace veritax::ir {

/// A destructor rule lhs -> rhs. Only subterm-convergent rules are accepted
/// on the engine path: rhs is a subterm of lhs or a constant, which makes
/// rewriting terminating and confluent and intruder deduction decidable.
struct RewriteRule {
  TermId lhs = kNoTerm;
  TermId rhs = kNoTerm;
};

/// Reasons a rule is rejected by `check_rule`. Kept structured so the
/// validator can phrase diagnostics (and point DH/XOR-style theories at the
/// generated-model pass-through instead of the engine).
inline std::string check_rule(const TermArena& arena, const RewriteRule& r) {
  if (arena.kind(r.lhs) != TermKind::kApp) {
    return "rule left-hand side must be a destructor application";
  }
  const FunctionSpec& head = arena.fn_spec(r.lhs);
  if (head.kind != FnKind::kDestructor) {
    return "rule head '" + head.name +
           "' must be declared as a destructor; equations between "
           "constructors (e.g. Diffie-Hellman or XOR laws) are not "
           "supported by the engine and are only passed through to "
           "generated ProVerif/Tamarin models";
  }
  bool rhs_is_constant = arena.kind(r.rhs) == TermKind::kApp &&
                         arena.fn_spec(r.rhs).kind == FnKind::kConstant;
  bool rhs_is_name = arena.kind(r.rhs) == TermKind::kName;
  if (!rhs_is_constant && !rhs_is_name && !arena.contains(r.lhs, r.rhs)) {
    return "rule is not subterm-convergent: right-hand side must be a "
           "subterm of the left-hand side or a constant; algebraic theories "
           "like Diffie-Hellman or XOR are not supported by the engine and "
           "are only passed through to generated ProVerif/Tamarin models";
  }
  std::vector<TermId> lhs_vars, rhs_vars;
  arena.collect_vars(r.lhs, lhs_vars);
  arena.collect_vars(r.rhs, rhs_vars);
  for (TermId v : rhs_vars) {
    bool found = false;
    for (TermId u : lhs_vars) found |= u == v;
    if (!found) {
      return "variable '" + arena.symbol(v) +
             "' occurs on the right-hand side only";
    }
  }
  return "";
}

/// Rules indexed by head symbol, plus a normalization cache. One Rewriter
/// per arena; terms are already hash-consed so the cache is exact.
class Rewriter {
 public:
  Rewriter(TermArena& arena, std::vector<RewriteRule> rules)
      : arena_(arena), rules_(std::move(rules)) {
    for (size_t i = 0; i < rules_.size(); ++i) {
      by_head_[arena_.fn(rules_[i].lhs)].push_back(i);
    }
  }

  const std::vector<RewriteRule>& rules() const { return rules_; }

  /// Fixpoint normalization. Idempotent, and by subterm-convergence the
  /// result is independent of rule application order.
  TermId normalize(TermId t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    TermId result = t;
    if (arena_.kind(t) == TermKind::kApp) {
      auto as = arena_.args(t);
      std::vector<TermId> norm(as.begin(), as.end());
      bool changed = false;
      for (auto& a : norm) {
        TermId na = normalize(a);
        changed |= na != a;
        a = na;
      }
      result = changed ? arena_.app(arena_.fn(t), norm) : t;
      result = reduce_top(result);
    }
    cache_.emplace(t, result);
    return result;
  }

  /// Applies at most one top-level rule to a term whose arguments are
  /// already normal, then renormalizes the (smaller) result.
  TermId reduce_top(TermId t) {
    auto bucket = by_head_.find(arena_.fn(t));
    if (bucket == by_head_.end()) return t;
    for (size_t idx : bucket->second) {
      const RewriteRule& r = rules_[idx];
      std::unordered_map<TermId, TermId> binding;
      if (arena_.match(r.lhs, t, binding)) {
        return normalize(arena_.substitute(r.rhs, binding));
      }
    }
    return t;
  }

  /// True if a top-level rule fires on `t` (arguments assumed normal).
  bool reduces_at_top(TermId t) const {
    if (arena_.kind(t) != TermKind::kApp) return false;
    auto bucket = by_head_.find(arena_.fn(t));
    if (bucket == by_head_.end()) return false;
    for (size_t idx : bucket->second) {
      std::unordered_map<TermId, TermId> binding;
      if (arena_.match(rules_[idx].lhs, t, binding)) return true;
    }
    return false;
  }

  TermArena& arena() { return arena_; }

 private:
  TermArena& arena_;
  std::vector<RewriteRule> rules_;
  std::unordered_map<FnId, std::vector<size_t>> by_head_;
  std::unordered_map<TermId, TermId> cache_;
};

/// Free-function form matching the operation contract; builds a throwaway
/// rewriter. Hot paths keep a Rewriter around for its cache.
inline TermId normalize(TermArena& arena, TermId t,
                        const std::vector<RewriteRule>& theory) {
  Rewriter rw(arena, theory);
  return rw.normalize(t);
}

// ---------------------------------------------------------------------------
// Built-in theory: symmetric and asymmetric encryption, signatures with
// verification and message recovery, hashing, and pairing. Covers every
// pattern used by the shipped fixtures; user primitives extend it.
// ---------------------------------------------------------------------------

inline constexpr const char* kTrueConst = "ok";

inline std::shared_ptr<Signature> builtin_signature() {
  auto sig = std::make_shared<Signature>();
  sig->add({"pair", 2, FnKind::kConstructor, false});
  sig->add({"fst", 1, FnKind::kDestructor, false});
  sig->add({"snd", 1, FnKind::kDestructor, false});
  sig->add({"senc", 2, FnKind::kConstructor, false});
  sig->add({"sdec", 2, FnKind::kDestructor, false});
  sig->add({"aenc", 2, FnKind::kConstructor, false});
  sig->add({"adec", 2, FnKind::kDestructor, false});
  sig->add({"pk", 1, FnKind::kConstructor, false});
  sig->add({"sign", 2, FnKind::kConstructor, false});
  sig->add({"verify", 2, FnKind::kDestructor, false});
  sig->add({"getmsg", 1, FnKind::kDestructor, false});
  sig->add({"h", 1, FnKind::kConstructor, false});
  sig->add({"ltk", 1, FnKind::kConstructor, true});
  sig->add({kTrueConst, 0, FnKind::kConstant, false});
  return sig;
}

inline std::vector<RewriteRule> builtin_rules(TermArena& a) {
  TermId x = a.var("x");
  TermId y = a.var("y");
  std::vector<RewriteRule> rules;
  auto rule = [&](TermId lhs, TermId rhs) { rules.push_back({lhs, rhs}); };
  rule(a.app("fst", {a.app("pair", {x, y})}), x);
  rule(a.app("snd", {a.app("pair", {x, y})}), y);
  rule(a.app("sdec", {a.app("senc", {x, y}), y}), x);
  rule(a.app("adec", {a.app("aenc", {x, a.app("pk", {y})}), y}), x);
  rule(a.app("verify", {a.app("sign", {x, y}), a.app("pk", {y})}),
       a.app(kTrueConst, {}));
  rule(a.app("getmsg", {a.app("sign", {x, y})}), x);
  return rules;
}

}  // namespace veritax::ir

#endif  // VERITAX_IR_REWRITE_HPP_
