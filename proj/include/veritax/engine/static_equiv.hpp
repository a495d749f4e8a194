// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_ENGINE_STATIC_EQUIV_HPP_
#define VERITAX_ENGINE_STATIC_EQUIV_HPP_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "veritax/engine/knowledge.hpp"
#include "veritax/ir/rewrite.hpp"
#include "veritax/ir/term.hpp"

namespace veritax::dy {

/// A distinguishing test between two frames: either a pair of recipes with
/// equal results in one frame and unequal in the other, or one recipe whose
/// top destructor reduces in one frame only. Recipes are terms over the
/// handle variables @1..@n; replaying one substitutes the frame terms for
/// the handles and normalizes.
struct DistinguishingTest {
  enum class Kind { kEqualityMismatch, kReducibilityMismatch };
  Kind kind = Kind::kEqualityMismatch;
  ir::TermId recipe_a = ir::kNoTerm;
  ir::TermId recipe_b = ir::kNoTerm;
};

inline ir::TermId apply_recipe(ir::TermArena& a, ir::Rewriter& rw,
                               ir::TermId recipe,
                               const std::vector<ir::TermId>& frame) {
  std::unordered_map<ir::TermId, ir::TermId> sub;
  for (size_t i = 0; i < frame.size(); ++i) {
    sub.emplace(a.var("@" + std::to_string(i + 1)), frame[i]);
  }
  return rw.normalize(a.substitute(recipe, sub));
}

/// Confirms that a witness separates the frames; used by the engine to
/// re-check every violation it reports.
inline bool witness_distinguishes(ir::TermArena& a, ir::Rewriter& rw,
                                  const DistinguishingTest& w,
                                  const std::vector<ir::TermId>& f1,
                                  const std::vector<ir::TermId>& f2) {
  if (w.kind == DistinguishingTest::Kind::kEqualityMismatch) {
    bool eq1 = apply_recipe(a, rw, w.recipe_a, f1) ==
               apply_recipe(a, rw, w.recipe_b, f1);
    bool eq2 = apply_recipe(a, rw, w.recipe_a, f2) ==
               apply_recipe(a, rw, w.recipe_b, f2);
    return eq1 != eq2;
  }
  std::unordered_map<ir::TermId, ir::TermId> sub1, sub2;
  for (size_t i = 0; i < f1.size(); ++i) {
    sub1.emplace(a.var("@" + std::to_string(i + 1)), f1[i]);
    sub2.emplace(a.var("@" + std::to_string(i + 1)), f2[i]);
  }
  ir::TermId raw1 = a.substitute(w.recipe_a, sub1);
  ir::TermId raw2 = a.substitute(w.recipe_a, sub2);
  // Normalize arguments, then see whether the head reduces on one side only.
  auto top_reduces = [&](ir::TermId raw) {
    if (a.kind(raw) != ir::TermKind::kApp) return false;
    auto args = a.args(raw);
    std::vector<ir::TermId> norm(args.begin(), args.end());
    for (auto& t : norm) t = rw.normalize(t);
    ir::TermId rebuilt = a.app(a.fn(raw), norm);
    return rw.normalize(rebuilt) != rebuilt;
  };
  return top_reduces(raw1) != top_reduces(raw2);
}

struct StaticEquivResult {
  bool equivalent = true;
  std::optional<DistinguishingTest> witness;
};

/// Bounded static equivalence of two ground, normalized frames of equal
/// length. Recipes are terms of nesting depth <= depth over frame handles,
/// public constants, and public names occurring in either frame. The frames
/// are inequivalent iff some recipe pair evaluates equal on one side and
/// unequal on the other, or some recipe's top destructor reduces on one
/// side only.
///
/// Enumeration is pruned in two theory-sound ways: recipes sharing a value
/// pair are interchangeable in any surrounding context (evaluation is
/// compositional), and by subterm locality a composed value can only take
/// part in a distinguishing equality when it collides with a subterm of a
/// frame value, so only those representatives seed deeper recipes.
class StaticEquivalence {
 public:
  StaticEquivalence(ir::TermArena& arena, ir::Rewriter& rewriter)
      : a_(arena), rw_(rewriter) {}

  StaticEquivResult check(const std::vector<ir::TermId>& frame1,
                          const std::vector<ir::TermId>& frame2, int depth) {
    if (frame1.size() != frame2.size()) {
      throw std::invalid_argument("frames must have equal length");
    }
    result_ = StaticEquivResult{};
    reps_.clear();
    by_pair_.clear();
    by_v1_.clear();
    by_v2_.clear();

    std::unordered_set<ir::TermId> closure1 = subterm_closure(frame1);
    std::unordered_set<ir::TermId> closure2 = subterm_closure(frame2);

    for (size_t i = 0; i < frame1.size(); ++i) {
      consider(rw_.normalize(frame1[i]), rw_.normalize(frame2[i]),
               a_.var("@" + std::to_string(i + 1)), 0, closure1, closure2);
      if (!result_.equivalent) return result_;
    }
    for (ir::TermId leaf : public_leaves(frame1, frame2)) {
      consider(leaf, leaf, leaf, 0, closure1, closure2);
      if (!result_.equivalent) return result_;
    }

    const auto& fns = a_.signature().functions();
    for (int level = 1; level <= depth; ++level) {
      size_t fixed = reps_.size();
      if (fixed == 0) break;
      for (ir::FnId fn = 0; fn < fns.size(); ++fn) {
        const ir::FunctionSpec& spec = fns[fn];
        if (spec.is_private || spec.arity == 0) continue;
        std::vector<size_t> idx(static_cast<size_t>(spec.arity), 0);
        while (true) {
          bool has_new = false;
          for (size_t k : idx) has_new |= reps_[k].level == level - 1;
          if (has_new) {
            std::vector<ir::TermId> args1, args2, recipe_args;
            for (size_t k = 0; k < idx.size(); ++k) {
              args1.push_back(reps_[idx[k]].v1);
              args2.push_back(reps_[idx[k]].v2);
              recipe_args.push_back(reps_[idx[k]].recipe);
            }
            ir::TermId recipe = a_.app(fn, recipe_args);
            ir::TermId raw1 = a_.app(fn, args1);
            ir::TermId raw2 = a_.app(fn, args2);
            ir::TermId v1 = rw_.normalize(raw1);
            ir::TermId v2 = rw_.normalize(raw2);
            if (spec.kind == ir::FnKind::kDestructor) {
              bool red1 = v1 != raw1;
              bool red2 = v2 != raw2;
              if (red1 != red2) {
                result_.equivalent = false;
                result_.witness = DistinguishingTest{
                    DistinguishingTest::Kind::kReducibilityMismatch, recipe,
                    recipe};
                return result_;
              }
              // A stuck destructor term is injective in its arguments, so
              // it can never create a fresh distinguishing equality.
              if (red1) {
                consider(v1, v2, recipe, level, closure1, closure2);
              }
            } else {
              consider(v1, v2, recipe, level, closure1, closure2);
            }
            if (!result_.equivalent) return result_;
          }
          size_t k = 0;
          for (; k < idx.size(); ++k) {
            if (++idx[k] < fixed) break;
            idx[k] = 0;
          }
          if (k == idx.size()) break;
        }
      }
    }
    return result_;
  }

 private:
  struct Rep {
    ir::TermId v1, v2;
    ir::TermId recipe;
    int level;
  };

  /// Records a value pair: checks it against both equality indexes, then
  /// retains it as a building block when it is frame-relevant.
  void consider(ir::TermId v1, ir::TermId v2, ir::TermId recipe, int level,
                const std::unordered_set<ir::TermId>& closure1,
                const std::unordered_set<ir::TermId>& closure2) {
    auto key = std::make_pair(v1, v2);
    if (by_pair_.count(key)) return;
    auto it1 = by_v1_.find(v1);
    if (it1 != by_v1_.end() && it1->second.first != v2) {
      result_.equivalent = false;
      result_.witness =
          DistinguishingTest{DistinguishingTest::Kind::kEqualityMismatch,
                             it1->second.second, recipe};
      return;
    }
    auto it2 = by_v2_.find(v2);
    if (it2 != by_v2_.end() && it2->second.first != v1) {
      result_.equivalent = false;
      result_.witness =
          DistinguishingTest{DistinguishingTest::Kind::kEqualityMismatch,
                             it2->second.second, recipe};
      return;
    }
    by_pair_.insert(key);
    if (it1 == by_v1_.end()) by_v1_.emplace(v1, std::make_pair(v2, recipe));
    if (it2 == by_v2_.end()) by_v2_.emplace(v2, std::make_pair(v1, recipe));
    bool relevant =
        level == 0 || closure1.count(v1) > 0 || closure2.count(v2) > 0;
    if (relevant) reps_.push_back({v1, v2, recipe, level});
  }

  std::unordered_set<ir::TermId> subterm_closure(
      const std::vector<ir::TermId>& frame) {
    std::unordered_set<ir::TermId> out;
    std::function<void(ir::TermId)> walk = [&](ir::TermId t) {
      if (!out.insert(rw_.normalize(t)).second) return;
      if (a_.kind(t) == ir::TermKind::kApp) {
        for (ir::TermId arg : a_.args(t)) walk(arg);
      }
    };
    for (ir::TermId t : frame) walk(rw_.normalize(t));
    return out;
  }

  std::vector<ir::TermId> public_leaves(const std::vector<ir::TermId>& f1,
                                        const std::vector<ir::TermId>& f2) {
    std::vector<ir::TermId> leaves;
    auto push = [&](ir::TermId t) {
      for (ir::TermId u : leaves) {
        if (u == t) return;
      }
      leaves.push_back(t);
    };
    for (const auto& fn : a_.signature().functions()) {
      if (fn.kind == ir::FnKind::kConstant && !fn.is_private) {
        push(a_.app(fn.name, {}));
      }
    }
    std::function<void(ir::TermId)> walk = [&](ir::TermId t) {
      if (a_.kind(t) == ir::TermKind::kName && !a_.is_fresh_name(t)) push(t);
      if (a_.kind(t) == ir::TermKind::kApp) {
        for (ir::TermId arg : a_.args(t)) walk(arg);
      }
    };
    for (ir::TermId t : f1) walk(t);
    for (ir::TermId t : f2) walk(t);
    std::sort(leaves.begin(), leaves.end(),
              [&](ir::TermId x, ir::TermId y) { return a_.compare(x, y) < 0; });
    return leaves;
  }

  ir::TermArena& a_;
  ir::Rewriter& rw_;
  StaticEquivResult result_;
  std::vector<Rep> reps_;
  std::set<std::pair<ir::TermId, ir::TermId>> by_pair_;
  std::map<ir::TermId, std::pair<ir::TermId, ir::TermId>> by_v1_;
  std::map<ir::TermId, std::pair<ir::TermId, ir::TermId>> by_v2_;
};

}  // namespace veritax::dy

#endif  // VERITAX_ENGINE_STATIC_EQUIV_HPP_
