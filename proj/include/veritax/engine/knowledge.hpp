// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_ENGINE_KNOWLEDGE_HPP_
#define VERITAX_ENGINE_KNOWLEDGE_HPP_

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "veritax/ir/rewrite.hpp"
#include "veritax/ir/term.hpp"

namespace veritax::dy {

/// Attacker knowledge: the observed terms and their destructor-saturation
/// closure. `analyzed` is a superset of `base`, closed under destructor
/// application over the theory; finite by subterm-convergence.
struct Knowledge {
  std::vector<ir::TermId> base;
  std::vector<ir::TermId> analyzed;

  bool contains(ir::TermId t) const {
    return std::find(analyzed.begin(), analyzed.end(), t) != analyzed.end();
  }
};

/// Deduction routines bound to one arena + theory. Memoizes composition
/// checks per saturated set, so keep one instance per exploration.
class Deduction {
 public:
  Deduction(ir::TermArena& arena, ir::Rewriter& rewriter)
      : a_(arena), rw_(rewriter) {}

  ir::TermArena& arena() { return a_; }
  ir::Rewriter& rewriter() { return rw_; }

  /// Least fixpoint of destructor application: whenever a rule instance's
  /// arguments are all derivable-by-composition from the analyzed set, its
  /// reduct joins the set. Monotone in base and idempotent.
  Knowledge saturate(const Knowledge& k) {
    Knowledge out;
    out.base = k.base;
    std::unordered_set<ir::TermId> seen;
    std::vector<ir::TermId> frontier;
    for (ir::TermId t : k.base) {
      ir::TermId n = rw_.normalize(t);
      if (seen.insert(n).second) frontier.push_back(n);
    }
    std::vector<ir::TermId> analyzed = frontier;
    size_t additions = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const ir::RewriteRule& rule : rw_.rules()) {
        auto sigmas = rule_matches(rule, analyzed, seen);
        for (auto& sigma : sigmas) {
          ir::TermId result = rw_.normalize(a_.substitute(rule.rhs, sigma));
          if (!a_.is_ground(result)) continue;
          if (seen.insert(result).second) {
            analyzed.push_back(result);
            changed = true;
            if (++additions > 20000) {
              throw std::runtime_error(
                  "saturation did not converge; theory is not "
                  "subterm-convergent");
            }
          }
        }
      }
    }
    std::sort(analyzed.begin(), analyzed.end(),
              [&](ir::TermId x, ir::TermId y) { return a_.compare(x, y) < 0; });
    out.analyzed = std::move(analyzed);
    return out;
  }

  /// Derivability by composition alone, no bound: t is analyzed, or t is a
  /// public application whose arguments are all derivable. Decides K(x).
  bool comp_derivable(const Knowledge& k, ir::TermId t) const {
    std::unordered_set<ir::TermId> analyzed(k.analyzed.begin(),
                                            k.analyzed.end());
    return comp_derivable_in(analyzed, t);
  }

  bool comp_derivable_in(const std::unordered_set<ir::TermId>& analyzed,
                         ir::TermId t) const {
    if (analyzed.count(t)) return true;
    if (a_.kind(t) != ir::TermKind::kApp) return false;
    if (a_.fn_spec(t).is_private) return false;
    for (ir::TermId arg : a_.args(t)) {
      if (!comp_derivable_in(analyzed, arg)) return false;
    }
    return true;
  }

  /// Bounded synthesis check: t in analyzed, or buildable by at most
  /// `depth` nested constructor applications over analyzed terms. Agrees
  /// with exhaustive recipe enumeration at the same nesting depth.
  bool derivable(const Knowledge& k, ir::TermId t, int depth) const {
    std::unordered_set<ir::TermId> analyzed(k.analyzed.begin(),
                                            k.analyzed.end());
    return buildable(analyzed, t, depth);
  }

  bool buildable(const std::unordered_set<ir::TermId>& analyzed, ir::TermId t,
                 int depth) const {
    if (analyzed.count(t)) return true;
    if (depth <= 0) return false;
    if (a_.kind(t) != ir::TermKind::kApp) return false;
    const ir::FunctionSpec& fn = a_.fn_spec(t);
    if (fn.is_private || fn.kind == ir::FnKind::kDestructor) return false;
    for (ir::TermId arg : a_.args(t)) {
      if (!buildable(analyzed, arg, depth - 1)) return false;
    }
    return true;
  }

 private:
  /// All substitutions under which the rule's arguments are derivable from
  /// the analyzed set: non-variable argument patterns match analyzed terms
  /// or decompose into attacker compositions; ground-after-binding arguments reduce to
  /// a composition-derivability check.
  std::vector<std::unordered_map<ir::TermId, ir::TermId>> rule_matches(
      const ir::RewriteRule& rule, const std::vector<ir::TermId>& analyzed,
      const std::unordered_set<ir::TermId>& analyzed_set) {
    std::vector<std::unordered_map<ir::TermId, ir::TermId>> sigmas;
    sigmas.emplace_back();
    auto lhs_args = a_.args(rule.lhs);
    // Bind structure-rich patterns first so later bare variables are ground.
    std::vector<ir::TermId> ordered(lhs_args.begin(), lhs_args.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [&](ir::TermId x, ir::TermId y) {
                       return (a_.kind(x) == ir::TermKind::kApp) >
                              (a_.kind(y) == ir::TermKind::kApp);
                     });
    for (ir::TermId pattern : ordered) {
      std::vector<std::unordered_map<ir::TermId, ir::TermId>> next;
      for (const auto& sigma : sigmas) {
        match_modulo_composition(pattern, sigma, analyzed, analyzed_set, next);
      }
      sigmas = std::move(next);
      if (sigmas.empty()) break;
    }
    return sigmas;
  }

  void match_modulo_composition(
      ir::TermId pattern, std::unordered_map<ir::TermId, ir::TermId> sigma,
      const std::vector<ir::TermId>& analyzed,
      const std::unordered_set<ir::TermId>& analyzed_set,
      std::vector<std::unordered_map<ir::TermId, ir::TermId>>& out) {
    ir::TermId instantiated = a_.substitute(pattern, sigma);
    if (a_.is_ground(instantiated)) {
      if (comp_derivable_in(analyzed_set, instantiated)) {
        out.push_back(std::move(sigma));
      }
      return;
    }
    // Match against an analyzed term directly.
    for (ir::TermId u : analyzed) {
      auto extended = sigma;
      if (a_.match(instantiated, u, extended)) {
        out.push_back(std::move(extended));
      }
    }
    // Or let the attacker compose the spine: public head, arguments matched
    // recursively (unbound variables then range over analyzed terms).
    if (a_.kind(instantiated) == ir::TermKind::kApp &&
        !a_.fn_spec(instantiated).is_private) {
      std::vector<std::unordered_map<ir::TermId, ir::TermId>> partial;
      partial.push_back(std::move(sigma));
      for (ir::TermId arg : a_.args(instantiated)) {
        std::vector<std::unordered_map<ir::TermId, ir::TermId>> next;
        for (const auto& s : partial) {
          match_modulo_composition(arg, s, analyzed, analyzed_set, next);
        }
        partial = std::move(next);
        if (partial.empty()) return;
      }
      for (auto& s : partial) out.push_back(std::move(s));
    }
  }

  ir::TermArena& a_;
  ir::Rewriter& rw_;
};

}  // namespace veritax::dy

#endif  // VERITAX_ENGINE_KNOWLEDGE_HPP_
