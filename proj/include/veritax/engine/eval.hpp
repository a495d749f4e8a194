// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_ENGINE_EVAL_HPP_
#define VERITAX_ENGINE_EVAL_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "veritax/engine/knowledge.hpp"
#include "veritax/engine/trace.hpp"
#include "veritax/taxonomy/formula.hpp"

namespace veritax::dy {

/// Raised for formulas the trace evaluator cannot decide (unlinkability
/// markers, which the engine routes to static equivalence instead).
class UnsupportedFormula : public std::runtime_error {
 public:
  explicit UnsupportedFormula(const std::string& what)
      : std::runtime_error(what) {}
};

/// First-order satisfaction of a guarded correspondence over a finite
/// trace. Premise matching enumerates records; knowledge atoms consult the
/// snapshot at their time variable (end of trace when untimed); identity
/// positions of premise and uniqueness atoms are restricted to the trace's
/// honest set when one is present.
class FormulaEval {
 public:
  FormulaEval(Deduction& deduction) : ded_(deduction), a_(deduction.arena()) {}

  bool eval(const tax::CheckableFormula& f, const Trace& tr) {
    if (f.mode == tax::CheckableFormula::Mode::kEquivalence) {
      throw UnsupportedFormula(
          "unlinkability is decided by the static-equivalence path");
    }
    const tax::GuardedFormula& gf = f.formula;
    Env env;
    if (gf.outer_negation) {
      // not exists vars: premises && guards
      return !match_premises(gf, f.group, tr, 0, env,
                             [&](Env&) { return true; });
    }
    // For every premise assignment, some conclusion assignment must work.
    bool counterexample = match_premises(
        gf, f.group, tr, 0, env, [&](Env& bound) {
          return !conclusions_hold(gf, f.group, tr, bound);
        });
    return !counterexample;
  }

 private:
  struct Env {
    std::unordered_map<ir::TermId, ir::TermId> terms;
    std::map<std::string, int> times;
  };

  bool honest_ok(const Trace& tr, tax::EventLabel label,
                 const std::vector<ir::TermId>& args) const {
    if (tr.honest.empty()) return true;
    const auto& info = tax::label_info(label);
    for (int8_t pos : info.identity_positions) {
      if (pos < 0 || static_cast<size_t>(pos) >= args.size()) continue;
      ir::TermId arg = args[static_cast<size_t>(pos)];
      if (a_.kind(arg) != ir::TermKind::kName ||
          !tr.honest.count(a_.symbol(arg))) {
        return false;
      }
    }
    return true;
  }

  static bool group_ok(const std::string& formula_group,
                       const std::string& record_group) {
    return formula_group.empty() || record_group.empty() ||
           formula_group == record_group;
  }

  /// Depth-first matching of premise atoms; calls `found` on each complete
  /// assignment and returns true as soon as `found` returns true.
  template <typename Found>
  bool match_premises(const tax::GuardedFormula& gf, const std::string& group,
                      const Trace& tr, size_t atom_idx, Env& env,
                      Found&& found) {
    if (atom_idx < gf.premises.size()) {
      const tax::EventPattern& atom = gf.premises[atom_idx];
      for (int time = 1; time <= tr.length(); ++time) {
        const TraceEvent& rec = tr.events[time - 1];
        if (rec.label != atom.label) continue;
        if (!group_ok(group, rec.group)) continue;
        if (rec.args.size() != atom.args.size()) continue;
        if (!honest_ok(tr, rec.label, rec.args)) continue;
        Env saved = env;
        bool ok = true;
        for (size_t i = 0; i < atom.args.size() && ok; ++i) {
          ok = a_.match(atom.args[i], rec.args[i], env.terms);
        }
        if (ok && !atom.time_var.empty()) {
          auto it = env.times.find(atom.time_var);
          if (it != env.times.end() && it->second != time) ok = false;
          env.times[atom.time_var] = time;
        }
        if (ok && match_premises(gf, group, tr, atom_idx + 1, env, found)) {
          return true;
        }
        env = std::move(saved);
      }
      return false;
    }
    size_t k_idx = atom_idx - gf.premises.size();
    if (k_idx < gf.premise_knowledge.size()) {
      const tax::KnowledgePattern& atom = gf.premise_knowledge[k_idx];
      ir::TermId subject = a_.substitute(atom.term, env.terms);
      if (!a_.is_ground(subject)) return false;  // nothing to bind it
      if (atom.time_var.empty()) {
        if (!ded_.comp_derivable(tr.final_knowledge(), subject)) return false;
        return match_premises(gf, group, tr, atom_idx + 1, env, found);
      }
      for (int time = 1; time <= tr.length(); ++time) {
        if (!ded_.comp_derivable(tr.knowledge_at(time), subject)) continue;
        Env saved = env;
        auto it = env.times.find(atom.time_var);
        if (it != env.times.end() && it->second != time) continue;
        env.times[atom.time_var] = time;
        if (match_premises(gf, group, tr, atom_idx + 1, env, found)) {
          return true;
        }
        env = std::move(saved);
      }
      return false;
    }
    for (const tax::Constraint& c : gf.guards) {
      if (!constraint_holds(c, tr, env)) return false;
    }
    return found(env);
  }

  bool conclusions_hold(const tax::GuardedFormula& gf,
                        const std::string& group, const Trace& tr, Env& env) {
    bool sat = match_conclusions(gf, group, tr, 0, env);
    if (!sat) return false;
    return true;
  }

  bool match_conclusions(const tax::GuardedFormula& gf,
                         const std::string& group, const Trace& tr,
                         size_t idx, Env& env) {
    if (idx < gf.conclusions.size()) {
      const tax::EventPattern& atom = gf.conclusions[idx];
      for (int time = 1; time <= tr.length(); ++time) {
        const TraceEvent& rec = tr.events[time - 1];
        if (rec.label != atom.label) continue;
        if (!group_ok(group, rec.group)) continue;
        if (rec.args.size() != atom.args.size()) continue;
        Env saved = env;
        bool ok = true;
        for (size_t i = 0; i < atom.args.size() && ok; ++i) {
          ok = a_.match(atom.args[i], rec.args[i], env.terms);
        }
        if (ok && !atom.time_var.empty()) {
          auto it = env.times.find(atom.time_var);
          if (it != env.times.end() && it->second != time) ok = false;
          env.times[atom.time_var] = time;
        }
        if (ok && match_conclusions(gf, group, tr, idx + 1, env)) return true;
        env = std::move(saved);
      }
      return false;
    }
    for (const tax::Constraint& c : gf.goals) {
      if (!constraint_holds(c, tr, env)) return false;
    }
    if (gf.negated_uniqueness) {
      int anchor = -1;
      auto it = env.times.find(gf.uniqueness_anchor);
      if (it != env.times.end()) anchor = it->second;
      const tax::EventPattern& atom = *gf.negated_uniqueness;
      for (int time = 1; time <= tr.length(); ++time) {
        if (time == anchor) continue;
        const TraceEvent& rec = tr.events[time - 1];
        if (rec.label != atom.label) continue;
        if (!group_ok(group, rec.group)) continue;
        if (rec.args.size() != atom.args.size()) continue;
        if (!honest_ok(tr, rec.label, rec.args)) continue;
        auto local = env.terms;  // pattern-only variables are existential
        bool matches = true;
        for (size_t i = 0; i < atom.args.size() && matches; ++i) {
          matches = a_.match(atom.args[i], rec.args[i], local);
        }
        if (matches) return false;  // a second occurrence: uniqueness broken
      }
    }
    return true;
  }

  bool constraint_holds(const tax::Constraint& c, const Trace& tr, Env& env) {
    switch (c.kind) {
      case tax::ConstraintKind::kBefore: {
        auto ia = env.times.find(c.time_a);
        auto ib = env.times.find(c.time_b);
        return ia != env.times.end() && ib != env.times.end() &&
               ia->second < ib->second;
      }
      case tax::ConstraintKind::kNotEqual: {
        auto ia = env.times.find(c.time_a);
        auto ib = env.times.find(c.time_b);
        return ia != env.times.end() && ib != env.times.end() &&
               ia->second != ib->second;
      }
      case tax::ConstraintKind::kEq: {
        ir::TermId ta = a_.substitute(c.term_a, env.terms);
        ir::TermId tb = a_.substitute(c.term_b, env.terms);
        return ded_.rewriter().normalize(ta) == ded_.rewriter().normalize(tb);
      }
      case tax::ConstraintKind::kNotKnown: {
        ir::TermId t = a_.substitute(c.term_a, env.terms);
        return !ded_.comp_derivable(tr.final_knowledge(), t);
      }
    }
    return false;
  }

  Deduction& ded_;
  ir::TermArena& a_;
};

/// Operation-contract form: evaluates one formula over one trace.
inline bool eval_formula(Deduction& deduction, const tax::CheckableFormula& f,
                         const Trace& tr) {
  FormulaEval ev(deduction);
  return ev.eval(f, tr);
}

}  // namespace veritax::dy

#endif  // VERITAX_ENGINE_EVAL_HPP_
