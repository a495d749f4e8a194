// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_IR_VALIDATE_HPP_
#define VERITAX_IR_VALIDATE_HPP_

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "veritax/ir/spec.hpp"

namespace veritax::ir {

namespace detail {

inline void check_bound(const TermArena& a, TermId t,
                        const std::set<std::string>& bound,
                        const SourceSpan& span, ValidationReport& report) {
  std::vector<TermId> vars;
  a.collect_vars(t, vars);
  for (TermId v : vars) {
    if (!bound.count(a.symbol(v))) {
      report.error("unbound identifier '" + a.symbol(v) + "'", span);
    }
  }
}

inline void check_role_bindings(const ProtocolSpec& spec,
                                const PropertyClaim& claim,
                                const std::vector<std::string>& required,
                                ValidationReport& report) {
  for (const auto& key : required) {
    auto it = claim.role_bindings.find(key);
    if (it == claim.role_bindings.end()) {
      report.error(std::string(leaf_name(claim.kind)) +
                       " claim is missing the '" + key + ":' role binding",
                   claim.span);
      continue;
    }
    if (!spec.role(it->second)) {
      report.error("claim refers to unknown role '" + it->second + "'",
                   claim.span);
    }
  }
}

inline std::set<std::string> role_var_names(const TermArena& a,
                                            const RoleScript& role) {
  std::set<std::string> bound;
  for (const auto& p : role.params) bound.insert(p.name);
  for (const auto& s : role.steps) {
    if (s.kind == StepKind::kFresh || s.kind == StepKind::kLet) {
      bound.insert(s.ident);
    } else if (s.kind == StepKind::kRecv) {
      std::vector<TermId> vars;
      a.collect_vars(s.term, vars);
      for (TermId v : vars) bound.insert(a.symbol(v));
    }
  }
  return bound;
}

inline void check_terms_bound_in_role(const ProtocolSpec& spec,
                                      const PropertyClaim& claim,
                                      const std::string& role_key,
                                      ValidationReport& report) {
  auto it = claim.role_bindings.find(role_key);
  if (it == claim.role_bindings.end()) return;
  const RoleScript* role = spec.role(it->second);
  if (!role) return;
  auto bound = role_var_names(*spec.arena, *role);
  for (TermId t : claim.subject_terms) {
    std::vector<TermId> vars;
    spec.arena->collect_vars(t, vars);
    for (TermId v : vars) {
      if (!bound.count(spec.arena->symbol(v))) {
        report.error("claim term mentions '" + spec.arena->symbol(v) +
                         "', which is not bound in role " + role->name,
                     claim.span);
      }
    }
  }
}

}  // namespace detail

/// Checks every ProtocolSpec invariant; the report is empty exactly when
/// they all hold. Diagnostics are data, not failures.
inline ValidationReport validate_spec(const ProtocolSpec& spec) {
  ValidationReport report;
  const TermArena& a = *spec.arena;

  for (size_t i : spec.user_rules) {
    std::string why = check_rule(a, spec.theory[i]);
    if (!why.empty()) report.error(why);
  }

  std::set<std::string> role_names;
  for (const auto& role : spec.roles) {
    if (!role_names.insert(role.name).second) {
      report.error("duplicate role name '" + role.name + "'", role.span);
    }

    std::set<std::string> bound;
    for (const auto& p : role.params) {
      if (!bound.insert(p.name).second) {
        report.error("duplicate parameter '" + p.name + "' in role " +
                         role.name,
                     role.span);
      }
    }
    for (const auto& step : role.steps) {
      switch (step.kind) {
        case StepKind::kFresh:
          if (!bound.insert(step.ident).second) {
            report.error("'" + step.ident + "' is already bound", step.span);
          }
          break;
        case StepKind::kSend:
          detail::check_bound(a, step.term, bound, step.span, report);
          break;
        case StepKind::kRecv: {
          // New variables are binders; each may occur once per pattern.
          std::vector<TermId> vars;
          a.collect_vars(step.term, vars);
          std::set<std::string> fresh_here;
          for (TermId v : vars) {
            const std::string& n = a.symbol(v);
            if (bound.count(n)) continue;  // equality against earlier binding
            fresh_here.insert(n);
          }
          // Linearity: count occurrences of newly bound variables.
          for (const auto& n : fresh_here) {
            int occurrences = 0;
            std::function<void(TermId)> walk = [&](TermId t) {
              if (a.kind(t) == TermKind::kVar && a.symbol(t) == n) {
                ++occurrences;
              } else if (a.kind(t) == TermKind::kApp) {
                for (TermId arg : a.args(t)) walk(arg);
              }
            };
            walk(step.term);
            if (occurrences > 1) {
              report.error("receive pattern is not linear: new variable '" +
                               n + "' occurs " + std::to_string(occurrences) +
                               " times",
                           step.span);
            }
            bound.insert(n);
          }
          break;
        }
        case StepKind::kLet:
          detail::check_bound(a, step.term, bound, step.span, report);
          if (!bound.insert(step.ident).second) {
            report.error("'" + step.ident + "' is already bound", step.span);
          }
          break;
        case StepKind::kEvent:
          for (TermId arg : step.args) {
            detail::check_bound(a, arg, bound, step.span, report);
          }
          break;
      }
    }
  }

  for (const auto& claim : spec.claims) {
    switch (claim.kind) {
      case PropertyLeaf::kAliveness:
      case PropertyLeaf::kWeakAgreement:
      case PropertyLeaf::kNonInjectiveAgreement:
      case PropertyLeaf::kInjectiveAgreement: {
        detail::check_role_bindings(spec, claim, {"initiator", "responder"},
                                    report);
        bool needs_data = claim.kind == PropertyLeaf::kNonInjectiveAgreement ||
                          claim.kind == PropertyLeaf::kInjectiveAgreement;
        if (needs_data && claim.subject_terms.empty()) {
          report.error(std::string(leaf_name(claim.kind)) +
                           " claim needs 'data:' terms to agree on",
                       claim.span);
        }
        detail::check_terms_bound_in_role(spec, claim, "initiator", report);
        detail::check_terms_bound_in_role(spec, claim, "responder", report);
        break;
      }
      case PropertyLeaf::kSecrecy:
      case PropertyLeaf::kForwardSecrecy: {
        detail::check_role_bindings(spec, claim, {"role"}, report);
        if (claim.subject_terms.size() != 1) {
          report.error(std::string(leaf_name(claim.kind)) +
                           " claim needs exactly one subject term",
                       claim.span);
        }
        detail::check_terms_bound_in_role(spec, claim, "role", report);
        break;
      }
      case PropertyLeaf::kPostCompromiseSecurity: {
        detail::check_role_bindings(spec, claim, {"role"}, report);
        if (claim.subject_terms.empty()) {
          report.error("post_compromise_security claim needs 'keys:' terms",
                       claim.span);
        }
        if (!claim.label_options.count("heal")) {
          report.error(
              "post_compromise_security claim needs a 'heal:' event label",
              claim.span);
        }
        detail::check_terms_bound_in_role(spec, claim, "role", report);
        break;
      }
      case PropertyLeaf::kUnforgeability:
      case PropertyLeaf::kNonEquivocation:
        detail::check_role_bindings(spec, claim, {"signer", "verifier"},
                                    report);
        break;
      case PropertyLeaf::kAnonymity:
        detail::check_role_bindings(spec, claim, {"role"}, report);
        if (claim.subject_terms.size() != 1) {
          report.error("anonymity claim needs exactly one 'id:' term",
                       claim.span);
        }
        detail::check_terms_bound_in_role(spec, claim, "role", report);
        break;
      case PropertyLeaf::kUnlinkability: {
        detail::check_role_bindings(spec, claim, {"role"}, report);
        if (claim.subject_terms.size() != 2) {
          report.error(
              "unlinkability claim needs exactly two 'subjects:' names",
              claim.span);
        }
        auto it = claim.role_bindings.find("role");
        if (it != claim.role_bindings.end()) {
          const RoleScript* role = spec.role(it->second);
          if (role) {
            bool has_value_param = false;
            for (const auto& p : role->params) {
              has_value_param |= p.kind == ParamKind::kValue;
            }
            if (!has_value_param) {
              report.error("unlinkability role '" + role->name +
                               "' has no value parameter to link sessions by",
                           claim.span);
            }
          }
        }
        break;
      }
      case PropertyLeaf::kTraceability: {
        detail::check_role_bindings(spec, claim, {"sender"}, report);
        auto it = claim.term_options.find("recipe");
        if (it == claim.term_options.end()) {
          report.error("traceability claim needs a 'recipe:' term over 'msg'",
                       claim.span);
        } else {
          std::vector<TermId> vars;
          a.collect_vars(it->second, vars);
          for (TermId v : vars) {
            if (a.symbol(v) != "msg") {
              report.error(
                  "traceability recipe may only use the variable 'msg'",
                  claim.span);
            }
          }
        }
        break;
      }
      case PropertyLeaf::kNonRepudiation:
        detail::check_role_bindings(spec, claim, {"sender", "observer"},
                                    report);
        break;
      case PropertyLeaf::kAccountability: {
        detail::check_role_bindings(spec, claim, {"judge"}, report);
        struct Hook {
          const char* key;
          size_t arity;
        };
        for (const Hook& hook : {Hook{"judged", 2}, Hook{"bind", 2},
                                 Hook{"time", 1}}) {
          auto it = claim.label_options.find(hook.key);
          if (it == claim.label_options.end()) {
            report.error(std::string("accountability claim needs a '") +
                             hook.key + ":' event label",
                         claim.span);
            continue;
          }
          bool found = false;
          for (const auto& role : spec.roles) {
            for (const auto& step : role.steps) {
              if (step.kind == StepKind::kEvent && step.ident == it->second) {
                found = true;
                if (step.args.size() != hook.arity) {
                  report.error("hook event '" + it->second + "' must take " +
                                   std::to_string(hook.arity) + " arguments",
                               step.span);
                }
              }
            }
          }
          if (!found) {
            report.error("no role declares the hook event '" + it->second +
                             "'",
                         claim.span);
          }
        }
        break;
      }
    }
  }

  return report;
}

}  // namespace veritax::ir

#endif  // VERITAX_IR_VALIDATE_HPP_
