// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_DSL_PRETTY_HPP_
#define VERITAX_DSL_PRETTY_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "veritax/ir/spec.hpp"

namespace veritax::dsl {

namespace detail {

inline void print_claim(const ir::ProtocolSpec& spec,
                        const ir::PropertyClaim& claim, std::string& out) {
  const ir::TermArena& a = *spec.arena;
  out += ir::leaf_name(claim.kind);
  out += "(";
  std::vector<std::string> parts;
  auto role = [&](const char* key) {
    auto it = claim.role_bindings.find(key);
    if (it != claim.role_bindings.end()) {
      parts.push_back(std::string(key) + ": " + it->second);
    }
  };
  auto label = [&](const char* key) {
    auto it = claim.label_options.find(key);
    if (it != claim.label_options.end()) {
      parts.push_back(std::string(key) + ": " + it->second);
    }
  };
  auto subjects = [&](const char* key) {
    if (claim.subject_terms.empty()) return;
    if (claim.subject_terms.size() == 1) {
      parts.push_back(std::string(key) + ": " +
                      a.to_string(claim.subject_terms[0]));
      return;
    }
    std::string t = std::string(key) + ": (";
    for (size_t i = 0; i < claim.subject_terms.size(); ++i) {
      if (i) t += ", ";
      t += a.to_string(claim.subject_terms[i]);
    }
    t += ")";
    parts.push_back(std::move(t));
  };
  switch (claim.kind) {
    case ir::PropertyLeaf::kAliveness:
    case ir::PropertyLeaf::kWeakAgreement:
    case ir::PropertyLeaf::kNonInjectiveAgreement:
    case ir::PropertyLeaf::kInjectiveAgreement:
      role("initiator");
      role("responder");
      subjects("data");
      break;
    case ir::PropertyLeaf::kSecrecy:
      subjects("of");
      role("role");
      break;
    case ir::PropertyLeaf::kForwardSecrecy:
      subjects("key");
      role("role");
      break;
    case ir::PropertyLeaf::kPostCompromiseSecurity:
      subjects("keys");
      role("role");
      label("heal");
      break;
    case ir::PropertyLeaf::kUnforgeability:
    case ir::PropertyLeaf::kNonEquivocation:
      role("signer");
      role("verifier");
      break;
    case ir::PropertyLeaf::kAnonymity:
      role("role");
      subjects("id");
      break;
    case ir::PropertyLeaf::kUnlinkability:
      role("role");
      subjects("subjects");
      break;
    case ir::PropertyLeaf::kTraceability: {
      role("sender");
      auto it = claim.term_options.find("recipe");
      if (it != claim.term_options.end()) {
        parts.push_back("recipe: " + a.to_string(it->second));
      }
      break;
    }
    case ir::PropertyLeaf::kNonRepudiation:
      role("sender");
      role("observer");
      break;
    case ir::PropertyLeaf::kAccountability:
      role("judge");
      label("judged");
      label("bind");
      label("time");
      break;
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += ");\n";
}

}  // namespace detail

/// Canonical printer: declarations in canonical order, deterministic byte
/// output, and parse(pretty(spec)) is structurally equal to spec.
inline std::string pretty(const ir::ProtocolSpec& spec) {
  const ir::TermArena& a = *spec.arena;
  std::string out = "protocol \"" + spec.name + "\" {\n";

  if (!spec.user_functions.empty()) {
    out += "  primitives {\n";
    std::vector<std::string> names = spec.user_functions;
    std::sort(names.begin(), names.end());
    for (const auto& name : names) {
      const auto& fn = a.signature().fn(a.signature().find(name));
      out += "    " + fn.name + "/" + std::to_string(fn.arity);
      if (fn.is_private) out += " private";
      out += ";\n";
    }
    out += "  }\n";
  }

  if (!spec.user_rules.empty()) {
    std::vector<std::string> eqs;
    for (size_t i : spec.user_rules) {
      eqs.push_back(a.to_string(spec.theory[i].lhs) + " = " +
                    a.to_string(spec.theory[i].rhs) + ";");
    }
    std::sort(eqs.begin(), eqs.end());
    out += "  theory {\n";
    for (const auto& e : eqs) out += "    " + e + "\n";
    out += "  }\n";
  }

  out += "  roles {\n";
  for (const auto& role : spec.roles) {
    out += "    " + role.name + "(";
    for (size_t i = 0; i < role.params.size(); ++i) {
      if (i) out += ", ";
      out += role.params[i].name + ": ";
      switch (role.params[i].kind) {
        case ir::ParamKind::kIdentity: out += "identity"; break;
        case ir::ParamKind::kLongTermKey: out += "ltkey"; break;
        case ir::ParamKind::kPublicKey: out += "pubkey"; break;
        case ir::ParamKind::kValue: out += "value"; break;
      }
    }
    out += ") {\n";
    for (const auto& step : role.steps) {
      if (step.synthetic) continue;  // instrumentation is not surface syntax
      out += "      ";
      switch (step.kind) {
        case ir::StepKind::kFresh:
          out += "fresh " + step.ident + ";";
          break;
        case ir::StepKind::kSend:
          out += "send " + a.to_string(step.term) + ";";
          break;
        case ir::StepKind::kRecv:
          out += "recv " + a.to_string(step.term) + ";";
          break;
        case ir::StepKind::kLet:
          out += "let " + step.ident + " = " + a.to_string(step.term) + ";";
          break;
        case ir::StepKind::kEvent: {
          out += "event " + step.ident + "(";
          for (size_t i = 0; i < step.args.size(); ++i) {
            if (i) out += ", ";
            out += a.to_string(step.args[i]);
          }
          out += ");";
          break;
        }
      }
      out += "\n";
    }
    out += "    }\n";
  }
  out += "  }\n";

  if (!spec.claims.empty()) {
    out += "  claims {\n";
    for (const auto& claim : spec.claims) {
      out += "    ";
      detail::print_claim(spec, claim, out);
    }
    out += "  }\n";
  }

  out += "}\n";
  return out;
}

}  // namespace veritax::dsl

#endif  // VERITAX_DSL_PRETTY_HPP_
