// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_IR_SPEC_HPP_
#define VERITAX_IR_SPEC_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "veritax/ir/rewrite.hpp"
#include "veritax/ir/term.hpp"
#include "veritax/support/diagnostics.hpp"

namespace veritax::ir {

enum class ParamKind { kIdentity, kLongTermKey, kPublicKey, kValue };

struct Param {
  std::string name;
  ParamKind kind = ParamKind::kValue;
};

enum class StepKind { kFresh, kSend, kRecv, kLet, kEvent };

struct Step {
  StepKind kind = StepKind::kFresh;
  std::string ident;          // Fresh/Let binder, or Event label
  TermId term = kNoTerm;      // Send/Recv/Let payload
  std::vector<TermId> args;   // Event arguments
  bool synthetic = false;     // inserted by the instrumenter
  std::string group;          // claim group tag for synthetic events
  SourceSpan span;
};

struct RoleScript {
  std::string name;
  std::vector<Param> params;
  std::vector<Step> steps;
  SourceSpan span;
};

/// Leaf property kinds, exactly the taxonomy leaves. Categories are not
/// claimable; the validator rejects them with a hint.
enum class PropertyLeaf {
  kAliveness,
  kWeakAgreement,
  kNonInjectiveAgreement,
  kInjectiveAgreement,
  kSecrecy,
  kForwardSecrecy,
  kPostCompromiseSecurity,
  kUnforgeability,
  kNonEquivocation,
  kAnonymity,
  kUnlinkability,
  kTraceability,
  kNonRepudiation,
  kAccountability,
};

inline constexpr int kLeafCount = 14;

struct PropertyClaim {
  PropertyLeaf kind = PropertyLeaf::kSecrecy;
  std::vector<TermId> subject_terms;              // e.g. the secret, agreed data
  std::map<std::string, std::string> role_bindings;  // formula role -> script
  std::map<std::string, TermId> term_options;     // e.g. traceability recipe
  std::map<std::string, std::string> label_options;  // e.g. PCS heal label
  SourceSpan span;
};

/// The compiler's input IR. Channel is the public network, fixed. All
/// values are immutable after construction and safe to share across
/// concurrent readers.
struct ProtocolSpec {
  std::string name;
  std::shared_ptr<TermArena> arena;
  std::vector<std::string> user_functions;  // names declared by the source
  std::vector<RewriteRule> theory;          // builtin rules + user equations
  std::vector<size_t> user_rules;           // indices into theory
  std::vector<RoleScript> roles;
  std::vector<PropertyClaim> claims;

  const Signature& signature() const { return arena->signature(); }

  const RoleScript* role(const std::string& role_name) const {
    for (const auto& r : roles) {
      if (r.name == role_name) return &r;
    }
    return nullptr;
  }
};

inline const char* leaf_name(PropertyLeaf k) {
  switch (k) {
    case PropertyLeaf::kAliveness: return "aliveness";
    case PropertyLeaf::kWeakAgreement: return "weak_agreement";
    case PropertyLeaf::kNonInjectiveAgreement: return "non_injective_agreement";
    case PropertyLeaf::kInjectiveAgreement: return "injective_agreement";
    case PropertyLeaf::kSecrecy: return "secrecy";
    case PropertyLeaf::kForwardSecrecy: return "forward_secrecy";
    case PropertyLeaf::kPostCompromiseSecurity:
      return "post_compromise_security";
    case PropertyLeaf::kUnforgeability: return "unforgeability";
    case PropertyLeaf::kNonEquivocation: return "non_equivocation";
    case PropertyLeaf::kAnonymity: return "anonymity";
    case PropertyLeaf::kUnlinkability: return "unlinkability";
    case PropertyLeaf::kTraceability: return "traceability";
    case PropertyLeaf::kNonRepudiation: return "non_repudiation";
    case PropertyLeaf::kAccountability: return "accountability";
  }
  return "?";
}

inline bool leaf_from_name(const std::string& s, PropertyLeaf& out) {
  for (int i = 0; i < kLeafCount; ++i) {
    auto k = static_cast<PropertyLeaf>(i);
    if (s == leaf_name(k)) {
      out = k;
      return true;
    }
  }
  return false;
}

// --- structural equality across arenas (round-trip testing) ---------------

inline bool step_equal(const TermArena& aa, const Step& a, const TermArena& ab,
                       const Step& b) {
  if (a.kind != b.kind || a.ident != b.ident || a.args.size() != b.args.size())
    return false;
  if ((a.term == kNoTerm) != (b.term == kNoTerm)) return false;
  if (a.term != kNoTerm && !term_equal(aa, a.term, ab, b.term)) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!term_equal(aa, a.args[i], ab, b.args[i])) return false;
  }
  return true;
}

inline bool spec_equal(const ProtocolSpec& a, const ProtocolSpec& b) {
  if (a.name != b.name) return false;
  if (a.roles.size() != b.roles.size()) return false;
  if (a.claims.size() != b.claims.size()) return false;
  if (a.user_functions != b.user_functions) return false;
  if (a.user_rules.size() != b.user_rules.size()) return false;
  const TermArena& aa = *a.arena;
  const TermArena& ab = *b.arena;
  for (size_t i = 0; i < a.user_rules.size(); ++i) {
    const RewriteRule& ra = a.theory[a.user_rules[i]];
    const RewriteRule& rb = b.theory[b.user_rules[i]];
    if (!term_equal(aa, ra.lhs, ab, rb.lhs)) return false;
    if (!term_equal(aa, ra.rhs, ab, rb.rhs)) return false;
  }
  for (size_t i = 0; i < a.roles.size(); ++i) {
    const RoleScript& ra = a.roles[i];
    const RoleScript& rb = b.roles[i];
    if (ra.name != rb.name || ra.params.size() != rb.params.size())
      return false;
    for (size_t j = 0; j < ra.params.size(); ++j) {
      if (ra.params[j].name != rb.params[j].name ||
          ra.params[j].kind != rb.params[j].kind)
        return false;
    }
    if (ra.steps.size() != rb.steps.size()) return false;
    for (size_t j = 0; j < ra.steps.size(); ++j) {
      if (!step_equal(aa, ra.steps[j], ab, rb.steps[j])) return false;
    }
  }
  for (size_t i = 0; i < a.claims.size(); ++i) {
    const PropertyClaim& ca = a.claims[i];
    const PropertyClaim& cb = b.claims[i];
    if (ca.kind != cb.kind || ca.role_bindings != cb.role_bindings ||
        ca.label_options != cb.label_options)
      return false;
    if (ca.subject_terms.size() != cb.subject_terms.size()) return false;
    for (size_t j = 0; j < ca.subject_terms.size(); ++j) {
      if (!term_equal(aa, ca.subject_terms[j], ab, cb.subject_terms[j]))
        return false;
    }
    if (ca.term_options.size() != cb.term_options.size()) return false;
    auto ita = ca.term_options.begin();
    auto itb = cb.term_options.begin();
    for (; ita != ca.term_options.end(); ++ita, ++itb) {
      if (ita->first != itb->first) return false;
      if (!term_equal(aa, ita->second, ab, itb->second)) return false;
    }
  }
  return true;
}

}  // namespace veritax::ir

#endif  // VERITAX_IR_SPEC_HPP_
