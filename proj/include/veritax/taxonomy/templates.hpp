// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_TAXONOMY_TEMPLATES_HPP_
#define VERITAX_TAXONOMY_TEMPLATES_HPP_

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "veritax/ir/spec.hpp"
#include "veritax/taxonomy/formula.hpp"
#include "veritax/taxonomy/kinds.hpp"

namespace veritax::tax {

/// Where an instrumented event belongs in a role script.
enum class LocationClass : uint8_t {
  kAfterSigningBeforeSend,   // right after the binding whose head is sign
  kAfterVerification,        // after a successful signature check
  kResponderFirstRecv,       // the responder's first meaningful step
  kInitiatorCompletion,      // after the initiator's final step
  kAtSubjectBinding,         // where the claimed term is bound
  kRoleStart,                // before the role's first step
  kEverySendOfRole,          // at each message output of the bound role
  kAfterEveryRecvOfRole,     // after each accepted input of the bound role
  kAfterSendsMentioningKey,  // at sends whose payload uses a claimed key
  kUserHook,                 // user-declared event named by the claim
  kEngineReveal,             // emitted by the engine's reveal/compromise move
};

inline const char* location_name(LocationClass c) {
  switch (c) {
    case LocationClass::kAfterSigningBeforeSend:
      return "after-signing-before-send";
    case LocationClass::kAfterVerification: return "after-verification";
    case LocationClass::kResponderFirstRecv:
      return "responder-first-meaningful-step";
    case LocationClass::kInitiatorCompletion: return "initiator-completion";
    case LocationClass::kAtSubjectBinding: return "at-subject-binding";
    case LocationClass::kRoleStart: return "role-start";
    case LocationClass::kEverySendOfRole: return "every-send";
    case LocationClass::kAfterEveryRecvOfRole: return "after-every-recv";
    case LocationClass::kAfterSendsMentioningKey:
      return "sends-mentioning-key";
    case LocationClass::kUserHook: return "user-hook";
    case LocationClass::kEngineReveal: return "engine-reveal";
  }
  return "?";
}

struct Requirement {
  EventLabel label;
  LocationClass location;
};

struct PropertyTemplate {
  PropertyKind kind;
  CheckableFormula formula;
  std::vector<Requirement> requirements;
};

/// Thrown by instantiate when the claim lacks a role or term the template
/// needs.
class MissingBinding : public std::runtime_error {
 public:
  explicit MissingBinding(const std::string& what)
      : std::runtime_error("missing claim binding: " + what) {}
};

/// Builds the per-kind formula templates against a given arena. The
/// formulas follow the taxonomy's first-order definitions structurally:
/// quantifier prefixes, event atoms, knowledge atoms and side constraints
/// appear exactly as printed, with wildcard positions as fresh variables.
class Taxonomy {
 public:
  explicit Taxonomy(ir::TermArena& arena) : a_(arena) {}

  PropertyTemplate lookup(const PropertyKind& kind) const {
    ir::PropertyLeaf leaf = require_leaf(kind);
    PropertyTemplate t;
    t.kind = kind;
    t.requirements = required_events(kind);
    t.formula.kind = leaf;
    if (leaf == ir::PropertyLeaf::kUnlinkability) {
      t.formula.mode = CheckableFormula::Mode::kEquivalence;
      return t;
    }
    t.formula.mode = CheckableFormula::Mode::kTrace;
    t.formula.formula = build_formula(leaf);
    return t;
  }

  static std::vector<Requirement> required_events(const PropertyKind& kind) {
    switch (require_leaf(kind)) {
      case ir::PropertyLeaf::kAliveness:
      case ir::PropertyLeaf::kWeakAgreement:
      case ir::PropertyLeaf::kNonInjectiveAgreement:
      case ir::PropertyLeaf::kInjectiveAgreement:
        return {{EventLabel::kStart, LocationClass::kResponderFirstRecv},
                {EventLabel::kEnd, LocationClass::kInitiatorCompletion}};
      case ir::PropertyLeaf::kSecrecy:
        return {{EventLabel::kSecretDecl, LocationClass::kAtSubjectBinding}};
      case ir::PropertyLeaf::kForwardSecrecy:
        return {{EventLabel::kSessionKey, LocationClass::kAtSubjectBinding},
                {EventLabel::kLongTermKey, LocationClass::kRoleStart},
                {EventLabel::kLeaked, LocationClass::kEngineReveal}};
      case ir::PropertyLeaf::kPostCompromiseSecurity:
        return {
            {EventLabel::kSent, LocationClass::kAfterSendsMentioningKey},
            {EventLabel::kHeal, LocationClass::kUserHook},
            {EventLabel::kCompromise, LocationClass::kEngineReveal}};
      case ir::PropertyLeaf::kUnforgeability:
        return {{EventLabel::kSignEvent,
                 LocationClass::kAfterSigningBeforeSend},
                {EventLabel::kValidSig, LocationClass::kAfterVerification}};
      case ir::PropertyLeaf::kNonEquivocation:
        return {{EventLabel::kValidSig, LocationClass::kAfterVerification}};
      case ir::PropertyLeaf::kAnonymity:
        return {{EventLabel::kActor, LocationClass::kRoleStart}};
      case ir::PropertyLeaf::kUnlinkability:
        return {};
      case ir::PropertyLeaf::kTraceability:
        return {{EventLabel::kSendMsg, LocationClass::kEverySendOfRole}};
      case ir::PropertyLeaf::kNonRepudiation:
        return {{EventLabel::kSendMsg, LocationClass::kEverySendOfRole},
                {EventLabel::kObs, LocationClass::kAfterEveryRecvOfRole}};
      case ir::PropertyLeaf::kAccountability:
        return {{EventLabel::kJudged, LocationClass::kUserHook},
                {EventLabel::kSecretBind, LocationClass::kUserHook},
                {EventLabel::kTime, LocationClass::kUserHook}};
    }
    return {};
  }

  /// Binds a template to a concrete claim. Quantified variables keep their
  /// generality; claim-specific material (the traceability recipe, subject
  /// variable names, the unlinkability subjects) is substituted in.
  CheckableFormula instantiate(const PropertyTemplate& tmpl,
                               const ir::PropertyClaim& claim,
                               const ir::ProtocolSpec& spec) const {
    if (!tmpl.kind.leaf || *tmpl.kind.leaf != claim.kind) {
      throw MissingBinding("claim kind does not match template kind");
    }
    CheckableFormula out = tmpl.formula;
    auto need_role = [&](const char* key) -> std::string {
      auto it = claim.role_bindings.find(key);
      if (it == claim.role_bindings.end() || !spec.role(it->second)) {
        throw MissingBinding(std::string(key) + " role for " +
                             ir::leaf_name(claim.kind));
      }
      return it->second;
    };
    switch (claim.kind) {
      case ir::PropertyLeaf::kAliveness:
      case ir::PropertyLeaf::kWeakAgreement:
      case ir::PropertyLeaf::kNonInjectiveAgreement:
      case ir::PropertyLeaf::kInjectiveAgreement:
        need_role("initiator");
        need_role("responder");
        break;
      case ir::PropertyLeaf::kSecrecy:
      case ir::PropertyLeaf::kForwardSecrecy: {
        need_role("role");
        if (claim.subject_terms.size() != 1) {
          throw MissingBinding("subject term");
        }
        rename_var(out.formula, claim.kind == ir::PropertyLeaf::kSecrecy
                                    ? "x"
                                    : "k1",
                   claim.subject_terms[0]);
        break;
      }
      case ir::PropertyLeaf::kPostCompromiseSecurity:
        need_role("role");
        if (!claim.label_options.count("heal")) {
          throw MissingBinding("heal event label");
        }
        break;
      case ir::PropertyLeaf::kUnforgeability:
      case ir::PropertyLeaf::kNonEquivocation:
        need_role("signer");
        need_role("verifier");
        break;
      case ir::PropertyLeaf::kAnonymity:
        need_role("role");
        if (claim.subject_terms.size() != 1) {
          throw MissingBinding("id term");
        }
        rename_var(out.formula, "id", claim.subject_terms[0]);
        break;
      case ir::PropertyLeaf::kUnlinkability: {
        out.eq_role = need_role("role");
        if (claim.subject_terms.size() != 2) {
          throw MissingBinding("two subject names");
        }
        out.eq_left = claim.subject_terms[0];
        out.eq_right = claim.subject_terms[1];
        break;
      }
      case ir::PropertyLeaf::kTraceability: {
        need_role("sender");
        auto it = claim.term_options.find("recipe");
        if (it == claim.term_options.end()) {
          throw MissingBinding("recipe term");
        }
        // computeId(m) = A with computeId spelled out by the claim.
        std::unordered_map<ir::TermId, ir::TermId> sub;
        sub.emplace(a_.var("msg"), a_.var("m"));
        ir::TermId applied = a_.substitute(it->second, sub);
        for (auto& goal : out.formula.goals) {
          if (goal.kind == ConstraintKind::kEq &&
              goal.term_a == a_.var("computeId_m")) {
            goal.term_a = applied;
          }
        }
        break;
      }
      case ir::PropertyLeaf::kNonRepudiation:
        need_role("sender");
        need_role("observer");
        break;
      case ir::PropertyLeaf::kAccountability:
        need_role("judge");
        for (const char* key : {"judged", "bind", "time"}) {
          if (!claim.label_options.count(key)) {
            throw MissingBinding(std::string(key) + " event label");
          }
        }
        break;
    }
    return out;
  }

 private:
  ir::TermId v(const char* name) const { return a_.var(name); }

  /// Alpha-renames one quantified variable so the instantiated formula
  /// reads in the claim's own vocabulary.
  void rename_var(GuardedFormula& f, const std::string& from,
                  ir::TermId to) const {
    if (a_.kind(to) != ir::TermKind::kVar) return;
    std::unordered_map<ir::TermId, ir::TermId> sub;
    sub.emplace(a_.var(from), to);
    auto fix_terms = [&](std::vector<ir::TermId>& ts) {
      for (auto& t : ts) t = a_.substitute(t, sub);
    };
    fix_terms(f.universals);
    fix_terms(f.existentials);
    for (auto& p : f.premises) fix_terms(p.args);
    for (auto& c : f.conclusions) fix_terms(c.args);
    for (auto& k : f.premise_knowledge) k.term = a_.substitute(k.term, sub);
    for (auto& c : f.guards) {
      if (c.term_a != ir::kNoTerm) c.term_a = a_.substitute(c.term_a, sub);
      if (c.term_b != ir::kNoTerm) c.term_b = a_.substitute(c.term_b, sub);
    }
    for (auto& c : f.goals) {
      if (c.term_a != ir::kNoTerm) c.term_a = a_.substitute(c.term_a, sub);
      if (c.term_b != ir::kNoTerm) c.term_b = a_.substitute(c.term_b, sub);
    }
    if (f.negated_uniqueness) fix_terms(f.negated_uniqueness->args);
  }

  GuardedFormula build_formula(ir::PropertyLeaf leaf) const {
    GuardedFormula f;
    switch (leaf) {
      case ir::PropertyLeaf::kAliveness: {
        // forall A,B,i: end(A,B,i) => exists j: start(B,j)
        // end/start project the instrumented End/Start onto the printed
        // arities: unconstrained positions are wildcard variables.
        f.universals = {v("A"), v("B"), v("_t1")};
        f.premises = {{EventLabel::kEnd, {v("A"), v("B"), v("_t1")}, "i"}};
        f.existentials = {v("_A2"), v("_t2")};
        f.conclusions = {
            {EventLabel::kStart, {v("B"), v("_A2"), v("_t2")}, "j"}};
        break;
      }
      case ir::PropertyLeaf::kWeakAgreement: {
        // forall A,B,t1,i: end(A,B,t1,i) => exists t2,j: start(B,A,t2,j)
        f.universals = {v("A"), v("B"), v("t1")};
        f.premises = {{EventLabel::kEnd, {v("A"), v("B"), v("t1")}, "i"}};
        f.existentials = {v("t2")};
        f.conclusions = {{EventLabel::kStart, {v("B"), v("A"), v("t2")}, "j"}};
        break;
      }
      case ir::PropertyLeaf::kNonInjectiveAgreement: {
        // forall A,B,t,i: end(A,B,t,i) => exists j: start(B,A,t,j)
        f.universals = {v("A"), v("B"), v("t")};
        f.premises = {{EventLabel::kEnd, {v("A"), v("B"), v("t")}, "i"}};
        f.conclusions = {{EventLabel::kStart, {v("B"), v("A"), v("t")}, "j"}};
        break;
      }
      case ir::PropertyLeaf::kInjectiveAgreement: {
        // forall A,B,t,i: end(A,B,t,i) =>
        //   exists j: start(B,A,t,j) & j < i
        //   & not exists A2,B2,i2: end(A2,B2,t,i2) & i2 != i
        f.universals = {v("A"), v("B"), v("t")};
        f.premises = {{EventLabel::kEnd, {v("A"), v("B"), v("t")}, "i"}};
        f.conclusions = {{EventLabel::kStart, {v("B"), v("A"), v("t")}, "j"}};
        f.goals = {{ConstraintKind::kBefore, "j", "i"}};
        f.negated_uniqueness =
            EventPattern{EventLabel::kEnd, {v("A2"), v("B2"), v("t")}, "i2"};
        f.uniqueness_anchor = "i";
        break;
      }
      case ir::PropertyLeaf::kSecrecy: {
        // forall x: secret(x) => not K(x)
        f.universals = {v("x")};
        f.premises = {{EventLabel::kSecretDecl, {v("x")}, "i"}};
        f.goals = {
            {ConstraintKind::kNotKnown, "", "", v("x"), ir::kNoTerm}};
        break;
      }
      case ir::PropertyLeaf::kForwardSecrecy: {
        // forall ltk,k1,t1,t2: sessionKey(k1,t1) & longTermKey(ltk)
        //   & leaked(ltk,t2) & t1 < t2 => not K(k1)
        f.universals = {v("ltk"), v("k1")};
        f.premises = {{EventLabel::kSessionKey, {v("k1")}, "t1"},
                      {EventLabel::kLongTermKey, {v("ltk")}, "tl"},
                      {EventLabel::kLeaked, {v("ltk")}, "t2"}};
        f.guards = {{ConstraintKind::kBefore, "t1", "t2"}};
        f.goals = {
            {ConstraintKind::kNotKnown, "", "", v("k1"), ir::kNoTerm}};
        break;
      }
      case ir::PropertyLeaf::kPostCompromiseSecurity: {
        // forall A,B,sck,sid,i,j,k: sent(sid,A,B,sck,i) & K(sck,j)
        //   & heal(sid,A,B,k) & k < i
        //   => exists l: compromise(sid,A,B,l) & k < l
        f.universals = {v("sid"), v("A"), v("B"), v("sck")};
        f.premises = {
            {EventLabel::kSent, {v("sid"), v("A"), v("B"), v("sck")}, "i"},
            {EventLabel::kHeal, {v("sid"), v("A"), v("B")}, "k"}};
        f.premise_knowledge = {{v("sck"), "j"}};
        f.guards = {{ConstraintKind::kBefore, "k", "i"}};
        f.conclusions = {
            {EventLabel::kCompromise, {v("sid"), v("A"), v("B")}, "l"}};
        f.goals = {{ConstraintKind::kBefore, "k", "l"}};
        break;
      }
      case ir::PropertyLeaf::kUnforgeability: {
        // forall A,m,sig: valid_sig(A,m,sig) => exists i: sign_event(A,m,sig,i)
        f.universals = {v("A"), v("m"), v("sig")};
        f.premises = {
            {EventLabel::kValidSig, {v("A"), v("m"), v("sig")}, "iv"}};
        f.conclusions = {
            {EventLabel::kSignEvent, {v("A"), v("m"), v("sig")}, "i"}};
        break;
      }
      case ir::PropertyLeaf::kNonEquivocation: {
        // forall k,m1,m2: valid_sig(k,m1) & valid_sig(k,m2) => m1 = m2
        f.universals = {v("k"), v("m1"), v("m2"), v("_s1"), v("_s2")};
        f.premises = {
            {EventLabel::kValidSig, {v("k"), v("m1"), v("_s1")}, "i1"},
            {EventLabel::kValidSig, {v("k"), v("m2"), v("_s2")}, "i2"}};
        f.goals = {{ConstraintKind::kEq, "", "", v("m1"), v("m2")}};
        break;
      }
      case ir::PropertyLeaf::kAnonymity: {
        // forall B,id: actor(B,id) => not K(id)
        f.universals = {v("B"), v("id")};
        f.premises = {{EventLabel::kActor, {v("B"), v("id")}, "i"}};
        f.goals = {
            {ConstraintKind::kNotKnown, "", "", v("id"), ir::kNoTerm}};
        break;
      }
      case ir::PropertyLeaf::kUnlinkability:
        break;  // handled by the equivalence path
      case ir::PropertyLeaf::kTraceability: {
        // forall A,m: send(A,m) => computeId(m) = A
        f.universals = {v("A"), v("m")};
        f.premises = {{EventLabel::kSendMsg, {v("A"), v("m")}, "i"}};
        f.goals = {
            {ConstraintKind::kEq, "", "", v("computeId_m"), v("A")}};
        break;
      }
      case ir::PropertyLeaf::kNonRepudiation: {
        // forall m: obs(m) => sent(m), with sent(m) read as the existential
        // projection of SendMsg(A, m).
        f.universals = {v("m")};
        f.premises = {{EventLabel::kObs, {v("m")}, "io"}};
        f.existentials = {v("_A")};
        f.conclusions = {{EventLabel::kSendMsg, {v("_A"), v("m")}, "j"}};
        break;
      }
      case ir::PropertyLeaf::kAccountability: {
        // not exists c,sk,t,i,j,k,l:
        //   Judged(t,c,i) & Secret(c,sk,j) & K(sk,k) & Time(t,l) & k < l
        f.outer_negation = true;
        f.universals = {v("c"), v("sk"), v("t")};
        f.premises = {{EventLabel::kJudged, {v("t"), v("c")}, "i"},
                      {EventLabel::kSecretBind, {v("c"), v("sk")}, "j"},
                      {EventLabel::kTime, {v("t")}, "l"}};
        f.premise_knowledge = {{v("sk"), "k"}};
        f.guards = {{ConstraintKind::kBefore, "k", "l"}};
        break;
      }
    }
    return f;
  }

  ir::TermArena& a_;
};

}  // namespace veritax::tax

#endif  // VERITAX_TAXONOMY_TEMPLATES_HPP_
