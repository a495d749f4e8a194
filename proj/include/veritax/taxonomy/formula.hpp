// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_TAXONOMY_FORMULA_HPP_
#define VERITAX_TAXONOMY_FORMULA_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "veritax/ir/spec.hpp"
#include "veritax/ir/term.hpp"

namespace veritax::tax {

/// Every predicate symbol of the property definitions maps to exactly one
/// event label; traces are sequences of these with ground arguments.
enum class EventLabel : uint8_t {
  kEnd,          // End(A, B, t)        completion, apparently with B, data t
  kStart,        // Start(B, A, t)      B running, apparently with A, data t
  kValidSig,     // ValidSig(A, m, sig) sig checks out under A's key
  kSignEvent,    // SignEvent(A, m, sig)
  kSecretDecl,   // SecretDecl(x)
  kSessionKey,   // SessionKey(k)
  kLongTermKey,  // LongTermKey(ltk)
  kLeaked,       // Leaked(k)
  kSent,         // Sent(sid, A, B, sck)
  kHeal,         // Heal(sid, A, B)
  kCompromise,   // Compromise(sid, A, B)
  kActor,        // Actor(B, id)
  kSendMsg,      // SendMsg(A, m)
  kObs,          // Obs(m)
  kJudged,       // Judged(t, c)
  kSecretBind,   // SecretBind(c, sk)
  kTime,         // Time(t)
};

inline constexpr int kEventLabelCount = 17;

struct EventLabelInfo {
  const char* name;
  int arity;
  // Positions holding principal identities; premises range over honest
  // principals at these positions when a trace carries an honest set.
  std::array<int8_t, 2> identity_positions;
};

inline const EventLabelInfo& label_info(EventLabel label) {
  static const std::array<EventLabelInfo, kEventLabelCount> table = {{
      {"End", 3, {0, 1}},
      {"Start", 3, {0, 1}},
      {"ValidSig", 3, {0, -1}},
      {"SignEvent", 3, {0, -1}},
      {"SecretDecl", 1, {-1, -1}},
      {"SessionKey", 1, {-1, -1}},
      {"LongTermKey", 1, {-1, -1}},
      {"Leaked", 1, {-1, -1}},
      {"Sent", 4, {1, 2}},
      {"Heal", 3, {1, 2}},
      {"Compromise", 3, {1, 2}},
      {"Actor", 2, {0, -1}},
      {"SendMsg", 2, {0, -1}},
      {"Obs", 1, {-1, -1}},
      {"Judged", 2, {-1, -1}},
      {"SecretBind", 2, {-1, -1}},
      {"Time", 1, {-1, -1}},
  }};
  return table[static_cast<size_t>(label)];
}

inline bool label_from_name(const std::string& name, EventLabel& out) {
  for (int i = 0; i < kEventLabelCount; ++i) {
    if (name == label_info(static_cast<EventLabel>(i)).name) {
      out = static_cast<EventLabel>(i);
      return true;
    }
  }
  return false;
}

/// An event atom inside a formula: argument patterns over formula variables
/// plus a time variable naming the trace position it matched at.
struct EventPattern {
  EventLabel label = EventLabel::kEnd;
  std::vector<ir::TermId> args;
  std::string time_var;
};

/// K(x) or K(x, j). An empty time variable means attacker knowledge at the
/// end of the trace, the strongest reading of the untimed form.
struct KnowledgePattern {
  ir::TermId term = ir::kNoTerm;
  std::string time_var;
};

enum class ConstraintKind { kBefore, kNotEqual, kEq, kNotKnown };

struct Constraint {
  ConstraintKind kind = ConstraintKind::kBefore;
  std::string time_a, time_b;       // kBefore / kNotEqual
  ir::TermId term_a = ir::kNoTerm;  // kEq / kNotKnown
  ir::TermId term_b = ir::kNoTerm;  // kEq
};

/// The guarded-correspondence fragment: a universal prefix over premise
/// atoms implying an existential prefix over conclusion atoms, with side
/// constraints limited to time ordering, time inequality, term equality,
/// negated knowledge and one negated-uniqueness block. `guards` sit on the
/// premise side of the implication, `goals` on the conclusion side.
struct GuardedFormula {
  std::vector<ir::TermId> universals;
  std::vector<EventPattern> premises;
  std::vector<KnowledgePattern> premise_knowledge;
  std::vector<Constraint> guards;
  std::vector<ir::TermId> existentials;
  std::vector<EventPattern> conclusions;
  std::vector<Constraint> goals;
  // Injective agreement's "no second completion": no event matches this
  // pattern at a time distinct from `uniqueness_anchor`. Pattern variables
  // not bound elsewhere are existential inside the negation.
  std::optional<EventPattern> negated_uniqueness;
  std::string uniqueness_anchor;
  // Accountability's shape: not(exists vars. premises && guards).
  bool outer_negation = false;
};

/// A formula ready for trace evaluation, or the equivalence marker that the
/// engine routes to its static-equivalence path.
struct CheckableFormula {
  enum class Mode { kTrace, kEquivalence };
  Mode mode = Mode::kTrace;
  ir::PropertyLeaf kind = ir::PropertyLeaf::kSecrecy;
  GuardedFormula formula;
  // Only events carrying this tag feed the formula; empty matches any tag.
  std::string group;
  // Equivalence mode: role whose sessions are compared, and the two
  // subject names of "P(s) | P(s) ~ P(s) | P(t)".
  std::string eq_role;
  ir::TermId eq_left = ir::kNoTerm;
  ir::TermId eq_right = ir::kNoTerm;
};

}  // namespace veritax::tax

#endif  // VERITAX_TAXONOMY_FORMULA_HPP_
