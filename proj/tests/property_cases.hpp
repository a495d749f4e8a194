// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0
//
// The per-kind fidelity table: for each taxonomy leaf, one hand-built
// satisfying trace and one hand-built violating trace, written by direct
// instantiation of the formal definitions. Shared by the unit suite and
// the acceptance suite.

#ifndef VERITAX_TESTS_PROPERTY_CASES_HPP_
#define VERITAX_TESTS_PROPERTY_CASES_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "veritax/dsl/parser.hpp"
#include "veritax/engine/eval.hpp"
#include "veritax/engine/static_equiv.hpp"
#include "veritax/engine/trace.hpp"
#include "veritax/taxonomy/templates.hpp"

namespace vtest {

using namespace veritax;

struct PropertyCase {
  ir::PropertyLeaf kind;
  // Trace-mode cases carry traces; the unlinkability case carries frames.
  dy::Trace satisfying;
  dy::Trace violating;
  std::vector<ir::TermId> frame_base;   // unlinkability only
  std::vector<ir::TermId> frame_sat;    // equivalent counterpart
  std::vector<ir::TermId> frame_vio;    // distinguishable counterpart
};

struct PropertyFixture {
  std::shared_ptr<ir::TermArena> arena;
  std::vector<ir::RewriteRule> rules;
  std::unique_ptr<ir::Rewriter> rw;
  std::unique_ptr<dy::Deduction> ded;
  std::unique_ptr<tax::Taxonomy> tax;
  std::vector<PropertyCase> cases;
  std::vector<tax::CheckableFormula> formulas;  // indexed by leaf

  const tax::CheckableFormula& formula(ir::PropertyLeaf kind) const {
    return formulas[static_cast<size_t>(kind)];
  }
};

inline PropertyFixture make_property_fixture() {
  PropertyFixture fx;
  fx.arena = std::make_shared<ir::TermArena>(ir::builtin_signature());
  fx.rules = ir::builtin_rules(*fx.arena);
  fx.rw = std::make_unique<ir::Rewriter>(*fx.arena, fx.rules);
  fx.ded = std::make_unique<dy::Deduction>(*fx.arena, *fx.rw);
  fx.tax = std::make_unique<tax::Taxonomy>(*fx.arena);
  ir::TermArena& a = *fx.arena;

  // Formula per kind; traceability gets its recipe through instantiate on
  // a miniature spec so the real claim path is exercised.
  fx.formulas.resize(ir::kLeafCount);
  for (int i = 0; i < ir::kLeafCount; ++i) {
    auto leaf = static_cast<ir::PropertyLeaf>(i);
    auto tmpl = fx.tax->lookup(tax::PropertyKind::of(leaf));
    if (leaf == ir::PropertyLeaf::kTraceability) {
      auto parsed = dsl::parse(R"(protocol "t" {
        roles { S(s: identity, r: identity) {
          fresh payload;
          send sign(pair(s, payload), ltk(s));
        } }
        claims { traceability(sender: S, recipe: fst(getmsg(msg))); }
      })");
      if (!parsed.ok()) throw std::runtime_error("traceability mini-spec");
      // Rebuild the claim's recipe in the shared arena before instantiating.
      ir::PropertyClaim claim = parsed.spec->claims[0];
      claim.term_options["recipe"] =
          a.app("fst", {a.app("getmsg", {a.var("msg")})});
      ir::ProtocolSpec shim = *parsed.spec;
      shim.arena = fx.arena;
      fx.formulas[i] = fx.tax->instantiate(tmpl, claim, shim);
    } else {
      fx.formulas[i] = tmpl.formula;
    }
  }

  ir::TermId alice = a.name("alice");
  ir::TermId bob = a.name("bob");
  ir::TermId charlie = a.name("charlie");
  ir::TermId t1 = a.name("t1", ir::Freshness::kFresh);
  ir::TermId t2 = a.name("t2", ir::Freshness::kFresh);
  ir::TermId secret = a.name("s", ir::Freshness::kFresh);
  ir::TermId skey = a.name("k", ir::Freshness::kFresh);
  ir::TermId ltkey = a.name("lt", ir::Freshness::kFresh);
  ir::TermId sid = a.name("sid", ir::Freshness::kFresh);
  ir::TermId sck = a.name("sck", ir::Freshness::kFresh);
  ir::TermId m = a.name("m", ir::Freshness::kFresh);
  ir::TermId m2 = a.name("m2", ir::Freshness::kFresh);
  ir::TermId sg1 = a.name("sg1", ir::Freshness::kFresh);
  ir::TermId sg2 = a.name("sg2", ir::Freshness::kFresh);
  ir::TermId idv = a.name("idv", ir::Freshness::kFresh);
  ir::TermId cert = a.name("cert", ir::Freshness::kFresh);
  ir::TermId csk = a.name("csk", ir::Freshness::kFresh);
  ir::TermId ts = a.name("ts", ir::Freshness::kFresh);

  dy::Knowledge knows_secret{{}, {secret}};
  dy::Knowledge knows_skey{{}, {skey}};
  dy::Knowledge knows_sck{{}, {sck}};
  dy::Knowledge knows_id{{}, {idv}};
  dy::Knowledge knows_csk{{}, {csk}};

  using L = tax::EventLabel;
  auto add_case = [&](ir::PropertyLeaf kind, dy::Trace sat, dy::Trace vio) {
    fx.cases.push_back({kind, std::move(sat), std::move(vio), {}, {}, {}});
  };

  {  // aliveness: end(A,B,i) => exists j: start(B,j)
    dy::Trace sat, vio;
    sat.add(L::kStart, {bob, alice, t1}).add(L::kEnd, {alice, bob, t1});
    vio.add(L::kEnd, {alice, bob, t1});
    add_case(ir::PropertyLeaf::kAliveness, sat, vio);
  }
  {  // weak agreement: start may carry different data but the right peer
    dy::Trace sat, vio;
    sat.add(L::kStart, {bob, alice, t2}).add(L::kEnd, {alice, bob, t1});
    vio.add(L::kStart, {bob, charlie, t1}).add(L::kEnd, {alice, bob, t1});
    add_case(ir::PropertyLeaf::kWeakAgreement, sat, vio);
  }
  {  // non-injective agreement: same peer and same data required
    dy::Trace sat, vio;
    sat.add(L::kStart, {bob, alice, t1}).add(L::kEnd, {alice, bob, t1});
    vio.add(L::kStart, {bob, alice, t2}).add(L::kEnd, {alice, bob, t1});
    add_case(ir::PropertyLeaf::kNonInjectiveAgreement, sat, vio);
  }
  {  // injective agreement: a second completion on the same data breaks it
    dy::Trace sat, vio;
    sat.add(L::kStart, {bob, alice, t1}).add(L::kEnd, {alice, bob, t1});
    vio.add(L::kStart, {bob, alice, t1})
        .add(L::kEnd, {alice, bob, t1})
        .add(L::kEnd, {charlie, bob, t1});
    add_case(ir::PropertyLeaf::kInjectiveAgreement, sat, vio);
  }
  {  // secrecy: secret(x) => not K(x)
    dy::Trace sat, vio;
    sat.add(L::kSecretDecl, {secret});
    vio.snapshots = {knows_secret};
    vio.add(L::kSecretDecl, {secret});
    add_case(ir::PropertyLeaf::kSecrecy, sat, vio);
  }
  {  // forward secrecy: session key before the leak must stay unknown
    dy::Trace sat, vio;
    sat.add(L::kLongTermKey, {ltkey})
        .add(L::kSessionKey, {skey})
        .add(L::kLeaked, {ltkey});
    vio.snapshots = {knows_skey};
    vio.add(L::kLongTermKey, {ltkey})
        .add(L::kSessionKey, {skey})
        .add(L::kLeaked, {ltkey});
    add_case(ir::PropertyLeaf::kForwardSecrecy, sat, vio);
  }
  {  // post-compromise security: a known post-heal key implies a
     // post-heal compromise
    dy::Trace sat, vio;
    sat.snapshots = {knows_sck};
    sat.add(L::kHeal, {sid, alice, bob})
        .add(L::kSent, {sid, alice, bob, sck})
        .add(L::kCompromise, {sid, alice, bob});
    vio.snapshots = {knows_sck};
    vio.add(L::kHeal, {sid, alice, bob})
        .add(L::kSent, {sid, alice, bob, sck});
    add_case(ir::PropertyLeaf::kPostCompromiseSecurity, sat, vio);
  }
  {  // unforgeability: every accepted signature was produced
    dy::Trace sat, vio;
    sat.add(L::kSignEvent, {alice, m, sg1}).add(L::kValidSig, {alice, m, sg1});
    vio.add(L::kValidSig, {alice, m, sg1});
    add_case(ir::PropertyLeaf::kUnforgeability, sat, vio);
  }
  {  // non-equivocation: one key never validates two messages
    dy::Trace sat, vio;
    sat.add(L::kValidSig, {alice, m, sg1}).add(L::kValidSig, {alice, m, sg2});
    vio.add(L::kValidSig, {alice, m, sg1}).add(L::kValidSig, {alice, m2, sg2});
    add_case(ir::PropertyLeaf::kNonEquivocation, sat, vio);
  }
  {  // anonymity: actor(B,id) => not K(id)
    dy::Trace sat, vio;
    sat.add(L::kActor, {bob, idv});
    vio.snapshots = {knows_id};
    vio.add(L::kActor, {bob, idv});
    add_case(ir::PropertyLeaf::kAnonymity, sat, vio);
  }
  {  // unlinkability: frames, not traces; P(s)|P(s) vs P(s)|P(t)
    PropertyCase c;
    c.kind = ir::PropertyLeaf::kUnlinkability;
    ir::TermId s1 = a.name("s1", ir::Freshness::kFresh);
    ir::TermId s2 = a.name("s2", ir::Freshness::kFresh);
    ir::TermId r1 = a.name("r1", ir::Freshness::kFresh);
    ir::TermId r2 = a.name("r2", ir::Freshness::kFresh);
    // Randomized sessions stay unlinkable...
    c.frame_base = {a.app("senc", {s1, r1}), a.app("senc", {s1, r2})};
    c.frame_sat = {a.app("senc", {s1, r1}), a.app("senc", {s2, r2})};
    // ...bare session identifiers do not.
    c.frame_vio = {s1, s2};
    fx.cases.push_back(std::move(c));
  }
  {  // traceability: computeId(m) = A under recipe fst(getmsg(msg))
    dy::Trace sat, vio;
    ir::TermId good = a.app("sign", {a.app("pair", {alice, m}), ltkey});
    ir::TermId bad = a.app("sign", {a.app("pair", {bob, m}), ltkey});
    sat.add(L::kSendMsg, {alice, good});
    vio.add(L::kSendMsg, {alice, bad});
    add_case(ir::PropertyLeaf::kTraceability, sat, vio);
  }
  {  // non-repudiation: obs(m) => sent(m)
    dy::Trace sat, vio;
    sat.add(L::kSendMsg, {alice, m}).add(L::kObs, {m});
    vio.add(L::kObs, {m});
    add_case(ir::PropertyLeaf::kNonRepudiation, sat, vio);
  }
  {  // accountability: no judged certificate whose secret leaked before
     // its timestamp
    dy::Trace sat, vio;
    sat.add(L::kSecretBind, {cert, csk})
        .add(L::kTime, {ts})
        .add(L::kJudged, {ts, cert});
    vio.snapshots = {knows_csk};
    vio.add(L::kSecretBind, {cert, csk})
        .add(L::kTime, {ts})
        .add(L::kJudged, {ts, cert});
    add_case(ir::PropertyLeaf::kAccountability, sat, vio);
  }
  return fx;
}

/// Evaluates one side of a case: trace formulas through eval_formula,
/// the unlinkability marker through bounded static equivalence.
inline bool eval_case_side(PropertyFixture& fx, const PropertyCase& c,
                           bool satisfying) {
  if (c.kind == ir::PropertyLeaf::kUnlinkability) {
    dy::StaticEquivalence se(*fx.arena, *fx.rw);
    const auto& other = satisfying ? c.frame_sat : c.frame_vio;
    std::vector<ir::TermId> base =
        satisfying ? c.frame_base
                   : std::vector<ir::TermId>{fx.arena->name(
                         "s1", ir::Freshness::kFresh),
                                             fx.arena->name(
                                                 "s1", ir::Freshness::kFresh)};
    if (!satisfying) {
      // left system: both sessions expose the same id
      ir::TermId s1 = fx.arena->name("s1", ir::Freshness::kFresh);
      base = {s1, s1};
    }
    return se.check(base, other, 4).equivalent;
  }
  const dy::Trace& tr = satisfying ? c.satisfying : c.violating;
  return dy::eval_formula(*fx.ded, fx.formula(c.kind), tr);
}

}  // namespace vtest

#endif  // VERITAX_TESTS_PROPERTY_CASES_HPP_
