// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <set>

#include "test_support.hpp"
#include "veritax/engine/static_equiv.hpp"

using namespace veritax;

namespace {

struct Setup {
  std::shared_ptr<ir::TermArena> arena = vtest::builtin_arena();
  std::vector<ir::RewriteRule> rules = ir::builtin_rules(*arena);
  ir::Rewriter rw{*arena, rules};
  dy::StaticEquivalence se{*arena, rw};
};

/// Independent oracle: fixpoint collection of value-pair representatives
/// (frame-relevant ones seed deeper recipes, exactly the bound semantics),
/// then a quadratic scan for equality mismatches plus a reducibility scan.
bool oracle_equivalent(Setup& s, const std::vector<ir::TermId>& f1,
                       const std::vector<ir::TermId>& f2, int depth) {
  auto& a = *s.arena;
  std::set<ir::TermId> closure1, closure2;
  std::function<void(ir::TermId, std::set<ir::TermId>&)> walk =
      [&](ir::TermId t, std::set<ir::TermId>& out) {
        if (!out.insert(s.rw.normalize(t)).second) return;
        if (a.kind(t) == ir::TermKind::kApp) {
          for (ir::TermId arg : a.args(t)) walk(arg, out);
        }
      };
  for (ir::TermId t : f1) walk(t, closure1);
  for (ir::TermId t : f2) walk(t, closure2);

  struct Entry {
    ir::TermId v1, v2;
    int level;
  };
  std::vector<Entry> entries;
  std::set<std::pair<ir::TermId, ir::TermId>> seen;
  auto add = [&](ir::TermId v1, ir::TermId v2, int level, bool force) {
    if (!seen.insert({v1, v2}).second) return;
    if (force || closure1.count(v1) || closure2.count(v2)) {
      entries.push_back({v1, v2, level});
    }
  };
  for (size_t i = 0; i < f1.size(); ++i) {
    add(s.rw.normalize(f1[i]), s.rw.normalize(f2[i]), 0, true);
  }
  for (const auto& fn : a.signature().functions()) {
    if (fn.kind == ir::FnKind::kConstant && !fn.is_private) {
      add(a.app(fn.name, {}), a.app(fn.name, {}), 0, true);
    }
  }
  std::set<ir::TermId> pubnames;
  for (ir::TermId t : f1) walk(t, closure1);
  std::function<void(ir::TermId)> names = [&](ir::TermId t) {
    if (a.kind(t) == ir::TermKind::kName && !a.is_fresh_name(t)) {
      pubnames.insert(t);
    }
    if (a.kind(t) == ir::TermKind::kApp) {
      for (ir::TermId arg : a.args(t)) names(arg);
    }
  };
  for (ir::TermId t : f1) names(t);
  for (ir::TermId t : f2) names(t);
  for (ir::TermId t : pubnames) add(t, t, 0, true);

  bool reducibility_mismatch = false;
  // Fixpoint: keep composing until no new pair appears within the depth.
  bool changed = true;
  while (changed && !reducibility_mismatch) {
    changed = false;
    size_t count = entries.size();
    for (const auto& fn : a.signature().functions()) {
      if (fn.is_private || fn.arity == 0) continue;
      std::function<void(std::vector<size_t>&)> rec =
          [&](std::vector<size_t>& picked) {
            if (reducibility_mismatch) return;
            if (picked.size() == static_cast<size_t>(fn.arity)) {
              int maxlvl = 0;
              std::vector<ir::TermId> a1, a2;
              for (size_t k : picked) {
                maxlvl = std::max(maxlvl, entries[k].level);
                a1.push_back(entries[k].v1);
                a2.push_back(entries[k].v2);
              }
              if (maxlvl + 1 > depth) return;
              ir::TermId raw1 = a.app(fn.name, a1);
              ir::TermId raw2 = a.app(fn.name, a2);
              ir::TermId v1 = s.rw.normalize(raw1);
              ir::TermId v2 = s.rw.normalize(raw2);
              if (fn.kind == ir::FnKind::kDestructor) {
                if ((v1 != raw1) != (v2 != raw2)) {
                  reducibility_mismatch = true;
                  return;
                }
                if (v1 == raw1) return;  // stuck on both sides
              }
              size_t before = entries.size();
              add(v1, v2, maxlvl + 1, false);
              changed |= entries.size() != before;
              return;
            }
            for (size_t k = 0; k < count; ++k) {
              picked.push_back(k);
              rec(picked);
              picked.pop_back();
            }
          };
      std::vector<size_t> picked;
      rec(picked);
    }
  }
  if (reducibility_mismatch) return false;
  for (const auto& e1 : entries) {
    for (const auto& e2 : entries) {
      if ((e1.v1 == e2.v1) != (e1.v2 == e2.v2)) return false;
    }
  }
  // seen also holds non-retained pairs; they participate in equality too.
  for (const auto& p : seen) {
    for (const auto& q : seen) {
      if ((p.first == q.first) != (p.second == q.second)) return false;
    }
  }
  return true;
}

ir::TermId random_frame_term(ir::TermArena& a, std::mt19937_64& rng) {
  std::vector<ir::TermId> atoms = {a.name("a"), a.name("b"),
                                   a.name("k", ir::Freshness::kFresh),
                                   a.name("n", ir::Freshness::kFresh)};
  std::uniform_int_distribution<size_t> pick(0, atoms.size() - 1);
  std::uniform_int_distribution<int> shape(0, 5);
  switch (shape(rng)) {
    case 0: return atoms[pick(rng)];
    case 1: return a.app("senc", {atoms[pick(rng)], atoms[pick(rng)]});
    case 2: return a.app("pair", {atoms[pick(rng)], atoms[pick(rng)]});
    case 3: return a.app("h", {atoms[pick(rng)]});
    case 4:
      return a.app("senc", {a.app("pair", {atoms[pick(rng)], atoms[pick(rng)]}),
                            atoms[pick(rng)]});
    default: return a.app("pk", {atoms[pick(rng)]});
  }
}

}  // namespace

TEST_CASE("static equivalence matches the operation examples") {
  Setup s;
  auto& a = *s.arena;
  ir::TermId pa = a.name("a");
  ir::TermId pb = a.name("b");
  ir::TermId k = a.name("k", ir::Freshness::kFresh);

  SECTION("ciphertexts under a secret key are indistinguishable") {
    auto r = s.se.check({a.app("senc", {pa, k})}, {a.app("senc", {pb, k})}, 4);
    CHECK(r.equivalent);
  }
  SECTION("revealing the key separates the frames") {
    std::vector<ir::TermId> f1 = {a.app("senc", {pa, k}), k};
    std::vector<ir::TermId> f2 = {a.app("senc", {pb, k}), k};
    auto r = s.se.check(f1, f2, 4);
    REQUIRE_FALSE(r.equivalent);
    REQUIRE(r.witness.has_value());
    // Any reported witness must replay as a genuine distinguishing test.
    CHECK(dy::witness_distinguishes(a, s.rw, *r.witness, f1, f2));
  }
  SECTION("reflexivity") {
    std::vector<ir::TermId> frame = {a.app("senc", {pa, k}), a.app("h", {pa})};
    auto r = s.se.check(frame, frame, 4);
    CHECK(r.equivalent);
  }
  SECTION("reducibility difference is observable without public payloads") {
    ir::TermId n = a.name("n", ir::Freshness::kFresh);
    ir::TermId k2 = a.name("k2", ir::Freshness::kFresh);
    auto r = s.se.check({a.app("senc", {n, k}), k},
                        {a.app("senc", {n, k}), k2}, 3);
    REQUIRE_FALSE(r.equivalent);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->kind ==
          dy::DistinguishingTest::Kind::kReducibilityMismatch);
  }
}

TEST_CASE("static equivalence agrees with the enumeration oracle") {
  Setup s;
  auto& a = *s.arena;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<size_t> nterms(1, 4);
  std::uniform_int_distribution<int> dpick(1, 4);
  int agreements = 0;
  int inequivalent = 0;
  for (int i = 0; i < 110; ++i) {
    size_t n = nterms(rng);
    std::vector<ir::TermId> f1, f2;
    for (size_t j = 0; j < n; ++j) {
      ir::TermId t1 = s.rw.normalize(random_frame_term(a, rng));
      f1.push_back(t1);
      // Half the time mutate the right side, otherwise mirror it.
      if (std::uniform_int_distribution<int>(0, 1)(rng)) {
        f2.push_back(s.rw.normalize(random_frame_term(a, rng)));
      } else {
        f2.push_back(t1);
      }
    }
    int depth = dpick(rng);
    bool impl = s.se.check(f1, f2, depth).equivalent;
    bool oracle = oracle_equivalent(s, f1, f2, depth);
    REQUIRE(impl == oracle);
    ++agreements;

    // Symmetry always holds.
    REQUIRE(s.se.check(f2, f1, depth).equivalent == impl);

    if (!impl) {
      ++inequivalent;
      // Appending a shared term never flips inequivalent to equivalent.
      std::vector<ir::TermId> g1 = f1, g2 = f2;
      ir::TermId extra = s.rw.normalize(random_frame_term(a, rng));
      g1.push_back(extra);
      g2.push_back(extra);
      REQUIRE_FALSE(s.se.check(g1, g2, depth).equivalent);
    }
  }
  CHECK(agreements >= 100);
  CHECK(inequivalent > 5);  // the corpus exercises both outcomes
}
