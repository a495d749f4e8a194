// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "test_support.hpp"
#include "veritax/engine/knowledge.hpp"

using namespace veritax;

namespace {

struct Setup {
  std::shared_ptr<ir::TermArena> arena = vtest::builtin_arena();
  std::vector<ir::RewriteRule> rules = ir::builtin_rules(*arena);
  ir::Rewriter rw{*arena, rules};
  dy::Deduction ded{*arena, rw};
};

/// Independent closure oracle: one composition layer over the current set,
/// then every rule applied to every argument tuple, to a fixpoint. The
/// random corpus keeps key material within one composition layer so this
/// bound is complete for it.
std::set<std::string> oracle_closure(Setup& s,
                                     const std::vector<ir::TermId>& base) {
  auto& a = *s.arena;
  std::vector<ir::TermId> set;
  std::set<ir::TermId> seen;
  for (ir::TermId t : base) {
    ir::TermId n = s.rw.normalize(t);
    if (seen.insert(n).second) set.push_back(n);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<ir::TermId> comps = set;
    for (const auto& fn : a.signature().functions()) {
      if (fn.is_private || fn.kind == ir::FnKind::kDestructor) continue;
      if (fn.arity == 1) {
        for (ir::TermId x : set) comps.push_back(a.app(fn.name, {x}));
      } else if (fn.arity == 2) {
        for (ir::TermId x : set) {
          for (ir::TermId y : set) comps.push_back(a.app(fn.name, {x, y}));
        }
      }
    }
    for (const ir::RewriteRule& rule : s.rules) {
      size_t arity = a.args(rule.lhs).size();
      std::vector<size_t> idx(arity, 0);
      while (true) {
        std::vector<ir::TermId> args;
        for (size_t k : idx) args.push_back(comps[k]);
        ir::TermId applied = a.app(a.fn(rule.lhs), args);
        std::unordered_map<ir::TermId, ir::TermId> binding;
        if (a.match(rule.lhs, applied, binding)) {
          ir::TermId result =
              s.rw.normalize(a.substitute(rule.rhs, binding));
          if (a.is_ground(result) && seen.insert(result).second) {
            set.push_back(result);
            changed = true;
          }
        }
        size_t k = 0;
        for (; k < arity; ++k) {
          if (++idx[k] < comps.size()) break;
          idx[k] = 0;
        }
        if (k == arity) break;
      }
    }
  }
  std::set<std::string> out;
  for (ir::TermId t : set) out.insert(a.to_string(t));
  return out;
}

std::set<std::string> to_strings(const ir::TermArena& a,
                                 const std::vector<ir::TermId>& ts) {
  std::set<std::string> out;
  for (ir::TermId t : ts) out.insert(a.to_string(t));
  return out;
}

/// Independent bottom-up oracle for bounded synthesis: level sets restricted
/// to subterms of the target, which is complete for reaching the target.
bool oracle_derivable(Setup& s, const dy::Knowledge& k, ir::TermId target,
                      int depth) {
  auto& a = *s.arena;
  std::vector<ir::TermId> relevant;
  std::function<void(ir::TermId)> collect = [&](ir::TermId t) {
    relevant.push_back(t);
    if (a.kind(t) == ir::TermKind::kApp) {
      for (ir::TermId arg : a.args(t)) collect(arg);
    }
  };
  collect(target);
  std::set<ir::TermId> level(k.analyzed.begin(), k.analyzed.end());
  std::set<ir::TermId> reached;
  for (ir::TermId t : relevant) {
    if (level.count(t)) reached.insert(t);
  }
  for (int d = 0; d < depth; ++d) {
    std::set<ir::TermId> next = level;
    for (ir::TermId t : relevant) {
      if (next.count(t)) continue;
      if (a.kind(t) != ir::TermKind::kApp) continue;
      const auto& fn = a.fn_spec(t);
      if (fn.is_private || fn.kind == ir::FnKind::kDestructor) continue;
      bool all = true;
      for (ir::TermId arg : a.args(t)) all &= level.count(arg) > 0;
      if (all) next.insert(t);
    }
    level = std::move(next);
  }
  return level.count(target) > 0;
}

ir::TermId random_key(ir::TermArena& a, std::mt19937_64& rng,
                      const std::vector<ir::TermId>& atoms) {
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<size_t> pick(0, atoms.size() - 1);
  if (coin(rng) == 0) {
    return a.app("pair", {atoms[pick(rng)], atoms[pick(rng)]});
  }
  return atoms[pick(rng)];
}

}  // namespace

TEST_CASE("saturate decomposes what the theory allows") {
  Setup s;
  auto& a = *s.arena;
  ir::TermId m = a.name("m", ir::Freshness::kFresh);
  ir::TermId k = a.name("k", ir::Freshness::kFresh);

  SECTION("symmetric decryption with the key") {
    dy::Knowledge base{{k, a.app("senc", {m, k})}, {}};
    auto sat = s.ded.saturate(base);
    CHECK(sat.contains(m));
  }
  SECTION("no key, no plaintext") {
    dy::Knowledge base{{a.app("senc", {m, k})}, {}};
    auto sat = s.ded.saturate(base);
    CHECK_FALSE(sat.contains(m));
  }
  SECTION("message-recovering signatures") {
    dy::Knowledge base{
        {a.app("sign", {m, k}), a.app("pk", {k})}, {}};
    auto sat = s.ded.saturate(base);
    CHECK(sat.contains(m));
    // Matches the brute-force closure oracle as well.
    CHECK(oracle_closure(s, base.base) == to_strings(a, sat.analyzed));
  }
  SECTION("composed decryption keys") {
    ir::TermId ka = a.name("ka");
    ir::TermId kb = a.name("kb");
    dy::Knowledge base{
        {a.app("senc", {m, a.app("pair", {ka, kb})}), ka, kb}, {}};
    auto sat = s.ded.saturate(base);
    CHECK(sat.contains(m));
  }
  SECTION("private symbols are not attacker-applicable") {
    ir::TermId ida = a.name("ida");
    dy::Knowledge base{{ida, a.app("senc", {m, a.app("ltk", {ida})})}, {}};
    auto sat = s.ded.saturate(base);
    CHECK_FALSE(sat.contains(m));
  }
}

TEST_CASE("derivable matches the operation examples") {
  Setup s;
  auto& a = *s.arena;
  ir::TermId x = a.name("a");
  ir::TermId y = a.name("b");
  dy::Knowledge ab = s.ded.saturate({{x, y}, {}});
  CHECK(s.ded.derivable(ab, a.app("pair", {x, y}), 1));
  CHECK_FALSE(s.ded.derivable(ab, a.app("pair", {x, y}), 0));

  ir::TermId m = a.name("m", ir::Freshness::kFresh);
  ir::TermId k = a.name("k", ir::Freshness::kFresh);
  dy::Knowledge enc = s.ded.saturate({{a.app("senc", {m, k})}, {}});
  CHECK_FALSE(s.ded.derivable(enc, m, 3));
  CHECK(oracle_derivable(s, enc, m, 3) == false);

  dy::Knowledge empty = s.ded.saturate({{}, {}});
  CHECK_FALSE(s.ded.derivable(empty, a.name("n", ir::Freshness::kFresh), 5));
}

TEST_CASE("derivable agrees with exhaustive recipe enumeration") {
  Setup s;
  auto& a = *s.arena;
  std::mt19937_64 rng(2026);
  std::vector<ir::TermId> atoms = {a.name("a"), a.name("b"),
                                   a.name("n1", ir::Freshness::kFresh),
                                   a.name("n2", ir::Freshness::kFresh)};
  int checked = 0;
  for (int i = 0; i < 220; ++i) {
    std::uniform_int_distribution<size_t> nbase(1, 6);
    std::uniform_int_distribution<size_t> pick(0, atoms.size() - 1);
    std::uniform_int_distribution<int> shape(0, 4);
    dy::Knowledge base;
    size_t n = nbase(rng);
    for (size_t j = 0; j < n; ++j) {
      switch (shape(rng)) {
        case 0:
          base.base.push_back(atoms[pick(rng)]);
          break;
        case 1:
          base.base.push_back(a.app(
              "senc", {atoms[pick(rng)], random_key(a, rng, atoms)}));
          break;
        case 2:
          base.base.push_back(a.app(
              "aenc", {atoms[pick(rng)],
                       a.app("pk", {atoms[pick(rng)]})}));
          break;
        case 3:
          base.base.push_back(
              a.app("pair", {atoms[pick(rng)], atoms[pick(rng)]}));
          break;
        default:
          base.base.push_back(a.app("sign", {atoms[pick(rng)],
                                             atoms[pick(rng)]}));
          break;
      }
    }
    dy::Knowledge sat = s.ded.saturate(base);

    // saturate is idempotent and monotone.
    dy::Knowledge twice = s.ded.saturate(sat);
    REQUIRE(to_strings(a, twice.analyzed) == to_strings(a, sat.analyzed));
    dy::Knowledge larger = base;
    larger.base.push_back(atoms[pick(rng)]);
    dy::Knowledge sat_larger = s.ded.saturate(larger);
    for (ir::TermId t : sat.analyzed) {
      REQUIRE(sat_larger.contains(t));
    }

    // saturate agrees with the brute-force closure oracle.
    REQUIRE(oracle_closure(s, base.base) == to_strings(a, sat.analyzed));

    // derivable agrees with recipe enumeration on a batch of targets.
    std::uniform_int_distribution<int> dpick(0, 3);
    for (int t = 0; t < 4; ++t) {
      ir::TermId target = s.rw.normalize(vtest::random_term(a, rng, 2, false));
      int depth = dpick(rng);
      bool impl = s.ded.derivable(sat, target, depth);
      bool oracle = oracle_derivable(s, sat, target, depth);
      REQUIRE(impl == oracle);
      ++checked;
    }
  }
  CHECK(checked >= 200);
}
