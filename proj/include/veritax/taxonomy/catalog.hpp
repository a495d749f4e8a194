// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_TAXONOMY_CATALOG_HPP_
#define VERITAX_TAXONOMY_CATALOG_HPP_

#include <string>

#include <json.hpp>

#include "veritax/taxonomy/templates.hpp"

namespace veritax::tax {

namespace detail {

inline std::string atom_sexpr(const ir::TermArena& a, const EventPattern& p) {
  std::string out = "(" + std::string(label_info(p.label).name);
  for (ir::TermId t : p.args) out += " " + a.to_string(t);
  if (!p.time_var.empty()) out += " @" + p.time_var;
  return out + ")";
}

inline std::string constraint_sexpr(const ir::TermArena& a,
                                    const Constraint& c) {
  switch (c.kind) {
    case ConstraintKind::kBefore:
      return "(before @" + c.time_a + " @" + c.time_b + ")";
    case ConstraintKind::kNotEqual:
      return "(distinct @" + c.time_a + " @" + c.time_b + ")";
    case ConstraintKind::kEq:
      return "(= " + a.to_string(c.term_a) + " " + a.to_string(c.term_b) + ")";
    case ConstraintKind::kNotKnown:
      return "(not (K " + a.to_string(c.term_a) + "))";
  }
  return "";
}

}  // namespace detail

/// S-expression rendering of a formula, the stable shape used by the
/// machine-readable catalog.
inline std::string formula_sexpr(const ir::TermArena& a,
                                 const CheckableFormula& f) {
  if (f.mode == CheckableFormula::Mode::kEquivalence) {
    return "(equiv (par (P s) (P s)) (par (P s) (P t)))";
  }
  const GuardedFormula& gf = f.formula;
  auto vars = [&](const std::vector<ir::TermId>& vs) {
    std::string out = "(";
    for (size_t i = 0; i < vs.size(); ++i) {
      if (i) out += " ";
      out += a.to_string(vs[i]);
    }
    return out + ")";
  };
  std::string premise = "(and";
  for (const auto& p : gf.premises) premise += " " + detail::atom_sexpr(a, p);
  for (const auto& k : gf.premise_knowledge) {
    premise += " (K " + a.to_string(k.term);
    if (!k.time_var.empty()) premise += " @" + k.time_var;
    premise += ")";
  }
  for (const auto& g : gf.guards) premise += " " + detail::constraint_sexpr(a, g);
  premise += ")";

  if (gf.outer_negation) {
    return "(not (exists " + vars(gf.universals) + " " + premise + "))";
  }

  std::string conclusion = "(and";
  for (const auto& c : gf.conclusions) {
    conclusion += " " + detail::atom_sexpr(a, c);
  }
  for (const auto& g : gf.goals) {
    conclusion += " " + detail::constraint_sexpr(a, g);
  }
  if (gf.negated_uniqueness) {
    conclusion += " (not (exists-other @" + gf.uniqueness_anchor + " " +
                  detail::atom_sexpr(a, *gf.negated_uniqueness) + "))";
  }
  conclusion += ")";

  std::string body = "(=> " + premise + " ";
  if (!gf.existentials.empty()) {
    body += "(exists " + vars(gf.existentials) + " " + conclusion + ")";
  } else {
    body += conclusion;
  }
  body += ")";
  return "(forall " + vars(gf.universals) + " " + body + ")";
}

/// The taxonomy as a machine-readable catalog:
/// { "categories": [ { "name", "kinds": [ { "kind", "formula",
///   "required_events": [ { "label", "location" } ] } ] } ] }
inline nlohmann::json catalog_json() {
  auto arena = std::make_shared<ir::TermArena>(ir::builtin_signature());
  Taxonomy tax(*arena);
  nlohmann::json categories = nlohmann::json::array();
  for (int c = 0; c < kCategoryCount; ++c) {
    Category cat = static_cast<Category>(c);
    nlohmann::json kinds = nlohmann::json::array();
    for (int i = 0; i < ir::kLeafCount; ++i) {
      auto leaf = static_cast<ir::PropertyLeaf>(i);
      if (category_of(leaf) != cat) continue;
      PropertyTemplate t = tax.lookup(PropertyKind::of(leaf));
      nlohmann::json events = nlohmann::json::array();
      for (const auto& req : t.requirements) {
        events.push_back({{"label", label_info(req.label).name},
                          {"location", location_name(req.location)}});
      }
      kinds.push_back({{"kind", ir::leaf_name(leaf)},
                       {"formula", formula_sexpr(*arena, t.formula)},
                       {"required_events", events}});
    }
    categories.push_back(
        {{"name", category_name(cat)}, {"kinds", kinds}});
  }
  return nlohmann::json{{"categories", categories}};
}

}  // namespace veritax::tax

#endif  // VERITAX_TAXONOMY_CATALOG_HPP_
