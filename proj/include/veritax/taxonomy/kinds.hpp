// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_TAXONOMY_KINDS_HPP_
#define VERITAX_TAXONOMY_KINDS_HPP_

#include <optional>
#include <stdexcept>
#include <string>

#include "veritax/ir/spec.hpp"

namespace veritax::tax {

enum class Category : uint8_t {
  kAuthentication,
  kConfidentiality,
  kIntegrity,
  kPrivacy,
  kAccountability,
};

inline constexpr int kCategoryCount = 5;

inline const char* category_name(Category c) {
  switch (c) {
    case Category::kAuthentication: return "Authentication";
    case Category::kConfidentiality: return "Confidentiality";
    case Category::kIntegrity: return "Integrity";
    case Category::kPrivacy: return "Privacy";
    case Category::kAccountability: return "Accountability";
  }
  return "?";
}

/// Each leaf belongs to its taxonomy category; note that Accountability is
/// both a category and one of its own leaves.
inline Category category_of(ir::PropertyLeaf leaf) {
  switch (leaf) {
    case ir::PropertyLeaf::kAliveness:
    case ir::PropertyLeaf::kWeakAgreement:
    case ir::PropertyLeaf::kNonInjectiveAgreement:
    case ir::PropertyLeaf::kInjectiveAgreement:
      return Category::kAuthentication;
    case ir::PropertyLeaf::kSecrecy:
    case ir::PropertyLeaf::kForwardSecrecy:
    case ir::PropertyLeaf::kPostCompromiseSecurity:
      return Category::kConfidentiality;
    case ir::PropertyLeaf::kUnforgeability:
    case ir::PropertyLeaf::kNonEquivocation:
      return Category::kIntegrity;
    case ir::PropertyLeaf::kAnonymity:
    case ir::PropertyLeaf::kUnlinkability:
      return Category::kPrivacy;
    case ir::PropertyLeaf::kTraceability:
    case ir::PropertyLeaf::kNonRepudiation:
    case ir::PropertyLeaf::kAccountability:
      return Category::kAccountability;
  }
  return Category::kAccountability;
}

/// A node of the taxonomy: either a bare category or a leaf (with its
/// category fixed by the taxonomy figure).
struct PropertyKind {
  Category category = Category::kAuthentication;
  std::optional<ir::PropertyLeaf> leaf;

  static PropertyKind of(ir::PropertyLeaf l) { return {category_of(l), l}; }
  static PropertyKind of(Category c) { return {c, std::nullopt}; }

  bool is_leaf() const { return leaf.has_value(); }
};

/// Raised by taxonomy operations whose precondition is a leaf kind.
class CategoryNotLeaf : public std::runtime_error {
 public:
  explicit CategoryNotLeaf(Category c)
      : std::runtime_error(std::string(category_name(c)) +
                           " is a category, not a checkable kind") {}
};

inline ir::PropertyLeaf require_leaf(const PropertyKind& kind) {
  if (!kind.leaf) throw CategoryNotLeaf(kind.category);
  return *kind.leaf;
}

/// The Lowe hierarchy, reflexively closed: injective agreement implies
/// non-injective agreement implies weak agreement implies aliveness; no
/// other implications hold between leaves.
inline bool implies(const PropertyKind& a, const PropertyKind& b) {
  ir::PropertyLeaf la = require_leaf(a);
  ir::PropertyLeaf lb = require_leaf(b);
  if (la == lb) return true;
  auto rank = [](ir::PropertyLeaf l) -> int {
    switch (l) {
      case ir::PropertyLeaf::kAliveness: return 0;
      case ir::PropertyLeaf::kWeakAgreement: return 1;
      case ir::PropertyLeaf::kNonInjectiveAgreement: return 2;
      case ir::PropertyLeaf::kInjectiveAgreement: return 3;
      default: return -1;
    }
  };
  int ra = rank(la);
  int rb = rank(lb);
  return ra >= 0 && rb >= 0 && ra > rb;
}

}  // namespace veritax::tax

#endif  // VERITAX_TAXONOMY_KINDS_HPP_
