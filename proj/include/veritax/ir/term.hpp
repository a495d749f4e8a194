// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_IR_TERM_HPP_
#define VERITAX_IR_TERM_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace veritax::ir {

/// Thrown when a term is built against the signature with the wrong arity,
/// or with an unknown function symbol.
class MalformedTerm : public std::runtime_error {
 public:
  explicit MalformedTerm(const std::string& what) : std::runtime_error(what) {}
};

enum class FnKind : uint8_t { kConstructor, kDestructor, kConstant };

/// One entry of a protocol signature. Private symbols can appear in honest
/// role scripts but are never applied by the attacker (e.g. ltk).
struct FunctionSpec {
  std::string name;
  int arity = 0;
  FnKind kind = FnKind::kConstructor;
  bool is_private = false;
};

using FnId = uint32_t;
inline constexpr FnId kNoFn = UINT32_MAX;

/// Immutable set of function symbols. Built once, then shared.
class Signature {
 public:
  FnId add(FunctionSpec fn) {
    if (fn.arity < 0) throw MalformedTerm("negative arity for " + fn.name);
    if (fn.arity == 0) fn.kind = FnKind::kConstant;
    if (by_name_.count(fn.name)) {
      throw MalformedTerm("duplicate function symbol " + fn.name);
    }
    FnId id = static_cast<FnId>(fns_.size());
    by_name_.emplace(fn.name, id);
    fns_.push_back(std::move(fn));
    return id;
  }

  FnId find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? kNoFn : it->second;
  }

  bool contains(std::string_view name) const { return find(name) != kNoFn; }
  const FunctionSpec& fn(FnId id) const { return fns_.at(id); }
  size_t size() const { return fns_.size(); }
  const std::vector<FunctionSpec>& functions() const { return fns_; }

 private:
  std::vector<FunctionSpec> fns_;
  std::unordered_map<std::string, FnId> by_name_;
};

using TermId = uint32_t;
inline constexpr TermId kNoTerm = UINT32_MAX;

enum class TermKind : uint8_t { kName, kVar, kApp };

enum class Freshness : uint8_t { kPublic, kFresh };

/// Hash-consing arena. Structural equality of terms is TermId equality
/// within one arena. Interned terms are immutable and may be read from any
/// thread; term *creation* is not synchronized, so each building thread
/// owns its arena (the explorer gives every worker a private one).
class TermArena {
 public:
  explicit TermArena(std::shared_ptr<const Signature> sig)
      : sig_(std::move(sig)) {}

  TermId name(std::string_view text, Freshness f = Freshness::kPublic) {
    return intern(Node{TermKind::kName, f == Freshness::kFresh, kNoFn,
                       intern_symbol(text), {}});
  }

  TermId var(std::string_view text) {
    return intern(Node{TermKind::kVar, false, kNoFn, intern_symbol(text), {}});
  }

  TermId app(FnId fn, std::span<const TermId> args) {
    if (fn >= sig_->size()) throw MalformedTerm("unknown function id");
    const auto& spec = sig_->fn(fn);
    if (static_cast<size_t>(spec.arity) != args.size()) {
      throw MalformedTerm("arity mismatch: " + spec.name + "/" +
                          std::to_string(spec.arity) + " applied to " +
                          std::to_string(args.size()) + " arguments");
    }
    return intern(Node{TermKind::kApp, false, fn, 0,
                       std::vector<TermId>(args.begin(), args.end())});
  }

  TermId app(std::string_view fn_name, std::span<const TermId> args) {
    FnId fn = sig_->find(fn_name);
    if (fn == kNoFn) {
      throw MalformedTerm("unknown function " + std::string(fn_name));
    }
    return app(fn, args);
  }

  TermId app(std::string_view fn_name, std::initializer_list<TermId> args) {
    return app(fn_name, std::span<const TermId>(args.begin(), args.size()));
  }

  TermKind kind(TermId t) const { return node(t).kind; }
  bool is_fresh_name(TermId t) const {
    return node(t).kind == TermKind::kName && node(t).fresh;
  }
  FnId fn(TermId t) const { return node(t).fn; }
  const FunctionSpec& fn_spec(TermId t) const { return sig_->fn(node(t).fn); }
  std::span<const TermId> args(TermId t) const {
    const Node& n = node(t);
    return std::span<const TermId>(n.args.data(), n.args.size());
  }
  const std::string& symbol(TermId t) const {
    return symbols_.at(node(t).symbol);
  }

  const Signature& signature() const { return *sig_; }
  std::shared_ptr<const Signature> signature_ptr() const { return sig_; }

  /// True if any subterm satisfies `pred`.
  bool any_subterm(TermId t, const std::function<bool(TermId)>& pred) const {
    if (pred(t)) return true;
    if (kind(t) == TermKind::kApp) {
      for (TermId a : args(t)) {
        if (any_subterm(a, pred)) return true;
      }
    }
    return false;
  }

  bool contains(TermId t, TermId sub) const {
    return any_subterm(t, [&](TermId s) { return s == sub; });
  }

  bool is_ground(TermId t) const {
    return !any_subterm(t, [&](TermId s) { return kind(s) == TermKind::kVar; });
  }

  void collect_vars(TermId t, std::vector<TermId>& out) const {
    if (kind(t) == TermKind::kVar) {
      for (TermId v : out) {
        if (v == t) return;
      }
      out.push_back(t);
      return;
    }
    if (kind(t) == TermKind::kApp) {
      for (TermId a : args(t)) collect_vars(a, out);
    }
  }

  /// Simultaneous substitution of variables. Variables absent from the
  /// binding are left unchanged; terms contain no binders so the operation
  /// is trivially capture-free.
  TermId substitute(TermId t, const std::unordered_map<TermId, TermId>& b) {
    switch (kind(t)) {
      case TermKind::kName:
        return t;
      case TermKind::kVar: {
        auto it = b.find(t);
        return it == b.end() ? t : it->second;
      }
      case TermKind::kApp: {
        auto as = args(t);
        std::vector<TermId> out(as.begin(), as.end());
        bool changed = false;
        for (auto& a : out) {
          TermId na = substitute(a, b);
          changed |= na != a;
          a = na;
        }
        if (!changed) return t;
        return app(fn(t), out);
      }
    }
    return t;
  }

  /// Syntactic matching: extends `binding` so that pattern*binding == subject.
  /// On mismatch the binding may be left half-extended; callers needing
  /// rollback copy it first.
  bool match(TermId pattern, TermId subject,
             std::unordered_map<TermId, TermId>& binding) const {
    switch (kind(pattern)) {
      case TermKind::kVar: {
        auto it = binding.find(pattern);
        if (it != binding.end()) return it->second == subject;
        binding.emplace(pattern, subject);
        return true;
      }
      case TermKind::kName:
        return pattern == subject;
      case TermKind::kApp: {
        if (kind(subject) != TermKind::kApp || fn(pattern) != fn(subject)) {
          return false;
        }
        auto pa = args(pattern);
        auto sa = args(subject);
        for (size_t i = 0; i < pa.size(); ++i) {
          if (!match(pa[i], sa[i], binding)) return false;
        }
        return true;
      }
    }
    return false;
  }

  /// Canonical total order: constructor name, then arity, then arguments
  /// recursively; atoms ordered by kind rank then spelling. Used wherever
  /// term sets are serialized so that output is byte-stable.
  int compare(TermId a, TermId b) const {
    if (a == b) return 0;
    const Node& na = node(a);
    const Node& nb = node(b);
    auto rank = [](TermKind k) {
      switch (k) {
        case TermKind::kName: return 0;
        case TermKind::kVar: return 1;
        case TermKind::kApp: return 2;
      }
      return 3;
    };
    if (rank(na.kind) != rank(nb.kind)) {
      return rank(na.kind) < rank(nb.kind) ? -1 : 1;
    }
    if (na.kind != TermKind::kApp) {
      const std::string& sa = symbols_.at(na.symbol);
      const std::string& sb = symbols_.at(nb.symbol);
      int c = sa.compare(sb);
      if (c != 0) return c < 0 ? -1 : 1;
      if (na.fresh != nb.fresh) return na.fresh ? 1 : -1;
      return 0;
    }
    const FunctionSpec& fa = sig_->fn(na.fn);
    const FunctionSpec& fb = sig_->fn(nb.fn);
    int c = fa.name.compare(fb.name);
    if (c != 0) return c < 0 ? -1 : 1;
    if (fa.arity != fb.arity) return fa.arity < fb.arity ? -1 : 1;
    for (size_t i = 0; i < na.args.size(); ++i) {
      c = compare(na.args[i], nb.args[i]);
      if (c != 0) return c;
    }
    return 0;
  }

  /// Renders a term in the concrete syntax shared by the DSL, witness
  /// JSON, and generated-model comments: f(a, b), plain atom names.
  std::string to_string(TermId t) const {
    std::string out;
    print(t, out);
    return out;
  }

  size_t term_count() const { return nodes_.size(); }

 private:
  struct Node {
    TermKind kind;
    bool fresh;
    FnId fn;
    uint32_t symbol;
    std::vector<TermId> args;

    bool operator==(const Node& o) const {
      return kind == o.kind && fresh == o.fresh && fn == o.fn &&
             symbol == o.symbol && args == o.args;
    }
  };

  struct NodeHash {
    size_t operator()(const Node& n) const {
      size_t h = std::hash<uint32_t>()(
          (static_cast<uint32_t>(n.kind) << 1) | (n.fresh ? 1u : 0u));
      h = h * 1000003u ^ n.fn;
      h = h * 1000003u ^ n.symbol;
      for (TermId a : n.args) h = h * 1000003u ^ a;
      return h;
    }
  };

  const Node& node(TermId t) const { return nodes_[t]; }

  uint32_t intern_symbol(std::string_view text) {
    auto it = symbol_ids_.find(std::string(text));
    if (it != symbol_ids_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(symbols_.size());
    symbols_.emplace_back(text);
    symbol_ids_.emplace(symbols_.back(), id);
    return id;
  }

  TermId intern(Node n) {
    auto it = interned_.find(n);
    if (it != interned_.end()) return it->second;
    TermId id = static_cast<TermId>(nodes_.size());
    nodes_.push_back(std::move(n));
    interned_.emplace(nodes_.back(), id);
    return id;
  }

  void print(TermId t, std::string& out) const {
    const Node& n = node(t);
    if (n.kind != TermKind::kApp) {
      out += symbols_.at(n.symbol);
      return;
    }
    out += sig_->fn(n.fn).name;
    if (sig_->fn(n.fn).arity == 0) return;
    out += '(';
    for (size_t i = 0; i < n.args.size(); ++i) {
      if (i) out += ", ";
      print(n.args[i], out);
    }
    out += ')';
  }

  std::shared_ptr<const Signature> sig_;
  std::deque<Node> nodes_;
  std::unordered_map<Node, TermId, NodeHash> interned_;
  std::deque<std::string> symbols_;
  std::unordered_map<std::string, uint32_t> symbol_ids_;
};

/// Structural equality across arenas (the round-trip tests compare terms
/// from two distinct parses).
inline bool term_equal(const TermArena& aa, TermId a, const TermArena& ab,
                       TermId b) {
  if (aa.kind(a) != ab.kind(b)) return false;
  switch (aa.kind(a)) {
    case TermKind::kName:
      return aa.symbol(a) == ab.symbol(b) &&
             aa.is_fresh_name(a) == ab.is_fresh_name(b);
    case TermKind::kVar:
      return aa.symbol(a) == ab.symbol(b);
    case TermKind::kApp: {
      if (aa.fn_spec(a).name != ab.fn_spec(b).name) return false;
      auto as = aa.args(a);
      auto bs = ab.args(b);
      if (as.size() != bs.size()) return false;
      for (size_t i = 0; i < as.size(); ++i) {
        if (!term_equal(aa, as[i], ab, bs[i])) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace veritax::ir

#endif  // VERITAX_IR_TERM_HPP_
