// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_DSL_PARSER_HPP_
#define VERITAX_DSL_PARSER_HPP_

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "veritax/ir/spec.hpp"
#include "veritax/ir/validate.hpp"
#include "veritax/support/diagnostics.hpp"

namespace veritax::dsl {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokKind : uint8_t {
  kIdent,
  kString,
  kInt,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kComma,
  kSemi,
  kColon,
  kSlash,
  kEq,
  kEof,
  kError,
};

struct Token {
  TokKind kind = TokKind::kEof;
  std::string text;
  SourceSpan span;
};

/// Total lexer: any byte sequence yields a token stream ending in kEof;
/// unrecognized bytes become kError tokens with spans.
inline std::vector<Token> lex(std::string_view src, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto make_span = [&](int l0, int c0) {
    return SourceSpan{file, {l0, c0}, {line, col}};
  };
  while (i < src.size()) {
    char c = src[i];
    int l0 = line, c0 = col;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k) {
        if (src[i + k] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_')) {
        ++j;
      }
      std::string text(src.substr(i, j - i));
      advance(j - i);
      out.push_back({TokKind::kIdent, std::move(text), make_span(l0, c0)});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      std::string text(src.substr(i, j - i));
      advance(j - i);
      out.push_back({TokKind::kInt, std::move(text), make_span(l0, c0)});
      continue;
    }
    if (c == '"') {
      size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      bool closed = j < src.size() && src[j] == '"';
      std::string text(src.substr(i + 1, j - (i + 1)));
      advance((closed ? j + 1 : j) - i);
      out.push_back({closed ? TokKind::kString : TokKind::kError,
                     std::move(text), make_span(l0, c0)});
      continue;
    }
    TokKind k = TokKind::kError;
    switch (c) {
      case '(': k = TokKind::kLParen; break;
      case ')': k = TokKind::kRParen; break;
      case '{': k = TokKind::kLBrace; break;
      case '}': k = TokKind::kRBrace; break;
      case '[': k = TokKind::kLBracket; break;
      case ']': k = TokKind::kRBracket; break;
      case ',': k = TokKind::kComma; break;
      case ';': k = TokKind::kSemi; break;
      case ':': k = TokKind::kColon; break;
      case '/': k = TokKind::kSlash; break;
      case '=': k = TokKind::kEq; break;
      default: k = TokKind::kError; break;
    }
    advance(1);
    out.push_back({k, std::string(1, c), make_span(l0, c0)});
  }
  out.push_back({TokKind::kEof, "", SourceSpan{file, {line, col}, {line, col}}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

inline const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "protocol", "primitives", "theory", "roles",  "claims",
      "fresh",    "send",       "recv",   "let",    "event",
      "private",  "identity",   "ltkey",  "pubkey", "value"};
  return words;
}

inline const std::map<std::string, std::string>& category_hints() {
  static const std::map<std::string, std::string> hints = {
      {"authentication",
       "category is not a checkable kind; choose aliveness, weak_agreement, "
       "non_injective_agreement or injective_agreement"},
      {"confidentiality",
       "category is not a checkable kind; choose secrecy, forward_secrecy or "
       "post_compromise_security"},
      {"integrity",
       "category is not a checkable kind; choose unforgeability or "
       "non_equivocation"},
      {"privacy",
       "category is not a checkable kind; choose anonymity or unlinkability"},
  };
  return hints;
}

struct ParseResult {
  std::optional<ir::ProtocolSpec> spec;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return spec.has_value(); }
};

class Parser {
 public:
  Parser(std::string_view src, std::string file)
      : file_(std::move(file)), tokens_(lex(src, file_)) {}

  ParseResult run() {
    ParseResult result;
    prescan_signature();
    arena_ = std::make_shared<ir::TermArena>(sig_);
    spec_.arena = arena_;
    spec_.theory = ir::builtin_rules(*arena_);
    parse_protocol();
    result.diagnostics = std::move(diags_);
    bool errored = false;
    for (const auto& d : result.diagnostics) {
      errored |= d.severity == Severity::kError;
    }
    if (!errored) {
      // Success contract: the spec also passes validation cleanly.
      auto report = ir::validate_spec(spec_);
      if (!report.empty()) {
        for (auto& d : report.diagnostics) {
          if (d.span.file.empty()) d.span.file = file_;
          result.diagnostics.push_back(d);
        }
        for (const auto& d : report.diagnostics) {
          errored |= d.severity == Severity::kError;
        }
      }
    }
    if (!errored) result.spec = std::move(spec_);
    return result;
  }

 private:
  // --- token plumbing ---

  const Token& peek(int ahead = 0) const {
    size_t idx = pos_ + static_cast<size_t>(ahead);
    return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
  }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at(TokKind k) const { return peek().kind == k; }
  bool at_ident(std::string_view text) const {
    return peek().kind == TokKind::kIdent && peek().text == text;
  }
  bool accept(TokKind k) {
    if (!at(k)) return false;
    advance();
    return true;
  }
  bool accept_ident(std::string_view text) {
    if (!at_ident(text)) return false;
    advance();
    return true;
  }
  void error_here(std::string msg) {
    diags_.push_back({Severity::kError, std::move(msg), peek().span});
  }
  bool expect(TokKind k, const char* what) {
    if (accept(k)) return true;
    error_here(std::string("expected ") + what);
    return false;
  }
  /// Error recovery: skip to the next statement boundary so independent
  /// errors are still collected.
  void sync_to_stmt() {
    int depth = 0;
    while (!at(TokKind::kEof)) {
      TokKind k = peek().kind;
      if (depth == 0 && (k == TokKind::kSemi || k == TokKind::kRBrace)) {
        if (k == TokKind::kSemi) advance();
        return;
      }
      if (k == TokKind::kLBrace || k == TokKind::kLParen) ++depth;
      if (k == TokKind::kRBrace || k == TokKind::kRParen) {
        if (depth > 0) --depth;
      }
      advance();
    }
  }

  // --- signature pre-scan ---
  //
  // Builds the signature from the builtins plus the primitives block before
  // real parsing, and marks equation left-hand-side heads as destructors.
  void prescan_signature() {
    sig_builder_ = std::make_shared<ir::Signature>();
    auto builtins = ir::builtin_signature();
    for (const auto& fn : builtins->functions()) {
      sig_builder_->add(fn);
    }
    struct Prim {
      std::string name;
      int arity;
      bool is_private;
      SourceSpan span;
    };
    std::vector<Prim> prims;
    std::set<std::string> destructor_names;
    for (size_t i = 0; i + 2 < tokens_.size(); ++i) {
      if (tokens_[i].kind == TokKind::kIdent &&
          tokens_[i + 1].kind == TokKind::kSlash &&
          tokens_[i + 2].kind == TokKind::kInt) {
        bool priv = i + 3 < tokens_.size() &&
                    tokens_[i + 3].kind == TokKind::kIdent &&
                    tokens_[i + 3].text == "private";
        prims.push_back({tokens_[i].text, std::atoi(tokens_[i + 2].text.c_str()),
                         priv, tokens_[i].span});
      }
      // An equation's left-hand head: IDENT '(' after '[' or at the start
      // of a theory statement. Recorded shallowly; real parsing validates.
      if (tokens_[i].kind == TokKind::kLBracket &&
          tokens_[i + 1].kind == TokKind::kIdent &&
          tokens_[i + 2].kind == TokKind::kLParen) {
        destructor_names.insert(tokens_[i + 1].text);
      }
      if ((tokens_[i].kind == TokKind::kSemi ||
           tokens_[i].kind == TokKind::kLBrace) &&
          tokens_[i + 1].kind == TokKind::kIdent &&
          tokens_[i + 2].kind == TokKind::kLParen) {
        // Also catches theory-block statements; harmless elsewhere because
        // the name must be a declared primitive to take effect.
        destructor_names.insert(tokens_[i + 1].text);
      }
    }
    for (const auto& p : prims) {
      if (sig_builder_->contains(p.name)) {
        diags_.push_back({Severity::kError,
                          "cannot redeclare function '" + p.name + "'",
                          p.span});
        continue;
      }
      ir::FnKind kind = p.arity == 0 ? ir::FnKind::kConstant
                        : destructor_names.count(p.name)
                            ? ir::FnKind::kDestructor
                            : ir::FnKind::kConstructor;
      sig_builder_->add({p.name, p.arity, kind, p.is_private});
      spec_.user_functions.push_back(p.name);
    }
    std::sort(spec_.user_functions.begin(), spec_.user_functions.end());
    sig_ = sig_builder_;
  }

  // --- grammar ---

  void parse_protocol() {
    if (!accept_ident("protocol")) {
      error_here("expected 'protocol'");
      return;
    }
    if (at(TokKind::kString)) {
      spec_.name = advance().text;
    } else {
      error_here("expected protocol name string");
    }
    expect(TokKind::kLBrace, "'{'");
    if (at_ident("primitives")) parse_primitives();
    if (at_ident("theory")) parse_theory();
    if (at_ident("roles")) {
      parse_roles();
    } else {
      error_here("expected 'roles' block");
    }
    if (at_ident("claims")) parse_claims();
    expect(TokKind::kRBrace, "'}'");
    if (!at(TokKind::kEof)) error_here("trailing input after protocol");
  }

  void parse_primitives() {
    advance();
    expect(TokKind::kLBrace, "'{'");
    while (!at(TokKind::kRBrace) && !at(TokKind::kEof)) {
      if (!at(TokKind::kIdent)) {
        error_here("expected primitive declaration");
        sync_to_stmt();
        continue;
      }
      advance();  // name (already registered by the pre-scan)
      if (!expect(TokKind::kSlash, "'/'") || !expect(TokKind::kInt, "arity")) {
        sync_to_stmt();
        continue;
      }
      accept_ident("private");
      if (accept(TokKind::kLBracket)) {
        parse_equation();
        expect(TokKind::kRBracket, "']'");
      }
      expect(TokKind::kSemi, "';'");
    }
    expect(TokKind::kRBrace, "'}'");
  }

  void parse_theory() {
    advance();
    expect(TokKind::kLBrace, "'{'");
    while (!at(TokKind::kRBrace) && !at(TokKind::kEof)) {
      parse_equation();
      expect(TokKind::kSemi, "';'");
    }
    expect(TokKind::kRBrace, "'}'");
  }

  void parse_equation() {
    SourceSpan span = peek().span;
    ir::TermId lhs = parse_term(TermCtx::kEquation, nullptr);
    expect(TokKind::kEq, "'='");
    ir::TermId rhs = parse_term(TermCtx::kEquation, nullptr);
    if (lhs == ir::kNoTerm || rhs == ir::kNoTerm) return;
    ir::RewriteRule rule{lhs, rhs};
    std::string why = ir::check_rule(*arena_, rule);
    if (!why.empty()) {
      diags_.push_back({Severity::kError, why, span});
      return;
    }
    spec_.user_rules.push_back(spec_.theory.size());
    spec_.theory.push_back(rule);
  }

  void parse_roles() {
    advance();
    expect(TokKind::kLBrace, "'{'");
    while (!at(TokKind::kRBrace) && !at(TokKind::kEof)) {
      parse_role();
    }
    expect(TokKind::kRBrace, "'}'");
  }

  void parse_role() {
    ir::RoleScript role;
    role.span = peek().span;
    if (!at(TokKind::kIdent)) {
      error_here("expected role name");
      sync_to_stmt();
      return;
    }
    role.name = advance().text;
    if (reserved_words().count(role.name)) {
      diags_.push_back({Severity::kError,
                        "'" + role.name + "' is a reserved word", role.span});
    }
    expect(TokKind::kLParen, "'('");
    std::set<std::string> bound;
    while (!at(TokKind::kRParen) && !at(TokKind::kEof)) {
      ir::Param p;
      if (!at(TokKind::kIdent)) {
        error_here("expected parameter name");
        break;
      }
      p.name = advance().text;
      expect(TokKind::kColon, "':'");
      if (at(TokKind::kIdent)) {
        const std::string& k = advance().text;
        if (k == "identity") {
          p.kind = ir::ParamKind::kIdentity;
        } else if (k == "ltkey") {
          p.kind = ir::ParamKind::kLongTermKey;
        } else if (k == "pubkey") {
          p.kind = ir::ParamKind::kPublicKey;
        } else if (k == "value") {
          p.kind = ir::ParamKind::kValue;
        } else {
          error_here("unknown parameter kind '" + k + "'");
        }
      } else {
        error_here("expected parameter kind");
      }
      bound.insert(p.name);
      role.params.push_back(std::move(p));
      if (!accept(TokKind::kComma)) break;
    }
    expect(TokKind::kRParen, "')'");
    expect(TokKind::kLBrace, "'{'");
    while (!at(TokKind::kRBrace) && !at(TokKind::kEof)) {
      parse_step(role, bound);
    }
    expect(TokKind::kRBrace, "'}'");
    spec_.roles.push_back(std::move(role));
  }

  void parse_step(ir::RoleScript& role, std::set<std::string>& bound) {
    ir::Step step;
    step.span = peek().span;
    if (accept_ident("fresh")) {
      step.kind = ir::StepKind::kFresh;
      if (at(TokKind::kIdent)) {
        step.ident = advance().text;
        check_binder(step.ident, step.span);
        bound.insert(step.ident);
      } else {
        error_here("expected identifier after 'fresh'");
      }
    } else if (accept_ident("send")) {
      step.kind = ir::StepKind::kSend;
      step.term = parse_term(TermCtx::kUse, &bound);
    } else if (accept_ident("recv")) {
      step.kind = ir::StepKind::kRecv;
      step.term = parse_term(TermCtx::kPattern, &bound);
    } else if (accept_ident("let")) {
      step.kind = ir::StepKind::kLet;
      if (at(TokKind::kIdent)) {
        step.ident = advance().text;
        check_binder(step.ident, step.span);
      } else {
        error_here("expected identifier after 'let'");
      }
      expect(TokKind::kEq, "'='");
      step.term = parse_term(TermCtx::kUse, &bound);
      bound.insert(step.ident);
    } else if (accept_ident("event")) {
      step.kind = ir::StepKind::kEvent;
      if (at(TokKind::kIdent)) {
        step.ident = advance().text;
      } else {
        error_here("expected event label");
      }
      expect(TokKind::kLParen, "'('");
      while (!at(TokKind::kRParen) && !at(TokKind::kEof)) {
        ir::TermId arg = parse_term(TermCtx::kUse, &bound);
        if (arg != ir::kNoTerm) step.args.push_back(arg);
        if (!accept(TokKind::kComma)) break;
      }
      expect(TokKind::kRParen, "')'");
    } else {
      error_here("expected a step (fresh, send, recv, let, event)");
      sync_to_stmt();
      return;
    }
    if (step.kind == ir::StepKind::kRecv && step.term != ir::kNoTerm) {
      std::vector<ir::TermId> vars;
      arena_->collect_vars(step.term, vars);
      for (ir::TermId v : vars) bound.insert(arena_->symbol(v));
    }
    expect(TokKind::kSemi, "';'");
    if (step.kind != ir::StepKind::kEvent && step.term == ir::kNoTerm &&
        step.kind != ir::StepKind::kFresh) {
      return;  // the error was already reported
    }
    role.steps.push_back(std::move(step));
  }

  void check_binder(const std::string& name, const SourceSpan& span) {
    if (reserved_words().count(name) || sig_->contains(name)) {
      diags_.push_back(
          {Severity::kError,
           "'" + name + "' cannot be bound: it is reserved or a function",
           span});
    }
  }

  enum class TermCtx { kUse, kPattern, kEquation, kClaim, kClaimName };

  /// Parses a term. In kUse context unbound identifiers are binding errors;
  /// in kPattern context they become newly bound variables; in kEquation
  /// and kClaim contexts bare identifiers are variables; in kClaimName
  /// context they are fresh global names.
  ir::TermId parse_term(TermCtx ctx, std::set<std::string>* bound) {
    if (!at(TokKind::kIdent)) {
      error_here("expected a term");
      return ir::kNoTerm;
    }
    Token tok = advance();
    const std::string& name = tok.text;
    if (accept(TokKind::kLParen)) {
      std::vector<ir::TermId> args;
      bool bad = false;
      while (!at(TokKind::kRParen) && !at(TokKind::kEof)) {
        ir::TermId arg = parse_term(ctx, bound);
        if (arg == ir::kNoTerm) {
          bad = true;
        } else {
          args.push_back(arg);
        }
        if (!accept(TokKind::kComma)) break;
      }
      expect(TokKind::kRParen, "')'");
      if (bad) return ir::kNoTerm;
      ir::FnId fn = sig_->find(name);
      if (fn == ir::kNoFn) {
        diags_.push_back({Severity::kError,
                          "unknown function '" + name + "/" +
                              std::to_string(args.size()) + "'",
                          tok.span});
        return ir::kNoTerm;
      }
      if (static_cast<size_t>(sig_->fn(fn).arity) != args.size()) {
        diags_.push_back({Severity::kError,
                          "'" + name + "' expects " +
                              std::to_string(sig_->fn(fn).arity) +
                              " arguments, got " +
                              std::to_string(args.size()),
                          tok.span});
        return ir::kNoTerm;
      }
      return arena_->app(fn, args);
    }
    // Bare identifier.
    ir::FnId fn = sig_->find(name);
    if (fn != ir::kNoFn) {
      if (sig_->fn(fn).arity == 0) return arena_->app(fn, {});
      diags_.push_back({Severity::kError,
                        "function '" + name + "' used without arguments",
                        tok.span});
      return ir::kNoTerm;
    }
    switch (ctx) {
      case TermCtx::kUse:
        if (!bound || !bound->count(name)) {
          diags_.push_back(
              {Severity::kError, "unbound identifier '" + name + "'",
               tok.span});
          return ir::kNoTerm;
        }
        return arena_->var(name);
      case TermCtx::kPattern:
        return arena_->var(name);  // binder or equality against prior binding
      case TermCtx::kEquation:
      case TermCtx::kClaim:
        return arena_->var(name);
      case TermCtx::kClaimName:
        return arena_->name(name, ir::Freshness::kFresh);
    }
    return ir::kNoTerm;
  }

  void parse_claims() {
    advance();
    expect(TokKind::kLBrace, "'{'");
    while (!at(TokKind::kRBrace) && !at(TokKind::kEof)) {
      parse_claim();
    }
    expect(TokKind::kRBrace, "'}'");
  }

  void parse_claim() {
    if (!at(TokKind::kIdent)) {
      error_here("expected a claim kind");
      sync_to_stmt();
      return;
    }
    Token kind_tok = advance();
    ir::PropertyClaim claim;
    claim.span = kind_tok.span;
    auto hint = category_hints().find(kind_tok.text);
    if (hint != category_hints().end()) {
      diags_.push_back({Severity::kError, hint->second, kind_tok.span});
      sync_to_stmt();
      return;
    }
    if (!ir::leaf_from_name(kind_tok.text, claim.kind)) {
      diags_.push_back({Severity::kError,
                        "unknown claim kind '" + kind_tok.text + "'",
                        kind_tok.span});
      sync_to_stmt();
      return;
    }
    expect(TokKind::kLParen, "'('");
    while (!at(TokKind::kRParen) && !at(TokKind::kEof)) {
      if (!at(TokKind::kIdent)) {
        error_here("expected 'key: value' claim argument");
        break;
      }
      Token key_tok = advance();
      const std::string& key = key_tok.text;
      expect(TokKind::kColon, "':'");
      static const std::set<std::string> role_keys = {
          "initiator", "responder", "role",     "signer",
          "verifier",  "sender",    "observer", "judge"};
      static const std::set<std::string> label_keys = {"heal", "judged",
                                                       "bind", "time"};
      if (role_keys.count(key)) {
        if (at(TokKind::kIdent)) {
          claim.role_bindings[key] = advance().text;
        } else {
          error_here("expected a role name");
        }
      } else if (label_keys.count(key)) {
        if (at(TokKind::kIdent)) {
          claim.label_options[key] = advance().text;
        } else {
          error_here("expected an event label");
        }
      } else if (key == "data" || key == "keys" || key == "subjects" ||
                 key == "of" || key == "id" || key == "key") {
        TermCtx ctx = key == "subjects" ? TermCtx::kClaimName : TermCtx::kClaim;
        if (accept(TokKind::kLParen)) {
          while (!at(TokKind::kRParen) && !at(TokKind::kEof)) {
            ir::TermId t = parse_term(ctx, nullptr);
            if (t != ir::kNoTerm) claim.subject_terms.push_back(t);
            if (!accept(TokKind::kComma)) break;
          }
          expect(TokKind::kRParen, "')'");
        } else {
          ir::TermId t = parse_term(ctx, nullptr);
          if (t != ir::kNoTerm) claim.subject_terms.push_back(t);
        }
      } else if (key == "recipe") {
        ir::TermId t = parse_term(TermCtx::kClaim, nullptr);
        if (t != ir::kNoTerm) claim.term_options["recipe"] = t;
      } else {
        diags_.push_back({Severity::kError,
                          "unknown claim argument '" + key + "'",
                          key_tok.span});
        // Skip this argument's value.
        if (accept(TokKind::kLParen)) {
          int depth = 1;
          while (depth > 0 && !at(TokKind::kEof)) {
            if (at(TokKind::kLParen)) ++depth;
            if (at(TokKind::kRParen)) --depth;
            advance();
          }
        } else if (!at(TokKind::kComma) && !at(TokKind::kRParen)) {
          advance();
        }
      }
      if (!accept(TokKind::kComma)) break;
    }
    expect(TokKind::kRParen, "')'");
    expect(TokKind::kSemi, "';'");
    spec_.claims.push_back(std::move(claim));
  }

  std::string file_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  std::vector<Diagnostic> diags_;
  std::shared_ptr<ir::Signature> sig_builder_;
  std::shared_ptr<const ir::Signature> sig_;
  std::shared_ptr<ir::TermArena> arena_;
  ir::ProtocolSpec spec_;
};

/// Parses DSL source. A pure function of the source text: on success the
/// spec validates cleanly; otherwise the diagnostics list the problems.
inline ParseResult parse(std::string_view source, std::string file = "") {
  Parser p(source, std::move(file));
  return p.run();
}

}  // namespace veritax::dsl

#endif  // VERITAX_DSL_PARSER_HPP_
