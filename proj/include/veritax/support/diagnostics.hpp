// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_SUPPORT_DIAGNOSTICS_HPP_
#define VERITAX_SUPPORT_DIAGNOSTICS_HPP_

#include <string>
#include <vector>

namespace veritax {

struct SourcePos {
  int line = 1;
  int col = 1;

  bool operator<=(const SourcePos& o) const {
    return line < o.line || (line == o.line && col <= o.col);
  }
  bool operator==(const SourcePos& o) const = default;
};

/// Half-open source range attached to every AST node and diagnostic.
struct SourceSpan {
  std::string file;
  SourcePos start;
  SourcePos end;

  static SourceSpan at(std::string file, int line, int col) {
    return {std::move(file), {line, col}, {line, col}};
  }
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string message;
  SourceSpan span;

  /// `file:line:col: severity: message`, the format printed by the CLI.
  std::string to_string() const {
    std::string out = span.file.empty() ? "<input>" : span.file;
    out += ":" + std::to_string(span.start.line) + ":" +
           std::to_string(span.start.col) + ": ";
    out += severity == Severity::kError ? "error: " : "warning: ";
    out += message;
    return out;
  }
};

/// Diagnostics are data, not failures: an empty report means all invariants
/// hold.
struct ValidationReport {
  std::vector<Diagnostic> diagnostics;

  bool empty() const { return diagnostics.empty(); }
  bool has_errors() const {
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::kError) return true;
    }
    return false;
  }
  void error(std::string msg, SourceSpan span = {}) {
    diagnostics.push_back({Severity::kError, std::move(msg), std::move(span)});
  }
  void warn(std::string msg, SourceSpan span = {}) {
    diagnostics.push_back(
        {Severity::kWarning, std::move(msg), std::move(span)});
  }
  void append(const ValidationReport& other) {
    diagnostics.insert(diagnostics.end(), other.diagnostics.begin(),
                       other.diagnostics.end());
  }
};

}  // namespace veritax

#endif  // VERITAX_SUPPORT_DIAGNOSTICS_HPP_
