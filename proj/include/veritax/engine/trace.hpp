// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VERITAX_ENGINE_TRACE_HPP_
#define VERITAX_ENGINE_TRACE_HPP_

#include <set>
#include <string>
#include <vector>

#include "veritax/engine/knowledge.hpp"
#include "veritax/taxonomy/formula.hpp"

namespace veritax::dy {

/// One timestamped event record. The time index is the 1-based position in
/// the trace; `kver` points at the knowledge snapshot in force once this
/// record exists.
struct TraceEvent {
  tax::EventLabel label = tax::EventLabel::kEnd;
  std::string group;  // claim group tag; empty on hand-built traces
  std::vector<ir::TermId> args;
  int kver = 0;
};

/// A finite trace: the model over which property formulas are evaluated.
/// Knowledge snapshots are indexed by TraceEvent::kver; `final_kver` is the
/// attacker's knowledge at the end of the trace (the reading used for
/// untimed K). An empty honest set means every principal counts as honest.
struct Trace {
  std::vector<TraceEvent> events;
  std::vector<Knowledge> snapshots{Knowledge{}};
  int final_kver = 0;
  std::set<std::string> honest;

  int length() const { return static_cast<int>(events.size()); }

  const Knowledge& knowledge_at(int time) const {
    if (time < 1 || time > length()) return snapshots[final_kver];
    return snapshots[events[time - 1].kver];
  }
  const Knowledge& final_knowledge() const { return snapshots[final_kver]; }

  Trace& add(tax::EventLabel label, std::vector<ir::TermId> args,
             std::string group = "", int kver = -1) {
    events.push_back({label, std::move(group), std::move(args),
                      kver < 0 ? final_kver : kver});
    return *this;
  }
};

/// Canonical serialization used for witness selection and JSON output:
/// one line per record, `t: Label(arg, ...)`.
inline std::string trace_to_string(const ir::TermArena& a, const Trace& tr) {
  std::string out;
  for (size_t i = 0; i < tr.events.size(); ++i) {
    const TraceEvent& e = tr.events[i];
    out += std::to_string(i + 1) + ": ";
    out += tax::label_info(e.label).name;
    out += "(";
    for (size_t k = 0; k < e.args.size(); ++k) {
      if (k) out += ", ";
      out += a.to_string(e.args[k]);
    }
    out += ")\n";
  }
  return out;
}

}  // namespace veritax::dy

#endif  // VERITAX_ENGINE_TRACE_HPP_
