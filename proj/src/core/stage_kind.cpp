// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <sstream>
#include <tuple>

#include "thinging/core.hpp"

namespace thinging {

std::string_view to_string(StageKind kind) {
  switch (kind) {
    case StageKind::Create: return "create";
    case StageKind::Process: return "process";
    case StageKind::Release: return "release";
    case StageKind::Transfer: return "transfer";
    case StageKind::Receive: return "receive";
  }
  return "?";
}

std::optional<StageKind> parse_stage_kind(std::string_view word) {
  if (word == "create") return StageKind::Create;
  if (word == "process") return StageKind::Process;
  if (word == "release") return StageKind::Release;
  if (word == "transfer") return StageKind::Transfer;
  if (word == "receive" || word == "arrive" || word == "accept") return StageKind::Receive;
  return std::nullopt;
}

bool legal_flow(StageKind from, StageKind to, bool same_machine) {
  using enum StageKind;
  if (!same_machine) return from == Transfer && to == Transfer;
  switch (from) {
    case Create: return to == Process || to == Release;
    case Receive: return to == Process || to == Release;
    case Process: return to == Release;
    case Release: return to == Transfer;
    case Transfer: return to == Receive;
  }
  return false;
}

// ----------------------------------------------------------------------------
// Diagnostics

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
  auto key = [](const Diagnostic& d) {
    const bool spanless = !d.span.has_value();
    const SourceSpan s = d.span.value_or(SourceSpan{});
    return std::make_tuple(spanless, s.file, s.start_line, s.start_col, s.end_line, s.end_col,
                           d.code);
  };
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [&](const Diagnostic& a, const Diagnostic& b) { return key(a) < key(b); });
}

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream out;
  if (d.span) {
    out << (d.span->file.empty() ? "<input>" : d.span->file) << ':' << d.span->start_line << ':'
        << d.span->start_col << ": ";
  }
  out << to_string(d.severity) << '[' << d.code << "] " << d.message;
  return out.str();
}

}  // namespace thinging
