// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thinging/element_id.hpp"

namespace thinging {

/// 1-based source location range. Start precedes end in document order.
struct SourceSpan {
  std::string file;
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity : std::uint8_t { Error, Warning };

std::string_view to_string(Severity severity);

/// A finding reported by the parser, the validator, or the behavior checks.
/// `code` is one of the identifiers in `thinging::codes`.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::optional<SourceSpan> span;
  std::optional<ElementId> element;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Orders diagnostics by (file, span start, span end, code). Diagnostics
/// without a span sort after all spanned ones.
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

/// `file:line:col: severity[CODE] message`
std::string format_diagnostic(const Diagnostic& diagnostic);

/// Closed set of diagnostic codes. These are part of the public contract.
namespace codes {
// validator
inline constexpr std::string_view kFlowIllegal = "FLOW_ILLEGAL";
inline constexpr std::string_view kOriginMissing = "ORIGIN_MISSING";
inline constexpr std::string_view kTriggerSelf = "TRIGGER_SELF";
inline constexpr std::string_view kStageUnreachable = "STAGE_UNREACHABLE";
inline constexpr std::string_view kRegionDangling = "REGION_DANGLING";
inline constexpr std::string_view kRegionDisconnected = "REGION_DISCONNECTED";
inline constexpr std::string_view kChronoCycle = "CHRONO_CYCLE";
inline constexpr std::string_view kChronoUnknownEvent = "CHRONO_UNKNOWN_EVENT";
inline constexpr std::string_view kChronoUnjustified = "CHRONO_UNJUSTIFIED";
inline constexpr std::string_view kMemoryUnsupported = "MEMORY_UNSUPPORTED";
inline constexpr std::string_view kEventEmpty = "EVENT_EMPTY";
inline constexpr std::string_view kEventUnknownSubevent = "EVENT_UNKNOWN_SUBEVENT";
inline constexpr std::string_view kEventContainmentCycle = "EVENT_CONTAINMENT_CYCLE";
// parser and JSON import
inline constexpr std::string_view kLexError = "LEX_ERROR";
inline constexpr std::string_view kSyntaxError = "SYNTAX_ERROR";
inline constexpr std::string_view kUnresolvedPath = "UNRESOLVED_PATH";
inline constexpr std::string_view kDuplicateDefinition = "DUPLICATE_DEFINITION";
inline constexpr std::string_view kDuplicateEdge = "DUPLICATE_EDGE";
inline constexpr std::string_view kFlowSelf = "FLOW_SELF";
inline constexpr std::string_view kRepeatInvalid = "REPEAT_INVALID";
inline constexpr std::string_view kUnknownStageKind = "UNKNOWN_STAGE_KIND";
inline constexpr std::string_view kJsonMalformed = "JSON_MALFORMED";
inline constexpr std::string_view kJsonSchema = "JSON_SCHEMA";
}  // namespace codes

}  // namespace thinging
