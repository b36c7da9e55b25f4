// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "thinging/behavior.hpp"
#include "thinging/core.hpp"

namespace thinging {

/// The fixed stage-wiring relation checked by FLOW_ILLEGAL.
inline bool legality(StageKind from, StageKind to, bool same_machine) {
  return legal_flow(from, to, same_machine);
}

struct ValidateOptions {
  /// Warn (CHRONO_UNJUSTIFIED) on chronology edges between events whose
  /// regions share no stage and are not linked by any flow or trigger.
  bool lint_chronology = false;
};

/// Runs every rule and returns the findings sorted by (file, span, code).
/// An empty result means the model is accepted. Flow legality is checked on
/// the model as given; simplified models should be normalized first.
std::vector<Diagnostic> validate(const Model& model, std::span<const EventDef> events,
                                 const std::optional<Chronology>& chronology,
                                 const ValidateOptions& options = {});

}  // namespace thinging
