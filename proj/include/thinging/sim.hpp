// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thinging/behavior.hpp"
#include "thinging/core.hpp"

namespace thinging {

/// Runtime stand-in for one thing instance.
struct Token {
  std::uint64_t id = 0;
  /// Qualified name of the thimac whose stage spawned the token.
  std::string thing;
  ElementId location;
};

enum class FiringKind : std::uint8_t { StageFire, FlowMove, TriggerFire, TokenSpawn };

std::string_view to_string(FiringKind kind);

struct Firing {
  std::uint64_t step = 0;
  std::string event;
  std::uint32_t instance = 1;
  ElementId element;
  FiringKind kind = FiringKind::StageFire;
  std::optional<std::uint64_t> token;
};

struct EventInstance {
  std::string event;
  std::uint32_t instance = 1;
  TimeStamp time;
};

struct Trace {
  std::vector<Firing> firings;
  std::vector<EventInstance> event_order;
  std::vector<Token> final_tokens;
  /// Broadcast notices. Not part of the serialized trace.
  std::vector<std::string> warnings;
};

enum class Scheduler : std::uint8_t { DeclarationOrderFifo };

struct SimConfig {
  std::uint64_t max_steps_per_event = 10000;
  Scheduler scheduler = Scheduler::DeclarationOrderFifo;
};

class SimError : public std::runtime_error {
 public:
  enum class Code { StepBudgetExceeded, PreconditionViolated };

  SimError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Executes the chronology over `model`. Events run in Kahn order with ties
/// broken by node declaration order; each runs `multiplicity` times in a row.
/// Throws SimError.
Trace simulate(const Model& model, std::span<const EventDef> events,
               const Chronology& chronology, const SimConfig& config = {});

struct EventCoverage {
  std::string event;
  /// Fired region stages over all region stages; 1.0 for a stage-less region.
  double fraction = 1.0;
  std::vector<ElementId> never_fired;
};

struct CoverageReport {
  std::vector<EventCoverage> events;
  /// Region stages, over all events, that fired in none of their instances.
  std::vector<ElementId> never_fired;
};

/// Per-event share of region stages that fired at least once. Events absent
/// from the trace count as never fired.
CoverageReport coverage(const Model& model, const Trace& trace, std::span<const EventDef> events);

/// `{"eventOrder":[...],"firings":[...],"finalTokens":[...]}`, keys in fixed
/// order. Compact unless `indent` is non-negative.
std::string trace_to_json(const Model& model, const Trace& trace, int indent = -1);

}  // namespace thinging
