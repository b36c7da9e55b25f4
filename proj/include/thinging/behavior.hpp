// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thinging/core.hpp"

namespace thinging {

/// An event, represented by its region over the static model.
struct EventDef {
  std::string id;
  std::optional<std::string> label;
  /// Stages and edges of the static model.
  std::set<ElementId> region;
  std::uint32_t multiplicity = 1;
  std::vector<std::string> subevents;
  std::optional<SourceSpan> span;
};

/// Directed acyclic graph over event identifiers.
struct Chronology {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::optional<SourceSpan> span;
};

/// Logical time of one event instance.
struct TimeStamp {
  std::uint64_t tick = 0;

  friend auto operator<=>(const TimeStamp&, const TimeStamp&) = default;
};

class BehaviorError : public std::runtime_error {
 public:
  enum class Code { UnknownEvent, ContainmentCycle, NotAPermutation, ChronologyCycle };

  BehaviorError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// A region split by element kind. Stage set includes the endpoints of every
/// edge member.
struct Region {
  std::set<ElementId> stages;
  std::set<ElementId> flows;
  std::set<ElementId> triggers;

  bool contains(ElementId id) const {
    return stages.contains(id) || flows.contains(id) || triggers.contains(id);
  }
};

Region resolve_region(const Model& model, const std::set<ElementId>& members);

/// The given stages plus every flow and trigger with both endpoints among
/// them.
std::set<ElementId> induced_region(const Model& model, const std::set<ElementId>& stages);

const EventDef* find_event(std::span<const EventDef> events, std::string_view id);

/// REGION_DANGLING for members that are not stages or edges of `model`;
/// REGION_DISCONNECTED when the region is not weakly connected through its
/// own edges.
std::vector<Diagnostic> check_region(const Model& model, const EventDef& event);

/// Region of `root` united with the regions of all transitively contained
/// events. Throws UnknownEvent or ContainmentCycle.
std::set<ElementId> flatten(std::span<const EventDef> events, std::string_view root);

inline std::uint32_t instances(const EventDef& event) { return event.multiplicity; }

/// True iff `order` is a linear extension of the chronology. Throws
/// NotAPermutation when `order` is not a permutation of the nodes.
bool topological_orders_contains(const Chronology& chronology,
                                 std::span<const std::string> order);

/// Nodes left over by Kahn's algorithm, in declaration order; empty iff the
/// chronology is acyclic. Edges naming undeclared nodes are ignored.
std::vector<std::string> chronology_cycle_nodes(const Chronology& chronology);

/// Kahn ordering that always picks the earliest-declared ready node. Throws
/// ChronologyCycle.
std::vector<std::string> linear_extension(const Chronology& chronology);

/// Stages and edges of the model that lie in no event region (after
/// flattening), in declaration order.
std::vector<ElementId> uncovered_elements(const Model& model, std::span<const EventDef> events);

/// `{"uncovered": [qualified names]}`
std::string coverage_report_json(const Model& model, std::span<const EventDef> events);

/// Rewrites regions after normalization: a replaced flow is swapped for its
/// chain edges and the stages they pass through.
std::vector<EventDef> remap_regions(std::span<const EventDef> events,
                                    const Normalization& normalization);

}  // namespace thinging
