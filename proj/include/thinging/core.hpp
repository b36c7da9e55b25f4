// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thinging/diagnostic.hpp"
#include "thinging/element_id.hpp"

namespace thinging {

// ----------------------------------------------------------------------------
// Stage kinds

/// The five generic stages of a thinging machine.
enum class StageKind : std::uint8_t { Create, Process, Release, Transfer, Receive };

inline constexpr std::array<StageKind, 5> kAllStageKinds = {
    StageKind::Create, StageKind::Process, StageKind::Release, StageKind::Transfer,
    StageKind::Receive};

inline constexpr std::size_t index_of(StageKind kind) { return static_cast<std::size_t>(kind); }

/// Lower-case keyword ("create", "process", ...).
std::string_view to_string(StageKind kind);

/// Parses a stage keyword. `arrive` and `accept` are accepted as aliases of
/// `receive`.
std::optional<StageKind> parse_stage_kind(std::string_view word);

/// Membership in the fixed stage-wiring relation. Same machine: create->process,
/// create->release, receive->process, receive->release, process->release,
/// release->transfer, transfer->receive. Across machines: transfer->transfer.
bool legal_flow(StageKind from, StageKind to, bool same_machine);

// ----------------------------------------------------------------------------
// Model elements

struct Thimac {
  ElementId id;
  std::string name;
  std::optional<ElementId> parent;
  std::array<std::optional<ElementId>, 5> stages{};
  std::vector<ElementId> children;
  std::optional<int> annotation;
  std::optional<SourceSpan> span;

  std::optional<ElementId> stage(StageKind kind) const { return stages[index_of(kind)]; }
};

struct Stage {
  ElementId id;
  ElementId owner;
  StageKind kind = StageKind::Create;
  /// Inserted by normalization rather than declared.
  bool implicit = false;
  std::optional<int> annotation;
  std::optional<SourceSpan> span;
};

struct FlowEdge {
  ElementId id;
  ElementId from;
  ElementId to;
  /// Stages created by normalization while expanding the source edge this one
  /// came from. Empty for declared edges.
  std::vector<ElementId> implicit_segments;
  std::optional<int> annotation;
  std::optional<SourceSpan> span;
};

struct TriggerEdge {
  ElementId id;
  ElementId from;
  ElementId to;
  std::optional<int> annotation;
  std::optional<SourceSpan> span;
};

/// The reserved "memory" relation. Recorded so that the validator can reject
/// it; it has no semantics.
struct MemoryEdge {
  ElementId id;
  ElementId from;
  ElementId to;
  std::optional<SourceSpan> span;
};

enum class ElementKind : std::uint8_t { Thimac, Stage, Flow, Trigger, Memory };

class ModelError : public std::runtime_error {
 public:
  enum class Code {
    DuplicateName,
    UnknownParent,
    UnknownThimac,
    DuplicateStageKind,
    UnknownEndpoint,
    SelfFlow,
    AmbiguousExpansion,
  };

  ModelError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

struct Normalization;

// ----------------------------------------------------------------------------
// Model

/// Static TM diagram: a forest of thimacs, their stages, and the flow and
/// trigger edges between stages. Construction is append-only; all lists keep
/// declaration order.
class Model {
 public:
  ElementId add_thimac(std::optional<ElementId> parent, std::string name,
                       std::optional<int> annotation = {}, std::optional<SourceSpan> span = {});
  ElementId add_stage(ElementId thimac, StageKind kind, std::optional<int> annotation = {},
                      std::optional<SourceSpan> span = {});

  /// Appends a flow between two stages. A second edge with the same endpoints
  /// is collapsed onto the first and its id returned.
  ElementId add_flow(ElementId from, ElementId to, std::optional<int> annotation = {},
                     std::optional<SourceSpan> span = {});
  ElementId add_flow(std::string_view from_path, std::string_view to_path);

  ElementId add_trigger(ElementId from, ElementId to, std::optional<int> annotation = {},
                        std::optional<SourceSpan> span = {});
  ElementId add_trigger(std::string_view from_path, std::string_view to_path);

  /// Provenance of normalization, restored when reading a serialized model.
  void mark_implicit(ElementId stage);
  void set_implicit_segments(ElementId flow, std::vector<ElementId> stages);

  ElementId add_memory(ElementId from, ElementId to, std::optional<SourceSpan> span = {});

  const std::vector<ElementId>& roots() const { return roots_; }
  const std::vector<Thimac>& thimacs() const { return thimacs_; }
  const std::vector<Stage>& stages() const { return stages_; }
  const std::vector<FlowEdge>& flows() const { return flows_; }
  const std::vector<TriggerEdge>& triggers() const { return triggers_; }
  const std::vector<MemoryEdge>& memory_edges() const { return memory_; }

  bool empty() const { return thimacs_.empty(); }
  bool contains(ElementId id) const { return kind_of(id).has_value(); }
  std::optional<ElementKind> kind_of(ElementId id) const;

  const Thimac* find_thimac(ElementId id) const;
  const Stage* find_stage(ElementId id) const;
  const FlowEdge* find_flow(ElementId id) const;
  const TriggerEdge* find_trigger(ElementId id) const;

  const Thimac& thimac(ElementId id) const;
  const Stage& stage(ElementId id) const;

  std::optional<ElementId> find_child(std::optional<ElementId> parent, std::string_view name) const;
  /// Dotted path of thimac names, e.g. "ATM.card".
  std::optional<ElementId> find_thimac_by_path(std::string_view path) const;
  /// "ATM.card.receive" names a stage; a path ending at a thimac names that
  /// thimac's transfer stage.
  std::optional<ElementId> resolve_stage_path(std::string_view path) const;

  std::optional<ElementId> find_flow_between(ElementId from, ElementId to) const;
  std::optional<ElementId> find_trigger_between(ElementId from, ElementId to) const;

  /// Stable textual name of any element: "A.b" for thimacs, "A.b.create" for
  /// stages, "A.create->A.release" for flows, "A.process~>B.create" for
  /// triggers.
  std::string qualified_name(ElementId id) const;

  bool same_machine(ElementId stage_a, ElementId stage_b) const;

  /// Number of thimacs, stages and edges.
  std::size_t element_count() const;

 private:
  friend Normalization normalize_partial(const Model& model);

  struct Slot {
    ElementKind kind;
    std::uint32_t index;
  };

  ElementId allocate(ElementKind kind, std::size_t index);
  const Slot* slot(ElementId id) const;
  void require_stage(ElementId id, std::string_view role) const;
  std::string thimac_path(ElementId id) const;

  std::vector<ElementId> roots_;
  std::vector<Thimac> thimacs_;
  std::vector<Stage> stages_;
  std::vector<FlowEdge> flows_;
  std::vector<TriggerEdge> triggers_;
  std::vector<MemoryEdge> memory_;
  // Indexed by ElementId::value; id 0 is never allocated.
  std::vector<std::optional<Slot>> slots_{std::nullopt};
};

// ----------------------------------------------------------------------------
// Normalization and comparison

/// Result of expanding every elided flow into its stage-complete chain.
struct Normalization {
  Model model;
  /// Source flow id -> the elements that replace it (chain edges and the
  /// intermediate stages they pass through). Only flows whose id did not
  /// survive are listed.
  std::map<ElementId, std::vector<ElementId>> replaced;
  /// Flows that admit no legal expansion; kept unchanged in `model`.
  std::vector<ElementId> unexpandable;
};

/// Expands what can be expanded and reports the rest; never throws.
Normalization normalize_partial(const Model& model);

/// Canonical full form. Throws ModelError(AmbiguousExpansion) if any flow has
/// no legal expansion.
Model normalize(const Model& model);

/// True iff every flow edge is in the legality relation.
bool is_normalized(const Model& model);

/// Structural equality up to a bijection on qualified names. Ignores ids,
/// annotations, spans, normalization provenance and edge declaration order.
bool model_equal(const Model& a, const Model& b);

}  // namespace thinging
