// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinging/validate.hpp"

#include <map>
#include <set>
#include <string>

namespace thinging {

namespace {

Diagnostic make(Severity severity, std::string_view code, std::string message,
                const std::optional<SourceSpan>& span, std::optional<ElementId> element) {
  return Diagnostic{severity, std::string(code), std::move(message), span, element};
}

std::optional<SourceSpan> stage_span(const Model& model, ElementId stage_id) {
  const Stage& s = model.stage(stage_id);
  if (s.span) return s.span;
  return model.thimac(s.owner).span;
}

void check_flows(const Model& model, std::vector<Diagnostic>& out) {
  for (const FlowEdge& f : model.flows()) {
    const Stage& from = model.stage(f.from);
    const Stage& to = model.stage(f.to);
    const bool same = from.owner == to.owner;
    if (!legality(from.kind, to.kind, same)) {
      out.push_back(make(Severity::Error, codes::kFlowIllegal,
                         "flow " + model.qualified_name(f.id) + " is not a legal " +
                             (same ? "same-machine" : "cross-machine") + " " +
                             std::string(to_string(from.kind)) + "->" +
                             std::string(to_string(to.kind)) + " edge",
                         f.span, f.id));
    }
  }
}

// The entry port of a top-level machine: things may arrive there from
// outside the system.
bool is_boundary_source(const Model& model, const Stage& stage,
                        const std::set<ElementId>& enters_machine) {
  return stage.kind == StageKind::Transfer && !model.thimac(stage.owner).parent &&
         enters_machine.contains(stage.id);
}

void check_origins(const Model& model, std::vector<Diagnostic>& out) {
  std::map<ElementId, ElementId> parent;
  auto find = [&](ElementId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<ElementId> enters_machine;
  for (const FlowEdge& f : model.flows()) {
    parent.try_emplace(f.from, f.from);
    parent.try_emplace(f.to, f.to);
    parent[find(f.from)] = find(f.to);
    if (model.same_machine(f.from, f.to)) enters_machine.insert(f.from);
  }

  std::map<ElementId, bool> sourced;
  std::vector<ElementId> component_order;
  for (const Stage& s : model.stages()) {
    if (!parent.contains(s.id)) continue;
    const ElementId root = find(s.id);
    auto [it, fresh] = sourced.try_emplace(root, false);
    if (fresh) component_order.push_back(s.id);
    if (s.kind == StageKind::Create || is_boundary_source(model, s, enters_machine)) {
      it->second = true;
    }
  }
  for (ElementId first : component_order) {
    if (sourced[find(first)]) continue;
    out.push_back(make(Severity::Error, codes::kOriginMissing,
                       "flow component containing " + model.qualified_name(first) +
                           " has no create stage and no system-boundary transfer",
                       stage_span(model, first), first));
  }
}

void check_edges(const Model& model, std::vector<Diagnostic>& out) {
  std::set<ElementId> touched;
  for (const FlowEdge& f : model.flows()) touched.insert({f.from, f.to});
  for (const TriggerEdge& t : model.triggers()) {
    touched.insert({t.from, t.to});
    if (t.from == t.to) {
      out.push_back(make(Severity::Warning, codes::kTriggerSelf,
                         "stage " + model.qualified_name(t.from) + " triggers itself", t.span,
                         t.id));
    }
  }
  for (const MemoryEdge& m : model.memory_edges()) {
    touched.insert({m.from, m.to});
    out.push_back(make(Severity::Error, codes::kMemoryUnsupported,
                       "the memory relation is reserved and has no defined semantics", m.span,
                       m.id));
  }
  for (const Stage& s : model.stages()) {
    if (touched.contains(s.id)) continue;
    out.push_back(make(Severity::Warning, codes::kStageUnreachable,
                       "stage " + model.qualified_name(s.id) + " has no incident edges",
                       stage_span(model, s.id), s.id));
  }
}

void check_events(const Model& model, std::span<const EventDef> events,
                  std::vector<Diagnostic>& out) {
  for (const EventDef& e : events) {
    auto region_findings = check_region(model, e);
    out.insert(out.end(), region_findings.begin(), region_findings.end());

    bool structural_problem = false;
    for (const std::string& sub : e.subevents) {
      if (!find_event(events, sub)) {
        structural_problem = true;
        out.push_back(make(Severity::Error, codes::kEventUnknownSubevent,
                           "event '" + e.id + "' contains undeclared event '" + sub + "'", e.span,
                           std::nullopt));
      }
    }
    std::set<ElementId> flat;
    try {
      flat = flatten(events, e.id);
    } catch (const BehaviorError& err) {
      if (err.code() == BehaviorError::Code::ContainmentCycle) {
        out.push_back(make(Severity::Error, codes::kEventContainmentCycle,
                           "event '" + e.id + "' is part of a containment cycle", e.span,
                           std::nullopt));
      }
      structural_problem = true;
    }
    if (!structural_problem && resolve_region(model, flat).stages.empty()) {
      out.push_back(make(Severity::Error, codes::kEventEmpty,
                         "event '" + e.id + "' has an empty region", e.span, std::nullopt));
    }
  }
}

bool regions_linked(const Model& model, const Region& a, const Region& b) {
  for (ElementId s : a.stages) {
    if (b.stages.contains(s)) return true;
  }
  for (const FlowEdge& f : model.flows()) {
    if (a.stages.contains(f.from) && b.stages.contains(f.to)) return true;
  }
  for (const TriggerEdge& t : model.triggers()) {
    if (a.stages.contains(t.from) && b.stages.contains(t.to)) return true;
  }
  return false;
}

void check_chronology(const Model& model, std::span<const EventDef> events,
                      const Chronology& chronology, const ValidateOptions& options,
                      std::vector<Diagnostic>& out) {
  for (const std::string& node : chronology.nodes) {
    if (!find_event(events, node)) {
      out.push_back(make(Severity::Error, codes::kChronoUnknownEvent,
                         "chronology references undeclared event '" + node + "'",
                         chronology.span, std::nullopt));
    }
  }
  const std::set<std::string_view> declared(chronology.nodes.begin(), chronology.nodes.end());
  for (const auto& [from, to] : chronology.edges) {
    for (const std::string* end : {&from, &to}) {
      if (!declared.contains(*end)) {
        out.push_back(make(Severity::Error, codes::kChronoUnknownEvent,
                           "chronology edge references undeclared node '" + *end + "'",
                           chronology.span, std::nullopt));
      }
    }
  }
  const auto stuck = chronology_cycle_nodes(chronology);
  if (!stuck.empty()) {
    std::string names;
    for (const auto& n : stuck) names += (names.empty() ? "" : ", ") + n;
    out.push_back(make(Severity::Error, codes::kChronoCycle,
                       "chronology has a directed cycle among: " + names, chronology.span,
                       std::nullopt));
  }

  if (!options.lint_chronology) return;
  for (const auto& [from, to] : chronology.edges) {
    if (!find_event(events, from) || !find_event(events, to)) continue;
    try {
      const Region a = resolve_region(model, flatten(events, from));
      const Region b = resolve_region(model, flatten(events, to));
      if (!regions_linked(model, a, b)) {
        out.push_back(make(Severity::Warning, codes::kChronoUnjustified,
                           "no flow or trigger leads from event '" + from + "' to event '" + to +
                               "'",
                           chronology.span, std::nullopt));
      }
    } catch (const BehaviorError&) {
      // reported by check_events
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate(const Model& model, std::span<const EventDef> events,
                                 const std::optional<Chronology>& chronology,
                                 const ValidateOptions& options) {
  std::vector<Diagnostic> out;
  check_flows(model, out);
  check_origins(model, out);
  check_edges(model, out);
  check_events(model, events, out);
  if (chronology) check_chronology(model, events, *chronology, options, out);
  sort_diagnostics(out);
  return out;
}

}  // namespace thinging
