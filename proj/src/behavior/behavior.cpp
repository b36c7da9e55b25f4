// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinging/behavior.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <json.hpp>

namespace thinging {

Region resolve_region(const Model& model, const std::set<ElementId>& members) {
  Region region;
  for (ElementId id : members) {
    if (model.find_stage(id)) {
      region.stages.insert(id);
    } else if (const FlowEdge* f = model.find_flow(id)) {
      region.flows.insert(id);
      region.stages.insert(f->from);
      region.stages.insert(f->to);
    } else if (const TriggerEdge* t = model.find_trigger(id)) {
      region.triggers.insert(id);
      region.stages.insert(t->from);
      region.stages.insert(t->to);
    }
  }
  return region;
}

std::set<ElementId> induced_region(const Model& model, const std::set<ElementId>& stages) {
  std::set<ElementId> out = stages;
  for (const FlowEdge& f : model.flows()) {
    if (stages.contains(f.from) && stages.contains(f.to)) out.insert(f.id);
  }
  for (const TriggerEdge& t : model.triggers()) {
    if (stages.contains(t.from) && stages.contains(t.to)) out.insert(t.id);
  }
  return out;
}

const EventDef* find_event(std::span<const EventDef> events, std::string_view id) {
  for (const EventDef& e : events) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::vector<Diagnostic> check_region(const Model& model, const EventDef& event) {
  std::vector<Diagnostic> out;
  for (ElementId id : event.region) {
    const auto kind = model.kind_of(id);
    if (!kind || *kind == ElementKind::Thimac || *kind == ElementKind::Memory) {
      out.push_back({Severity::Error, std::string(codes::kRegionDangling),
                     "event '" + event.id + "' region references unknown element #" +
                         std::to_string(id.value),
                     event.span, id});
    }
  }

  const Region region = resolve_region(model, event.region);
  if (region.stages.size() <= 1) return out;

  // Union-find over region stages joined by region edges.
  std::map<ElementId, ElementId> parent;
  for (ElementId s : region.stages) parent[s] = s;
  auto find = [&](ElementId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto join = [&](ElementId a, ElementId b) { parent[find(a)] = find(b); };
  for (ElementId f : region.flows) join(model.find_flow(f)->from, model.find_flow(f)->to);
  for (ElementId t : region.triggers) {
    join(model.find_trigger(t)->from, model.find_trigger(t)->to);
  }
  const ElementId root = find(*region.stages.begin());
  const bool connected = std::all_of(region.stages.begin(), region.stages.end(),
                                     [&](ElementId s) { return find(s) == root; });
  if (!connected) {
    out.push_back({Severity::Warning, std::string(codes::kRegionDisconnected),
                   "event '" + event.id + "' region is not connected through its own edges",
                   event.span, std::nullopt});
  }
  return out;
}

std::set<ElementId> flatten(std::span<const EventDef> events, std::string_view root) {
  std::set<ElementId> out;
  std::vector<std::string> path;
  auto visit = [&](auto& self, std::string_view id) -> void {
    const EventDef* e = find_event(events, id);
    if (!e) {
      throw BehaviorError(BehaviorError::Code::UnknownEvent,
                          "unknown event '" + std::string(id) + "'");
    }
    if (std::find(path.begin(), path.end(), id) != path.end()) {
      throw BehaviorError(BehaviorError::Code::ContainmentCycle,
                          "event '" + std::string(id) + "' contains itself");
    }
    path.emplace_back(id);
    out.insert(e->region.begin(), e->region.end());
    for (const std::string& sub : e->subevents) self(self, sub);
    path.pop_back();
  };
  visit(visit, root);
  return out;
}

bool topological_orders_contains(const Chronology& chronology,
                                 std::span<const std::string> order) {
  std::vector<std::string> expected = chronology.nodes;
  std::vector<std::string> given(order.begin(), order.end());
  std::sort(expected.begin(), expected.end());
  std::sort(given.begin(), given.end());
  if (expected != given || std::adjacent_find(given.begin(), given.end()) != given.end()) {
    throw BehaviorError(BehaviorError::Code::NotAPermutation,
                        "order is not a permutation of the chronology nodes");
  }
  std::map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  for (const auto& [from, to] : chronology.edges) {
    const auto a = position.find(from);
    const auto b = position.find(to);
    if (a == position.end() || b == position.end()) continue;
    if (a->second >= b->second) return false;
  }
  return true;
}

namespace {

// Kahn's algorithm with earliest-declared tie-breaking. Returns the order
// produced and leaves unprocessed nodes in `stuck`.
std::vector<std::string> kahn(const Chronology& chronology, std::vector<std::string>* stuck) {
  const std::size_t n = chronology.nodes.size();
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(chronology.nodes[i], i);

  std::vector<std::vector<std::size_t>> successors(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [from, to] : chronology.edges) {
    const auto a = index.find(from);
    const auto b = index.find(to);
    if (a == index.end() || b == index.end()) continue;
    successors[a->second].push_back(b->second);
    ++indegree[b->second];
  }

  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  std::vector<std::string> order;
  std::vector<bool> done(n, false);
  while (!ready.empty()) {
    const std::size_t next = *ready.begin();
    ready.erase(ready.begin());
    done[next] = true;
    order.push_back(chronology.nodes[next]);
    for (std::size_t succ : successors[next]) {
      if (--indegree[succ] == 0) ready.insert(succ);
    }
  }
  if (stuck) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i]) stuck->push_back(chronology.nodes[i]);
    }
  }
  return order;
}

}  // namespace

std::vector<std::string> chronology_cycle_nodes(const Chronology& chronology) {
  std::vector<std::string> stuck;
  kahn(chronology, &stuck);
  return stuck;
}

std::vector<std::string> linear_extension(const Chronology& chronology) {
  std::vector<std::string> stuck;
  auto order = kahn(chronology, &stuck);
  if (!stuck.empty()) {
    throw BehaviorError(BehaviorError::Code::ChronologyCycle,
                        "chronology has a cycle through '" + stuck.front() + "'");
  }
  return order;
}

std::vector<ElementId> uncovered_elements(const Model& model, std::span<const EventDef> events) {
  std::set<ElementId> covered;
  for (const EventDef& e : events) {
    std::set<ElementId> members;
    try {
      members = flatten(events, e.id);
    } catch (const BehaviorError&) {
      members = e.region;
    }
    const Region r = resolve_region(model, members);
    covered.insert(r.stages.begin(), r.stages.end());
    covered.insert(r.flows.begin(), r.flows.end());
    covered.insert(r.triggers.begin(), r.triggers.end());
  }
  std::vector<ElementId> out;
  for (const Stage& s : model.stages()) {
    if (!covered.contains(s.id)) out.push_back(s.id);
  }
  for (const FlowEdge& f : model.flows()) {
    if (!covered.contains(f.id)) out.push_back(f.id);
  }
  for (const TriggerEdge& t : model.triggers()) {
    if (!covered.contains(t.id)) out.push_back(t.id);
  }
  return out;
}

std::string coverage_report_json(const Model& model, std::span<const EventDef> events) {
  nlohmann::ordered_json doc;
  doc["uncovered"] = nlohmann::ordered_json::array();
  for (ElementId id : uncovered_elements(model, events)) {
    doc["uncovered"].push_back(model.qualified_name(id));
  }
  return doc.dump(2) + "\n";
}

std::vector<EventDef> remap_regions(std::span<const EventDef> events,
                                    const Normalization& normalization) {
  std::vector<EventDef> out(events.begin(), events.end());
  for (EventDef& e : out) {
    std::set<ElementId> region;
    for (ElementId id : e.region) {
      const auto it = normalization.replaced.find(id);
      if (it == normalization.replaced.end()) {
        region.insert(id);
      } else {
        region.insert(it->second.begin(), it->second.end());
      }
    }
    e.region = std::move(region);
  }
  return out;
}

}  // namespace thinging
