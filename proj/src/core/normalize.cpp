// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <deque>

#include "thinging/core.hpp"

namespace thinging {

namespace {

// Shortest chain of intermediate kinds that completes a same-machine skip.
// Transfer is never an intermediate: passing through it would leave the
// machine and come back. Shortest paths in this graph are unique.
std::optional<std::vector<StageKind>> machine_path(StageKind from, StageKind to) {
  if (legal_flow(from, to, true)) return std::vector<StageKind>{};
  std::array<std::optional<StageKind>, 5> previous{};
  std::array<bool, 5> seen{};
  std::deque<StageKind> queue{from};
  seen[index_of(from)] = true;
  while (!queue.empty()) {
    const StageKind at = queue.front();
    queue.pop_front();
    if (at != from && at == StageKind::Transfer) continue;
    for (StageKind next : kAllStageKinds) {
      if (seen[index_of(next)] || !legal_flow(at, next, true)) continue;
      seen[index_of(next)] = true;
      previous[index_of(next)] = at;
      if (next == to) {
        std::vector<StageKind> middle;
        for (StageKind k = *previous[index_of(to)]; k != from; k = *previous[index_of(k)]) {
          middle.push_back(k);
        }
        std::reverse(middle.begin(), middle.end());
        return middle;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

struct Step {
  ElementId machine;
  StageKind kind;
};

// Full stage sequence (endpoints included) for one source edge.
std::optional<std::vector<Step>> expansion(const Model& model, const FlowEdge& flow) {
  const Stage& from = model.stage(flow.from);
  const Stage& to = model.stage(flow.to);
  std::vector<Step> steps{{from.owner, from.kind}};
  if (from.owner == to.owner) {
    auto middle = machine_path(from.kind, to.kind);
    if (!middle) return std::nullopt;
    for (StageKind k : *middle) steps.push_back({from.owner, k});
  } else {
    if (from.kind != StageKind::Transfer) {
      auto out = machine_path(from.kind, StageKind::Transfer);
      if (!out) return std::nullopt;
      for (StageKind k : *out) steps.push_back({from.owner, k});
      steps.push_back({from.owner, StageKind::Transfer});
    }
    if (to.kind != StageKind::Transfer) {
      auto in = machine_path(StageKind::Transfer, to.kind);
      if (!in) return std::nullopt;
      steps.push_back({to.owner, StageKind::Transfer});
      for (StageKind k : *in) steps.push_back({to.owner, k});
    }
  }
  steps.push_back({to.owner, to.kind});
  return steps;
}

}  // namespace

Normalization normalize_partial(const Model& model) {
  Normalization result{model, {}, {}};
  Model& out = result.model;

  std::vector<FlowEdge> source = std::move(out.flows_);
  out.flows_.clear();
  for (const FlowEdge& f : source) out.slots_[f.id.value].reset();

  auto emit = [&](FlowEdge edge) -> ElementId {
    for (const FlowEdge& existing : out.flows_) {
      if (existing.from == edge.from && existing.to == edge.to) return existing.id;
    }
    if (edge.id.value == 0) {
      edge.id = out.allocate(ElementKind::Flow, out.flows_.size());
    } else {
      out.slots_[edge.id.value] = Model::Slot{ElementKind::Flow,
                                              static_cast<std::uint32_t>(out.flows_.size())};
    }
    out.flows_.push_back(std::move(edge));
    return out.flows_.back().id;
  };

  for (const FlowEdge& flow : source) {
    const Stage& from = model.stage(flow.from);
    const Stage& to = model.stage(flow.to);
    if (legal_flow(from.kind, to.kind, from.owner == to.owner)) {
      const ElementId kept = emit(flow);
      if (kept != flow.id) result.replaced[flow.id] = {kept};
      continue;
    }
    const auto steps = expansion(model, flow);
    if (!steps) {
      result.unexpandable.push_back(flow.id);
      const ElementId kept = emit(flow);
      if (kept != flow.id) result.replaced[flow.id] = {kept};
      continue;
    }

    std::vector<ElementId> chain;
    std::vector<ElementId> created;
    for (const Step& step : *steps) {
      if (auto existing = out.thimac(step.machine).stage(step.kind)) {
        chain.push_back(*existing);
      } else {
        const ElementId id = out.add_stage(step.machine, step.kind);
        out.stages_.back().implicit = true;
        chain.push_back(id);
        created.push_back(id);
      }
    }
    std::vector<ElementId>& replacement = result.replaced[flow.id];
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      FlowEdge piece{ElementId{}, chain[i], chain[i + 1], created, flow.annotation, flow.span};
      replacement.push_back(emit(std::move(piece)));
    }
    replacement.insert(replacement.end(), chain.begin() + 1, chain.end() - 1);
  }
  return result;
}

Model normalize(const Model& model) {
  Normalization n = normalize_partial(model);
  if (!n.unexpandable.empty()) {
    throw ModelError(ModelError::Code::AmbiguousExpansion,
                     "flow '" + model.qualified_name(n.unexpandable.front()) +
                         "' admits no legal expansion");
  }
  return std::move(n.model);
}

bool is_normalized(const Model& model) {
  return std::all_of(model.flows().begin(), model.flows().end(), [&](const FlowEdge& f) {
    const Stage& from = model.stage(f.from);
    const Stage& to = model.stage(f.to);
    return legal_flow(from.kind, to.kind, from.owner == to.owner);
  });
}

}  // namespace thinging
