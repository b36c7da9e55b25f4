// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "thinging/core.hpp"

namespace thinging {

namespace {

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto dot = path.find('.', start);
    const auto end = dot == std::string_view::npos ? path.size() : dot;
    parts.push_back(path.substr(start, end - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

}  // namespace

ElementId Model::allocate(ElementKind kind, std::size_t index) {
  const ElementId id{static_cast<std::uint32_t>(slots_.size())};
  slots_.push_back(Slot{kind, static_cast<std::uint32_t>(index)});
  return id;
}

const Model::Slot* Model::slot(ElementId id) const {
  if (id.value >= slots_.size() || !slots_[id.value]) return nullptr;
  return &*slots_[id.value];
}

std::optional<ElementKind> Model::kind_of(ElementId id) const {
  const Slot* s = slot(id);
  if (!s) return std::nullopt;
  return s->kind;
}

const Thimac* Model::find_thimac(ElementId id) const {
  const Slot* s = slot(id);
  return s && s->kind == ElementKind::Thimac ? &thimacs_[s->index] : nullptr;
}

const Stage* Model::find_stage(ElementId id) const {
  const Slot* s = slot(id);
  return s && s->kind == ElementKind::Stage ? &stages_[s->index] : nullptr;
}

const FlowEdge* Model::find_flow(ElementId id) const {
  const Slot* s = slot(id);
  return s && s->kind == ElementKind::Flow ? &flows_[s->index] : nullptr;
}

const TriggerEdge* Model::find_trigger(ElementId id) const {
  const Slot* s = slot(id);
  return s && s->kind == ElementKind::Trigger ? &triggers_[s->index] : nullptr;
}

const Thimac& Model::thimac(ElementId id) const {
  const Thimac* t = find_thimac(id);
  if (!t) {
    throw ModelError(ModelError::Code::UnknownThimac,
                     "no thimac with id " + std::to_string(id.value));
  }
  return *t;
}

const Stage& Model::stage(ElementId id) const {
  const Stage* s = find_stage(id);
  if (!s) {
    throw ModelError(ModelError::Code::UnknownEndpoint,
                     "no stage with id " + std::to_string(id.value));
  }
  return *s;
}

ElementId Model::add_thimac(std::optional<ElementId> parent, std::string name,
                            std::optional<int> annotation, std::optional<SourceSpan> span) {
  if (parent && !find_thimac(*parent)) {
    throw ModelError(ModelError::Code::UnknownParent,
                     "unknown parent thimac id " + std::to_string(parent->value));
  }
  if (find_child(parent, name)) {
    const std::string where = parent ? "in '" + thimac_path(*parent) + "'" : "at top level";
    throw ModelError(ModelError::Code::DuplicateName,
                     "thimac '" + name + "' already declared " + where);
  }
  const ElementId id = allocate(ElementKind::Thimac, thimacs_.size());
  thimacs_.push_back(Thimac{id, std::move(name), parent, {}, {}, annotation, std::move(span)});
  if (parent) {
    thimacs_[slot(*parent)->index].children.push_back(id);
  } else {
    roots_.push_back(id);
  }
  return id;
}

ElementId Model::add_stage(ElementId thimac_id, StageKind kind, std::optional<int> annotation,
                           std::optional<SourceSpan> span) {
  const Slot* s = slot(thimac_id);
  if (!s || s->kind != ElementKind::Thimac) {
    throw ModelError(ModelError::Code::UnknownThimac,
                     "unknown thimac id " + std::to_string(thimac_id.value));
  }
  const std::uint32_t owner_index = s->index;
  if (thimacs_[owner_index].stages[index_of(kind)]) {
    throw ModelError(ModelError::Code::DuplicateStageKind,
                     "thimac '" + thimac_path(thimac_id) + "' already has a " +
                         std::string(to_string(kind)) + " stage");
  }
  const ElementId id = allocate(ElementKind::Stage, stages_.size());
  stages_.push_back(Stage{id, thimac_id, kind, false, annotation, std::move(span)});
  thimacs_[owner_index].stages[index_of(kind)] = id;
  return id;
}

void Model::require_stage(ElementId id, std::string_view role) const {
  if (!find_stage(id)) {
    throw ModelError(ModelError::Code::UnknownEndpoint,
                     std::string(role) + " endpoint " + std::to_string(id.value) +
                         " is not a stage of this model");
  }
}

ElementId Model::add_flow(ElementId from, ElementId to, std::optional<int> annotation,
                          std::optional<SourceSpan> span) {
  require_stage(from, "source");
  require_stage(to, "target");
  if (from == to) {
    throw ModelError(ModelError::Code::SelfFlow,
                     "flow from '" + qualified_name(from) + "' to itself");
  }
  if (auto existing = find_flow_between(from, to)) return *existing;
  const ElementId id = allocate(ElementKind::Flow, flows_.size());
  flows_.push_back(FlowEdge{id, from, to, {}, annotation, std::move(span)});
  return id;
}

ElementId Model::add_flow(std::string_view from_path, std::string_view to_path) {
  const auto from = resolve_stage_path(from_path);
  const auto to = resolve_stage_path(to_path);
  if (!from || !to) {
    throw ModelError(ModelError::Code::UnknownEndpoint,
                     "unresolved flow endpoint '" + std::string(!from ? from_path : to_path) + "'");
  }
  return add_flow(*from, *to);
}

ElementId Model::add_trigger(ElementId from, ElementId to, std::optional<int> annotation,
                             std::optional<SourceSpan> span) {
  require_stage(from, "source");
  require_stage(to, "target");
  if (auto existing = find_trigger_between(from, to)) return *existing;
  const ElementId id = allocate(ElementKind::Trigger, triggers_.size());
  triggers_.push_back(TriggerEdge{id, from, to, annotation, std::move(span)});
  return id;
}

ElementId Model::add_trigger(std::string_view from_path, std::string_view to_path) {
  const auto from = resolve_stage_path(from_path);
  const auto to = resolve_stage_path(to_path);
  if (!from || !to) {
    throw ModelError(ModelError::Code::UnknownEndpoint,
                     "unresolved trigger endpoint '" +
                         std::string(!from ? from_path : to_path) + "'");
  }
  return add_trigger(*from, *to);
}

ElementId Model::add_memory(ElementId from, ElementId to, std::optional<SourceSpan> span) {
  require_stage(from, "source");
  require_stage(to, "target");
  const ElementId id = allocate(ElementKind::Memory, memory_.size());
  memory_.push_back(MemoryEdge{id, from, to, std::move(span)});
  return id;
}

std::optional<ElementId> Model::find_child(std::optional<ElementId> parent,
                                           std::string_view name) const {
  const std::vector<ElementId>* siblings = &roots_;
  if (parent) {
    const Thimac* p = find_thimac(*parent);
    if (!p) return std::nullopt;
    siblings = &p->children;
  }
  for (ElementId child : *siblings) {
    if (find_thimac(child)->name == name) return child;
  }
  return std::nullopt;
}

std::optional<ElementId> Model::find_thimac_by_path(std::string_view path) const {
  std::optional<ElementId> current;
  for (std::string_view part : split_path(path)) {
    current = find_child(current, part);
    if (!current) return std::nullopt;
  }
  return current;
}

std::optional<ElementId> Model::resolve_stage_path(std::string_view path) const {
  auto parts = split_path(path);
  std::optional<StageKind> kind;
  if (parts.size() >= 2) {
    kind = parse_stage_kind(parts.back());
    if (kind) parts.pop_back();
  }
  std::optional<ElementId> current;
  for (std::string_view part : parts) {
    current = find_child(current, part);
    if (!current) return std::nullopt;
  }
  if (!current) return std::nullopt;
  return find_thimac(*current)->stage(kind.value_or(StageKind::Transfer));
}

std::optional<ElementId> Model::find_flow_between(ElementId from, ElementId to) const {
  for (const FlowEdge& f : flows_) {
    if (f.from == from && f.to == to) return f.id;
  }
  return std::nullopt;
}

std::optional<ElementId> Model::find_trigger_between(ElementId from, ElementId to) const {
  for (const TriggerEdge& t : triggers_) {
    if (t.from == from && t.to == to) return t.id;
  }
  return std::nullopt;
}

std::string Model::thimac_path(ElementId id) const {
  std::vector<std::string_view> names;
  for (const Thimac* t = find_thimac(id); t; t = t->parent ? find_thimac(*t->parent) : nullptr) {
    names.push_back(t->name);
  }
  std::string out;
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    if (!out.empty()) out += '.';
    out += *it;
  }
  return out;
}

std::string Model::qualified_name(ElementId id) const {
  const Slot* s = slot(id);
  if (!s) return "#" + std::to_string(id.value);
  switch (s->kind) {
    case ElementKind::Thimac: return thimac_path(id);
    case ElementKind::Stage: {
      const Stage& st = stages_[s->index];
      return thimac_path(st.owner) + "." + std::string(to_string(st.kind));
    }
    case ElementKind::Flow: {
      const FlowEdge& f = flows_[s->index];
      return qualified_name(f.from) + "->" + qualified_name(f.to);
    }
    case ElementKind::Trigger: {
      const TriggerEdge& t = triggers_[s->index];
      return qualified_name(t.from) + "~>" + qualified_name(t.to);
    }
    case ElementKind::Memory: {
      const MemoryEdge& m = memory_[s->index];
      return qualified_name(m.from) + "~memory~>" + qualified_name(m.to);
    }
  }
  return {};
}

bool Model::same_machine(ElementId stage_a, ElementId stage_b) const {
  return stage(stage_a).owner == stage(stage_b).owner;
}

void Model::mark_implicit(ElementId stage_id) {
  require_stage(stage_id, "stage");
  stages_[slot(stage_id)->index].implicit = true;
}

void Model::set_implicit_segments(ElementId flow, std::vector<ElementId> stages) {
  const Slot* s = slot(flow);
  if (!s || s->kind != ElementKind::Flow) {
    throw ModelError(ModelError::Code::UnknownEndpoint, "no flow #" + std::to_string(flow.value));
  }
  for (ElementId st : stages) require_stage(st, "segment");
  flows_[s->index].implicit_segments = std::move(stages);
}

std::size_t Model::element_count() const {
  return thimacs_.size() + stages_.size() + flows_.size() + triggers_.size() + memory_.size();
}

}  // namespace thinging
