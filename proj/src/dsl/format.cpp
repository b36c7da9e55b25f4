// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <map>
#include <sstream>
#include <stdexcept>

#include "thinging/dsl.hpp"

namespace thinging {

namespace {

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string annot(const std::optional<int>& a) {
  return a ? " @" + std::to_string(*a) : std::string();
}

class Formatter {
 public:
  explicit Formatter(const Model& model) : model_(model) {
    for (const Stage& s : model.stages()) stages_by_owner_[s.owner].push_back(&s);
  }

  void thimac(std::ostringstream& out, ElementId id, int depth) const {
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    const Thimac& t = model_.thimac(id);
    out << indent << "thimac " << t.name << annot(t.annotation) << " {\n";
    if (const auto it = stages_by_owner_.find(id); it != stages_by_owner_.end()) {
      for (const Stage* s : it->second) {
        out << indent << "  stage " << to_string(s->kind) << annot(s->annotation) << ";\n";
      }
    }
    for (ElementId child : t.children) thimac(out, child, depth + 1);
    out << indent << "}\n";
  }

 private:
  const Model& model_;
  std::map<ElementId, std::vector<const Stage*>> stages_by_owner_;
};

}  // namespace

std::string format(const ParseResult& result) {
  if (!result.model) throw std::invalid_argument("format: parse result has no model");
  const Model& model = *result.model;
  std::ostringstream out;

  const Formatter formatter(model);
  for (ElementId root : model.roots()) formatter.thimac(out, root, 0);
  for (const FlowEdge& f : model.flows()) {
    out << "flow " << model.qualified_name(f.from) << " -> " << model.qualified_name(f.to)
        << annot(f.annotation) << ";\n";
  }
  for (const TriggerEdge& t : model.triggers()) {
    out << "trigger " << model.qualified_name(t.from) << " ~> " << model.qualified_name(t.to)
        << annot(t.annotation) << ";\n";
  }
  for (const MemoryEdge& m : model.memory_edges()) {
    out << "memory " << model.qualified_name(m.from) << " ~> " << model.qualified_name(m.to)
        << ";\n";
  }

  for (const EventDef& e : result.events) {
    out << "event " << e.id;
    if (e.label) out << ' ' << quote(*e.label);
    out << " {\n  region {\n";
    const Region region = resolve_region(model, e.region);
    for (const Stage& s : model.stages()) {
      if (region.stages.contains(s.id)) out << "    " << model.qualified_name(s.id) << ";\n";
    }
    out << "  }\n";
    if (e.multiplicity != 1) out << "  repeat " << e.multiplicity << ";\n";
    if (!e.subevents.empty()) {
      out << "  contains ";
      for (std::size_t i = 0; i < e.subevents.size(); ++i) {
        out << (i ? ", " : "") << e.subevents[i];
      }
      out << ";\n";
    }
    out << "}\n";
  }

  if (result.chronology) {
    out << "chronology {\n";
    for (const std::string& node : result.chronology->nodes) out << "  " << node << ";\n";
    for (const auto& [from, to] : result.chronology->edges) {
      out << "  " << from << " -> " << to << ";\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace thinging
