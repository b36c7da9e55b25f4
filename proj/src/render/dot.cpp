// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <map>
#include <set>
#include <sstream>

#include "thinging/render.hpp"

namespace thinging {

namespace {

constexpr const char* kPalette[] = {"#fde68a", "#bfdbfe", "#bbf7d0", "#fecaca", "#ddd6fe",
                                    "#fed7aa", "#a5f3fc", "#f5d0fe", "#d9f99d", "#e5e7eb"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

const char* shape_of(StageKind kind) {
  switch (kind) {
    case StageKind::Create: return "ellipse";
    case StageKind::Process: return "box";
    case StageKind::Release: return "house";
    case StageKind::Transfer: return "diamond";
    case StageKind::Receive: return "invhouse";
  }
  return "box";
}

class DotWriter {
 public:
  DotWriter(const Model& model, std::span<const EventDef> events, const RenderOptions& options)
      : model_(model), events_(events), options_(options) {
    for (const Stage& s : model.stages()) stages_by_owner_[s.owner].push_back(&s);
  }

  std::string static_graph() {
    if (options_.mode == RenderMode::EventOverlay) collect_overlay();
    header();
    for (ElementId root : model_.roots()) cluster(root, 1);
    edges();
    if (options_.mode == RenderMode::EventOverlay) legend();
    out_ << "}\n";
    return out_.str();
  }

  std::string chronology_graph(const std::optional<Chronology>& chronology) {
    header();
    std::vector<std::string> nodes;
    if (chronology) {
      nodes = chronology->nodes;
    } else {
      for (const EventDef& e : events_) nodes.push_back(e.id);
    }
    for (const std::string& id : nodes) {
      std::string label = id;
      if (const EventDef* e = find_event(events_, id)) {
        if (e->label) label += "\n" + *e->label;
        if (e->multiplicity != 1) label += "\nx" + std::to_string(e->multiplicity);
      }
      out_ << "  " << quoted("event:" + id) << " [shape=box, label=" << quoted(label) << "];\n";
    }
    if (chronology) {
      for (const auto& [from, to] : chronology->edges) {
        out_ << "  " << quoted("event:" + from) << " -> " << quoted("event:" + to) << ";\n";
      }
    }
    out_ << "}\n";
    return out_.str();
  }

 private:
  void header() {
    out_ << "digraph tm {\n"
         << "  rankdir=LR;\n"
         << "  compound=true;\n"
         << "  node [fontname=\"Helvetica\", fontsize=10];\n"
         << "  edge [fontname=\"Helvetica\", fontsize=9];\n";
  }

  bool hidden(ElementId stage) const {
    return options_.simplified && model_.stage(stage).implicit;
  }

  void collect_overlay() {
    for (std::size_t i = 0; i < events_.size(); ++i) {
      const EventDef& e = events_[i];
      if (options_.highlight && e.id != *options_.highlight) continue;
      const Region region = resolve_region(model_, flatten(events_, e.id));
      for (ElementId s : region.stages) members_[s].push_back(i);
      for (ElementId f : region.flows) edge_members_[f].push_back(i);
      for (ElementId t : region.triggers) edge_members_[t].push_back(i);
    }
  }

  std::string events_of(ElementId id, const std::map<ElementId, std::vector<std::size_t>>& from)
      const {
    std::string ids;
    if (const auto it = from.find(id); it != from.end()) {
      for (std::size_t i : it->second) ids += (ids.empty() ? "" : " ") + events_[i].id;
    }
    return ids;
  }

  void cluster(ElementId id, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string path = model_.qualified_name(id);
    out_ << pad << "subgraph " << quoted("cluster_" + path) << " {\n";
    std::string label = model_.thimac(id).name;
    if (const auto& a = model_.thimac(id).annotation) label += " (" + std::to_string(*a) + ")";
    out_ << pad << "  label=" << quoted(label) << ";\n";
    if (const auto it = stages_by_owner_.find(id); it != stages_by_owner_.end()) {
      for (const Stage* s : it->second) {
        if (hidden(s->id)) continue;
        node(*s, pad + "  ");
      }
    }
    for (ElementId child : model_.thimac(id).children) cluster(child, depth + 1);
    out_ << pad << "}\n";
  }

  void node(const Stage& s, const std::string& pad) {
    std::string label(to_string(s.kind));
    if (s.annotation) label += " (" + std::to_string(*s.annotation) + ")";
    out_ << pad << quoted(model_.qualified_name(s.id)) << " [label=" << quoted(label)
         << ", shape=" << shape_of(s.kind);
    const auto it = members_.find(s.id);
    if (it == members_.end()) {
      if (s.implicit) out_ << ", style=dashed";
    } else {
      out_ << ", style=" << quoted(s.implicit ? "filled,dashed" : "filled")
           << ", fillcolor=" << quoted(kPalette[it->second.front() % kPaletteSize])
           << ", xlabel=" << quoted(events_of(s.id, members_));
    }
    out_ << "];\n";
  }

  // Contracted edges carry the id of the first flow of their chain.
  void edge_line(ElementId from, ElementId to, ElementId edge, bool trigger) {
    out_ << "  " << quoted(model_.qualified_name(from)) << " -> "
         << quoted(model_.qualified_name(to));
    std::vector<std::string> attrs;
    if (trigger) attrs.emplace_back("style=dashed");
    if (const auto it = edge_members_.find(edge); it != edge_members_.end()) {
      attrs.emplace_back("penwidth=2");
      attrs.emplace_back("color=" + quoted("#1f2937"));
    }
    if (!attrs.empty()) {
      out_ << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) out_ << (i ? ", " : "") << attrs[i];
      out_ << "]";
    }
    out_ << ";\n";
  }

  void edges() {
    std::map<ElementId, std::vector<const FlowEdge*>> outgoing;
    for (const FlowEdge& f : model_.flows()) outgoing[f.from].push_back(&f);

    std::set<std::pair<ElementId, ElementId>> drawn;
    for (const FlowEdge& f : model_.flows()) {
      if (hidden(f.from)) continue;
      if (!hidden(f.to)) {
        edge_line(f.from, f.to, f.id, false);
        continue;
      }
      // Contract the run of hidden stages that starts at f.to.
      std::vector<ElementId> stack{f.to};
      std::set<ElementId> seen;
      while (!stack.empty()) {
        const ElementId at = stack.back();
        stack.pop_back();
        if (!seen.insert(at).second) continue;
        for (const FlowEdge* next : outgoing[at]) {
          if (hidden(next->to)) {
            stack.push_back(next->to);
          } else if (drawn.insert({f.from, next->to}).second) {
            edge_line(f.from, next->to, f.id, false);
          }
        }
      }
    }
    for (const TriggerEdge& t : model_.triggers()) {
      if (hidden(t.from) || hidden(t.to)) continue;
      edge_line(t.from, t.to, t.id, true);
    }
  }

  void legend() {
    out_ << "  subgraph \"cluster_legend\" {\n"
         << "    label=\"events\";\n";
    for (std::size_t i = 0; i < events_.size(); ++i) {
      const EventDef& e = events_[i];
      if (options_.highlight && e.id != *options_.highlight) continue;
      std::string label = e.id;
      if (e.label) label += ": " + *e.label;
      out_ << "    " << quoted("legend:" + e.id) << " [shape=box, style=filled, fillcolor="
           << quoted(kPalette[i % kPaletteSize]) << ", label=" << quoted(label) << "];\n";
    }
    out_ << "  }\n";
  }

  const Model& model_;
  std::span<const EventDef> events_;
  const RenderOptions& options_;
  std::map<ElementId, std::vector<const Stage*>> stages_by_owner_;
  std::map<ElementId, std::vector<std::size_t>> members_;
  std::map<ElementId, std::vector<std::size_t>> edge_members_;
  std::ostringstream out_;
};

}  // namespace

std::string render_dot(const Model& model, std::span<const EventDef> events,
                       const std::optional<Chronology>& chronology, const RenderOptions& options) {
  if (options.highlight) {
    if (options.mode != RenderMode::EventOverlay) {
      throw RenderError(RenderError::Code::InvalidOptions,
                        "highlight is only available in event overlay mode");
    }
    if (!find_event(events, *options.highlight)) {
      throw RenderError(RenderError::Code::UnknownHighlightEvent,
                        "no event named '" + *options.highlight + "'");
    }
  }
  DotWriter writer(model, events, options);
  if (options.mode == RenderMode::Chronology) return writer.chronology_graph(chronology);
  return writer.static_graph();
}

}  // namespace thinging
