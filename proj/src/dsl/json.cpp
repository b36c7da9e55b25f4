// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "thinging/dsl.hpp"

namespace thinging {

using Json = nlohmann::ordered_json;

namespace {

Json thimac_json(const Model& model, ElementId id,
                 const std::map<ElementId, std::vector<const Stage*>>& stages_by_owner) {
  const Thimac& t = model.thimac(id);
  Json out;
  out["name"] = t.name;
  if (t.annotation) out["annotation"] = *t.annotation;
  out["stages"] = Json::array();
  if (const auto it = stages_by_owner.find(id); it != stages_by_owner.end()) {
    for (const Stage* s : it->second) {
      Json stage;
      stage["stage"] = to_string(s->kind);
      if (s->annotation) stage["annotation"] = *s->annotation;
      if (s->implicit) stage["implicit"] = true;
      out["stages"].push_back(std::move(stage));
    }
  }
  out["children"] = Json::array();
  for (ElementId child : t.children) {
    out["children"].push_back(thimac_json(model, child, stages_by_owner));
  }
  return out;
}

Json edge_json(const Model& model, ElementId from, ElementId to, const std::optional<int>& a) {
  Json out;
  out["from"] = model.qualified_name(from);
  out["to"] = model.qualified_name(to);
  if (a) out["annotation"] = *a;
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  static const std::set<std::string> reserved = {
      "thimac", "stage",  "flow",    "trigger", "event",    "region",  "repeat",
      "contains", "chronology", "memory", "create",  "process", "release", "transfer",
      "receive",  "arrive", "accept"};
  return !reserved.contains(s);
}

class Importer {
 public:
  explicit Importer(std::string_view file) : file_(file) {}

  ParseResult run(std::string_view text) {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      report(codes::kJsonMalformed, e.what(), position(text, e.byte));
      return finish();
    }
    if (!doc.is_object()) {
      report(codes::kJsonSchema, "top-level value must be an object");
      return finish();
    }
    for (const char* key : {"thimacs", "flows", "triggers", "events"}) {
      if (!doc.contains(key) || !doc[key].is_array()) {
        report(codes::kJsonSchema, std::string("key \"") + key + "\" must be an array");
      }
    }
    if (!doc.contains("chronology")) report(codes::kJsonSchema, "missing key \"chronology\"");
    if (!result_.diagnostics.empty()) return finish();

    for (const Json& t : doc["thimacs"]) thimac(t, std::nullopt);
    for (const Json& f : doc["flows"]) edge(f, false);
    for (const Json& t : doc["triggers"]) edge(t, true);
    if (doc.contains("memory") && doc["memory"].is_array()) {
      for (const Json& m : doc["memory"]) memory(m);
    }
    for (const Json& e : doc["events"]) event(e);
    chronology(doc["chronology"]);
    return finish();
  }

 private:
  SourceSpan position(std::string_view text, std::size_t byte) const {
    SourceSpan span{std::string(file_), 1, 1, 1, 1};
    const std::size_t end = std::min(byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++span.start_line;
        span.start_col = 1;
      } else {
        ++span.start_col;
      }
    }
    span.end_line = span.start_line;
    span.end_col = span.start_col;
    return span;
  }

  void report(std::string_view code, std::string message, std::optional<SourceSpan> span = {}) {
    if (!span) span = SourceSpan{std::string(file_), 1, 1, 1, 1};
    result_.diagnostics.push_back(
        Diagnostic{Severity::Error, std::string(code), std::move(message), span, std::nullopt});
  }

  ParseResult finish() {
    sort_diagnostics(result_.diagnostics);
    if (!has_errors(result_.diagnostics)) result_.model = std::move(model_);
    return std::move(result_);
  }

  static std::optional<int> optional_int(const Json& j, const char* key) {
    if (j.contains(key) && j[key].is_number_integer()) return j[key].get<int>();
    return std::nullopt;
  }

  void thimac(const Json& j, std::optional<ElementId> parent) {
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string()) {
      report(codes::kJsonSchema, "thimac entries need a string \"name\"");
      return;
    }
    const std::string name = j["name"].get<std::string>();
    if (!is_identifier(name)) {
      report(codes::kJsonSchema, "thimac name '" + name + "' is not a valid identifier");
      return;
    }
    ElementId id;
    try {
      id = model_.add_thimac(parent, name, optional_int(j, "annotation"));
    } catch (const ModelError& e) {
      report(codes::kDuplicateDefinition, e.what());
      return;
    }
    if (j.contains("stages")) {
      if (!j["stages"].is_array()) {
        report(codes::kJsonSchema, "\"stages\" of '" + name + "' must be an array");
      } else {
        for (const Json& s : j["stages"]) stage(s, id);
      }
    }
    if (j.contains("children")) {
      if (!j["children"].is_array()) {
        report(codes::kJsonSchema, "\"children\" of '" + name + "' must be an array");
      } else {
        for (const Json& c : j["children"]) thimac(c, id);
      }
    }
  }

  void stage(const Json& j, ElementId owner) {
    if (!j.is_object() || !j.contains("stage") || !j["stage"].is_string()) {
      report(codes::kJsonSchema, "stage entries need a string \"stage\"");
      return;
    }
    const std::string word = j["stage"].get<std::string>();
    const auto kind = parse_stage_kind(word);
    if (!kind) {
      report(codes::kUnknownStageKind, "unknown stage kind '" + word + "'");
      return;
    }
    try {
      const ElementId id = model_.add_stage(owner, *kind, optional_int(j, "annotation"));
      if (j.contains("implicit") && j["implicit"] == true) model_.mark_implicit(id);
    } catch (const ModelError& e) {
      report(codes::kDuplicateDefinition, e.what());
    }
  }

  std::optional<ElementId> stage_ref(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
      report(codes::kJsonSchema, std::string("edge needs a string \"") + key + "\"");
      return std::nullopt;
    }
    const std::string path = j[key].get<std::string>();
    auto id = model_.resolve_stage_path(path);
    if (!id) report(codes::kUnresolvedPath, "dangling reference '" + path + "'");
    return id;
  }

  void edge(const Json& j, bool trigger) {
    if (!j.is_object()) {
      report(codes::kJsonSchema, "edge entries must be objects");
      return;
    }
    const auto from = stage_ref(j, "from");
    const auto to = stage_ref(j, "to");
    if (!from || !to) return;
    try {
      if (trigger) {
        model_.add_trigger(*from, *to, optional_int(j, "annotation"));
      } else {
        const ElementId id = model_.add_flow(*from, *to, optional_int(j, "annotation"));
        if (j.contains("implicitSegments") && j["implicitSegments"].is_array()) {
          std::vector<ElementId> segments;
          for (const Json& seg : j["implicitSegments"]) {
            if (!seg.is_string()) continue;
            if (auto st = model_.resolve_stage_path(seg.get<std::string>())) segments.push_back(*st);
          }
          model_.set_implicit_segments(id, std::move(segments));
        }
      }
    } catch (const ModelError& e) {
      report(codes::kFlowSelf, e.what());
    }
  }

  void memory(const Json& j) {
    if (!j.is_object()) return;
    const auto from = stage_ref(j, "from");
    const auto to = stage_ref(j, "to");
    if (from && to) model_.add_memory(*from, *to);
  }

  std::optional<ElementId> region_member(const std::string& name) {
    for (const std::string_view sep : {"->", "~>"}) {
      const auto at = name.find(sep);
      if (at == std::string::npos) continue;
      const auto from = model_.resolve_stage_path(name.substr(0, at));
      const auto to = model_.resolve_stage_path(name.substr(at + 2));
      if (!from || !to) return std::nullopt;
      return sep == "->" ? model_.find_flow_between(*from, *to)
                         : model_.find_trigger_between(*from, *to);
    }
    return model_.resolve_stage_path(name);
  }

  void event(const Json& j) {
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !is_identifier(j["id"].get<std::string>())) {
      report(codes::kJsonSchema, "event entries need an identifier \"id\"");
      return;
    }
    EventDef e;
    e.id = j["id"].get<std::string>();
    if (find_event(result_.events, e.id)) {
      report(codes::kDuplicateDefinition, "event '" + e.id + "' already declared");
      return;
    }
    if (j.contains("label") && j["label"].is_string()) e.label = j["label"].get<std::string>();
    if (j.contains("multiplicity")) {
      const Json& m = j["multiplicity"];
      if (!m.is_number_unsigned() || m.get<std::uint64_t>() < 1 ||
          m.get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max()) {
        report(codes::kRepeatInvalid, "event '" + e.id + "' multiplicity must be positive");
      } else {
        e.multiplicity = m.get<std::uint32_t>();
      }
    }
    if (j.contains("region") && j["region"].is_array()) {
      for (const Json& r : j["region"]) {
        if (!r.is_string()) continue;
        if (auto id = region_member(r.get<std::string>())) {
          e.region.insert(*id);
        } else {
          report(codes::kUnresolvedPath, "event '" + e.id + "' region member '" +
                                             r.get<std::string>() + "' does not resolve");
        }
      }
    }
    if (j.contains("subevents") && j["subevents"].is_array()) {
      for (const Json& s : j["subevents"]) {
        if (s.is_string()) e.subevents.push_back(s.get<std::string>());
      }
    }
    result_.events.push_back(std::move(e));
  }

  void chronology(const Json& j) {
    if (j.is_null()) return;
    if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array()) {
      report(codes::kJsonSchema, "\"chronology\" must be null or an object with \"nodes\"");
      return;
    }
    Chronology c;
    for (const Json& n : j["nodes"]) {
      if (n.is_string()) c.nodes.push_back(n.get<std::string>());
    }
    if (j.contains("edges") && j["edges"].is_array()) {
      for (const Json& e : j["edges"]) {
        if (e.is_object() && e.contains("from") && e.contains("to") && e["from"].is_string() &&
            e["to"].is_string()) {
          c.edges.emplace_back(e["from"].get<std::string>(), e["to"].get<std::string>());
        } else {
          report(codes::kJsonSchema, "chronology edges need string \"from\" and \"to\"");
        }
      }
    }
    result_.chronology = std::move(c);
  }

  std::string_view file_;
  Model model_;
  ParseResult result_;
};

}  // namespace

std::string to_json(const ParseResult& result, int indent) {
  if (!result.model) throw std::invalid_argument("to_json: parse result has no model");
  const Model& model = *result.model;

  std::map<ElementId, std::vector<const Stage*>> stages_by_owner;
  for (const Stage& s : model.stages()) stages_by_owner[s.owner].push_back(&s);

  Json doc;
  doc["thimacs"] = Json::array();
  for (ElementId root : model.roots()) {
    doc["thimacs"].push_back(thimac_json(model, root, stages_by_owner));
  }
  doc["flows"] = Json::array();
  for (const FlowEdge& f : model.flows()) {
    Json edge = edge_json(model, f.from, f.to, f.annotation);
    if (!f.implicit_segments.empty()) {
      edge["implicitSegments"] = Json::array();
      for (ElementId s : f.implicit_segments) {
        edge["implicitSegments"].push_back(model.qualified_name(s));
      }
    }
    doc["flows"].push_back(std::move(edge));
  }
  doc["triggers"] = Json::array();
  for (const TriggerEdge& t : model.triggers()) {
    doc["triggers"].push_back(edge_json(model, t.from, t.to, t.annotation));
  }
  if (!model.memory_edges().empty()) {
    doc["memory"] = Json::array();
    for (const MemoryEdge& m : model.memory_edges()) {
      doc["memory"].push_back(edge_json(model, m.from, m.to, std::nullopt));
    }
  }
  doc["events"] = Json::array();
  for (const EventDef& e : result.events) {
    Json event;
    event["id"] = e.id;
    if (e.label) event["label"] = *e.label;
    event["region"] = Json::array();
    // Declaration order, so the text does not depend on id allocation.
    for (const Stage& st : model.stages()) {
      if (e.region.contains(st.id)) event["region"].push_back(model.qualified_name(st.id));
    }
    for (const FlowEdge& f : model.flows()) {
      if (e.region.contains(f.id)) event["region"].push_back(model.qualified_name(f.id));
    }
    for (const TriggerEdge& t : model.triggers()) {
      if (e.region.contains(t.id)) event["region"].push_back(model.qualified_name(t.id));
    }
    event["multiplicity"] = e.multiplicity;
    event["subevents"] = e.subevents;
    doc["events"].push_back(std::move(event));
  }
  if (result.chronology) {
    Json c;
    c["nodes"] = result.chronology->nodes;
    c["edges"] = Json::array();
    for (const auto& [from, to] : result.chronology->edges) {
      c["edges"].push_back(Json{{"from", from}, {"to", to}});
    }
    doc["chronology"] = std::move(c);
  } else {
    doc["chronology"] = nullptr;
  }
  return doc.dump(indent);
}

ParseResult from_json(std::string_view text, std::string_view file) {
  return Importer(file).run(text);
}

}  // namespace thinging
