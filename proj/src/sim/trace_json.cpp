// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <json.hpp>

#include "thinging/sim.hpp"

namespace thinging {

std::string trace_to_json(const Model& model, const Trace& trace, int indent) {
  using Json = nlohmann::ordered_json;
  Json doc;
  doc["eventOrder"] = Json::array();
  for (const EventInstance& e : trace.event_order) {
    doc["eventOrder"].push_back(
        Json{{"event", e.event}, {"instance", e.instance}, {"tick", e.time.tick}});
  }
  doc["firings"] = Json::array();
  for (const Firing& f : trace.firings) {
    Json firing;
    firing["step"] = f.step;
    firing["event"] = f.event;
    firing["instance"] = f.instance;
    firing["element"] = model.qualified_name(f.element);
    firing["kind"] = to_string(f.kind);
    firing["token"] = f.token ? Json(*f.token) : Json(nullptr);
    doc["firings"].push_back(std::move(firing));
  }
  doc["finalTokens"] = Json::array();
  for (const Token& t : trace.final_tokens) {
    doc["finalTokens"].push_back(
        Json{{"id", t.id}, {"thing", t.thing}, {"location", model.qualified_name(t.location)}});
  }
  return doc.dump(indent);
}

}  // namespace thinging
