// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <string>
#include <vector>

#include "thinging/core.hpp"

namespace thinging {

namespace {

// Qualified names are unique per element within a model, so comparing the
// sorted name multisets is the same as finding a name-preserving bijection.
struct Signature {
  std::vector<std::string> thimacs;
  std::vector<std::string> stages;
  std::vector<std::string> flows;
  std::vector<std::string> triggers;
  std::vector<std::string> memory;

  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature(const Model& model) {
  Signature sig;
  for (const Thimac& t : model.thimacs()) sig.thimacs.push_back(model.qualified_name(t.id));
  for (const Stage& s : model.stages()) sig.stages.push_back(model.qualified_name(s.id));
  for (const FlowEdge& f : model.flows()) sig.flows.push_back(model.qualified_name(f.id));
  for (const TriggerEdge& t : model.triggers()) sig.triggers.push_back(model.qualified_name(t.id));
  for (const MemoryEdge& m : model.memory_edges()) sig.memory.push_back(model.qualified_name(m.id));
  for (auto* list : {&sig.thimacs, &sig.stages, &sig.flows, &sig.triggers, &sig.memory}) {
    std::sort(list->begin(), list->end());
  }
  return sig;
}

}  // namespace

bool model_equal(const Model& a, const Model& b) {
  if (a.thimacs().size() != b.thimacs().size() || a.stages().size() != b.stages().size() ||
      a.flows().size() != b.flows().size() || a.triggers().size() != b.triggers().size()) {
    return false;
  }
  return signature(a) == signature(b);
}

}  // namespace thinging
