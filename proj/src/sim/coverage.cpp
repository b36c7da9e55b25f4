// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <map>
#include <set>

#include "thinging/sim.hpp"

namespace thinging {

CoverageReport coverage(const Model& model, const Trace& trace, std::span<const EventDef> events) {
  std::map<std::string, std::set<ElementId>, std::less<>> fired;
  for (const Firing& f : trace.firings) {
    if (f.kind == FiringKind::StageFire) fired[f.event].insert(f.element);
  }

  CoverageReport report;
  std::set<ElementId> region_stages;
  std::set<ElementId> ever_fired;
  for (const EventDef& e : events) {
    const Region region = resolve_region(model, flatten(events, e.id));
    const auto it = fired.find(e.id);
    EventCoverage c;
    c.event = e.id;
    std::size_t hit = 0;
    for (const Stage& s : model.stages()) {
      if (!region.stages.contains(s.id)) continue;
      region_stages.insert(s.id);
      if (it != fired.end() && it->second.contains(s.id)) {
        ++hit;
        ever_fired.insert(s.id);
      } else {
        c.never_fired.push_back(s.id);
      }
    }
    if (!region.stages.empty()) {
      c.fraction = static_cast<double>(hit) / static_cast<double>(region.stages.size());
    }
    report.events.push_back(std::move(c));
  }
  for (const Stage& s : model.stages()) {
    if (region_stages.contains(s.id) && !ever_fired.contains(s.id)) {
      report.never_fired.push_back(s.id);
    }
  }
  return report;
}

}  // namespace thinging
