// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <limits>
#include <set>

#include "ast.hpp"
#include "lexer.hpp"

namespace thinging {

namespace dsl {

namespace {

class Lowering {
 public:
  explicit Lowering(std::vector<Diagnostic> diagnostics) {
    result_.diagnostics = std::move(diagnostics);
  }

  ParseResult run(const std::vector<Item>& items) {
    for (const Item& item : items) {
      if (const auto* t = std::get_if<ThimacDecl>(&item)) declare(*t, std::nullopt);
    }
    for (const Item& item : items) {
      if (const auto* f = std::get_if<FlowStmt>(&item)) lower_flow(*f);
      if (const auto* t = std::get_if<TriggerStmt>(&item)) lower_trigger(*t);
      if (const auto* m = std::get_if<MemoryStmt>(&item)) lower_memory(*m);
    }
    for (const Item& item : items) {
      if (const auto* e = std::get_if<EventDecl>(&item)) lower_event(*e);
    }
    for (const Item& item : items) {
      if (const auto* c = std::get_if<ChronoDecl>(&item)) lower_chronology(*c);
    }
    sort_diagnostics(result_.diagnostics);
    if (!has_errors(result_.diagnostics)) result_.model = std::move(model_);
    return std::move(result_);
  }

 private:
  void report(Severity severity, std::string_view code, std::string message,
              const SourceSpan& span) {
    result_.diagnostics.push_back(
        Diagnostic{severity, std::string(code), std::move(message), span, std::nullopt});
  }

  void declare(const ThimacDecl& decl, std::optional<ElementId> parent) {
    ElementId id;
    try {
      id = model_.add_thimac(parent, decl.name, decl.annotation, decl.span);
    } catch (const ModelError& e) {
      report(Severity::Error, codes::kDuplicateDefinition, e.what(), decl.span);
      return;
    }
    for (const StageDecl& s : decl.stages) {
      const auto kind = parse_stage_kind(s.kind);
      try {
        model_.add_stage(id, *kind, s.annotation, s.span);
      } catch (const ModelError& e) {
        report(Severity::Error, codes::kDuplicateDefinition, e.what(), s.span);
      }
    }
    for (const ThimacDecl& child : decl.children) declare(child, id);
  }

  std::optional<ElementId> find_thimac(const PathAst& path) {
    std::optional<ElementId> current;
    for (const std::string& name : path.names) {
      current = model_.find_child(current, name);
      if (!current) {
        report(Severity::Error, codes::kUnresolvedPath,
               "'" + path.text() + "' does not name a declared thimac", path.span);
        return std::nullopt;
      }
    }
    return current;
  }

  // Stage paths must name a declared stage. A thimac path is its transfer
  // stage, which is added if the thimac does not declare one.
  std::optional<ElementId> resolve_endpoint(const PathAst& path) {
    const auto thimac = find_thimac(path);
    if (!thimac) return std::nullopt;
    if (path.stage) {
      const StageKind kind = *parse_stage_kind(*path.stage);
      if (auto id = model_.thimac(*thimac).stage(kind)) return id;
      report(Severity::Error, codes::kUnresolvedPath,
             "thimac '" + model_.qualified_name(*thimac) + "' has no " +
                 std::string(to_string(kind)) + " stage",
             path.span);
      return std::nullopt;
    }
    if (auto id = model_.thimac(*thimac).stage(StageKind::Transfer)) return id;
    return model_.add_stage(*thimac, StageKind::Transfer, std::nullopt, path.span);
  }

  void lower_flow(const FlowStmt& stmt) {
    std::vector<std::optional<ElementId>> ends;
    for (const PathAst& p : stmt.paths) ends.push_back(resolve_endpoint(p));
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
      if (!ends[i] || !ends[i + 1]) continue;
      const SourceSpan span{stmt.span.file, stmt.paths[i].span.start_line,
                            stmt.paths[i].span.start_col, stmt.paths[i + 1].span.end_line,
                            stmt.paths[i + 1].span.end_col};
      if (*ends[i] == *ends[i + 1]) {
        report(Severity::Error, codes::kFlowSelf,
               "flow from '" + model_.qualified_name(*ends[i]) + "' to itself", span);
        continue;
      }
      if (model_.find_flow_between(*ends[i], *ends[i + 1])) {
        report(Severity::Warning, codes::kDuplicateEdge,
               "duplicate flow " + model_.qualified_name(*ends[i]) + "->" +
                   model_.qualified_name(*ends[i + 1]) + " collapsed into the first",
               span);
        continue;
      }
      model_.add_flow(*ends[i], *ends[i + 1], stmt.annotation, span);
    }
  }

  void lower_trigger(const TriggerStmt& stmt) {
    const auto from = resolve_endpoint(stmt.from);
    const auto to = resolve_endpoint(stmt.to);
    if (!from || !to) return;
    if (model_.find_trigger_between(*from, *to)) {
      report(Severity::Warning, codes::kDuplicateEdge,
             "duplicate trigger " + model_.qualified_name(*from) + "~>" +
                 model_.qualified_name(*to) + " collapsed into the first",
             stmt.span);
      return;
    }
    model_.add_trigger(*from, *to, stmt.annotation, stmt.span);
  }

  void lower_memory(const MemoryStmt& stmt) {
    const auto from = resolve_endpoint(stmt.from);
    const auto to = resolve_endpoint(stmt.to);
    if (!from || !to) return;
    model_.add_memory(*from, *to, stmt.span);
  }

  void collect_stages(ElementId thimac, std::set<ElementId>& out) const {
    const Thimac& t = model_.thimac(thimac);
    for (const auto& s : t.stages) {
      if (s) out.insert(*s);
    }
    for (ElementId child : t.children) collect_stages(child, out);
  }

  void lower_event(const EventDecl& decl) {
    if (find_event(result_.events, decl.id)) {
      report(Severity::Error, codes::kDuplicateDefinition,
             "event '" + decl.id + "' already declared", decl.span);
      return;
    }
    EventDef event;
    event.id = decl.id;
    event.label = decl.label;
    event.span = decl.span;
    event.subevents = decl.contains;

    std::set<ElementId> stages;
    for (const PathAst& p : decl.region) {
      const auto thimac = find_thimac(p);
      if (!thimac) continue;
      if (!p.stage) {
        collect_stages(*thimac, stages);
        continue;
      }
      const StageKind kind = *parse_stage_kind(*p.stage);
      if (auto id = model_.thimac(*thimac).stage(kind)) {
        stages.insert(*id);
      } else {
        report(Severity::Error, codes::kUnresolvedPath,
               "thimac '" + model_.qualified_name(*thimac) + "' has no " +
                   std::string(to_string(kind)) + " stage",
               p.span);
      }
    }
    event.region = induced_region(model_, stages);

    if (decl.repeat) {
      if (*decl.repeat < 1 || *decl.repeat > std::numeric_limits<std::uint32_t>::max()) {
        report(Severity::Error, codes::kRepeatInvalid,
               "repeat count must be a positive 32-bit integer", *decl.repeat_span);
      } else {
        event.multiplicity = static_cast<std::uint32_t>(*decl.repeat);
      }
    }
    result_.events.push_back(std::move(event));
  }

  void lower_chronology(const ChronoDecl& decl) {
    if (result_.chronology) {
      report(Severity::Error, codes::kDuplicateDefinition, "a chronology is already declared",
             decl.span);
      return;
    }
    Chronology chrono;
    chrono.span = decl.span;
    std::set<std::string> seen;
    auto node = [&](const std::string& id) {
      if (seen.insert(id).second) chrono.nodes.push_back(id);
    };
    for (const ChronoItem& item : decl.items) {
      node(item.from);
      if (item.to) {
        node(*item.to);
        chrono.edges.emplace_back(item.from, *item.to);
      }
    }
    result_.chronology = std::move(chrono);
  }

  Model model_;
  ParseResult result_;
};

}  // namespace

ParseResult lower(const std::vector<Item>& items, std::vector<Diagnostic> diagnostics) {
  return Lowering(std::move(diagnostics)).run(items);
}

}  // namespace dsl

ParseResult parse(std::string_view text, std::string_view file) {
  const SourceFile source{std::string(file), std::string(text)};
  return parse_files(std::span<const SourceFile>(&source, 1));
}

ParseResult parse_files(std::span<const SourceFile> files) {
  std::vector<Diagnostic> diagnostics;
  std::vector<dsl::Item> items;
  for (const SourceFile& f : files) {
    const auto tokens = dsl::lex(f.text, f.path, diagnostics);
    auto parsed = dsl::parse_items(tokens, diagnostics);
    std::move(parsed.begin(), parsed.end(), std::back_inserter(items));
  }
  return dsl::lower(items, std::move(diagnostics));
}

}  // namespace thinging
