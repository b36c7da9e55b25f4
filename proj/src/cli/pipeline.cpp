// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinging/pipeline.hpp"

namespace thinging {

Compilation compile(std::span<const SourceFile> files, const ValidateOptions& options) {
  return compile(parse_files(files), options);
}

Compilation compile(ParseResult parsed, const ValidateOptions& options) {
  Compilation out;
  out.diagnostics = std::move(parsed.diagnostics);
  if (!parsed.model) return out;

  Normalization n = normalize_partial(*parsed.model);
  ParseResult program;
  program.events = remap_regions(parsed.events, n);
  program.model = std::move(n.model);
  program.chronology = std::move(parsed.chronology);

  auto found = validate(*program.model, program.events, program.chronology, options);
  out.diagnostics.insert(out.diagnostics.end(), std::make_move_iterator(found.begin()),
                         std::make_move_iterator(found.end()));
  out.program = std::move(program);
  return out;
}

}  // namespace thinging
