// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "thinging/behavior.hpp"
#include "thinging/core.hpp"

namespace thinging {

enum class RenderMode : std::uint8_t { Static, EventOverlay, Chronology };

struct RenderOptions {
  RenderMode mode = RenderMode::Static;
  /// Only valid with EventOverlay: fill just this event's region.
  std::optional<std::string> highlight;
  /// Hide stages inserted by normalization and draw the flows through them as
  /// single edges.
  bool simplified = false;
};

class RenderError : public std::runtime_error {
 public:
  enum class Code { UnknownHighlightEvent, InvalidOptions };

  RenderError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Graphviz DOT text. Thimacs become nested clusters named "cluster_<path>",
/// stages become nodes named by their qualified name, flows are solid edges
/// and triggers dashed ones. Output depends only on the inputs.
std::string render_dot(const Model& model, std::span<const EventDef> events,
                       const std::optional<Chronology>& chronology, const RenderOptions& options);

}  // namespace thinging
