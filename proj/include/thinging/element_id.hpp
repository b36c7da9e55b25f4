// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace thinging {

/// Opaque identifier, unique across all thimacs, stages and edges of one Model.
struct ElementId {
  std::uint32_t value = 0;

  friend auto operator<=>(const ElementId&, const ElementId&) = default;
};

}  // namespace thinging

template <>
struct std::hash<thinging::ElementId> {
  std::size_t operator()(const thinging::ElementId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
