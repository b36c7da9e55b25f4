// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

// Just enough DOT to count what render_dot emits: statements split on ';',
// '{' and '}', quoted ids honoured.

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dot {

struct Edge {
  std::string from;
  std::string to;
  std::map<std::string, std::string> attrs;
};

struct Graph {
  std::string name;
  bool digraph = false;
  std::vector<std::string> clusters;
  // node id -> enclosing cluster (empty at top level)
  std::map<std::string, std::string> nodes;
  std::vector<Edge> edges;
  bool balanced = false;
};

namespace detail {

struct Lexer {
  std::string_view s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\n' || s[i] == '\t' || s[i] == '\r')) ++i;
  }

  // Next token: quoted string (unquoted), punctuation, "->", or a bare word.
  std::string next() {
    skip();
    if (i >= s.size()) return {};
    if (s[i] == '"') {
      std::string out;
      ++i;
      while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        out += s[i++];
      }
      ++i;
      return out;
    }
    if (s.substr(i, 2) == "->") {
      i += 2;
      return "->";
    }
    if (std::string_view("{}[];=,").find(s[i]) != std::string_view::npos) return std::string(1, s[i++]);
    std::string out;
    while (i < s.size() && std::string_view(" \n\t\r{}[];=,\"").find(s[i]) == std::string_view::npos) {
      out += s[i++];
    }
    return out;
  }
};

}  // namespace detail

inline Graph read(std::string_view text) {
  Graph g;
  detail::Lexer lx{text};
  std::vector<std::string> stack;
  g.digraph = lx.next() == "digraph";
  g.name = lx.next();
  if (lx.next() != "{") return g;
  stack.push_back("");

  auto attrs = [&]() {
    std::map<std::string, std::string> out;
    std::string key;
    for (std::string t = lx.next(); !t.empty() && t != "]"; t = lx.next()) {
      if (t == "," || t == ";") continue;
      if (t == "=") {
        out[key] = lx.next();
        continue;
      }
      key = t;
    }
    return out;
  };

  while (!stack.empty()) {
    std::string t = lx.next();
    if (t.empty()) return g;
    if (t == "}") {
      stack.pop_back();
      continue;
    }
    if (t == ";") continue;
    if (t == "subgraph") {
      const std::string name = lx.next();
      lx.next();  // '{'
      g.clusters.push_back(name);
      stack.push_back(name);
      continue;
    }
    if (t == "node" || t == "edge" || t == "graph") {
      lx.next();
      attrs();
      continue;
    }
    const std::size_t mark = lx.i;
    const std::string u = lx.next();
    if (u == "=") {
      lx.next();  // graph attribute value
      continue;
    }
    if (u == "->") {
      Edge e{t, lx.next(), {}};
      const std::size_t after = lx.i;
      if (lx.next() == "[") {
        e.attrs = attrs();
      } else {
        lx.i = after;
      }
      g.edges.push_back(std::move(e));
      continue;
    }
    g.nodes[t] = stack.back();
    if (u == "[") {
      attrs();
    } else {
      lx.i = mark;
    }
  }
  lx.skip();
  g.balanced = lx.i == text.size();
  return g;
}

}  // namespace dot
