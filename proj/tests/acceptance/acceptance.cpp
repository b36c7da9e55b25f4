// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support/corpus.hpp"
#include "support/equal.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "thinging/cli.hpp"
#include "thinging/pipeline.hpp"
#include "thinging/sim.hpp"

using namespace thinging;

namespace {

constexpr double kCorpusSeconds = 1.0;
constexpr double kShipsSeconds = 5.0;
constexpr int kRandomModels = 1000;
constexpr int kOracleMaxStages = 8;
constexpr int kOracleMaxNodes = 10;
constexpr std::uint32_t kSeed = 0x7e11;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

ParseResult compiled(const std::vector<std::string>& unit) {
  Compilation c = compile(corpus::sources(unit));
  if (!c.ok()) throw std::runtime_error("corpus unit " + unit.front() + " does not compile");
  return std::move(*c.program);
}

std::vector<std::string> projected(const Trace& t) {
  std::vector<std::string> out;
  for (const EventInstance& e : t.event_order) {
    if (out.empty() || out.back() != e.event) out.push_back(e.event);
  }
  return out;
}

Outcome corpus_validates() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t errors = 0;
  for (const auto& unit : corpus::all()) {
    const Compilation c = compile(corpus::sources(unit));
    for (const Diagnostic& d : c.diagnostics) {
      if (d.severity == Severity::Error) {
        ++errors;
        o.fail(format_diagnostic(d));
      }
    }
    if (!c.program) o.fail(unit.front() + " did not parse");
  }
  const double seconds = since(start);
  if (seconds >= kCorpusSeconds) o.fail("took " + std::to_string(seconds) + " s");
  if (o.ok) {
    o.detail = std::to_string(corpus::all().size()) + " units, " + std::to_string(errors) +
               " errors, " + std::to_string(seconds) + " s";
  }
  return o;
}

Outcome event_counts() {
  Outcome o;
  const std::size_t davidson = corpus::load({"davidson.tm"}).events.size();
  const std::size_t atm = corpus::load(corpus::atm()).events.size();
  if (davidson != 8) o.fail("Davidson declares " + std::to_string(davidson));
  if (atm != 15) o.fail("ATM declares " + std::to_string(atm));
  if (o.ok) o.detail = "Davidson 8, ATM 15";
  return o;
}

Outcome normalization() {
  Outcome o;
  const ParseResult full = corpus::load({"atm_full.tm"});
  const ParseResult simple = corpus::load({"atm_simplified.tm"});
  if (!model_equal(normalize(*simple.model), *full.model)) {
    o.fail("normalize(atm_simplified) differs from atm_full");
  }
  std::mt19937 rng(kSeed);
  int strict = 0;
  for (int i = 0; i < kRandomModels; ++i) {
    const Model m = gen::model(rng);
    const Normalization once = normalize_partial(m);
    if (!model_equal(normalize_partial(once.model).model, once.model)) {
      o.fail("not idempotent on random model " + std::to_string(i));
    }
    if (once.unexpandable.empty()) {
      ++strict;
      const Model n = normalize(m);
      if (!model_equal(normalize(n), n)) o.fail("normalize not idempotent on model " + std::to_string(i));
    }
  }
  if (o.ok) {
    o.detail = "ATM equal; idempotent on " + std::to_string(kRandomModels) + " models (" +
               std::to_string(strict) + " fully expandable)";
  }
  return o;
}

Outcome chronology_semantics() {
  Outcome o;
  const ParseResult atm = compiled(corpus::atm());
  const Trace t = simulate(*atm.model, atm.events, *atm.chronology);
  const auto order = projected(t);
  if (t.event_order.size() != 15 || order.size() != 15) o.fail("ATM ran " + std::to_string(t.event_order.size()) + " instances");
  const auto atm_orders = oracle::linear_extensions(*atm.chronology);
  if (!atm_orders.contains(order)) o.fail("ATM order is not a linear extension (oracle)");
  if (!topological_orders_contains(*atm.chronology, order)) o.fail("ATM order rejected by topological_orders_contains");

  ParseResult dav = compiled({"davidson.tm"});
  const auto dav_orders = oracle::linear_extensions(*dav.chronology);
  std::set<bool> e3_first;
  for (int fixture = 0; fixture < 2; ++fixture) {
    if (fixture == 1) {
      auto& nodes = dav.chronology->nodes;
      std::iter_swap(std::find(nodes.begin(), nodes.end(), "E3"), std::find(nodes.begin(), nodes.end(), "E4"));
    }
    const auto got = projected(simulate(*dav.model, dav.events, *dav.chronology));
    if (!dav_orders.contains(got)) o.fail("Davidson fixture " + std::to_string(fixture) + " not a linear extension");
    if (!topological_orders_contains(*dav.chronology, got)) o.fail("Davidson fixture rejected");
    e3_first.insert(std::find(got.begin(), got.end(), "E3") < std::find(got.begin(), got.end(), "E4"));
  }
  if (e3_first.size() != 2) o.fail("E3/E4 did not appear in both orders");
  if (o.ok) {
    o.detail = "ATM among " + std::to_string(atm_orders.size()) + " extensions; Davidson both E3/E4 orders among " +
               std::to_string(dav_orders.size());
  }
  return o;
}

Outcome recurrence() {
  Outcome o;
  const ParseResult ships = compiled({"ships.tm"});
  const auto start = Clock::now();
  const Trace t = simulate(*ships.model, ships.events, *ships.chronology);
  const double seconds = since(start);
  if (t.event_order.size() != 4000) o.fail("ships ran " + std::to_string(t.event_order.size()) + " instances");
  if (seconds >= kShipsSeconds) o.fail("ships took " + std::to_string(seconds) + " s");

  const ParseResult mud = compiled({"mud.tm"});
  const Trace m = simulate(*mud.model, mud.events, *mud.chronology);
  if (m.event_order.size() != 2) o.fail("mud ran " + std::to_string(m.event_order.size()) + " instances");
  std::vector<const Firing*> first;
  std::vector<const Firing*> second;
  for (const Firing& f : m.firings) (f.event == m.event_order[0].event ? first : second).push_back(&f);
  if (first.empty() || second.empty() || first.back()->step >= second.front()->step) {
    o.fail("mud instance 1 does not wholly precede instance 2");
  }
  bool same = first.size() == second.size();
  for (std::size_t i = 0; same && i < first.size(); ++i) {
    same = first[i]->kind == second[i]->kind && first[i]->element == second[i]->element;
  }
  if (!same) o.fail("mud instances differ structurally");
  if (o.ok) {
    o.detail = "ships 4000 instances in " + std::to_string(seconds) + " s; mud 2 instances, " +
               std::to_string(first.size()) + " firings each";
  }
  return o;
}

Outcome oracles() {
  Outcome o;
  std::mt19937 rng(kSeed + 1);
  int flow_disagreements = 0;
  std::size_t illegal = 0;
  for (int i = 0; i < kRandomModels; ++i) {
    const Model m = gen::model(rng, {.max_stages = kOracleMaxStages});
    std::set<ElementId> reported;
    for (const Diagnostic& d : validate(m, {}, std::nullopt)) {
      if (d.code == codes::kFlowIllegal) reported.insert(*d.element);
    }
    const auto expected = oracle::illegal_flows(m);
    illegal += expected.size();
    if (reported != expected) ++flow_disagreements;
  }
  int cycle_disagreements = 0;
  int cyclic = 0;
  for (int i = 0; i < kRandomModels; ++i) {
    const Chronology c = gen::digraph(rng, kOracleMaxNodes);
    const auto stuck = chronology_cycle_nodes(c);
    const bool has = oracle::has_cycle(c);
    cyclic += has ? 1 : 0;
    if (stuck.empty() == has || std::set<std::string>(stuck.begin(), stuck.end()) != oracle::blocked_by_cycle(c)) {
      ++cycle_disagreements;
    }
  }
  if (flow_disagreements) o.fail(std::to_string(flow_disagreements) + " FLOW_ILLEGAL disagreements");
  if (cycle_disagreements) o.fail(std::to_string(cycle_disagreements) + " cycle disagreements");
  if (o.ok) {
    o.detail = "0 disagreements (" + std::to_string(illegal) + " illegal flows, " + std::to_string(cyclic) +
               " cyclic digraphs)";
  }
  return o;
}

Outcome round_trips() {
  Outcome o;
  auto check = [&](const ParseResult& p, const std::string& what) {
    const ParseResult text = parse(format(p));
    if (!equal::programs(p, text)) o.fail("parse(format) differs on " + what);
    const ParseResult json = from_json(to_json(p));
    if (!equal::programs(p, json)) o.fail("from_json(to_json) differs on " + what);
  };
  for (const auto& unit : corpus::all()) check(corpus::load(unit), unit.front());
  std::mt19937 rng(kSeed + 2);
  for (int i = 0; i < kRandomModels; ++i) {
    ParseResult p;
    p.model = gen::model(rng);
    gen::behavior(rng, *p.model, p.events, p.chronology);
    check(p, "generated program " + std::to_string(i));
  }
  if (o.ok) o.detail = "corpus and " + std::to_string(kRandomModels) + " generated programs";
  return o;
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "thinging-acceptance";
  fs::create_directories(dir);
  const auto atm = corpus::atm();
  auto tm = [&](std::vector<std::string> args) {
    for (const auto& f : atm) args.push_back(corpus::path(f));
    std::ostringstream out;
    std::ostringstream err;
    std::istringstream in;
    const int code = cli::run(args, out, err, in);
    if (code != 0) o.fail("exit " + std::to_string(code) + ": " + err.str());
    return out.str();
  };
  std::vector<std::string> traces;
  for (int i = 0; i < 2; ++i) {
    const std::string path = (dir / ("trace" + std::to_string(i) + ".json")).string();
    tm({"simulate", "--trace", path});
    traces.push_back(corpus::read(path));
  }
  if (traces[0] != traces[1]) o.fail("simulate --trace outputs differ");
  for (const char* mode : {"static", "events", "chronology"}) {
    if (tm({"render", "--mode", mode}) != tm({"render", "--mode", mode})) {
      o.fail(std::string("render --mode ") + mode + " outputs differ");
    }
  }
  if (o.ok) o.detail = "trace " + std::to_string(traces[0].size()) + " bytes, 3 render modes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"corpus parses and validates with 0 errors in under 1 s", corpus_validates},
      {"event counts: Davidson 8, ATM 15", event_counts},
      {"normalization equivalence and idempotence", normalization},
      {"chronology semantics", chronology_semantics},
      {"recurrence: ships 4000 instances, mud 2 ordered instances", recurrence},
      {"oracle equivalence: FLOW_ILLEGAL and chronology cycles", oracles},
      {"round-trip laws", round_trips},
      {"determinism of simulate --trace and render", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    failures += outcome.ok ? 0 : 1;
    std::cout << (outcome.ok ? "PASS " : "FAIL ") << name << " -- " << outcome.detail << '\n';
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
