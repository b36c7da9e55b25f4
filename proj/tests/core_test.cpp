#include <doctest.h>

#include <random>

#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "thinging/core.hpp"
#include "thinging/validate.hpp"

using namespace thinging;

namespace {

ModelError::Code error_of(auto&& fn) {
  try {
    fn();
  } catch (const ModelError& e) {
    return e.code();
  }
  FAIL("expected a ModelError");
  return ModelError::Code::DuplicateName;
}

}  // namespace

TEST_CASE("legality matrix agrees with the table oracle") {
  for (StageKind a : kAllStageKinds) {
    for (StageKind b : kAllStageKinds) {
      for (bool same : {true, false}) {
        CHECK(legal_flow(a, b, same) == oracle::legal(a, b, same));
      }
    }
  }
  CHECK(legal_flow(StageKind::Release, StageKind::Transfer, true));
  CHECK_FALSE(legal_flow(StageKind::Release, StageKind::Receive, true));
  CHECK(legal_flow(StageKind::Transfer, StageKind::Transfer, false));
  CHECK_FALSE(legal_flow(StageKind::Transfer, StageKind::Transfer, true));
}

TEST_CASE("stage kind names") {
  for (StageKind k : kAllStageKinds) CHECK(parse_stage_kind(to_string(k)) == k);
  CHECK(parse_stage_kind("arrive") == StageKind::Receive);
  CHECK(parse_stage_kind("accept") == StageKind::Receive);
  CHECK_FALSE(parse_stage_kind("destroy"));
}

TEST_CASE("thimacs") {
  Model m;
  const ElementId atm = m.add_thimac(std::nullopt, "ATM");
  CHECK(m.roots().size() == 1);
  m.add_thimac(atm, "Card");
  CHECK(error_of([&] { m.add_thimac(atm, "Card"); }) == ModelError::Code::DuplicateName);
  CHECK(error_of([&] { m.add_thimac(ElementId{999}, "X"); }) == ModelError::Code::UnknownParent);
  CHECK(m.qualified_name(*m.find_thimac_by_path("ATM.Card")) == "ATM.Card");
  CHECK(m.thimac(atm).children.size() == 1);
}

TEST_CASE("stages") {
  Model m;
  const ElementId a = m.add_thimac(std::nullopt, "A");
  m.add_stage(a, StageKind::Create);
  m.add_stage(a, StageKind::Receive);
  CHECK(error_of([&] { m.add_stage(a, StageKind::Receive); }) ==
        ModelError::Code::DuplicateStageKind);
  CHECK(error_of([&] { m.add_stage(ElementId{999}, StageKind::Create); }) ==
        ModelError::Code::UnknownThimac);

  SUBCASE("all five kinds fill the stage map") {
    const ElementId full = m.add_thimac(std::nullopt, "Full");
    for (StageKind k : kAllStageKinds) m.add_stage(full, k);
    for (StageKind k : kAllStageKinds) {
      REQUIRE(m.thimac(full).stage(k));
      CHECK(m.stage(*m.thimac(full).stage(k)).kind == k);
    }
  }
}

TEST_CASE("flows and triggers") {
  Model m;
  const ElementId a = m.add_thimac(std::nullopt, "A");
  const ElementId b = m.add_thimac(std::nullopt, "B");
  m.add_stage(a, StageKind::Release);
  m.add_stage(a, StageKind::Transfer);
  m.add_stage(b, StageKind::Transfer);
  m.add_flow("A.release", "A.transfer");
  m.add_flow("A.transfer", "B.transfer");
  CHECK(m.flows().size() == 2);
  CHECK(error_of([&] { m.add_flow("A.create", "A.release"); }) ==
        ModelError::Code::UnknownEndpoint);
  CHECK(error_of([&] { m.add_flow("A.release", "A.release"); }) == ModelError::Code::SelfFlow);

  const ElementId self = m.add_trigger("A.release", "A.release");
  CHECK(m.find_trigger(self));
  CHECK(error_of([&] { m.add_trigger("A.release", "Nope.create"); }) ==
        ModelError::Code::UnknownEndpoint);

  SUBCASE("corpus triggers") {
    const ParseResult atm = corpus::load({"atm_full.tm"});
    REQUIRE(atm.model);
    const Model& am = *atm.model;
    CHECK(am.find_trigger_between(*am.resolve_stage_path("ATM.acceptance.process"),
                                  *am.resolve_stage_path("ATM.amountRequest.create")));
    const ParseResult dav = corpus::load({"davidson.tm"});
    REQUIRE(dav.model);
    const Model& dm = *dav.model;
    CHECK(dm.find_trigger_between(*dm.resolve_stage_path("Someone.violin.process"),
                                  *dm.resolve_stage_path("Me.create")));
  }
}

TEST_CASE("ATM thimac count") {
  // User 1+8, ATM 1+13+4 nested parts, Consortium 1+4, Bank 1+8+2.
  const ParseResult atm = corpus::load({"atm_full.tm"});
  REQUIRE(atm.model);
  CHECK(atm.model->thimacs().size() == 43);
  CHECK(atm.model->roots().size() == 4);
}

TEST_CASE("normalize expands a cross-machine process edge") {
  Model m;
  const ElementId atm = m.add_thimac(std::nullopt, "ATM");
  const ElementId bank = m.add_thimac(std::nullopt, "Bank");
  m.add_stage(atm, StageKind::Process);
  m.add_stage(bank, StageKind::Process);
  m.add_flow("ATM.process", "Bank.process");
  CHECK_FALSE(is_normalized(m));

  const Normalization n = normalize_partial(m);
  CHECK(n.unexpandable.empty());
  const Model& out = n.model;
  CHECK(out.stages().size() == 6);
  CHECK(out.flows().size() == 5);
  CHECK(is_normalized(out));
  std::size_t implicit = 0;
  for (const Stage& s : out.stages()) implicit += s.implicit ? 1 : 0;
  CHECK(implicit == 4);
  for (const char* path : {"ATM.release", "ATM.transfer", "Bank.transfer", "Bank.receive"}) {
    CHECK(out.resolve_stage_path(path));
  }
  CHECK(out.find_flow_between(*out.resolve_stage_path("ATM.transfer"),
                              *out.resolve_stage_path("Bank.transfer")));
}

TEST_CASE("normalize reuses existing stages and skips within a machine") {
  Model m;
  const ElementId a = m.add_thimac(std::nullopt, "A");
  for (StageKind k : {StageKind::Receive, StageKind::Release, StageKind::Transfer}) {
    m.add_stage(a, k);
  }
  m.add_flow("A.receive", "A.transfer");
  const Model out = normalize(m);
  CHECK(out.stages().size() == 3);
  CHECK(out.flows().size() == 2);
  CHECK(is_normalized(out));
}

TEST_CASE("unexpandable edges are reported") {
  Model m;
  const ElementId a = m.add_thimac(std::nullopt, "A");
  m.add_stage(a, StageKind::Release);
  m.add_stage(a, StageKind::Receive);
  m.add_flow("A.release", "A.receive");
  const Normalization n = normalize_partial(m);
  CHECK(n.unexpandable.size() == 1);
  CHECK(error_of([&] { normalize(m); }) == ModelError::Code::AmbiguousExpansion);
}

TEST_CASE("is_normalized") {
  CHECK(is_normalized(Model{}));
  const ParseResult full = corpus::load({"atm_full.tm"});
  REQUIRE(full.model);
  CHECK(is_normalized(*full.model));
}

TEST_CASE("model_equal") {
  const ParseResult full = corpus::load({"atm_full.tm"});
  const ParseResult simple = corpus::load({"atm_simplified.tm"});
  REQUIRE(full.model);
  REQUIRE(simple.model);
  CHECK(model_equal(*full.model, *full.model));
  CHECK_FALSE(model_equal(*full.model, *simple.model));
  CHECK(model_equal(normalize(*simple.model), *full.model));

  Model x;
  Model y;
  for (Model* m : {&x, &y}) {
    const ElementId a = m->add_thimac(std::nullopt, "A");
    m->add_stage(a, StageKind::Create);
    m->add_stage(a, StageKind::Process);
    m->add_stage(a, StageKind::Release);
  }
  x.add_flow("A.create", "A.process");
  x.add_flow("A.process", "A.release");
  y.add_flow("A.process", "A.release");
  y.add_flow("A.create", "A.process");
  CHECK(model_equal(x, y));
  y.add_trigger("A.create", "A.release");
  CHECK_FALSE(model_equal(x, y));
}

TEST_CASE("normalization properties on random models") {
  std::mt19937 rng(20261019);
  for (int i = 0; i < 300; ++i) {
    const Model m = gen::model(rng);
    const Normalization once = normalize_partial(m);
    const Normalization twice = normalize_partial(once.model);
    INFO("iteration " << i);
    CHECK(model_equal(once.model, twice.model));
    CHECK(once.model.stages().size() >= m.stages().size());
    CHECK(once.model.thimacs().size() == m.thimacs().size());
    // A flow disappears only when it was expanded into a chain.
    for (const FlowEdge& f : m.flows()) {
      CHECK((once.model.find_flow(f.id) || once.replaced.contains(f.id)));
    }
    // Every user stage survives.
    for (const Stage& s : m.stages()) CHECK(once.model.resolve_stage_path(m.qualified_name(s.id)));
    // Whatever remains illegal is exactly what could not be expanded.
    CHECK(oracle::illegal_flows(once.model).size() == once.unexpandable.size());
    if (once.unexpandable.empty()) CHECK(is_normalized(once.model));
  }
}
