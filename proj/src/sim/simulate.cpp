// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

// One event instance runs to quiescence over its flattened region. Pending
// triggers drain before any queued token moves. Release and transfer stages
// that some trigger points at hold arriving tokens until the trigger fires; a
// trigger that fires first lets the next arrival through. Tokens that end an
// instance at a release or transfer stage are pooled and adopted by the next
// instance whose region contains that stage.

#include <deque>
#include <map>
#include <set>

#include "thinging/sim.hpp"
#include "thinging/validate.hpp"

namespace thinging {

std::string_view to_string(FiringKind kind) {
  switch (kind) {
    case FiringKind::StageFire: return "StageFire";
    case FiringKind::FlowMove: return "FlowMove";
    case FiringKind::TriggerFire: return "TriggerFire";
    case FiringKind::TokenSpawn: return "TokenSpawn";
  }
  return "?";
}

namespace {

// How a token reached its current stage. Decides which flows leave a
// transfer stage: inbound traffic continues into the machine, outbound
// traffic leaves it.
enum class Arrival : std::uint8_t { Spawned, Inner, Outer };

struct TokenState {
  Token token;
  Arrival arrival = Arrival::Spawned;
  bool waiting = false;
  bool pooled = false;
};

class Simulator {
 public:
  Simulator(const Model& model, const SimConfig& config) : model_(model), config_(config) {
    std::set<ElementId> has_inbound;
    for (const FlowEdge& f : model.flows()) {
      outgoing_[f.from].push_back(&f);
      has_inbound.insert(f.to);
    }
    for (const TriggerEdge& t : model.triggers()) {
      triggers_from_[t.from].push_back(&t);
      const StageKind k = model.stage(t.to).kind;
      if (k == StageKind::Release || k == StageKind::Transfer) gated_.insert(t.to);
    }
    for (const Stage& s : model.stages()) {
      if (s.kind == StageKind::Transfer && !model.thimac(s.owner).parent &&
          !has_inbound.contains(s.id)) {
        boundary_.insert(s.id);
      }
    }
  }

  void run_instance(const std::string& event, std::uint32_t instance, const Region& region) {
    event_ = &event;
    instance_ = instance;
    region_ = &region;
    fired_in_instance_ = 0;
    queue_.clear();
    pending_.clear();
    latched_.clear();

    std::set<ElementId> inbound;
    for (ElementId f : region.flows) inbound.insert(model_.find_flow(f)->to);
    for (ElementId t : region.triggers) inbound.insert(model_.find_trigger(t)->to);

    // Tokens already present are adopted before any new one is allocated so
    // queue order follows token ids.
    std::vector<std::uint64_t> adopted;
    for (TokenState& t : tokens_) {
      if (!t.pooled || !region.stages.contains(t.token.location)) continue;
      t.pooled = false;
      active_.insert(t.token.id);
      if (!t.waiting) adopted.push_back(t.token.id);
    }
    for (std::uint64_t id : adopted) {
      fire_stage(tokens_[id - 1].token.location, id);
      queue_.push_back(id);
    }
    for (const Stage& s : model_.stages()) {
      if (!region.stages.contains(s.id) || inbound.contains(s.id)) continue;
      if (s.kind == StageKind::Create || boundary_.contains(s.id)) spawn(s.id, nullptr);
    }

    while (true) {
      if (!pending_.empty()) {
        const TriggerEdge* t = pending_.front();
        pending_.pop_front();
        fire_trigger(*t);
      } else if (!queue_.empty()) {
        const std::uint64_t id = queue_.front();
        queue_.pop_front();
        advance(id);
      } else {
        break;
      }
    }

    for (std::uint64_t id : active_) {
      TokenState& t = tokens_[id - 1];
      const StageKind k = model_.stage(t.token.location).kind;
      t.pooled = k == StageKind::Release || k == StageKind::Transfer;
    }
    active_.clear();
  }

  Trace finish() {
    for (const TokenState& t : tokens_) trace_.final_tokens.push_back(t.token);
    return std::move(trace_);
  }

  Trace& trace() { return trace_; }

 private:
  void emit(ElementId element, FiringKind kind, std::optional<std::uint64_t> token) {
    if (++fired_in_instance_ > config_.max_steps_per_event) {
      throw SimError(SimError::Code::StepBudgetExceeded,
                     "event '" + *event_ + "' instance " + std::to_string(instance_) +
                         " did not reach quiescence within " +
                         std::to_string(config_.max_steps_per_event) + " steps");
    }
    trace_.firings.push_back(Firing{step_++, *event_, instance_, element, kind, token});
  }

  void fire_stage(ElementId stage, std::optional<std::uint64_t> token) {
    emit(stage, FiringKind::StageFire, token);
    const auto it = triggers_from_.find(stage);
    if (it == triggers_from_.end()) return;
    for (const TriggerEdge* t : it->second) {
      if (region_->triggers.contains(t->id)) pending_.push_back(t);
    }
  }

  std::uint64_t spawn(ElementId stage, const TokenState* like) {
    TokenState t;
    t.token.id = tokens_.size() + 1;
    t.token.location = stage;
    if (like) {
      t.token.thing = like->token.thing;
      t.arrival = like->arrival;
    } else {
      t.token.thing = model_.qualified_name(model_.stage(stage).owner);
    }
    tokens_.push_back(t);
    active_.insert(t.token.id);
    emit(stage, FiringKind::TokenSpawn, t.token.id);
    if (!like) {
      fire_stage(stage, t.token.id);
      queue_.push_back(t.token.id);
    }
    return t.token.id;
  }

  void fire_trigger(const TriggerEdge& trigger) {
    emit(trigger.id, FiringKind::TriggerFire, std::nullopt);
    const ElementId target = trigger.to;
    if (model_.stage(target).kind != StageKind::Create) {
      bool enabled = false;
      for (std::uint64_t id : active_) {
        TokenState& t = tokens_[id - 1];
        if (t.token.location != target || !t.waiting) continue;
        t.waiting = false;
        enabled = true;
        emit(target, FiringKind::StageFire, id);
        queue_.push_back(id);
      }
      if (enabled) return;
      // Nothing to release yet: the next token to arrive passes straight
      // through.
      if (gated_.contains(target)) {
        latched_.insert(target);
        return;
      }
    }
    spawn(target, nullptr);
  }

  bool port_allows(const TokenState& t, const FlowEdge& f) const {
    if (model_.stage(f.from).kind != StageKind::Transfer || t.arrival == Arrival::Spawned) {
      return true;
    }
    const bool same = model_.same_machine(f.from, f.to);
    return t.arrival == Arrival::Inner ? !same : same;
  }

  void advance(std::uint64_t id) {
    const ElementId at = tokens_[id - 1].token.location;
    std::vector<const FlowEdge*> moves;
    if (const auto it = outgoing_.find(at); it != outgoing_.end()) {
      for (const FlowEdge* f : it->second) {
        if (region_->flows.contains(f->id) && port_allows(tokens_[id - 1], *f)) {
          moves.push_back(f);
        }
      }
    }
    if (moves.size() > 1) {
      trace_.warnings.push_back("event '" + *event_ + "' instance " + std::to_string(instance_) +
                                ": token " + std::to_string(id) + " broadcast at " +
                                model_.qualified_name(at) + " along " +
                                std::to_string(moves.size()) + " flows");
    }
    const TokenState original = tokens_[id - 1];
    for (std::size_t i = 0; i < moves.size(); ++i) {
      move(i == 0 ? id : spawn(at, &original), *moves[i]);
    }
  }

  void move(std::uint64_t id, const FlowEdge& flow) {
    emit(flow.id, FiringKind::FlowMove, id);
    TokenState& t = tokens_[id - 1];
    t.token.location = flow.to;
    t.arrival = model_.same_machine(flow.from, flow.to) ? Arrival::Inner : Arrival::Outer;
    fire_stage(flow.to, id);
    if (gated_.contains(flow.to) && latched_.erase(flow.to) == 0) {
      tokens_[id - 1].waiting = true;
    } else {
      queue_.push_back(id);
    }
  }

  const Model& model_;
  const SimConfig& config_;
  std::map<ElementId, std::vector<const FlowEdge*>> outgoing_;
  std::map<ElementId, std::vector<const TriggerEdge*>> triggers_from_;
  std::set<ElementId> gated_;
  std::set<ElementId> boundary_;
  std::set<ElementId> latched_;

  std::vector<TokenState> tokens_;  // index = id - 1
  std::set<std::uint64_t> active_;
  std::deque<std::uint64_t> queue_;
  std::deque<const TriggerEdge*> pending_;

  const std::string* event_ = nullptr;
  std::uint32_t instance_ = 0;
  const Region* region_ = nullptr;
  std::uint64_t fired_in_instance_ = 0;
  std::uint64_t step_ = 0;
  Trace trace_;
};

}  // namespace

Trace simulate(const Model& model, std::span<const EventDef> events,
               const Chronology& chronology, const SimConfig& config) {
  if (config.max_steps_per_event < 1) {
    throw SimError(SimError::Code::PreconditionViolated, "maxStepsPerEvent must be positive");
  }
  if (!is_normalized(model)) {
    throw SimError(SimError::Code::PreconditionViolated, "model is not normalized");
  }
  for (const Diagnostic& d : validate(model, events, chronology)) {
    if (d.severity == Severity::Error) {
      throw SimError(SimError::Code::PreconditionViolated,
                     "model does not validate: " + format_diagnostic(d));
    }
  }

  Simulator sim(model, config);
  std::uint64_t tick = 0;
  for (const std::string& id : linear_extension(chronology)) {
    const EventDef* event = find_event(events, id);
    const Region region = resolve_region(model, flatten(events, id));
    for (std::uint32_t i = 1; i <= instances(*event); ++i) {
      sim.trace().event_order.push_back(EventInstance{id, i, TimeStamp{tick++}});
      sim.run_instance(event->id, i, region);
    }
  }
  return sim.finish();
}

}  // namespace thinging
