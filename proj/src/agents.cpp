#include "dipl/agents.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "dipl/fractions_env.hpp"
#include "dipl/mc_addition_env.hpp"

namespace dipl {

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::Fractions: return "fractions";
    case Domain::McAddition: return "mc-addition";
  }
  return "?";
}

std::string_view to_string(AgentKind k) {
  switch (k) {
    case AgentKind::Dipl: return "dipl";
    case AgentKind::DiplNoRel: return "dipl-norel";
    case AgentKind::HowLhs: return "how-lhs";
    case AgentKind::DtDemos: return "dt-demos";
  }
  return "?";
}

Domain parse_domain(std::string_view s) {
  for (auto d : {Domain::Fractions, Domain::McAddition})
    if (to_string(d) == s) return d;
  throw std::invalid_argument("unknown domain: " + std::string(s));
}

AgentKind parse_agent(std::string_view s) {
  for (auto k : {AgentKind::Dipl, AgentKind::DiplNoRel, AgentKind::HowLhs, AgentKind::DtDemos})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown agent: " + std::string(s));
}

std::unique_ptr<TutorEnvironment> make_environment(Domain d) {
  if (d == Domain::Fractions) return std::make_unique<FractionsTutor>();
  return std::make_unique<McAdditionTutor>();
}

DomainProfile domain_profile(Domain d) {
  DomainProfile p;
  p.domain = d;
  if (d == Domain::Fractions) {
    p.functions = fraction_functions();
    p.feature_functions = {equals_feature()};
    p.one_hot_slots = 2000;
  } else {
    p.functions = mc_addition_functions();
    p.one_hot_slots = 240;
  }
  return p;
}

// ---------------------------------------------------------------------------
// DIPL

DiplAgent::DiplAgent(DomainProfile profile, AgentConfig cfg, FeatureMode mode)
    : profile_(std::move(profile)), cfg_(cfg) {
  when_.mode = mode;
  when_.feature_functions = profile_.feature_functions;
  when_.retrain_every = cfg_.retrain_every;
}

bool DiplAgent::rejected(std::size_t skill, const Binding& b) const {
  return std::find(rejected_.begin(), rejected_.end(), std::make_pair(skill, b)) != rejected_.end();
}

std::vector<DiplAgent::Candidate> DiplAgent::firing_candidates(const TutorState& state) const {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < skills_.size(); ++i) {
    const Skill& s = skills_[i];
    for (auto& b : where_candidates(s.where, state)) {
      if (rejected(i, b)) continue;
      auto sai = skill_action(s, b, state, profile_.functions);
      if (!sai) continue;
      const FireDecision d = when_predict(s.when, state, b, when_);
      if (d.fire) out.push_back({i, std::move(b), std::move(*sai), d});
    }
  }
  return out;
}

AgentAction DiplAgent::act(const TutorState& state) {
  const auto cands = firing_candidates(state);
  const Candidate* best = nullptr;
  for (const auto& c : cands)
    if (!best || c.decision.confidence > best->decision.confidence) best = &c;
  if (!best) return DemoRequest{};
  return Proposal{best->sai, skills_[best->skill].id, best->binding};
}

void DiplAgent::learn(const AgentEvent& event) {
  if (const auto* a = std::get_if<AttemptResult>(&event)) {
    if (!a->skill || !a->binding) return;
    const auto idx = static_cast<std::size_t>(*a->skill);
    if (idx >= skills_.size()) throw std::out_of_range("attempt names an unknown skill");
    when_update(skills_[idx].when, {featurize(a->state, *a->binding, when_), a->reward.is_correct()},
                when_.retrain_every);
    if (a->reward.is_correct())
      rejected_.clear();
    else
      rejected_.emplace_back(idx, *a->binding);
    return;
  }

  const auto& d = std::get<DemoReceived>(event);
  if (cfg_.implicit_negatives) {
    for (const auto& c : firing_candidates(d.state)) {
      if (c.sai == d.demo.sai) continue;
      when_update(skills_[c.skill].when, {featurize(d.state, c.binding, when_), false}, when_.retrain_every);
    }
  }
  const SkillMatch m = match_or_create(d.demo, d.state, skills_, profile_.functions, cfg_.max_depth);
  Skill& s = skills_[m.skill];
  s.where = where_record(std::move(s.where), m.binding);
  when_update(s.when, {featurize(d.state, m.binding, when_), true}, when_.retrain_every);
  rejected_.clear();
}

// ---------------------------------------------------------------------------
// How + LHS

HowLhsAgent::HowLhsAgent(DomainProfile profile, AgentConfig cfg) : profile_(std::move(profile)), cfg_(cfg) {
  features_.mode = FeatureMode::Absolute;
  features_.feature_functions = profile_.feature_functions;
}

std::string HowLhsAgent::class_label(std::size_t skill, const Binding& b) {
  std::string label = "S" + std::to_string(skills_[skill].id) + "|" + b.render();
  classes_.emplace(label, std::make_pair(skill, b));
  return label;
}

void HowLhsAgent::add_example(const TutorState& state, const std::string& label) {
  data_.push_back({absolute_featurize(state, features_), label});
  if (tree_.empty() || ++since_fit_ >= std::max(cfg_.retrain_every, 1)) {
    tree_ = DecisionTree::fit(data_);
    since_fit_ = 0;
  }
}

AgentAction HowLhsAgent::act(const TutorState& state) {
  if (want_demo_ || tree_.empty()) return DemoRequest{};
  const Prediction p = tree_.predict(absolute_featurize(state, features_));
  auto it = classes_.find(p.label);
  if (it == classes_.end()) return DemoRequest{};
  const auto& [skill, binding] = it->second;
  for (const auto& id : binding.args)
    if (!state.find(id)) return DemoRequest{};
  auto sai = skill_action(skills_[skill], binding, state, profile_.functions);
  if (!sai) return DemoRequest{};
  return Proposal{*sai, skills_[skill].id, binding};
}

void HowLhsAgent::learn(const AgentEvent& event) {
  if (const auto* a = std::get_if<AttemptResult>(&event)) {
    if (!a->reward.is_correct()) {
      want_demo_ = true;
      return;
    }
    if (a->skill && a->binding) add_example(a->state, class_label(static_cast<std::size_t>(*a->skill), *a->binding));
    return;
  }
  const auto& d = std::get<DemoReceived>(event);
  const SkillMatch m = match_or_create(d.demo, d.state, skills_, profile_.functions, cfg_.max_depth);
  // The where-part is never used to generate candidates here; it only lets
  // match_or_create prefer (skill, binding) classes the tree already knows.
  Skill& s = skills_[m.skill];
  s.where = where_record(std::move(s.where), m.binding);
  add_example(d.state, class_label(m.skill, m.binding));
  want_demo_ = false;
}

// ---------------------------------------------------------------------------
// One-hot schema and the 1-mechanism baseline

OneHotSchema::OneHotSchema(const std::vector<std::pair<ElementId, std::vector<std::string>>>& inventory,
                           std::size_t slots) {
  auto add = [&](Triple t) {
    index_.emplace(t, triples_.size());
    triples_.push_back(std::move(t));
  };
  for (const auto& [id, values] : inventory) {
    elements_[id] = true;
    for (const auto& v : values) add({id, "value", v});
    if (!values.empty()) add({id, "filled", "true"});
  }
  add({"done", "pressed", "true"});
  content_ = triples_.size();
  if (content_ > slots)
    throw std::invalid_argument("one-hot content needs " + std::to_string(content_) + " slots, only " +
                                std::to_string(slots) + " available");
  for (std::size_t i = 0; triples_.size() < slots; ++i) add({"", "pad", std::to_string(i)});
}

std::optional<std::size_t> OneHotSchema::slot(const Triple& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool OneHotSchema::has_element(const ElementId& id) const { return elements_.count(id) > 0; }

std::vector<std::uint8_t> one_hot_encode(const TutorState& state, const OneHotSchema& schema) {
  std::vector<std::uint8_t> v(schema.size(), 0);
  auto set = [&](const OneHotSchema::Triple& t) {
    auto s = schema.slot(t);
    if (!s) throw std::out_of_range("one-hot schema has no slot for " + t.element + "." + t.attribute + "=" + t.value);
    v[*s] = 1;
  };
  for (const auto& e : state.elements) {
    if (!schema.has_element(e.id)) throw std::out_of_range("one-hot schema has no element " + e.id);
    if (!e.value.empty()) set({e.id, "value", e.value});
    if (!e.value.empty()) set({e.id, "filled", "true"});
  }
  if (state.done_pressed) set({"done", "pressed", "true"});
  return v;
}

DtDemosAgent::DtDemosAgent(std::vector<SAI> action_space, OneHotSchema schema, AgentConfig cfg)
    : actions_(std::move(action_space)), schema_(std::move(schema)), cfg_(cfg) {
  if (actions_.empty()) throw std::invalid_argument("empty action space");
  for (std::size_t i = 0; i < actions_.size(); ++i) action_index_.emplace(actions_[i], i);
}

FeatureVector DtDemosAgent::encode(const TutorState& state) const {
  FeatureVector fv;
  const auto bits = one_hot_encode(state, schema_);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) fv["s" + std::to_string(i)] = "1";
  return fv;
}

namespace {
std::string action_label(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "a%05zu", i);
  return buf;
}
}  // namespace

void DtDemosAgent::add_example(const TutorState& state, const SAI& sai) {
  auto it = action_index_.find(sai);
  if (it == action_index_.end()) throw std::out_of_range("action outside the fixed action space: " + to_string(sai));
  data_.push_back({encode(state), action_label(it->second)});
  if (tree_.empty() || ++since_fit_ >= std::max(cfg_.retrain_every, 1)) {
    tree_ = DecisionTree::fit(data_);
    since_fit_ = 0;
  }
}

AgentAction DtDemosAgent::act(const TutorState& state) {
  if (want_demo_) return DemoRequest{};
  if (tree_.empty()) return Proposal{actions_.front(), std::nullopt, std::nullopt};
  const Prediction p = tree_.predict(encode(state));
  return Proposal{actions_.at(std::stoul(p.label.substr(1))), std::nullopt, std::nullopt};
}

void DtDemosAgent::learn(const AgentEvent& event) {
  // "+Demos" modality: only the worked example that follows a mistake is
  // trained on; correct attempts add nothing.
  if (const auto* a = std::get_if<AttemptResult>(&event)) {
    if (!a->reward.is_correct()) want_demo_ = true;
    return;
  }
  const auto& d = std::get<DemoReceived>(event);
  add_example(d.state, d.demo.sai);
  want_demo_ = false;
}

std::unique_ptr<Agent> make_agent(AgentKind kind, Domain domain, const AgentConfig& cfg) {
  switch (kind) {
    case AgentKind::Dipl: return std::make_unique<DiplAgent>(domain_profile(domain), cfg, FeatureMode::Relative);
    case AgentKind::DiplNoRel:
      return std::make_unique<DiplAgent>(domain_profile(domain), cfg, FeatureMode::Absolute);
    case AgentKind::HowLhs: return std::make_unique<HowLhsAgent>(domain_profile(domain), cfg);
    case AgentKind::DtDemos: {
      const auto env = make_environment(domain);
      const auto profile = domain_profile(domain);
      return std::make_unique<DtDemosAgent>(env->action_space(), OneHotSchema(env->value_inventory(), profile.one_hot_slots),
                                            cfg);
    }
  }
  throw std::invalid_argument("unknown agent kind");
}

}  // namespace dipl
