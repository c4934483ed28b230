#pragma once

// The three ablation levels behind one contract: act(state) proposes an
// action or asks for a demo, learn(event) consumes tutor feedback.
//
//   DtDemosAgent  1 mechanism: one tree from one-hot state to primitive action
//   HowLhsAgent   2 mechanisms: how-learning + one multiclass LHS tree
//   DiplAgent     3 mechanisms: how + where + when per skill

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dipl/core.hpp"
#include "dipl/decision_tree.hpp"
#include "dipl/how_learning.hpp"
#include "dipl/skill.hpp"
#include "dipl/when_learning.hpp"

namespace dipl {

enum class Domain { Fractions, McAddition };
enum class AgentKind { Dipl, DiplNoRel, HowLhs, DtDemos };

std::string_view to_string(Domain d);
std::string_view to_string(AgentKind k);
// Throw std::invalid_argument on unknown names.
Domain parse_domain(std::string_view s);
AgentKind parse_agent(std::string_view s);

std::unique_ptr<TutorEnvironment> make_environment(Domain d);

// Prior knowledge handed to the symbolic agents, plus the published one-hot
// dimensions for the fixed-action-space baseline.
struct DomainProfile {
  Domain domain = Domain::Fractions;
  std::vector<PrimitiveFunction> functions;
  std::vector<FeatureFunction> feature_functions;
  std::size_t one_hot_slots = 0;
};

DomainProfile domain_profile(Domain d);

struct DemoRequest {};

struct Proposal {
  SAI sai;
  std::optional<int> skill;
  std::optional<Binding> binding;
};

using AgentAction = std::variant<Proposal, DemoRequest>;

struct AttemptResult {
  TutorState state;  // state the attempt was made in
  SAI sai;
  std::optional<int> skill;
  std::optional<Binding> binding;
  Reward reward = Reward::incorrect();
};

struct DemoReceived {
  TutorState state;
  Demo demo;
};

using AgentEvent = std::variant<AttemptResult, DemoReceived>;

class Agent {
 public:
  virtual ~Agent() = default;
  virtual AgentAction act(const TutorState& state) = 0;
  virtual void learn(const AgentEvent& event) = 0;
};

struct AgentConfig {
  int max_depth = 2;
  bool implicit_negatives = true;
  int retrain_every = 1;
};

class DiplAgent : public Agent {
 public:
  DiplAgent(DomainProfile profile, AgentConfig cfg, FeatureMode mode);

  AgentAction act(const TutorState& state) override;
  void learn(const AgentEvent& event) override;

  const std::vector<Skill>& skills() const { return skills_; }
  const WhenConfig& when_config() const { return when_; }

 private:
  struct Candidate {
    std::size_t skill;
    Binding binding;
    SAI sai;
    FireDecision decision;
  };
  // Firing, evaluable, not-yet-rejected candidates in skill then binding order.
  std::vector<Candidate> firing_candidates(const TutorState& state) const;
  bool rejected(std::size_t skill, const Binding& b) const;

  DomainProfile profile_;
  AgentConfig cfg_;
  WhenConfig when_;
  std::vector<Skill> skills_;
  std::vector<std::pair<std::size_t, Binding>> rejected_;  // this tutor step only
};

class HowLhsAgent : public Agent {
 public:
  HowLhsAgent(DomainProfile profile, AgentConfig cfg);

  AgentAction act(const TutorState& state) override;
  void learn(const AgentEvent& event) override;

  const std::vector<Skill>& skills() const { return skills_; }
  std::size_t example_count() const { return data_.size(); }
  const DecisionTree& tree() const { return tree_; }

 private:
  // "S<id>|<binding>" label for the multiclass tree.
  std::string class_label(std::size_t skill, const Binding& b);
  void add_example(const TutorState& state, const std::string& label);

  DomainProfile profile_;
  AgentConfig cfg_;
  WhenConfig features_;
  std::vector<Skill> skills_;
  std::map<std::string, std::pair<std::size_t, Binding>> classes_;
  Dataset data_;
  DecisionTree tree_;
  int since_fit_ = 0;
  bool want_demo_ = false;
};

// (element id, attribute, value) -> slot. Attributes are "value" (one slot
// per value the element can hold) and "filled"; one extra slot records the
// done button press. Padding slots fill the vector to the requested size.
class OneHotSchema {
 public:
  struct Triple {
    ElementId element;
    std::string attribute;
    std::string value;
    auto operator<=>(const Triple&) const = default;
  };

  // Throws std::invalid_argument when the content needs more than `slots`.
  OneHotSchema(const std::vector<std::pair<ElementId, std::vector<std::string>>>& inventory, std::size_t slots);

  std::size_t size() const { return triples_.size(); }
  std::size_t content_size() const { return content_; }
  const Triple& triple(std::size_t slot) const { return triples_.at(slot); }
  std::optional<std::size_t> slot(const Triple& t) const;
  bool has_element(const ElementId& id) const;

 private:
  std::vector<Triple> triples_;
  std::map<Triple, std::size_t> index_;
  std::map<ElementId, bool> elements_;
  std::size_t content_ = 0;
};

// 0/1 per slot. Throws std::out_of_range when the state holds an element or
// value the schema does not know.
std::vector<std::uint8_t> one_hot_encode(const TutorState& state, const OneHotSchema& schema);

class DtDemosAgent : public Agent {
 public:
  DtDemosAgent(std::vector<SAI> action_space, OneHotSchema schema, AgentConfig cfg);

  AgentAction act(const TutorState& state) override;
  void learn(const AgentEvent& event) override;

  const OneHotSchema& schema() const { return schema_; }
  std::size_t example_count() const { return data_.size(); }

 private:
  FeatureVector encode(const TutorState& state) const;
  void add_example(const TutorState& state, const SAI& sai);

  std::vector<SAI> actions_;
  std::map<SAI, std::size_t> action_index_;
  OneHotSchema schema_;
  AgentConfig cfg_;
  Dataset data_;
  DecisionTree tree_;
  int since_fit_ = 0;
  bool want_demo_ = false;
};

std::unique_ptr<Agent> make_agent(AgentKind kind, Domain domain, const AgentConfig& cfg);

}  // namespace dipl
