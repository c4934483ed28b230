#include <doctest.h>

#include <numeric>

#include "dipl/agents.hpp"
#include "dipl/fractions_env.hpp"
#include "dipl/mc_addition_env.hpp"

using namespace dipl;

namespace {

// Copies the proposal out of the action; nullopt for a demo request.
std::optional<Proposal> as_proposal(const AgentAction& a) {
  if (const auto* p = std::get_if<Proposal>(&a)) return *p;
  return std::nullopt;
}

void teach(Agent& agent, TutorEnvironment& env) {
  const TutorState before = env.state();
  const Demo d = env.request_demo();
  agent.learn(DemoReceived{before, d});
  env.step(d.sai);
}

std::size_t ones(const std::vector<std::uint8_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); }

}  // namespace

TEST_CASE("names round trip") {
  for (auto d : {Domain::Fractions, Domain::McAddition}) CHECK(parse_domain(to_string(d)) == d);
  for (auto k : {AgentKind::Dipl, AgentKind::DiplNoRel, AgentKind::HowLhs, AgentKind::DtDemos})
    CHECK(parse_agent(to_string(k)) == k);
  CHECK_THROWS_AS(parse_domain("algebra"), std::invalid_argument);
  CHECK_THROWS_AS(parse_agent("rl"), std::invalid_argument);
}

TEST_CASE("DIPL without skills asks for a demo") {
  DiplAgent agent(domain_profile(Domain::Fractions), {}, FeatureMode::Relative);
  FractionsTutor env;
  CHECK(std::holds_alternative<DemoRequest>(agent.act(env.state())));
}

TEST_CASE("DIPL demo creates a skill, then reuses it") {
  DiplAgent agent(domain_profile(Domain::McAddition), {}, FeatureMode::Relative);
  McAdditionTutor env;
  env.load({123, 456});
  teach(agent, env);  // answer_ones = 9
  REQUIRE(agent.skills().size() == 1);
  const Skill& s = agent.skills()[0];
  CHECK(s.how.render() == "Add(Arg0,Arg1)");
  CHECK(s.where.bindings().size() == 1);
  REQUIRE(s.when.examples().size() == 1);
  CHECK(s.when.examples()[0].label == kPositive);

  // Same skill in the next column: no new skill, one more binding.
  teach(agent, env);  // answer_tens = 7
  CHECK(agent.skills().size() == 1);
  CHECK(agent.skills()[0].where.bindings().size() == 2);
  CHECK(agent.skills()[0].where.bindings()[1] == Binding{"answer_tens", {"a_tens", "b_tens"}});
}

TEST_CASE("DIPL attempt feedback") {
  DiplAgent agent(domain_profile(Domain::McAddition), {}, FeatureMode::Relative);
  McAdditionTutor env;
  env.load({123, 456});
  teach(agent, env);
  teach(agent, env);

  // On a fresh problem both recorded bindings fire; the ones column is first.
  env.load({111, 222});
  auto p = as_proposal(agent.act(env.state()));
  REQUIRE(p);
  CHECK(p->sai == SAI{"answer_ones", ActionType::UpdateField, "3"});
  REQUIRE(p->skill);
  CHECK(*p->skill == 0);

  // Reject it by hand: one negative example, and the pair is not retried.
  const auto before = agent.skills()[0].when.examples().size();
  agent.learn(AttemptResult{env.state(), p->sai, p->skill, p->binding, Reward::incorrect()});
  CHECK(agent.skills()[0].when.examples().size() == before + 1);
  CHECK(agent.skills()[0].when.examples().back().label == kNegative);
  if (auto q = as_proposal(agent.act(env.state()))) CHECK_FALSE(q->binding == p->binding);
}

TEST_CASE("DIPL single firing candidate") {
  DiplAgent agent(domain_profile(Domain::Fractions), {}, FeatureMode::Relative);
  FractionsTutor env;
  env.load({1, 2, 1, 3, FractionOp::Add, FractionType::AddDiff});
  teach(agent, env);  // check_convert = x
  env.load({2, 5, 1, 4, FractionOp::Add, FractionType::AddDiff});
  auto p = as_proposal(agent.act(env.state()));
  REQUIRE(p);
  CHECK(p->sai == SAI{"check_convert", ActionType::UpdateField, "x"});
}

TEST_CASE("DIPL no-rel features carry binding identity") {
  DiplAgent agent(domain_profile(Domain::McAddition), {}, FeatureMode::Absolute);
  McAdditionTutor env;
  env.load({123, 456});
  teach(agent, env);
  const auto& fv = agent.skills()[0].when.examples()[0].features;
  CHECK(fv.at("Sel.id") == "answer_ones");
  CHECK(fv.at("a_ones.value") == "3");
  CHECK(fv.count("Arg0.value") == 0);
}

TEST_CASE("How+LHS") {
  HowLhsAgent agent(domain_profile(Domain::Fractions), {});
  FractionsTutor env;
  env.load({3, 4, 1, 4, FractionOp::Add, FractionType::AddSame});
  CHECK(std::holds_alternative<DemoRequest>(agent.act(env.state())));
  const TutorState fresh = env.state();
  teach(agent, env);  // answer_num = 4
  CHECK(agent.example_count() == 1);

  auto p = as_proposal(agent.act(fresh));
  REQUIRE(p);
  CHECK(p->sai == SAI{"answer_num", ActionType::UpdateField, "4"});

  // A -1 adds nothing and makes the next action a demo request.
  agent.learn(AttemptResult{fresh, p->sai, p->skill, p->binding, Reward::incorrect()});
  CHECK(agent.example_count() == 1);
  CHECK(std::holds_alternative<DemoRequest>(agent.act(fresh)));

  // A +1 is a training example.
  env.load({3, 4, 1, 4, FractionOp::Add, FractionType::AddSame});
  teach(agent, env);
  p = as_proposal(agent.act(fresh));
  REQUIRE(p);
  agent.learn(AttemptResult{fresh, p->sai, p->skill, p->binding, Reward::correct()});
  CHECK(agent.example_count() == 3);
}

TEST_CASE("one-hot schema") {
  McAdditionTutor mc;
  const OneHotSchema schema(mc.value_inventory(), 240);
  CHECK(schema.size() == 240);
  CHECK(schema.content_size() <= 240);

  mc.load({379, 447});
  const auto fresh = one_hot_encode(mc.state(), schema);
  CHECK(fresh.size() == 240);
  CHECK(ones(fresh) == 12);  // six operand digits, each with value and filled
  CHECK(fresh[*schema.slot({"a_ones", "value", "9"})] == 1);
  CHECK(fresh[*schema.slot({"a_ones", "filled", "true"})] == 1);

  mc.step({"answer_ones", ActionType::UpdateField, "6"});
  const auto after = one_hot_encode(mc.state(), schema);
  std::vector<std::size_t> flipped;
  for (std::size_t i = 0; i < after.size(); ++i)
    if (after[i] != fresh[i]) flipped.push_back(i);
  REQUIRE(flipped.size() == 2);
  CHECK(schema.triple(flipped[0]).element == "answer_ones");
  CHECK(schema.triple(flipped[1]).element == "answer_ones");
  CHECK(after[*schema.slot({"answer_ones", "value", "6"})] == 1);

  FractionsTutor fr;
  const OneHotSchema fs(fr.value_inventory(), 2000);
  CHECK(fs.size() == 2000);
  CHECK(fs.content_size() < 2000);
  CHECK_THROWS_AS(OneHotSchema(fr.value_inventory(), 10), std::invalid_argument);

  TutorState alien = mc.state();
  alien.elements.push_back({"zz", ElemType::TextField, "1", true, 9, 9});
  CHECK_THROWS_AS(one_hot_encode(alien, schema), std::out_of_range);
}

TEST_CASE("DT+Demos") {
  auto agent = make_agent(AgentKind::DtDemos, Domain::McAddition, {});
  McAdditionTutor env;
  env.load({379, 447});
  const TutorState fresh = env.state();

  auto p = as_proposal(agent->act(fresh));
  REQUIRE(p);
  CHECK(p->sai == env.action_space().front());
  const auto r = McAdditionTutor(env).step(p->sai).reward;
  agent->learn(AttemptResult{fresh, p->sai, std::nullopt, std::nullopt, r});
  REQUIRE_FALSE(r.is_correct());
  CHECK(std::holds_alternative<DemoRequest>(agent->act(fresh)));

  teach(*agent, env);
  p = as_proposal(agent->act(fresh));
  REQUIRE(p);
  CHECK(p->sai == SAI{"carry_tens", ActionType::UpdateField, "1"});
}
