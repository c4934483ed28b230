#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "dipl/fractions_env.hpp"
#include "dipl/mc_addition_env.hpp"

using namespace dipl;

namespace {

TutorState two_elements(std::vector<AdjacencyRelation> rels) {
  TutorState s;
  s.elements = {{"a", ElemType::TextField, "", false, 0, 0}, {"b", ElemType::TextField, "", false, 1, 0}};
  s.relations = std::move(rels);
  return s;
}

bool has_prefix(const std::vector<std::string>& v, std::string_view prefix) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.rfind(prefix, 0) == 0; });
}

std::set<std::pair<ElementId, std::string>> as_set(const std::vector<SAI>& v) {
  std::set<std::pair<ElementId, std::string>> out;
  for (const auto& s : v) out.emplace(s.selection, s.input);
  return out;
}

// Plays the demo oracle to completion and checks every reward.
int play_demos(TutorEnvironment& env) {
  int steps = 0;
  while (!env.complete()) {
    const Demo d = env.request_demo();
    REQUIRE(env.step(d.sai).reward.is_correct());
    REQUIRE(++steps <= 20);
  }
  return steps;
}

}  // namespace

TEST_CASE("validate_state") {
  CHECK(validate_state(two_elements({{"a", Relation::Above, "b"}, {"b", Relation::Below, "a"}})).empty());
  CHECK(has_prefix(validate_state(two_elements({{"a", Relation::Above, "b"}})), "missing-inverse"));
  CHECK(has_prefix(validate_state(two_elements({{"a", Relation::Above, "zz"}, {"zz", Relation::Below, "a"}})),
                   "dangling-id"));

  auto locked_empty = two_elements({});
  locked_empty.elements[0].locked = true;
  CHECK(has_prefix(validate_state(locked_empty), "locked-empty"));
}

TEST_CASE("symmetric closure adds inverses once") {
  auto rels = symmetric_closure({{"a", Relation::Above, "b"}, {"b", Relation::Below, "a"}});
  CHECK(rels.size() == 2);
  CHECK(validate_state(two_elements(rels)).empty());
}

TEST_CASE("reward values") {
  CHECK(Reward(1).is_correct());
  CHECK_FALSE(Reward(-1).is_correct());
  CHECK_THROWS_AS(Reward(0), std::invalid_argument);
}

TEST_CASE("serialize_state format") {
  TutorState s = two_elements(symmetric_closure({{"a", Relation::Below, "b"}}));
  s.elements[0].value = "7";
  s.elements[0].locked = true;
  CHECK(serialize_state(s) ==
        "a TextField 7 1 0 0\n"
        "b TextField - 0 1 0\n"
        "a below b\n"
        "b above a\n"
        "done 0\n");
}

TEST_CASE("environment layouts are valid") {
  FractionsTutor f;
  McAdditionTutor m;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    f.new_problem(seed);
    m.new_problem(seed);
    CHECK(validate_state(f.state()).empty());
    CHECK(validate_state(m.state()).empty());
  }
}

TEST_CASE("fractions step") {
  FractionsTutor env;
  env.load({3, 4, 5, 7, FractionOp::Multiply, FractionType::Multiply});
  const TutorState fresh = env.state();

  CHECK(env.step({"answer_num", ActionType::UpdateField, "12"}).reward.value() == -1);
  CHECK(env.state() == fresh);

  CHECK(env.step({"answer_num", ActionType::UpdateField, "15"}).reward.value() == 1);
  CHECK(env.state().find("answer_num")->value == "15");
  CHECK(env.state().find("answer_num")->locked);

  // A locked element rejects edits with -1, not an exception.
  CHECK(env.step({"answer_num", ActionType::UpdateField, "15"}).reward.value() == -1);
  CHECK(as_set(env.admissible()) == std::set<std::pair<ElementId, std::string>>{{"answer_den", "28"}});

  env.step({"answer_den", ActionType::UpdateField, "28"});
  CHECK(as_set(env.admissible()) == std::set<std::pair<ElementId, std::string>>{{"done", ""}});
  CHECK(env.step({"done", ActionType::PressButton, ""}).reward.is_correct());
  CHECK(env.complete());
  CHECK_THROWS_AS(env.request_demo(), std::logic_error);
  CHECK_THROWS_AS(env.step({"done", ActionType::PressButton, ""}), std::logic_error);
}

TEST_CASE("unknown selection is a harness bug") {
  FractionsTutor env;
  CHECK_THROWS_AS(env.step({"nope", ActionType::UpdateField, "1"}), std::logic_error);
}

TEST_CASE("fractions admissible sets and demos") {
  FractionsTutor env;
  env.load({1, 2, 1, 3, FractionOp::Add, FractionType::AddDiff});
  CHECK(as_set(env.admissible()) == std::set<std::pair<ElementId, std::string>>{{"check_convert", "x"}});
  Demo d = env.request_demo();
  CHECK(d.sai == SAI{"check_convert", ActionType::UpdateField, "x"});
  CHECK_FALSE(d.arg_annotations.has_value());

  env.step(d.sai);
  for (auto [id, v] : {std::pair{"conv_num1", "3"}, {"conv_den1", "6"}, {"conv_num2", "2"}, {"conv_den2", "6"}})
    REQUIRE(env.step({id, ActionType::UpdateField, v}).reward.is_correct());
  CHECK(as_set(env.admissible()) == std::set<std::pair<ElementId, std::string>>{{"answer_num", "5"}, {"answer_den", "6"}});

  env.load({3, 4, 1, 4, FractionOp::Add, FractionType::AddSame});
  d = env.request_demo();
  CHECK(d.sai == SAI{"answer_num", ActionType::UpdateField, "4"});
  CHECK_FALSE(d.arg_annotations.has_value());
}

TEST_CASE("fractions generator") {
  CHECK(generate_fraction_problem(0) == generate_fraction_problem(0));
  std::map<FractionType, int> counts;
  const int n = 10000;
  for (int seed = 0; seed < n; ++seed) {
    const auto p = generate_fraction_problem(seed);
    ++counts[p.ptype];
    for (int v : {p.n1, p.d1, p.n2, p.d2}) REQUIRE((v >= 2 && v <= 10));
    if (p.ptype == FractionType::AddSame) REQUIRE(p.d1 == p.d2);
    if (p.ptype == FractionType::AddDiff) REQUIRE(p.d1 != p.d2);
  }
  for (auto t : {FractionType::AddSame, FractionType::AddDiff, FractionType::Multiply}) {
    const double freq = counts[t] / double(n);
    CHECK(freq >= 0.30);
    CHECK(freq <= 0.37);
  }
}

TEST_CASE("fractions demo oracle solves every problem within 8 steps") {
  FractionsTutor env;
  for (int seed = 0; seed < 500; ++seed) {
    env.new_problem(seed);
    const int steps = play_demos(env);
    const auto t = env.problem().ptype;
    CHECK(steps == (t == FractionType::AddDiff ? 8 : 3));
    CHECK(env.state().find("conv_den1")->value == env.state().find("conv_den2")->value);
    for (const auto& e : env.state().elements) {
      if (e.value.empty() || e.id == "check_convert" || e.id == "op") continue;
      const int v = std::stoi(e.value);
      CHECK((v >= 1 && v <= 450));
    }
  }
}

TEST_CASE("fractions action space") {
  FractionsTutor env;
  const auto actions = env.action_space();
  CHECK(actions.size() == 2702);
  CHECK(std::set<SAI>(actions.begin(), actions.end()).size() == actions.size());
}

TEST_CASE("mc-addition step and admissible") {
  McAdditionTutor env;
  env.load({379, 447});
  CHECK(as_set(env.admissible()) ==
        std::set<std::pair<ElementId, std::string>>{{"answer_ones", "6"}, {"carry_tens", "1"}});

  // Carries are declared before answers, so the carry leads the demo.
  Demo d = env.request_demo();
  CHECK(d.sai == SAI{"carry_tens", ActionType::UpdateField, "1"});
  REQUIRE(d.arg_annotations.has_value());
  CHECK(*d.arg_annotations == std::vector<ElementId>{"a_ones", "b_ones"});

  CHECK(env.step({"answer_ones", ActionType::UpdateField, "6"}).reward.is_correct());
  CHECK(env.state().find("answer_ones")->locked);
  d = env.request_demo();
  CHECK(d.sai == SAI{"carry_tens", ActionType::UpdateField, "1"});
  env.step(d.sai);

  CHECK(as_set(env.admissible()) ==
        std::set<std::pair<ElementId, std::string>>{{"answer_tens", "2"}, {"carry_hund", "1"}});
  d = env.request_demo();
  REQUIRE(d.arg_annotations.has_value());
  CHECK(std::set<ElementId>(d.arg_annotations->begin(), d.arg_annotations->end()) ==
        std::set<ElementId>{"carry_tens", "a_tens", "b_tens"});

  env.load({123, 456});
  CHECK(as_set(env.admissible()) == std::set<std::pair<ElementId, std::string>>{{"answer_ones", "9"}});
  d = env.request_demo();
  CHECK(d.sai == SAI{"answer_ones", ActionType::UpdateField, "9"});
  CHECK(*d.arg_annotations == std::vector<ElementId>{"a_ones", "b_ones"});
  CHECK(env.step({"carry_tens", ActionType::UpdateField, "0"}).reward.value() == -1);
}

TEST_CASE("mc-addition layout") {
  McAdditionTutor env;
  const auto& rels = env.state().relations;
  CHECK(std::find(rels.begin(), rels.end(), AdjacencyRelation{"b_ones", Relation::Below, "answer_ones"}) != rels.end());
  CHECK(std::find(rels.begin(), rels.end(), AdjacencyRelation{"answer_ones", Relation::Above, "b_ones"}) != rels.end());
  const auto actions = env.action_space();
  CHECK(actions.size() == 71);
  CHECK(std::set<SAI>(actions.begin(), actions.end()).size() == 71);
}

TEST_CASE("mc-addition generator carry rate") {
  // Exact rate over all 810,000 operand pairs, with an independent digit loop.
  long carrying = 0, total = 0;
  for (int a = 100; a <= 999; ++a)
    for (int b = 100; b <= 999; ++b) {
      int carry = 0;
      bool any = false;
      for (int x = a, y = b; x > 0; x /= 10, y /= 10) {
        carry = (x % 10 + y % 10 + carry) / 10;
        any = any || carry > 0;
      }
      carrying += any;
      ++total;
    }
  const double exact = double(carrying) / total;
  CHECK(exact == doctest::Approx(0.865556).epsilon(1e-5));

  CHECK(generate_addition_problem(7) == generate_addition_problem(7));
  const int n = 10000;
  int seen = 0;
  for (int seed = 0; seed < n; ++seed) {
    const auto p = generate_addition_problem(seed);
    REQUIRE((p.a >= 100 && p.a <= 999 && p.b >= 100 && p.b <= 999));
    McAdditionTutor env;
    env.load(p);
    bool carries = false;
    // Any carry at all shows up as an admissible carry field at some point.
    while (!env.complete()) {
      for (const auto& s : env.admissible())
        if (s.selection.rfind("carry_", 0) == 0) carries = true;
      env.step(env.request_demo().sai);
    }
    seen += carries;
  }
  // Binomial standard error at n = 10000 is about 0.0034; allow 4 sigma.
  CHECK(std::abs(seen / double(n) - exact) < 0.014);
}

TEST_CASE("mc-addition demo oracle sums correctly") {
  McAdditionTutor env;
  for (int seed = 0; seed < 500; ++seed) {
    env.new_problem(seed);
    play_demos(env);
    CHECK(env.answer_value() == env.problem().a + env.problem().b);
  }
}
