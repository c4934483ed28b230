#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dipl/decision_tree.hpp"

using namespace dipl;

namespace {

Dataset xor_data() {
  return {{{{"a", "0"}, {"b", "0"}}, "no"},
          {{{"a", "0"}, {"b", "1"}}, "yes"},
          {{{"a", "1"}, {"b", "0"}}, "yes"},
          {{{"a", "1"}, {"b", "1"}}, "no"}};
}

Dataset random_consistent(std::mt19937_64& rng, int n, int features, int values, int labels) {
  std::uniform_int_distribution<int> val(0, values - 1), lab(0, labels - 1), drop(0, 9);
  std::map<FeatureVector, std::string> seen;
  Dataset out;
  for (int i = 0; i < n; ++i) {
    FeatureVector fv;
    for (int f = 0; f < features; ++f)
      if (drop(rng) != 0) fv["f" + std::to_string(f)] = std::to_string(val(rng));
    auto [it, inserted] = seen.emplace(fv, "L" + std::to_string(lab(rng)));
    out.push_back({fv, it->second});  // duplicates keep their first label
  }
  return out;
}

}  // namespace

TEST_CASE("pure dataset gives a single leaf") {
  const Dataset d = {{{{"a", "1"}}, "x"}, {{{"a", "2"}}, "x"}};
  const auto t = DecisionTree::fit(d);
  CHECK(t.node_count() == 1);
  const auto p = t.predict({{"a", "9"}});
  CHECK(p.label == "x");
  CHECK(p.confidence == 1.0);
}

TEST_CASE("empty dataset throws") {
  CHECK_THROWS_AS(DecisionTree::fit({}), std::invalid_argument);
  CHECK_THROWS_AS(DecisionTree().predict({}), std::logic_error);
}

TEST_CASE("xor needs depth 2 and is learned exactly") {
  const auto data = xor_data();
  const auto t = DecisionTree::fit(data);
  CHECK(t.depth() == 2);
  for (const auto& ex : data) CHECK(t.predict(ex.features).label == ex.label);
}

TEST_CASE("unseen values fall back to the node majority") {
  const Dataset d = {{{{"a", "1"}}, "x"}, {{{"a", "1"}}, "x"}, {{{"a", "2"}}, "y"}};
  const auto t = DecisionTree::fit(d);
  auto p = t.predict({{"a", "3"}});
  CHECK(p.label == "x");
  CHECK(p.confidence == doctest::Approx(2.0 / 3.0));
  p = t.predict({});
  CHECK(p.label == "x");
}

TEST_CASE("missing features are their own value") {
  const Dataset d = {{{{"a", "1"}}, "x"}, {{}, "y"}};
  const auto t = DecisionTree::fit(d);
  CHECK(t.predict({}).label == "y");
  CHECK(t.predict({{"a", "1"}}).label == "x");
}

TEST_CASE("label ties go to the smallest label") {
  const Dataset d = {{{{"a", "1"}}, "b"}, {{{"a", "1"}}, "a"}};
  const auto t = DecisionTree::fit(d);
  const auto p = t.predict({{"a", "1"}});
  CHECK(p.label == "a");
  CHECK(p.confidence == 0.5);
}

TEST_CASE("a clean binary split beats a memorizing many-valued one") {
  // "id" separates every row, "flag" separates the labels with two branches.
  Dataset d;
  for (int i = 0; i < 8; ++i)
    d.push_back({{{"id", std::to_string(i)}, {"flag", i % 2 ? "yes" : "no"}}, i % 2 ? "pos" : "neg"});
  const auto t = DecisionTree::fit(d);
  CHECK(t.depth() == 1);
  CHECK(t.pretty().rfind("flag = ", 0) == 0);
  CHECK(t.predict({{"id", "99"}, {"flag", "yes"}}).label == "pos");
}

TEST_CASE("consistency: conflict-free data is fit exactly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto data = random_consistent(rng, 60, 5, 3, 4);
    const auto t = DecisionTree::fit(data);
    for (const auto& ex : data) REQUIRE(t.predict(ex.features).label == ex.label);
  }
}

TEST_CASE("determinism: example order does not change the tree") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto data = random_consistent(rng, 40, 4, 3, 3);
    const std::string ref = DecisionTree::fit(data).pretty();
    std::shuffle(data.begin(), data.end(), rng);
    CHECK(DecisionTree::fit(data).pretty() == ref);
    CHECK(DecisionTree::fit(data).pretty() == ref);
  }
}

TEST_CASE("pretty printer") {
  const auto t = DecisionTree::fit(xor_data());
  CHECK(t.pretty() ==
        "a = 0\n"
        "  b = 0 -> no {no: 1}\n"
        "  b = 1 -> yes {yes: 1}\n"
        "a = 1\n"
        "  b = 0 -> yes {yes: 1}\n"
        "  b = 1 -> no {no: 1}\n");
  CHECK(DecisionTree::fit({{{}, "z"}}).pretty() == "<root> -> z {z: 1}\n");
}
