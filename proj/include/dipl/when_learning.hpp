#pragma once

// When-learning: featurize candidate applications relative to their
// selection and arguments, and classify them as fire / don't fire.

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dipl/core.hpp"
#include "dipl/decision_tree.hpp"
#include "dipl/where_learning.hpp"

namespace dipl {

struct RelPath {
  std::string root;  // "Sel", "Arg0", ...
  std::vector<Relation> steps;

  // Dot notation: "Arg0.below", or just the root for a zero-length path.
  std::string render() const;
  bool operator==(const RelPath&) const = default;
};

struct PathSource {
  std::string root;
  ElementId element;
};

// Sel first, then Arg0, Arg1, ... in binding order.
std::vector<PathSource> binding_sources(const Binding& b);

// Minimal-length path from the source set to every reachable element,
// relaxed Bellman-Ford style over unit-weight adjacency edges. Ties prefer
// the earlier source, then the lexicographically smallest relation sequence.
std::map<ElementId, RelPath> shortest_paths(const TutorState& state, std::span<const PathSource> sources);

struct FeatureFunction {
  std::string name;
  std::function<bool(const std::string&, const std::string&)> test;
};

FeatureFunction equals_feature();

enum class FeatureMode { Relative, Absolute };

struct WhenConfig {
  FeatureMode mode = FeatureMode::Relative;
  std::vector<FeatureFunction> feature_functions;
  int max_path_length = 4;
  int retrain_every = 1;
};

// "<path>.value" and "<path>.filled" per element within max_path_length,
// plus "f(<a>.value, <b>.value)" for every unordered pair of non-empty
// elements (a rendered before b).
FeatureVector relative_featurize(const TutorState& state, const Binding& binding, const WhenConfig& cfg);

// Same features keyed by raw element id.
FeatureVector absolute_featurize(const TutorState& state, const WhenConfig& cfg);

FeatureVector featurize(const TutorState& state, const Binding& binding, const WhenConfig& cfg);

// Sorted "name=value" lines.
std::string serialize_features(const FeatureVector& fv);

inline constexpr std::string_view kPositive = "positive";
inline constexpr std::string_view kNegative = "negative";

struct WhenExample {
  FeatureVector fv;
  bool positive = true;
};

class WhenPart {
 public:
  bool trained() const { return !tree_.empty(); }
  const Dataset& examples() const { return examples_; }
  const DecisionTree& tree() const { return tree_; }

  friend void when_update(WhenPart& part, WhenExample example, int retrain_every);

 private:
  Dataset examples_;
  DecisionTree tree_;
  int since_fit_ = 0;
};

// Appends the example and refits the tree from scratch every
// `retrain_every` examples (the first example always fits).
void when_update(WhenPart& part, WhenExample example, int retrain_every = 1);

struct FireDecision {
  bool fire = true;
  double confidence = 0.5;
};

// An untrained part fires with confidence 0.5.
FireDecision when_predict(const WhenPart& part, const FeatureVector& fv);
FireDecision when_predict(const WhenPart& part, const TutorState& state, const Binding& binding,
                          const WhenConfig& cfg);

}  // namespace dipl
