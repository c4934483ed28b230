#pragma once

// Categorical decision tree with multiway splits chosen by Gini gain ratio.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dipl {

// Feature name -> categorical value. Absent names read as kMissing.
using FeatureVector = std::map<std::string, std::string>;

inline constexpr std::string_view kMissing = "<missing>";

struct LabeledExample {
  FeatureVector features;
  std::string label;
};

using Dataset = std::vector<LabeledExample>;

struct Prediction {
  std::string label;
  double confidence = 0.0;  // majority count / total at the node where prediction stopped
};

class DecisionTree {
 public:
  // Top-down induction. At each node the split is the feature with the
  // highest Gini gain ratio among features that partition the node and have
  // at least average gain; ties go to fewer branches, then the smallest name.
  // Zero-gain splits are allowed, so a node becomes a leaf only when pure or
  // when no unused feature partitions it. Throws std::invalid_argument on an
  // empty dataset.
  static DecisionTree fit(const Dataset& data);

  // Unseen values and missing features stop at the current node and return
  // its majority label (ties to the smallest label).
  Prediction predict(const FeatureVector& fv) const;

  bool empty() const { return nodes_.empty(); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  int depth() const;

  // Indented branch/leaf rendering, stable across runs.
  std::string pretty() const;

 private:
  struct Node {
    std::string feature;                   // empty for a leaf
    std::map<std::string, int> children;   // value -> node index
    std::map<std::string, int> counts;     // label -> training count
  };

  int depth_from(int node) const;
  void pretty_from(int node, int indent, std::string& out) const;
  static Prediction majority(const Node& n);

  std::vector<Node> nodes_;
};

}  // namespace dipl
