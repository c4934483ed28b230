#include "dipl/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace dipl {

namespace {

// Column-encoded copy of a dataset. Value id 0 is always kMissing.
struct Encoded {
  std::vector<std::string> feature_names;                  // sorted
  std::vector<std::vector<std::string>> value_names;       // per feature
  std::vector<std::vector<std::uint32_t>> columns;         // [feature][example]
  std::vector<std::string> label_names;                    // sorted
  std::vector<std::uint32_t> labels;                       // [example]
};

Encoded encode(const Dataset& data) {
  Encoded enc;
  std::map<std::string, std::size_t> feature_index;
  for (const auto& ex : data)
    for (const auto& [name, _] : ex.features) feature_index.emplace(name, 0);
  for (auto& [name, idx] : feature_index) {
    idx = enc.feature_names.size();
    enc.feature_names.push_back(name);
  }

  std::map<std::string, std::uint32_t> label_index;
  for (const auto& ex : data) label_index.emplace(ex.label, 0);
  for (auto& [name, idx] : label_index) {
    idx = static_cast<std::uint32_t>(enc.label_names.size());
    enc.label_names.push_back(name);
  }

  const std::size_t nf = enc.feature_names.size();
  enc.columns.assign(nf, std::vector<std::uint32_t>(data.size(), 0));
  enc.value_names.assign(nf, {std::string(kMissing)});
  std::vector<std::unordered_map<std::string, std::uint32_t>> value_ids(nf);
  for (std::size_t f = 0; f < nf; ++f) value_ids[f].emplace(std::string(kMissing), 0);

  enc.labels.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    enc.labels.push_back(label_index.at(data[i].label));
    for (const auto& [name, value] : data[i].features) {
      const std::size_t f = feature_index.at(name);
      auto [it, inserted] = value_ids[f].emplace(value, static_cast<std::uint32_t>(enc.value_names[f].size()));
      if (inserted) enc.value_names[f].push_back(value);
      enc.columns[f][i] = it->second;
    }
  }
  return enc;
}

struct NodeSpec {
  std::string feature;
  std::map<std::string, int> children;
  std::map<std::string, int> counts;
};

class Builder {
 public:
  explicit Builder(const Encoded& enc) : enc_(enc), used_(enc.feature_names.size(), false) {}

  // Appends the subtree for `rows` to `out` and returns its root index.
  int build(const std::vector<std::uint32_t>& rows, std::vector<NodeSpec>& out) {
    const int self = static_cast<int>(out.size());
    out.emplace_back();
    {
      std::map<std::uint32_t, int> by_label;
      for (auto r : rows) ++by_label[enc_.labels[r]];
      for (auto [l, c] : by_label) out[self].counts[enc_.label_names[l]] = c;
    }
    if (out[self].counts.size() <= 1) return self;

    const int best = best_split(rows);
    if (best < 0) return self;

    std::map<std::uint32_t, std::vector<std::uint32_t>> parts;
    for (auto r : rows) parts[enc_.columns[best][r]].push_back(r);

    used_[best] = true;
    out[self].feature = enc_.feature_names[best];
    for (auto& [value, sub] : parts) {
      const int child = build(sub, out);
      out[self].children[enc_.value_names[best][value]] = child;
    }
    used_[best] = false;
    return self;
  }

 private:
  // Gini gain ratio: the impurity reduction divided by the split's own
  // entropy, so a split into many small value groups does not win just by
  // memorizing them. As in C4.5 only splits with at least average gain
  // compete. Ties go to fewer branches, then to the smaller feature name
  // (features are scanned in name order). Returns -1 when no unused feature
  // partitions the rows.
  int best_split(const std::vector<std::uint32_t>& rows) {
    std::unordered_map<std::uint32_t, std::uint32_t> local;
    for (auto r : rows) local.emplace(enc_.labels[r], static_cast<std::uint32_t>(local.size()));
    const std::size_t nl = local.size();
    std::vector<std::uint32_t> row_label(rows.size());
    std::vector<double> label_totals(nl, 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      row_label[i] = local[enc_.labels[rows[i]]];
      ++label_totals[row_label[i]];
    }
    const double n = static_cast<double>(rows.size());
    double parent_sq = 0.0;
    for (double c : label_totals) parent_sq += c * c;

    struct Split {
      int feature;
      double gain, ratio;
      std::size_t branches;
    };
    std::vector<Split> splits;
    for (std::size_t f = 0; f < enc_.feature_names.size(); ++f) {
      if (used_[f]) continue;
      const auto& col = enc_.columns[f];
      const std::size_t nv = enc_.value_names[f].size();
      const std::uint32_t first = col[rows.front()];
      bool partitions = false;
      for (auto r : rows)
        if (col[r] != first) { partitions = true; break; }
      if (!partitions) continue;

      table_.assign(nv * nl, 0);
      totals_.assign(nv, 0);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::uint32_t v = col[rows[i]];
        ++table_[v * nl + row_label[i]];
        ++totals_[v];
      }
      double child_sq = 0.0, split_info = 0.0;
      std::size_t branches = 0;
      for (std::size_t v = 0; v < nv; ++v) {
        if (totals_[v] == 0) continue;
        ++branches;
        double sq = 0.0;
        for (std::size_t c = 0; c < nl; ++c) {
          const double k = table_[v * nl + c];
          sq += k * k;
        }
        child_sq += sq / totals_[v];
        const double p = totals_[v] / n;
        split_info -= p * std::log2(p);
      }
      const double gain = std::max(0.0, (child_sq - parent_sq / n) / n);
      splits.push_back({static_cast<int>(f), gain, gain / split_info, branches});
    }
    if (splits.empty()) return -1;

    double mean_gain = 0.0;
    for (const auto& s : splits) mean_gain += s.gain;
    mean_gain /= static_cast<double>(splits.size());

    const Split* best = nullptr;
    for (const auto& s : splits) {
      if (s.gain + 1e-12 < mean_gain) continue;
      if (!best || s.ratio > best->ratio + 1e-12 ||
          (s.ratio > best->ratio - 1e-12 && s.branches < best->branches))
        best = &s;
    }
    return best->feature;
  }

  const Encoded& enc_;
  std::vector<bool> used_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> totals_;
};

}  // namespace

DecisionTree DecisionTree::fit(const Dataset& data) {
  if (data.empty()) throw std::invalid_argument("cannot fit a decision tree on an empty dataset");
  const Encoded enc = encode(data);
  std::vector<std::uint32_t> rows(data.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<std::uint32_t>(i);

  std::vector<NodeSpec> specs;
  Builder(enc).build(rows, specs);

  DecisionTree tree;
  tree.nodes_.reserve(specs.size());
  for (auto& s : specs) tree.nodes_.push_back({std::move(s.feature), std::move(s.children), std::move(s.counts)});
  return tree;
}

Prediction DecisionTree::majority(const Node& n) {
  Prediction p;
  int best = -1;
  int total = 0;
  for (const auto& [label, count] : n.counts) {
    total += count;
    if (count > best) {
      best = count;
      p.label = label;
    }
  }
  p.confidence = total > 0 ? static_cast<double>(best) / total : 0.0;
  return p;
}

Prediction DecisionTree::predict(const FeatureVector& fv) const {
  if (nodes_.empty()) throw std::logic_error("predict on an unfitted tree");
  int at = 0;
  while (!nodes_[at].feature.empty()) {
    const Node& n = nodes_[at];
    auto f = fv.find(n.feature);
    const std::string& value = f == fv.end() ? std::string(kMissing) : f->second;
    auto c = n.children.find(value);
    if (c == n.children.end()) break;
    at = c->second;
  }
  return majority(nodes_[at]);
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.feature.empty(); }));
}

int DecisionTree::depth_from(int node) const {
  int d = 0;
  for (const auto& [_, child] : nodes_[node].children) d = std::max(d, 1 + depth_from(child));
  return d;
}

int DecisionTree::depth() const { return nodes_.empty() ? 0 : depth_from(0); }

void DecisionTree::pretty_from(int node, int indent, std::string& out) const {
  const Node& n = nodes_[node];
  if (n.feature.empty()) {
    const Prediction p = majority(n);
    out += " -> " + p.label + " {";
    bool first = true;
    for (const auto& [label, count] : n.counts) {
      if (!first) out += ", ";
      out += label + ": " + std::to_string(count);
      first = false;
    }
    out += "}\n";
    return;
  }
  out += "\n";
  for (const auto& [value, child] : n.children) {
    out += std::string(indent * 2, ' ') + n.feature + " = " + value;
    pretty_from(child, indent + 1, out);
  }
}

std::string DecisionTree::pretty() const {
  if (nodes_.empty()) return "<empty>\n";
  std::string out;
  if (nodes_[0].feature.empty()) {
    out = "<root>";
    pretty_from(0, 0, out);
    return out;
  }
  pretty_from(0, 0, out);
  return out.substr(1);
}

}  // namespace dipl
