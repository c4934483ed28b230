#include "dipl/when_learning.hpp"

#include <algorithm>
#include <optional>

namespace dipl {

std::string RelPath::render() const {
  std::string out = root;
  for (auto r : steps) {
    out += '.';
    out += to_string(r);
  }
  return out;
}

std::vector<PathSource> binding_sources(const Binding& b) {
  std::vector<PathSource> out = {{"Sel", b.selection}};
  for (std::size_t i = 0; i < b.args.size(); ++i) out.push_back({"Arg" + std::to_string(i), b.args[i]});
  return out;
}

namespace {

struct Label {
  std::size_t source;
  std::vector<Relation> steps;
};

// (length, source priority, relation sequence); Relation's enum order is the
// alphabetical order of the relation names.
bool shorter(const Label& a, const Label& b) {
  if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
  if (a.source != b.source) return a.source < b.source;
  return a.steps < b.steps;
}

}  // namespace

std::map<ElementId, RelPath> shortest_paths(const TutorState& state, std::span<const PathSource> sources) {
  const std::size_t n = state.elements.size();
  std::vector<std::optional<Label>> best(n);
  for (std::size_t s = 0; s < sources.size(); ++s) {
    const int i = state.index_of(sources[s].element);
    if (i < 0) continue;
    Label l{s, {}};
    if (!best[i] || shorter(l, *best[i])) best[i] = l;
  }

  struct Edge {
    int from;
    Relation rel;
    int to;
  };
  std::vector<Edge> edges;
  for (const auto& r : state.relations) {
    const int u = state.index_of(r.from_id), v = state.index_of(r.to_id);
    if (u >= 0 && v >= 0) edges.push_back({u, r.relation, v});
  }

  for (std::size_t round = 0; round + 1 < std::max<std::size_t>(n, 2); ++round) {
    bool changed = false;
    for (const auto& e : edges) {
      if (!best[e.from]) continue;
      Label cand = *best[e.from];
      cand.steps.push_back(e.rel);
      if (!best[e.to] || shorter(cand, *best[e.to])) {
        best[e.to] = std::move(cand);
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::map<ElementId, RelPath> out;
  for (std::size_t i = 0; i < n; ++i)
    if (best[i]) out[state.elements[i].id] = {sources[best[i]->source].root, best[i]->steps};
  return out;
}

FeatureFunction equals_feature() {
  return {"Equals", [](const std::string& a, const std::string& b) { return a == b; }};
}

namespace {

// (name, element) pairs become "<name>.value" / "<name>.filled" features.
FeatureVector features_for(const std::vector<std::pair<std::string, const InterfaceElement*>>& named,
                           const WhenConfig& cfg) {
  FeatureVector fv;
  std::vector<std::pair<std::string, const std::string*>> filled;
  for (const auto& [name, e] : named) {
    fv[name + ".value"] = e->value;
    fv[name + ".filled"] = e->value.empty() ? "no" : "yes";
    if (!e->value.empty()) filled.emplace_back(name, &e->value);
  }
  std::sort(filled.begin(), filled.end());
  for (const auto& f : cfg.feature_functions)
    for (std::size_t i = 0; i < filled.size(); ++i)
      for (std::size_t j = i + 1; j < filled.size(); ++j)
        fv[f.name + "(" + filled[i].first + ".value, " + filled[j].first + ".value)"] =
            f.test(*filled[i].second, *filled[j].second) ? "true" : "false";
  return fv;
}

}  // namespace

FeatureVector relative_featurize(const TutorState& state, const Binding& binding, const WhenConfig& cfg) {
  const auto sources = binding_sources(binding);
  const auto paths = shortest_paths(state, sources);
  std::vector<std::pair<std::string, const InterfaceElement*>> named;
  for (const auto& e : state.elements) {
    auto it = paths.find(e.id);
    if (it == paths.end() || static_cast<int>(it->second.steps.size()) > cfg.max_path_length) continue;
    named.emplace_back(it->second.render(), &e);
  }
  return features_for(named, cfg);
}

FeatureVector absolute_featurize(const TutorState& state, const WhenConfig& cfg) {
  std::vector<std::pair<std::string, const InterfaceElement*>> named;
  for (const auto& e : state.elements) named.emplace_back(e.id, &e);
  return features_for(named, cfg);
}

FeatureVector featurize(const TutorState& state, const Binding& binding, const WhenConfig& cfg) {
  if (cfg.mode == FeatureMode::Relative) return relative_featurize(state, binding, cfg);
  FeatureVector fv = absolute_featurize(state, cfg);
  for (const auto& src : binding_sources(binding)) fv[src.root + ".id"] = src.element;
  return fv;
}

std::string serialize_features(const FeatureVector& fv) {
  std::string out;
  for (const auto& [name, value] : fv) out += name + "=" + value + "\n";
  return out;
}

void when_update(WhenPart& part, WhenExample example, int retrain_every) {
  part.examples_.push_back({std::move(example.fv), std::string(example.positive ? kPositive : kNegative)});
  if (part.tree_.empty() || ++part.since_fit_ >= std::max(retrain_every, 1)) {
    part.tree_ = DecisionTree::fit(part.examples_);
    part.since_fit_ = 0;
  }
}

FireDecision when_predict(const WhenPart& part, const FeatureVector& fv) {
  if (!part.trained()) return {true, 0.5};
  const Prediction p = part.tree().predict(fv);
  return {p.label == kPositive, p.confidence};
}

FireDecision when_predict(const WhenPart& part, const TutorState& state, const Binding& binding,
                          const WhenConfig& cfg) {
  if (!part.trained()) return {true, 0.5};
  return when_predict(part, featurize(state, binding, cfg));
}

}  // namespace dipl
