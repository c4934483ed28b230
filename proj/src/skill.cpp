#include "dipl/skill.hpp"

#include <algorithm>
#include <set>

namespace dipl {

std::string Skill::render() const {
  return "S" + std::to_string(id) + " " + std::string(to_string(action)) + " " + how.render();
}

std::optional<SAI> skill_action(const Skill& skill, const Binding& binding, const TutorState& state,
                                const std::vector<PrimitiveFunction>& funcs) {
  if (skill.action == ActionType::PressButton) return SAI{binding.selection, ActionType::PressButton, ""};
  auto v = evaluate(skill.how, binding.args, state, funcs);
  if (!v || v->empty()) return std::nullopt;
  return SAI{binding.selection, ActionType::UpdateField, std::move(*v)};
}

namespace {

// Ordered selections of n distinct ids from pool.
void permutations(const std::vector<ElementId>& pool, std::size_t n, std::vector<ElementId>& cur,
                  std::vector<bool>& taken, const std::function<void(const std::vector<ElementId>&)>& visit) {
  if (cur.size() == n) {
    visit(cur);
    return;
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (taken[i]) continue;
    taken[i] = true;
    cur.push_back(pool[i]);
    permutations(pool, n, cur, taken, visit);
    cur.pop_back();
    taken[i] = false;
  }
}

}  // namespace

SkillMatch match_or_create(const Demo& demo, const TutorState& state, std::vector<Skill>& skills,
                           const std::vector<PrimitiveFunction>& funcs, int max_depth) {
  const SAI& sai = demo.sai;

  if (sai.action == ActionType::PressButton) {
    const Binding b{sai.selection, {}};
    for (std::size_t i = 0; i < skills.size(); ++i)
      if (skills[i].action == ActionType::PressButton) return {i, b, false};
    Skill s;
    s.id = static_cast<int>(skills.size());
    s.action = ActionType::PressButton;
    s.how = constant_howpart("");
    s.where = WherePart(0);
    skills.push_back(std::move(s));
    return {skills.size() - 1, b, true};
  }

  std::vector<ElementId> pool;
  if (demo.arg_annotations) {
    pool = *demo.arg_annotations;
  } else {
    for (const auto& e : state.elements)
      if (!e.value.empty() && e.id != sai.selection) pool.push_back(e.id);
  }
  const std::set<ElementId> annotated =
      demo.arg_annotations ? std::set<ElementId>(pool.begin(), pool.end()) : std::set<ElementId>{};

  std::optional<SkillMatch> best;
  int best_score = -1;
  for (std::size_t i = 0; i < skills.size(); ++i) {
    const Skill& s = skills[i];
    if (s.action != ActionType::UpdateField) continue;
    const std::size_t n = static_cast<std::size_t>(s.how.variable_count());
    if (n > pool.size()) continue;
    std::vector<ElementId> cur;
    std::vector<bool> taken(pool.size(), false);
    permutations(pool, n, cur, taken, [&](const std::vector<ElementId>& args) {
      if (demo.arg_annotations && std::set<ElementId>(args.begin(), args.end()) != annotated) return;
      auto v = evaluate(s.how, args, state, funcs);
      if (!v || *v != sai.input) return;
      const Binding b{sai.selection, args};
      const int score = 2 * structure_score(s.where, b, state) + (same_arrangement(s.where, b, state) ? 1 : 0);
      if (score > best_score) {
        best_score = score;
        best = SkillMatch{i, b, false};
      }
    });
  }
  if (best) return *best;

  HowPart how{constant_howpart(sai.input), {}};
  if (!pool.empty()) {
    std::vector<Leaf> leaves;
    for (const auto& id : pool) {
      const auto* e = state.find(id);
      if (e && !e->value.empty()) leaves.push_back({id, e->value});
    }
    ExplanationFilter filter;
    if (demo.arg_annotations) {
      filter = [&annotated](const Term& t) {
        const auto used = t.element_leaves();
        return std::set<ElementId>(used.begin(), used.end()) == annotated;
      };
    }
    if (!leaves.empty()) {
      if (auto ex = set_chaining(sai.input, leaves, funcs, max_depth, filter))
        how = variablize(select_parsimonious(*ex), state);
    }
  }

  Skill s;
  s.id = static_cast<int>(skills.size());
  s.action = ActionType::UpdateField;
  s.how = std::move(how.term);
  s.where = WherePart(how.args.size());
  skills.push_back(std::move(s));
  return {skills.size() - 1, Binding{sai.selection, how.args}, true};
}

}  // namespace dipl
