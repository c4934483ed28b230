#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dipl/core.hpp"
#include "dipl/how_learning.hpp"
#include "dipl/when_learning.hpp"
#include "dipl/where_learning.hpp"

namespace dipl {

// An induced production rule: when(state, binding) -> how(binding) = input.
struct Skill {
  int id = 0;  // creation index, strictly increasing
  ActionType action = ActionType::UpdateField;
  Composition how;
  WherePart where;
  WhenPart when;

  std::string render() const;
};

// What the skill would do for `binding` in `state`, or nullopt when its
// how-part does not evaluate (or evaluates to an empty input).
std::optional<SAI> skill_action(const Skill& skill, const Binding& binding, const TutorState& state,
                                const std::vector<PrimitiveFunction>& funcs);

struct SkillMatch {
  std::size_t skill;  // index into the skill list
  Binding binding;
  bool created = false;
};

// Explain a demo with an existing skill if any of its how-parts reproduces
// the demonstrated input; otherwise induce a new skill (Set Chaining, then
// parsimony, then variablization; a constant how-part when nothing explains
// the value) and append it to `skills`. Annotated demos only accept bindings
// and explanations whose arguments are exactly the annotated elements.
// Among explaining (skill, binding) pairs the highest structure_score wins,
// then the earliest skill, then the first binding found.
SkillMatch match_or_create(const Demo& demo, const TutorState& state, std::vector<Skill>& skills,
                           const std::vector<PrimitiveFunction>& funcs, int max_depth);

}  // namespace dipl
