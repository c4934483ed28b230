#include "dipl/where_learning.hpp"

#include <algorithm>
#include <stdexcept>

namespace dipl {

std::string Binding::render() const {
  std::string out = "(" + selection + " |";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : " ") + args[i];
  return out + ")";
}

bool WherePart::contains(const Binding& b) const {
  return std::find(bindings_.begin(), bindings_.end(), b) != bindings_.end();
}

WherePart where_record(WherePart wp, const Binding& b) {
  if (b.args.size() != wp.arity_)
    throw std::invalid_argument("binding " + b.render() + " does not match where-part arity " +
                                std::to_string(wp.arity_));
  if (!wp.contains(b)) wp.bindings_.push_back(b);
  return wp;
}

std::vector<Binding> where_candidates(const WherePart& wp, const TutorState& state) {
  std::vector<Binding> out;
  for (const auto& b : wp.bindings()) {
    const auto* sel = state.find(b.selection);
    if (!sel) continue;
    if (sel->locked && sel->type != ElemType::Button) continue;
    const bool args_ok =
        std::all_of(b.args.begin(), b.args.end(), [&](const ElementId& id) { return state.find(id) != nullptr; });
    if (args_ok) out.push_back(b);
  }
  return out;
}

std::vector<std::tuple<int, int, int>> binding_pattern(const Binding& b, const TutorState& state, bool sorted) {
  std::vector<std::tuple<int, int, int>> out;
  const auto* sel = state.find(b.selection);
  if (!sel) return out;
  for (const auto& id : b.args) {
    const auto* e = state.find(id);
    if (!e) continue;
    out.emplace_back(static_cast<int>(e->type), e->row - sel->row, e->col - sel->col);
  }
  if (sorted) std::sort(out.begin(), out.end());
  return out;
}

int structure_score(const WherePart& wp, const Binding& b, const TutorState& state) {
  int score = wp.contains(b) ? 2 : 0;
  const auto pattern = binding_pattern(b, state);
  for (const auto& r : wp.bindings()) {
    if (binding_pattern(r, state) == pattern) {
      ++score;
      break;
    }
  }
  return score;
}

bool same_arrangement(const WherePart& wp, const Binding& b, const TutorState& state) {
  const auto pattern = binding_pattern(b, state, false);
  for (const auto& r : wp.bindings())
    if (binding_pattern(r, state, false) == pattern) return true;
  return false;
}

}  // namespace dipl
