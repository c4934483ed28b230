#include "dipl/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace dipl {

std::string_view to_string(ElemType t) {
  switch (t) {
    case ElemType::TextField: return "TextField";
    case ElemType::Button: return "Button";
    case ElemType::Checkbox: return "Checkbox";
  }
  return "?";
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Above: return "above";
    case Relation::Below: return "below";
    case Relation::Left: return "left";
    case Relation::Right: return "right";
  }
  return "?";
}

std::string_view to_string(ActionType a) {
  switch (a) {
    case ActionType::UpdateField: return "UpdateField";
    case ActionType::PressButton: return "PressButton";
  }
  return "?";
}

Relation inverse(Relation r) {
  switch (r) {
    case Relation::Above: return Relation::Below;
    case Relation::Below: return Relation::Above;
    case Relation::Left: return Relation::Right;
    case Relation::Right: return Relation::Left;
  }
  return r;
}

std::string to_string(const SAI& sai) {
  std::string out = "(" + sai.selection + ", ";
  out += to_string(sai.action);
  out += ", \"" + sai.input + "\")";
  return out;
}

Reward::Reward(int v) : value_(v) {
  if (v != 1 && v != -1) throw std::invalid_argument("reward must be +1 or -1");
}

const InterfaceElement* TutorState::find(std::string_view id) const {
  for (const auto& e : elements)
    if (e.id == id) return &e;
  return nullptr;
}

InterfaceElement* TutorState::find(std::string_view id) {
  for (auto& e : elements)
    if (e.id == id) return &e;
  return nullptr;
}

int TutorState::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].id == id) return static_cast<int>(i);
  return -1;
}

std::vector<AdjacencyRelation> symmetric_closure(std::vector<AdjacencyRelation> rels) {
  std::set<std::tuple<std::string, int, std::string>> seen;
  std::vector<AdjacencyRelation> out;
  auto push = [&](AdjacencyRelation r) {
    if (seen.emplace(r.from_id, static_cast<int>(r.relation), r.to_id).second) out.push_back(std::move(r));
  };
  for (const auto& r : rels) {
    push(r);
    push({r.to_id, inverse(r.relation), r.from_id});
  }
  return out;
}

std::vector<std::string> validate_state(const TutorState& state) {
  std::vector<std::string> v;
  std::unordered_set<std::string> ids;
  for (const auto& e : state.elements) {
    if (!ids.insert(e.id).second) v.push_back("duplicate-id: " + e.id);
    if (e.locked && e.value.empty()) v.push_back("locked-empty: " + e.id);
    if (e.type == ElemType::Button && (e.locked || !e.value.empty()))
      v.push_back("button-state: " + e.id);
  }
  std::set<std::tuple<std::string, int, std::string>> rels;
  for (const auto& r : state.relations) rels.emplace(r.from_id, static_cast<int>(r.relation), r.to_id);
  for (const auto& r : state.relations) {
    if (!ids.count(r.from_id)) v.push_back("dangling-id: " + r.from_id);
    if (!ids.count(r.to_id)) v.push_back("dangling-id: " + r.to_id);
    if (!rels.count({r.to_id, static_cast<int>(inverse(r.relation)), r.from_id}))
      v.push_back("missing-inverse: " + r.from_id + " " + std::string(to_string(r.relation)) + " " +
                  r.to_id);
  }
  return v;
}

std::string serialize_state(const TutorState& state) {
  std::ostringstream os;
  for (const auto& e : state.elements) {
    os << e.id << ' ' << to_string(e.type) << ' ' << (e.value.empty() ? "-" : e.value) << ' '
       << (e.locked ? 1 : 0) << ' ' << e.row << ' ' << e.col << '\n';
  }
  for (const auto& r : state.relations) os << r.from_id << ' ' << to_string(r.relation) << ' ' << r.to_id << '\n';
  os << "done " << (state.done_pressed ? 1 : 0) << '\n';
  return os.str();
}

std::vector<SAI> TutorEnvironment::admissible() const {
  auto out = compute_admissible();
  std::stable_sort(out.begin(), out.end(), [&](const SAI& a, const SAI& b) {
    return state_.index_of(a.selection) < state_.index_of(b.selection);
  });
  return out;
}

StepResult TutorEnvironment::step(const SAI& sai) {
  if (complete()) throw std::logic_error("step on a completed problem");
  InterfaceElement* el = state_.find(sai.selection);
  if (!el) throw std::logic_error("unknown selection: " + sai.selection);

  const auto ok = admissible();
  if (el->locked || std::find(ok.begin(), ok.end(), sai) == ok.end())
    return {Reward::incorrect(), state_};

  if (sai.action == ActionType::PressButton) {
    state_.done_pressed = true;
  } else {
    el->value = sai.input;
    el->locked = true;
  }
  return {Reward::correct(), state_};
}

Demo TutorEnvironment::request_demo() const {
  if (complete()) throw std::logic_error("demo requested on a completed problem");
  const auto ok = admissible();
  if (ok.empty()) throw std::logic_error("tutor has no admissible action");
  return {ok.front(), demo_arguments(ok.front())};
}

}  // namespace dipl
