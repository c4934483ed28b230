#pragma once

// Domain-neutral tutor types and the environment contract shared by every
// tutor and every agent.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dipl {

using ElementId = std::string;

enum class ElemType { TextField, Button, Checkbox };
enum class Relation { Above, Below, Left, Right };
enum class ActionType { UpdateField, PressButton };

std::string_view to_string(ElemType t);
std::string_view to_string(Relation r);
std::string_view to_string(ActionType a);
Relation inverse(Relation r);

struct InterfaceElement {
  ElementId id;
  ElemType type = ElemType::TextField;
  std::string value;
  bool locked = false;
  int row = 0;
  int col = 0;

  bool operator==(const InterfaceElement&) const = default;
};

// (from, rel, to) reads "to is the `rel` neighbour of from", so
// (d1, Below, ...) is navigated as d1.below.
struct AdjacencyRelation {
  ElementId from_id;
  Relation relation = Relation::Above;
  ElementId to_id;

  bool operator==(const AdjacencyRelation&) const = default;
};

struct TutorState {
  std::vector<InterfaceElement> elements;
  std::vector<AdjacencyRelation> relations;
  bool done_pressed = false;

  const InterfaceElement* find(std::string_view id) const;
  InterfaceElement* find(std::string_view id);
  // Declaration index of an element, or npos-like -1 when absent.
  int index_of(std::string_view id) const;

  bool operator==(const TutorState&) const = default;
};

struct SAI {
  ElementId selection;
  ActionType action = ActionType::UpdateField;
  std::string input;

  bool operator==(const SAI&) const = default;
  auto operator<=>(const SAI&) const = default;
};

std::string to_string(const SAI& sai);

struct Demo {
  SAI sai;
  std::optional<std::vector<ElementId>> arg_annotations;
};

class Reward {
 public:
  static Reward correct() { return Reward(1); }
  static Reward incorrect() { return Reward(-1); }
  // Throws std::invalid_argument unless v is +1 or -1.
  explicit Reward(int v);

  int value() const { return value_; }
  bool is_correct() const { return value_ == 1; }
  bool operator==(const Reward&) const = default;

 private:
  int value_;
};

// Add the inverse of every declared relation, dropping duplicates.
std::vector<AdjacencyRelation> symmetric_closure(std::vector<AdjacencyRelation> rels);

// Empty iff every element/relation invariant holds. Violations are
// human-readable strings prefixed with their kind, e.g. "missing-inverse: ...".
std::vector<std::string> validate_state(const TutorState& state);

// One element per line (id type value locked row col), then one relation per
// line. Empty values are written as "-".
std::string serialize_state(const TutorState& state);

struct StepResult {
  Reward reward;
  const TutorState& next_state;
};

// A step-by-step tutor. Subclasses generate problems and compute the set of
// admissible actions; the base class owns reward, locking and demo logic.
class TutorEnvironment {
 public:
  virtual ~TutorEnvironment() = default;

  virtual void new_problem(std::uint64_t seed) = 0;
  virtual std::string problem_log_line() const = 0;
  // Every primitive action a fixed-action-space learner may pick from.
  virtual std::vector<SAI> action_space() const = 0;
  // Per element, every value it can hold in some reachable state.
  virtual std::vector<std::pair<ElementId, std::vector<std::string>>> value_inventory() const = 0;

  const TutorState& state() const { return state_; }
  bool complete() const { return state_.done_pressed; }

  // Admissible actions for the current state, in element-declaration order.
  std::vector<SAI> admissible() const;

  // +1 and lock the element when `sai` is admissible, -1 with the state left
  // untouched otherwise. Unknown selections and completed problems throw
  // std::logic_error (those are harness bugs, not learner mistakes).
  StepResult step(const SAI& sai);

  // First admissible action in canonical order. Throws std::logic_error on a
  // completed problem.
  Demo request_demo() const;

 protected:
  virtual std::vector<SAI> compute_admissible() const = 0;
  virtual std::optional<std::vector<ElementId>> demo_arguments(const SAI&) const {
    return std::nullopt;
  }

  TutorState state_;
};

}  // namespace dipl
