#pragma once

// Where-learning: per-skill memory of the selections and arguments a skill
// has been applied to.

#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "dipl/core.hpp"

namespace dipl {

struct Binding {
  ElementId selection;
  std::vector<ElementId> args;

  // "(sel | arg0, arg1)"
  std::string render() const;

  bool operator==(const Binding&) const = default;
  auto operator<=>(const Binding&) const = default;
};

class WherePart {
 public:
  explicit WherePart(std::size_t arity = 0) : arity_(arity) {}

  std::size_t arity() const { return arity_; }
  const std::vector<Binding>& bindings() const { return bindings_; }
  bool contains(const Binding& b) const;

  friend WherePart where_record(WherePart wp, const Binding& b);

 private:
  std::size_t arity_;
  std::vector<Binding> bindings_;  // insertion order, no duplicates
};

// Appends b unless already recorded. Throws std::invalid_argument when the
// argument count differs from the where-part's arity.
WherePart where_record(WherePart wp, const Binding& b);

// Recorded bindings whose elements all exist and whose selection is still
// editable (unlocked, or a button), in insertion order.
std::vector<Binding> where_candidates(const WherePart& wp, const TutorState& state);

// Element types and grid offsets of the arguments relative to the selection,
// sorted unless `sorted` is false; two bindings with the same sorted pattern
// sit in the same spatial shape.
std::vector<std::tuple<int, int, int>> binding_pattern(const Binding& b, const TutorState& state,
                                                       bool sorted = true);

// 2 when b is already recorded, plus 1 when its pattern matches a recorded
// binding's pattern. Recorded patterns are taken from `state`, since ids are
// stable across problems.
int structure_score(const WherePart& wp, const Binding& b, const TutorState& state);

// True when some recorded binding has the same argument shape in the same
// argument order. Used to break structure_score ties so that a skill keeps
// its variables' roles when it moves to a new column.
bool same_arrangement(const WherePart& wp, const Binding& b, const TutorState& state);

}  // namespace dipl
