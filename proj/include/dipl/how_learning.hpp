#pragma once

// How-learning: explain a demonstrated value as a composition of primitive
// functions over interface values, then generalize the explanation.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dipl/core.hpp"

namespace dipl {

struct PrimitiveFunction {
  std::string name;
  int arity = 1;
  // nullopt when the function does not apply, e.g. a non-numeric argument.
  std::function<std::optional<std::string>(std::span<const std::string>)> apply;
};

namespace prim {
PrimitiveFunction add();
PrimitiveFunction multiply();
PrimitiveFunction add3();
PrimitiveFunction ones_digit();
// Tens digit of a value >= 10; a single-digit number has no tens digit.
PrimitiveFunction tens_digit();
}  // namespace prim

std::vector<PrimitiveFunction> fraction_functions();
std::vector<PrimitiveFunction> mc_addition_functions();

// A term tree. Grounded compositions have Element leaves; how-parts have
// Variable leaves (Arg0, Arg1, ... in first-occurrence order).
struct Term {
  enum class Kind { Element, Variable, Constant, Apply };

  Kind kind = Kind::Constant;
  std::string name;  // element id, constant value or function name
  int index = 0;     // variable number
  ElemType var_type = ElemType::TextField;
  std::vector<Term> children;

  static Term element(ElementId id);
  static Term variable(int index, ElemType type);
  static Term constant(std::string value);
  static Term apply(std::string function, std::vector<Term> children);

  // name(child,...) with leaves as element ids, ArgN, or "quoted" constants.
  std::string render() const;
  int height() const;
  int op_count() const;
  int variable_count() const;
  // Distinct element leaves in left-to-right first-occurrence order.
  std::vector<ElementId> element_leaves() const;

  bool operator==(const Term&) const = default;
};

using Composition = Term;

struct Leaf {
  ElementId id;
  std::string value;
};

// Per-value producer records of a Set Chaining run. Each unique value is
// keyed at the earliest wave that produces it; each (function, argument
// values) record is kept once, at the earliest wave its arguments allow.
class WaveTable {
 public:
  struct Record {
    std::size_t function;
    std::vector<std::size_t> args;  // value indices
    int wave;
  };

  WaveTable(std::span<const Leaf> leaves, std::vector<PrimitiveFunction> funcs);

  // Computes the next wave. Returns false when nothing new was recorded.
  bool advance();

  int waves() const { return static_cast<int>(wave_end_.size()) - 1; }
  std::size_t value_count() const { return values_.size(); }
  // Number of unique values present after wave k.
  std::size_t size_at(int k) const { return wave_end_.at(k); }
  const std::string& value(std::size_t i) const { return values_[i]; }
  int wave_of(std::size_t i) const { return value_wave_[i]; }
  std::optional<std::size_t> find(const std::string& value) const;
  const std::vector<ElementId>& sources(std::size_t i) const { return sources_[i]; }
  const std::vector<Record>& records(std::size_t i) const { return records_[i]; }
  const std::vector<PrimitiveFunction>& functions() const { return funcs_; }

 private:
  std::size_t intern(const std::string& value, int wave);

  std::vector<PrimitiveFunction> funcs_;
  std::vector<std::string> values_;
  std::vector<int> value_wave_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<ElementId>> sources_;
  std::vector<std::vector<Record>> records_;
  std::vector<std::size_t> wave_end_;
};

using ExplanationFilter = std::function<bool(const Term&)>;

// Grounded compositions of height <= wave() that evaluate to the goal,
// produced lazily by tracing records back from the goal value.
class Explanations {
 public:
  Explanations(std::shared_ptr<const WaveTable> table, std::size_t goal, int wave, ExplanationFilter filter);

  int wave() const { return wave_; }
  const WaveTable& table() const { return *table_; }

  // Visits each composition once; the visitor returns false to stop early.
  void for_each(const std::function<bool(const Term&)>& visit) const;
  std::vector<Term> to_vector() const;
  std::size_t count() const;

 private:
  std::shared_ptr<const WaveTable> table_;
  std::size_t goal_;
  int wave_;
  ExplanationFilter filter_;
};

// Runs waves 1..max_depth until the goal value appears (and, when a filter
// is given, until at least one explanation passes it). nullopt when the goal
// is not produced within max_depth. Throws std::invalid_argument when
// max_depth < 1 or leaves is empty.
std::optional<Explanations> set_chaining(const std::string& goal, std::span<const Leaf> leaves,
                                         const std::vector<PrimitiveFunction>& funcs, int max_depth,
                                         ExplanationFilter filter = {});

// Ordering used for parsimony: fewer function applications, then fewer
// distinct leaf elements, then the smaller rendering.
bool more_parsimonious(const Term& a, const Term& b);

// Throws std::invalid_argument on an empty candidate list.
Composition select_parsimonious(std::span<const Composition> candidates);
// Streams the explanations without materializing them.
Composition select_parsimonious(const Explanations& explanations);

struct HowPart {
  Composition term;
  std::vector<ElementId> args;  // binding order: Arg0, Arg1, ...
};

// Replaces each distinct element leaf with ArgN typed by the element's type.
HowPart variablize(const Composition& grounded, const TutorState& state);

Composition constant_howpart(std::string value);

// Substitutes the bound elements' current values and evaluates bottom-up.
// nullopt when a bound value is empty or a function does not apply. Throws
// std::invalid_argument when binding size differs from the variable count
// and std::out_of_range for unknown functions or elements.
std::optional<std::string> evaluate(const Composition& how, std::span<const ElementId> binding,
                                    const TutorState& state, const std::vector<PrimitiveFunction>& funcs);

}  // namespace dipl
