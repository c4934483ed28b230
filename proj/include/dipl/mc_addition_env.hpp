#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dipl/core.hpp"

namespace dipl {

struct AdditionProblem {
  int a = 100;
  int b = 100;

  bool operator==(const AdditionProblem&) const = default;
};

// Both operands uniform in [100, 999].
AdditionProblem generate_addition_problem(std::uint64_t seed);

// Three-digit plus three-digit addition with explicit carry fields.
//
// Grid columns: 0 thousands, 1 hundreds, 2 tens, 3 ones.
//   row 0: carry_thou carry_hund carry_tens
//   row 1:            a_hund     a_tens     a_ones
//   row 2:            b_hund     b_tens     b_ones
//   row 3: answer_thou answer_hund answer_tens answer_ones done
// Columns are solved right to left; a column opens once the previous one has
// its answer digit and (when needed) its outgoing carry.
class McAdditionTutor : public TutorEnvironment {
 public:
  McAdditionTutor();

  void new_problem(std::uint64_t seed) override;
  void load(const AdditionProblem& p);
  const AdditionProblem& problem() const { return problem_; }

  std::string problem_log_line() const override;
  std::vector<SAI> action_space() const override;
  std::vector<std::pair<ElementId, std::vector<std::string>>> value_inventory() const override;

  static const std::vector<ElementId>& editable_fields();

  // Concatenated answer digits, or -1 while any required digit is missing.
  int answer_value() const;

 protected:
  std::vector<SAI> compute_admissible() const override;
  std::optional<std::vector<ElementId>> demo_arguments(const SAI& sai) const override;

 private:
  struct Column {
    ElementId a, b, carry_in, answer, carry_out;
    int sum = 0;  // digit_a + digit_b + incoming carry
  };
  std::vector<Column> columns() const;

  AdditionProblem problem_;
};

}  // namespace dipl
