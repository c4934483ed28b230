#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dipl/core.hpp"

namespace dipl {

enum class FractionOp { Add, Multiply };
enum class FractionType { AddSame, AddDiff, Multiply };

std::string_view to_string(FractionType t);

struct FractionProblem {
  int n1 = 0, d1 = 0, n2 = 0, d2 = 0;
  FractionOp op = FractionOp::Add;
  FractionType ptype = FractionType::AddSame;

  bool operator==(const FractionProblem&) const = default;
};

inline constexpr int kFractionOperandMin = 2;
inline constexpr int kFractionOperandMax = 10;
// Upper bound of the number-field action space.
inline constexpr int kFractionFieldValueMax = 450;

// Uniform over the three problem types, operands uniform in [2, 10].
FractionProblem generate_fraction_problem(std::uint64_t seed);

// Adding, converting then adding, or multiplying two fractions, one locked
// field at a time. Element ids: n1 d1 op n2 d2 (display), check_convert,
// conv_num1 conv_den1 conv_num2 conv_den2 answer_num answer_den, done.
class FractionsTutor : public TutorEnvironment {
 public:
  FractionsTutor();

  void new_problem(std::uint64_t seed) override;
  void load(const FractionProblem& p);
  const FractionProblem& problem() const { return problem_; }

  std::string problem_log_line() const override;
  std::vector<SAI> action_space() const override;
  std::vector<std::pair<ElementId, std::vector<std::string>>> value_inventory() const override;

  static const std::vector<ElementId>& number_fields();

 protected:
  std::vector<SAI> compute_admissible() const override;

 private:
  FractionProblem problem_;
};

}  // namespace dipl
