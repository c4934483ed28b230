#include "dipl/fractions_env.hpp"

#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace dipl {

namespace {

struct Slot {
  const char* id;
  ElemType type;
  int row;
  int col;
};

// Declaration order fixes demo order: conversion check, conversions, answers.
constexpr Slot kLayout[] = {
    {"n1", ElemType::TextField, 0, 0},          {"d1", ElemType::TextField, 1, 0},
    {"op", ElemType::TextField, 1, 1},          {"n2", ElemType::TextField, 0, 2},
    {"d2", ElemType::TextField, 1, 2},          {"check_convert", ElemType::Checkbox, 1, 3},
    {"conv_num1", ElemType::TextField, 0, 4},   {"conv_den1", ElemType::TextField, 1, 4},
    {"conv_num2", ElemType::TextField, 0, 6},   {"conv_den2", ElemType::TextField, 1, 6},
    {"answer_num", ElemType::TextField, 0, 8},  {"answer_den", ElemType::TextField, 1, 8},
    {"done", ElemType::Button, 2, 8},
};

std::vector<AdjacencyRelation> layout_relations() {
  std::vector<AdjacencyRelation> rels;
  auto below = [&](const char* top, const char* bottom) { rels.push_back({top, Relation::Below, bottom}); };
  auto right = [&](const char* l, const char* r) { rels.push_back({l, Relation::Right, r}); };
  below("n1", "d1");
  below("n2", "d2");
  below("conv_num1", "conv_den1");
  below("conv_num2", "conv_den2");
  below("answer_num", "answer_den");
  below("answer_den", "done");
  right("n1", "n2");
  right("n2", "conv_num1");
  right("conv_num1", "conv_num2");
  right("conv_num2", "answer_num");
  right("d1", "op");
  right("op", "d2");
  right("d2", "check_convert");
  right("check_convert", "conv_den1");
  right("conv_den1", "conv_den2");
  right("conv_den2", "answer_den");
  return symmetric_closure(std::move(rels));
}

std::string op_symbol(FractionOp op) { return op == FractionOp::Add ? "+" : "*"; }

// Correct value of every field the problem requires, grouped into stages that
// must be completed in order; fields inside one stage are unordered.
std::vector<std::vector<std::pair<ElementId, std::string>>> stages(const FractionProblem& p) {
  auto s = [](int v) { return std::to_string(v); };
  switch (p.ptype) {
    case FractionType::Multiply:
      return {{{"answer_num", s(p.n1 * p.n2)}, {"answer_den", s(p.d1 * p.d2)}}};
    case FractionType::AddSame:
      return {{{"answer_num", s(p.n1 + p.n2)}, {"answer_den", s(p.d1)}}};
    case FractionType::AddDiff:
      return {{{"check_convert", "x"}},
              {{"conv_num1", s(p.n1 * p.d2)},
               {"conv_den1", s(p.d1 * p.d2)},
               {"conv_num2", s(p.n2 * p.d1)},
               {"conv_den2", s(p.d2 * p.d1)}},
              {{"answer_num", s(p.n1 * p.d2 + p.n2 * p.d1)}, {"answer_den", s(p.d1 * p.d2)}}};
  }
  return {};
}

}  // namespace

std::string_view to_string(FractionType t) {
  switch (t) {
    case FractionType::AddSame: return "AddSame";
    case FractionType::AddDiff: return "AddDiff";
    case FractionType::Multiply: return "Multiply";
  }
  return "?";
}

FractionProblem generate_fraction_problem(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> operand(kFractionOperandMin, kFractionOperandMax);
  FractionProblem p;
  p.ptype = static_cast<FractionType>(kind(rng));
  p.op = p.ptype == FractionType::Multiply ? FractionOp::Multiply : FractionOp::Add;
  p.n1 = operand(rng);
  p.d1 = operand(rng);
  p.n2 = operand(rng);
  p.d2 = operand(rng);
  if (p.ptype == FractionType::AddSame) p.d2 = p.d1;
  while (p.ptype == FractionType::AddDiff && p.d2 == p.d1) p.d2 = operand(rng);
  return p;
}

FractionsTutor::FractionsTutor() { load({3, 4, 1, 4, FractionOp::Add, FractionType::AddSame}); }

const std::vector<ElementId>& FractionsTutor::number_fields() {
  static const std::vector<ElementId> f = {"conv_num1", "conv_den1", "conv_num2",
                                           "conv_den2", "answer_num", "answer_den"};
  return f;
}

void FractionsTutor::new_problem(std::uint64_t seed) { load(generate_fraction_problem(seed)); }

void FractionsTutor::load(const FractionProblem& p) {
  const bool add = p.op == FractionOp::Add;
  if ((p.ptype == FractionType::Multiply) == add || (p.ptype == FractionType::AddSame && p.d1 != p.d2) ||
      (p.ptype == FractionType::AddDiff && p.d1 == p.d2))
    throw std::invalid_argument("inconsistent fraction problem");
  problem_ = p;
  state_ = {};
  for (const auto& s : kLayout) state_.elements.push_back({s.id, s.type, "", false, s.row, s.col});
  auto show = [&](const char* id, std::string v) {
    auto* e = state_.find(id);
    e->value = std::move(v);
    e->locked = true;
  };
  show("n1", std::to_string(p.n1));
  show("d1", std::to_string(p.d1));
  show("op", op_symbol(p.op));
  show("n2", std::to_string(p.n2));
  show("d2", std::to_string(p.d2));
  state_.relations = layout_relations();
}

std::string FractionsTutor::problem_log_line() const {
  const auto& p = problem_;
  return std::string(to_string(p.ptype)) + " " + std::to_string(p.n1) + "/" + std::to_string(p.d1) + " " +
         op_symbol(p.op) + " " + std::to_string(p.n2) + "/" + std::to_string(p.d2);
}

std::vector<SAI> FractionsTutor::compute_admissible() const {
  std::vector<SAI> out;
  for (const auto& stage : stages(problem_)) {
    for (const auto& [id, value] : stage)
      if (!state_.find(id)->locked) out.push_back({id, ActionType::UpdateField, value});
    if (!out.empty()) return out;
  }
  if (!state_.done_pressed) out.push_back({"done", ActionType::PressButton, ""});
  return out;
}

std::vector<SAI> FractionsTutor::action_space() const {
  std::vector<SAI> out;
  for (const auto& f : number_fields())
    for (int v = 1; v <= kFractionFieldValueMax; ++v) out.push_back({f, ActionType::UpdateField, std::to_string(v)});
  out.push_back({"check_convert", ActionType::UpdateField, "x"});
  out.push_back({"done", ActionType::PressButton, ""});
  return out;
}

std::vector<std::pair<ElementId, std::vector<std::string>>> FractionsTutor::value_inventory() const {
  std::map<ElementId, std::set<int>> numeric;
  for (int a = kFractionOperandMin; a <= kFractionOperandMax; ++a) {
    numeric["n1"].insert(a);
    numeric["d1"].insert(a);
    numeric["n2"].insert(a);
    numeric["d2"].insert(a);
  }
  for (int n1 = kFractionOperandMin; n1 <= kFractionOperandMax; ++n1)
    for (int d1 = kFractionOperandMin; d1 <= kFractionOperandMax; ++d1)
      for (int n2 = kFractionOperandMin; n2 <= kFractionOperandMax; ++n2)
        for (int d2 = kFractionOperandMin; d2 <= kFractionOperandMax; ++d2) {
          std::vector<FractionProblem> ps = {{n1, d1, n2, d2, FractionOp::Multiply, FractionType::Multiply}};
          ps.push_back({n1, d1, n2, d2, FractionOp::Add, d1 == d2 ? FractionType::AddSame : FractionType::AddDiff});
          for (const auto& p : ps)
            for (const auto& stage : stages(p))
              for (const auto& [id, value] : stage)
                if (id != "check_convert") numeric[id].insert(std::stoi(value));
        }

  std::vector<std::pair<ElementId, std::vector<std::string>>> out;
  for (const auto& s : kLayout) {
    std::vector<std::string> values;
    if (std::string_view(s.id) == "op") {
      values = {"+", "*"};
    } else if (std::string_view(s.id) == "check_convert") {
      values = {"x"};
    } else if (auto it = numeric.find(s.id); it != numeric.end()) {
      for (int v : it->second) values.push_back(std::to_string(v));
    }
    out.emplace_back(s.id, std::move(values));
  }
  return out;
}

}  // namespace dipl
