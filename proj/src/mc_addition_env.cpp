#include "dipl/mc_addition_env.hpp"

#include <random>
#include <stdexcept>

namespace dipl {

namespace {

struct Slot {
  const char* id;
  ElemType type;
  int row;
  int col;
};

constexpr Slot kLayout[] = {
    {"a_hund", ElemType::TextField, 1, 1},      {"a_tens", ElemType::TextField, 1, 2},
    {"a_ones", ElemType::TextField, 1, 3},      {"b_hund", ElemType::TextField, 2, 1},
    {"b_tens", ElemType::TextField, 2, 2},      {"b_ones", ElemType::TextField, 2, 3},
    {"carry_tens", ElemType::TextField, 0, 2},  {"carry_hund", ElemType::TextField, 0, 1},
    {"carry_thou", ElemType::TextField, 0, 0},  {"answer_ones", ElemType::TextField, 3, 3},
    {"answer_tens", ElemType::TextField, 3, 2}, {"answer_hund", ElemType::TextField, 3, 1},
    {"answer_thou", ElemType::TextField, 3, 0}, {"done", ElemType::Button, 3, 4},
};

std::vector<AdjacencyRelation> layout_relations() {
  std::vector<AdjacencyRelation> rels;
  auto chain = [&](std::initializer_list<const char*> ids, Relation step) {
    const char* prev = nullptr;
    for (const char* id : ids) {
      if (prev) rels.push_back({prev, step, id});
      prev = id;
    }
  };
  chain({"carry_thou", "answer_thou"}, Relation::Below);
  chain({"carry_hund", "a_hund", "b_hund", "answer_hund"}, Relation::Below);
  chain({"carry_tens", "a_tens", "b_tens", "answer_tens"}, Relation::Below);
  chain({"a_ones", "b_ones", "answer_ones"}, Relation::Below);
  chain({"carry_thou", "carry_hund", "carry_tens"}, Relation::Right);
  chain({"a_hund", "a_tens", "a_ones"}, Relation::Right);
  chain({"b_hund", "b_tens", "b_ones"}, Relation::Right);
  chain({"answer_thou", "answer_hund", "answer_tens", "answer_ones", "done"}, Relation::Right);
  return symmetric_closure(std::move(rels));
}

int digit(int n, int place) {
  for (int i = 0; i < place; ++i) n /= 10;
  return n % 10;
}

}  // namespace

AdditionProblem generate_addition_problem(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> operand(100, 999);
  AdditionProblem p;
  p.a = operand(rng);
  p.b = operand(rng);
  return p;
}

McAdditionTutor::McAdditionTutor() { load({379, 447}); }

const std::vector<ElementId>& McAdditionTutor::editable_fields() {
  static const std::vector<ElementId> f = {"carry_tens",  "carry_hund",  "carry_thou", "answer_ones",
                                           "answer_tens", "answer_hund", "answer_thou"};
  return f;
}

void McAdditionTutor::new_problem(std::uint64_t seed) { load(generate_addition_problem(seed)); }

void McAdditionTutor::load(const AdditionProblem& p) {
  if (p.a < 100 || p.a > 999 || p.b < 100 || p.b > 999)
    throw std::invalid_argument("operands must have three digits");
  problem_ = p;
  state_ = {};
  for (const auto& s : kLayout) state_.elements.push_back({s.id, s.type, "", false, s.row, s.col});
  const char* names[] = {"ones", "tens", "hund"};
  for (int place = 0; place < 3; ++place) {
    for (auto [prefix, value] : {std::pair{"a_", p.a}, std::pair{"b_", p.b}}) {
      auto* e = state_.find(std::string(prefix) + names[place]);
      e->value = std::to_string(digit(value, place));
      e->locked = true;
    }
  }
  state_.relations = layout_relations();
}

std::vector<McAdditionTutor::Column> McAdditionTutor::columns() const {
  std::vector<Column> cols = {
      {"a_ones", "b_ones", "", "answer_ones", "carry_tens"},
      {"a_tens", "b_tens", "carry_tens", "answer_tens", "carry_hund"},
      {"a_hund", "b_hund", "carry_hund", "answer_hund", "carry_thou"},
  };
  int carry = 0;
  for (int place = 0; place < 3; ++place) {
    cols[place].sum = digit(problem_.a, place) + digit(problem_.b, place) + carry;
    if (carry == 0) cols[place].carry_in.clear();
    carry = cols[place].sum / 10;
  }
  if (carry > 0) cols.push_back({"", "", "carry_thou", "answer_thou", "", carry});
  return cols;
}

std::string McAdditionTutor::problem_log_line() const {
  return std::to_string(problem_.a) + " + " + std::to_string(problem_.b) + " = " +
         std::to_string(problem_.a + problem_.b);
}

std::vector<SAI> McAdditionTutor::compute_admissible() const {
  std::vector<SAI> out;
  for (const auto& c : columns()) {
    if (!state_.find(c.answer)->locked) out.push_back({c.answer, ActionType::UpdateField, std::to_string(c.sum % 10)});
    if (c.sum >= 10 && !c.carry_out.empty() && !state_.find(c.carry_out)->locked)
      out.push_back({c.carry_out, ActionType::UpdateField, std::to_string(c.sum / 10)});
    if (!out.empty()) return out;
  }
  if (!state_.done_pressed) out.push_back({"done", ActionType::PressButton, ""});
  return out;
}

std::optional<std::vector<ElementId>> McAdditionTutor::demo_arguments(const SAI& sai) const {
  if (sai.action == ActionType::PressButton) return std::vector<ElementId>{};
  for (const auto& c : columns()) {
    if (sai.selection != c.answer && sai.selection != c.carry_out) continue;
    std::vector<ElementId> args;
    for (const auto& id : {c.carry_in, c.a, c.b})
      if (!id.empty()) args.push_back(id);
    return args;
  }
  return std::vector<ElementId>{};
}

int McAdditionTutor::answer_value() const {
  int total = 0;
  int scale = 1;
  for (const auto& c : columns()) {
    const auto* e = state_.find(c.answer);
    if (e->value.empty()) return -1;
    total += std::stoi(e->value) * scale;
    scale *= 10;
  }
  return total;
}

std::vector<SAI> McAdditionTutor::action_space() const {
  std::vector<SAI> out;
  for (const auto& f : editable_fields())
    for (int v = 0; v <= 9; ++v) out.push_back({f, ActionType::UpdateField, std::to_string(v)});
  out.push_back({"done", ActionType::PressButton, ""});
  return out;
}

std::vector<std::pair<ElementId, std::vector<std::string>>> McAdditionTutor::value_inventory() const {
  std::vector<std::pair<ElementId, std::vector<std::string>>> out;
  for (const auto& s : kLayout) {
    std::vector<std::string> values;
    if (s.type != ElemType::Button)
      for (int v = 0; v <= 9; ++v) values.push_back(std::to_string(v));
    out.emplace_back(s.id, std::move(values));
  }
  return out;
}

}  // namespace dipl
