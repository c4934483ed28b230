#include "dipl/how_learning.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace dipl {

namespace {

std::optional<long long> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

template <typename F>
PrimitiveFunction numeric(std::string name, int arity, F f) {
  return {std::move(name), arity, [f, arity](std::span<const std::string> args) -> std::optional<std::string> {
            long long xs[3] = {0, 0, 0};
            for (int i = 0; i < arity; ++i) {
              auto v = parse_int(args[i]);
              if (!v) return std::nullopt;
              xs[i] = *v;
            }
            auto r = f(xs);
            if (!r) return std::nullopt;
            return std::to_string(*r);
          }};
}

}  // namespace

namespace prim {

PrimitiveFunction add() {
  return numeric("Add", 2, [](const long long* x) -> std::optional<long long> { return x[0] + x[1]; });
}

PrimitiveFunction multiply() {
  return numeric("Multiply", 2, [](const long long* x) -> std::optional<long long> { return x[0] * x[1]; });
}

PrimitiveFunction add3() {
  return numeric("Add3", 3, [](const long long* x) -> std::optional<long long> { return x[0] + x[1] + x[2]; });
}

PrimitiveFunction ones_digit() {
  return numeric("OnesDigit", 1, [](const long long* x) -> std::optional<long long> {
    if (x[0] < 0) return std::nullopt;
    return x[0] % 10;
  });
}

PrimitiveFunction tens_digit() {
  return numeric("TensDigit", 1, [](const long long* x) -> std::optional<long long> {
    if (x[0] < 10) return std::nullopt;
    return (x[0] / 10) % 10;
  });
}

}  // namespace prim

std::vector<PrimitiveFunction> fraction_functions() { return {prim::add(), prim::multiply()}; }

std::vector<PrimitiveFunction> mc_addition_functions() {
  return {prim::ones_digit(), prim::tens_digit(), prim::add3(), prim::add()};
}

// ---------------------------------------------------------------------------
// Term

Term Term::element(ElementId id) {
  Term t;
  t.kind = Kind::Element;
  t.name = std::move(id);
  return t;
}

Term Term::variable(int index, ElemType type) {
  Term t;
  t.kind = Kind::Variable;
  t.index = index;
  t.var_type = type;
  return t;
}

Term Term::constant(std::string value) {
  Term t;
  t.kind = Kind::Constant;
  t.name = std::move(value);
  return t;
}

Term Term::apply(std::string function, std::vector<Term> children) {
  Term t;
  t.kind = Kind::Apply;
  t.name = std::move(function);
  t.children = std::move(children);
  return t;
}

std::string Term::render() const {
  switch (kind) {
    case Kind::Element: return name;
    case Kind::Variable: return "Arg" + std::to_string(index);
    case Kind::Constant: return "\"" + name + "\"";
    case Kind::Apply: {
      std::string out = name + "(";
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += ",";
        out += children[i].render();
      }
      return out + ")";
    }
  }
  return {};
}

int Term::height() const {
  int h = 0;
  for (const auto& c : children) h = std::max(h, c.height() + 1);
  return h;
}

int Term::op_count() const {
  int n = kind == Kind::Apply ? 1 : 0;
  for (const auto& c : children) n += c.op_count();
  return n;
}

int Term::variable_count() const {
  if (kind == Kind::Variable) return index + 1;
  int n = 0;
  for (const auto& c : children) n = std::max(n, c.variable_count());
  return n;
}

std::vector<ElementId> Term::element_leaves() const {
  std::vector<ElementId> out;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.kind == Kind::Element && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    for (const auto& c : t.children) walk(c);
  };
  walk(*this);
  return out;
}

// ---------------------------------------------------------------------------
// WaveTable

WaveTable::WaveTable(std::span<const Leaf> leaves, std::vector<PrimitiveFunction> funcs) : funcs_(std::move(funcs)) {
  for (const auto& leaf : leaves) {
    const std::size_t i = intern(leaf.value, 0);
    sources_[i].push_back(leaf.id);
  }
  wave_end_.push_back(values_.size());
}

std::size_t WaveTable::intern(const std::string& value, int wave) {
  auto [it, inserted] = index_.emplace(value, values_.size());
  if (inserted) {
    values_.push_back(value);
    value_wave_.push_back(wave);
    sources_.emplace_back();
    records_.emplace_back();
  }
  return it->second;
}

std::optional<std::size_t> WaveTable::find(const std::string& value) const {
  auto it = index_.find(value);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool WaveTable::advance() {
  const int k = waves() + 1;
  const std::size_t prev_end = wave_end_[k - 1];
  // Tuples drawn only from values older than wave k-1 were recorded earlier.
  const std::size_t fresh_begin = k >= 2 ? wave_end_[k - 2] : 0;
  bool recorded = false;

  std::vector<std::size_t> idx;
  std::vector<std::string> args;
  for (std::size_t f = 0; f < funcs_.size(); ++f) {
    const int n = funcs_[f].arity;
    if (prev_end == 0) break;
    idx.assign(n, 0);
    args.resize(n);
    while (true) {
      bool fresh = false;
      for (int i = 0; i < n; ++i) fresh = fresh || idx[i] >= fresh_begin;
      if (fresh) {
        for (int i = 0; i < n; ++i) args[i] = values_[idx[i]];
        if (auto v = funcs_[f].apply(args)) {
          const std::size_t target = intern(*v, k);
          records_[target].push_back({f, idx, k});
          recorded = true;
        }
      }
      int pos = n - 1;
      while (pos >= 0 && ++idx[pos] == prev_end) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  wave_end_.push_back(values_.size());
  return recorded;
}

// ---------------------------------------------------------------------------
// Explanations

namespace {

class Expander {
 public:
  explicit Expander(const WaveTable& t) : t_(t) {}

  // Every term of height <= h whose value is v, in record order.
  bool each(std::size_t v, int h, const std::function<bool(const Term&)>& visit) {
    for (const auto& id : t_.sources(v))
      if (!visit(Term::element(id))) return false;
    if (h == 0) return true;
    for (const auto& r : t_.records(v)) {
      if (r.wave > h) continue;
      std::vector<const std::vector<Term>*> options;
      for (auto a : r.args) options.push_back(&all(a, h - 1));
      std::vector<Term> children(r.args.size());
      if (!product(r, options, 0, children, visit)) return false;
    }
    return true;
  }

 private:
  const std::vector<Term>& all(std::size_t v, int h) {
    auto key = std::make_pair(v, h);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<Term> out;
    each(v, h, [&](const Term& t) {
      out.push_back(t);
      return true;
    });
    return memo_.emplace(key, std::move(out)).first->second;
  }

  bool product(const WaveTable::Record& r, const std::vector<const std::vector<Term>*>& options, std::size_t pos,
               std::vector<Term>& children, const std::function<bool(const Term&)>& visit) {
    if (pos == options.size()) return visit(Term::apply(t_.functions()[r.function].name, children));
    for (const auto& c : *options[pos]) {
      children[pos] = c;
      if (!product(r, options, pos + 1, children, visit)) return false;
    }
    return true;
  }

  const WaveTable& t_;
  std::map<std::pair<std::size_t, int>, std::vector<Term>> memo_;
};

}  // namespace

Explanations::Explanations(std::shared_ptr<const WaveTable> table, std::size_t goal, int wave,
                           ExplanationFilter filter)
    : table_(std::move(table)), goal_(goal), wave_(wave), filter_(std::move(filter)) {}

void Explanations::for_each(const std::function<bool(const Term&)>& visit) const {
  Expander ex(*table_);
  ex.each(goal_, wave_, [&](const Term& t) {
    if (filter_ && !filter_(t)) return true;
    return visit(t);
  });
}

std::vector<Term> Explanations::to_vector() const {
  std::vector<Term> out;
  for_each([&](const Term& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::size_t Explanations::count() const {
  std::size_t n = 0;
  for_each([&](const Term&) {
    ++n;
    return true;
  });
  return n;
}

std::optional<Explanations> set_chaining(const std::string& goal, std::span<const Leaf> leaves,
                                         const std::vector<PrimitiveFunction>& funcs, int max_depth,
                                         ExplanationFilter filter) {
  if (max_depth < 1) throw std::invalid_argument("set_chaining needs max_depth >= 1");
  if (leaves.empty()) throw std::invalid_argument("set_chaining needs at least one leaf");

  auto table = std::make_shared<WaveTable>(leaves, funcs);
  auto found = [&](int wave) -> std::optional<Explanations> {
    auto g = table->find(goal);
    if (!g) return std::nullopt;
    Explanations ex(table, *g, wave, filter);
    if (filter) {
      bool any = false;
      ex.for_each([&](const Term&) {
        any = true;
        return false;
      });
      if (!any) return std::nullopt;
    }
    return ex;
  };

  if (auto ex = found(0)) return ex;
  for (int k = 1; k <= max_depth; ++k) {
    if (!table->advance()) break;
    if (auto ex = found(k)) return ex;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parsimony and generalization

bool more_parsimonious(const Term& a, const Term& b) {
  const int ops_a = a.op_count(), ops_b = b.op_count();
  if (ops_a != ops_b) return ops_a < ops_b;
  const auto leaves_a = a.element_leaves().size(), leaves_b = b.element_leaves().size();
  if (leaves_a != leaves_b) return leaves_a < leaves_b;
  return a.render() < b.render();
}

Composition select_parsimonious(std::span<const Composition> candidates) {
  if (candidates.empty()) throw std::invalid_argument("select_parsimonious needs candidates");
  const Composition* best = &candidates.front();
  for (const auto& c : candidates)
    if (more_parsimonious(c, *best)) best = &c;
  return *best;
}

Composition select_parsimonious(const Explanations& explanations) {
  std::optional<Composition> best;
  explanations.for_each([&](const Term& t) {
    if (!best || more_parsimonious(t, *best)) best = t;
    return true;
  });
  if (!best) throw std::invalid_argument("select_parsimonious needs candidates");
  return *best;
}

HowPart variablize(const Composition& grounded, const TutorState& state) {
  HowPart out;
  std::function<Term(const Term&)> walk = [&](const Term& t) -> Term {
    switch (t.kind) {
      case Term::Kind::Element: {
        auto it = std::find(out.args.begin(), out.args.end(), t.name);
        const int i = static_cast<int>(it - out.args.begin());
        if (it == out.args.end()) out.args.push_back(t.name);
        const auto* e = state.find(t.name);
        if (!e) throw std::out_of_range("variablize: unknown element " + t.name);
        return Term::variable(i, e->type);
      }
      case Term::Kind::Apply: {
        std::vector<Term> kids;
        for (const auto& c : t.children) kids.push_back(walk(c));
        return Term::apply(t.name, std::move(kids));
      }
      default: return t;
    }
  };
  out.term = walk(grounded);
  return out;
}

Composition constant_howpart(std::string value) { return Term::constant(std::move(value)); }

std::optional<std::string> evaluate(const Composition& how, std::span<const ElementId> binding,
                                    const TutorState& state, const std::vector<PrimitiveFunction>& funcs) {
  if (static_cast<int>(binding.size()) != how.variable_count())
    throw std::invalid_argument("evaluate: binding has " + std::to_string(binding.size()) + " ids, how-part needs " +
                                std::to_string(how.variable_count()));

  std::function<std::optional<std::string>(const Term&)> eval = [&](const Term& t) -> std::optional<std::string> {
    switch (t.kind) {
      case Term::Kind::Constant: return t.name;
      case Term::Kind::Element:
      case Term::Kind::Variable: {
        const ElementId& id = t.kind == Term::Kind::Element ? t.name : binding[t.index];
        const auto* e = state.find(id);
        if (!e) throw std::out_of_range("evaluate: unknown element " + id);
        if (e->value.empty()) return std::nullopt;
        return e->value;
      }
      case Term::Kind::Apply: {
        auto f = std::find_if(funcs.begin(), funcs.end(), [&](const PrimitiveFunction& p) { return p.name == t.name; });
        if (f == funcs.end()) throw std::out_of_range("evaluate: unknown function " + t.name);
        if (static_cast<int>(t.children.size()) != f->arity)
          throw std::invalid_argument("evaluate: arity mismatch for " + t.name);
        std::vector<std::string> args;
        for (const auto& c : t.children) {
          auto v = eval(c);
          if (!v) return std::nullopt;
          args.push_back(std::move(*v));
        }
        return f->apply(args);
      }
    }
    return std::nullopt;
  };
  return eval(how);
}

}  // namespace dipl
