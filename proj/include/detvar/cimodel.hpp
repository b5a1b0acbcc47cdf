#pragma once

// Discrete random-variable models, joint probability tensors and their
// flattenings, and conditional-independence ideals with hidden variables.
//
// The polynomial ring of a model has one variable per joint state of the
// observed variables, laid out row-major in declaration order and named
// p_<state of X1>_..._<state of Xn> with 1-based states.

#include "detvar/groebner.hpp"
#include "detvar/matrix.hpp"
#include "detvar/minors.hpp"
#include "detvar/random.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace detvar {

struct RandomVariable {
  std::string name;
  std::size_t cardinality = 1;
  bool hidden = false;
};

class DiscreteModel {
 public:
  DiscreteModel() = default;
  explicit DiscreteModel(std::vector<RandomVariable> vars) : vars_(std::move(vars)) {
    std::set<std::string> names;
    bool any_observed = false;
    for (const auto& v : vars_) {
      if (v.name.empty()) throw std::invalid_argument("random variable without a name");
      if (!names.insert(v.name).second) throw std::invalid_argument("duplicate random variable " + v.name);
      if (v.cardinality < 1) throw std::invalid_argument("cardinality of " + v.name + " must be >= 1");
      any_observed |= !v.hidden;
    }
    if (!any_observed) throw std::invalid_argument("model needs at least one observed variable");
  }

  const std::vector<RandomVariable>& variables() const { return vars_; }
  const RandomVariable& variable(std::size_t i) const { return vars_.at(i); }

  std::size_t index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    throw std::invalid_argument("unknown random variable " + std::string(name));
  }

  std::vector<std::size_t> observed() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (!vars_[i].hidden) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> observed_shape() const {
    std::vector<std::size_t> shape;
    for (auto i : observed()) shape.push_back(vars_[i].cardinality);
    return shape;
  }

  Ring coordinate_ring() const {
    const auto shape = observed_shape();
    return Ring::tensor("p", shape);
  }

 private:
  std::vector<RandomVariable> vars_;
};

/// A ⊥⊥ B | C over model variable indices.
struct CIStatement {
  std::vector<std::size_t> a, b, c;

  void validate(const DiscreteModel& model) const {
    if (a.empty() || b.empty()) throw std::invalid_argument("CI statement needs nonempty A and B");
    std::set<std::size_t> seen;
    for (const auto* part : {&a, &b, &c})
      for (auto i : *part) {
        if (i >= model.variables().size()) throw std::invalid_argument("CI statement variable out of range");
        if (!seen.insert(i).second) throw std::invalid_argument("CI statement sets must be disjoint");
      }
    for (const auto* part : {&a, &b})
      for (auto i : *part)
        if (model.variable(i).hidden)
          throw std::invalid_argument("hidden variable " + model.variable(i).name + " may only appear in the conditioning set");
  }
};

/// Parses "A _||_ B | C". Names are separated by spaces or commas and may be
/// wrapped in braces; hidden variables carry a trailing '*' that must agree
/// with the model.
inline CIStatement parse_statement(std::string_view text, const DiscreteModel& model) {
  const std::string s(text);
  const auto sep = s.find("_||_");
  if (sep == std::string::npos) throw std::invalid_argument("CI statement lacks '_||_': " + s);
  const auto bar = s.find('|', sep + 4);
  const std::string lhs = s.substr(0, sep);
  const std::string mid = s.substr(sep + 4, bar == std::string::npos ? std::string::npos : bar - sep - 4);
  const std::string rhs = bar == std::string::npos ? "" : s.substr(bar + 1);

  auto names = [&](const std::string& part) {
    std::vector<std::size_t> out;
    std::string clean = part;
    for (char& ch : clean)
      if (ch == ',' || ch == '{' || ch == '}') ch = ' ';
    std::istringstream is(clean);
    std::string tok;
    while (is >> tok) {
      bool star = tok.back() == '*';
      if (star) tok.pop_back();
      const auto i = model.index(tok);
      if (star != model.variable(i).hidden)
        throw std::invalid_argument("variable " + tok + (star ? " is not hidden" : " is hidden and must be marked '*'"));
      out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  CIStatement st{names(lhs), names(mid), names(rhs)};
  st.validate(model);
  return st;
}

inline std::string format_statement(const CIStatement& st, const DiscreteModel& model) {
  auto part = [&](const std::vector<std::size_t>& idx) {
    std::string out;
    for (auto i : idx) {
      if (!out.empty()) out += ' ';
      out += model.variable(i).name;
      if (model.variable(i).hidden) out += '*';
    }
    return out;
  };
  std::string s = part(st.a) + " _||_ " + part(st.b);
  if (!st.c.empty()) s += " | " + part(st.c);
  return s;
}

struct CIProblem {
  DiscreteModel model;
  std::vector<CIStatement> statements;
};

/// CI file: a line "vars X:3 Y1:3 H*:2" declaring the model, then one
/// statement per line. '#' starts a comment.
inline CIProblem parse_ci_file(std::istream& in) {
  std::vector<RandomVariable> vars;
  std::vector<std::string> stmt_lines;
  std::string line;
  bool declared = false;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream is(line);
    std::string head;
    is >> head;
    if (head == "vars") {
      if (declared) throw std::invalid_argument("CI file declares vars twice");
      declared = true;
      std::string tok;
      while (is >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("expected name:cardinality, got " + tok);
        RandomVariable v;
        v.name = tok.substr(0, colon);
        if (!v.name.empty() && v.name.back() == '*') {
          v.hidden = true;
          v.name.pop_back();
        }
        v.cardinality = std::stoul(tok.substr(colon + 1));
        vars.push_back(v);
      }
    } else {
      stmt_lines.push_back(line);
    }
  }
  if (!declared) throw std::invalid_argument("CI file lacks a 'vars' line");
  CIProblem prob{DiscreteModel(std::move(vars)), {}};
  for (const auto& l : stmt_lines) prob.statements.push_back(parse_statement(l, prob.model));
  return prob;
}

/// Dense tensor of exact entries over named axes, row-major.
class ProbTensor {
 public:
  ProbTensor() = default;
  ProbTensor(std::vector<std::string> names, std::vector<std::size_t> shape, std::vector<Rational> entries)
      : names_(std::move(names)), shape_(std::move(shape)), entries_(std::move(entries)) {
    if (names_.size() != shape_.size()) throw std::invalid_argument("tensor: one name per axis required");
    std::size_t total = 1;
    for (auto s : shape_) {
      if (s == 0) throw std::invalid_argument("tensor: empty axis");
      total *= s;
    }
    if (entries_.size() != total) throw std::invalid_argument("tensor: entry count does not match shape");
  }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  const std::vector<Rational>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::size_t flat_index(std::span<const std::size_t> idx) const {
    if (idx.size() != shape_.size()) throw std::invalid_argument("tensor: index rank mismatch");
    std::size_t f = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a) {
      if (idx[a] >= shape_[a]) throw std::invalid_argument("tensor: index out of range");
      f = f * shape_[a] + idx[a];
    }
    return f;
  }

  const Rational& at(std::span<const std::size_t> idx) const { return entries_[flat_index(idx)]; }

  bool is_distribution() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return sgn(q) >= 0; });
  }
  bool is_normalized() const {
    Rational s = 0;
    for (const auto& q : entries_) s += q;
    return s == 1;
  }
  bool fully_supported() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return sgn(q) > 0; });
  }

  friend ProbTensor operator+(const ProbTensor& p, const ProbTensor& q) {
    if (p.shape_ != q.shape_) throw std::invalid_argument("tensor sum shape mismatch");
    std::vector<Rational> e(p.entries_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = p.entries_[i] + q.entries_[i];
    return ProbTensor(p.names_, p.shape_, std::move(e));
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> shape_;
  std::vector<Rational> entries_;
};

/// "shape n1 ... nk", "vars A B ...", then entries row-major, last axis per line.
inline std::string format_tensor(const ProbTensor& t) {
  std::ostringstream os;
  os << "shape";
  for (auto s : t.shape()) os << ' ' << s;
  os << "\nvars";
  for (const auto& n : t.names()) os << ' ' << n;
  os << '\n';
  const std::size_t last = t.shape().empty() ? 1 : t.shape().back();
  for (std::size_t i = 0; i < t.size(); ++i) os << to_string(t.entries()[i]) << ((i + 1) % last == 0 ? '\n' : ' ');
  return os.str();
}

inline ProbTensor parse_tensor(std::istream& in) {
  std::vector<std::size_t> shape;
  std::vector<std::string> names;
  std::vector<Rational> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream is(line);
    std::string tok;
    if (!(is >> tok)) continue;
    if (tok == "shape") {
      std::size_t s;
      while (is >> s) shape.push_back(s);
    } else if (tok == "vars") {
      while (is >> tok) names.push_back(tok);
    } else {
      do entries.push_back(parse_rational(tok));
      while (is >> tok);
    }
  }
  if (names.empty())
    for (std::size_t a = 0; a < shape.size(); ++a) names.push_back("V" + std::to_string(a + 1));
  return ProbTensor(std::move(names), std::move(shape), std::move(entries));
}

namespace detail {

inline std::size_t state_count(const std::vector<std::size_t>& axes, std::span<const std::size_t> shape) {
  std::size_t n = 1;
  for (auto a : axes) n *= shape[a];
  return n;
}

// Mixed-radix index of the sub-state on `axes` (ascending, last fastest).
inline std::size_t sub_index(std::span<const std::size_t> state, const std::vector<std::size_t>& axes,
                             std::span<const std::size_t> shape) {
  std::size_t f = 0;
  for (auto a : axes) f = f * shape[a] + state[a];
  return f;
}

template <class F>
void for_each_state(std::span<const std::size_t> shape, F&& f) {
  std::vector<std::size_t> idx(shape.size(), 0);
  std::size_t total = 1;
  for (auto s : shape) total *= s;
  for (std::size_t flat = 0; flat < total; ++flat) {
    f(std::span<const std::size_t>(idx), flat);
    for (std::size_t a = shape.size(); a-- > 0;) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
}

}  // namespace detail

/// Matrix with rows indexed by the joint states of `rows`, columns by those of
/// `cols`, summing over `summed`. Axis lists are read as sets; each block's
/// states are ordered lexicographically in axis order.
inline QMatrix flatten(const ProbTensor& p, std::vector<std::size_t> rows, std::vector<std::size_t> cols,
                       std::vector<std::size_t> summed) {
  const std::size_t k = p.shape().size();
  std::vector<int> seen(k, 0);
  for (const auto* part : {&rows, &cols, &summed})
    for (auto a : *part) {
      if (a >= k) throw std::invalid_argument("flatten: axis out of range");
      ++seen[a];
    }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw std::invalid_argument("flatten: rows, cols and summed must partition the axes");
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  const auto& shape = p.shape();
  QMatrix m(detail::state_count(rows, shape), detail::state_count(cols, shape), Rational(0));
  detail::for_each_state(shape, [&](std::span<const std::size_t> st, std::size_t flat) {
    m(detail::sub_index(st, rows, shape), detail::sub_index(st, cols, shape)) += p.entries()[flat];
  });
  return m;
}

/// Product of the cardinalities of the hidden variables in C (1 if none).
inline std::size_t hidden_rank(const CIStatement& st, const DiscreteModel& model) {
  std::size_t h = 1;
  for (auto i : st.c)
    if (model.variable(i).hidden) h *= model.variable(i).cardinality;
  return h;
}

/// The observed-variable blocks of a statement: for each joint state of the
/// observed part of C, the |A-states| × |B-states| matrix of linear forms in
/// the coordinate ring (summing over observed variables outside A ∪ B ∪ C).
inline std::vector<SymbolicMatrix> ci_blocks(const CIStatement& st, const DiscreteModel& model) {
  st.validate(model);
  const auto obs = model.observed();
  const auto shape = model.observed_shape();
  std::vector<std::size_t> pos(model.variables().size(), SIZE_MAX);
  for (std::size_t k = 0; k < obs.size(); ++k) pos[obs[k]] = k;

  std::vector<std::size_t> a_axes, b_axes, c_axes;
  for (auto i : st.a) a_axes.push_back(pos[i]);
  for (auto i : st.b) b_axes.push_back(pos[i]);
  for (auto i : st.c)
    if (!model.variable(i).hidden) c_axes.push_back(pos[i]);
  std::sort(a_axes.begin(), a_axes.end());
  std::sort(b_axes.begin(), b_axes.end());
  std::sort(c_axes.begin(), c_axes.end());

  const std::size_t n_c = detail::state_count(c_axes, shape);
  std::vector<SymbolicMatrix> blocks(
      n_c, SymbolicMatrix(detail::state_count(a_axes, shape), detail::state_count(b_axes, shape)));
  detail::for_each_state(shape, [&](std::span<const std::size_t> s, std::size_t flat) {
    auto& entry = blocks[detail::sub_index(s, c_axes, shape)](detail::sub_index(s, a_axes, shape),
                                                              detail::sub_index(s, b_axes, shape));
    entry += Polynomial::variable(flat);
  });
  return blocks;
}

/// All (h+1)-minors of every observed block, sign-normalized, in block order.
inline std::vector<Polynomial> ci_minor_generators(const CIStatement& st, const DiscreteModel& model) {
  const std::size_t k = hidden_rank(st, model) + 1;
  std::vector<Polynomial> out;
  for (const auto& block : ci_blocks(st, model))
    for (auto& g : all_minors(block, k)) out.push_back(g.sign_normalized());
  return out;
}

inline Ideal ci_ideal(const std::vector<CIStatement>& statements, const DiscreteModel& model) {
  std::vector<Polynomial> gens;
  for (const auto& st : statements) {
    auto g = ci_minor_generators(st, model);
    gens.insert(gens.end(), g.begin(), g.end());
  }
  return Ideal(model.coordinate_ring(), dedup_up_to_sign(gens));
}

/// Rational fully supported distribution on the observed variables of the form
/// Σ_i λ_i a_i b_iᵀ (i over the joint hidden states of C), so its A×B
/// flattening has rank at most h. Requires C hidden-only and A ∪ B = all
/// observed variables.
inline ProbTensor mixture_parametrization_sample(const DiscreteModel& model, const CIStatement& conclusion, Rng& rng) {
  conclusion.validate(model);
  for (auto i : conclusion.c)
    if (!model.variable(i).hidden) throw std::invalid_argument("mixture sample: conditioning set must be hidden-only");
  if (conclusion.a.size() + conclusion.b.size() != model.observed().size())
    throw std::invalid_argument("mixture sample: A and B must cover the observed variables");

  const std::size_t h = hidden_rank(conclusion, model);
  const auto obs = model.observed();
  const auto shape = model.observed_shape();
  std::vector<std::size_t> a_axes, b_axes;
  for (std::size_t k = 0; k < obs.size(); ++k) {
    if (std::find(conclusion.a.begin(), conclusion.a.end(), obs[k]) != conclusion.a.end())
      a_axes.push_back(k);
    else
      b_axes.push_back(k);
  }
  const std::size_t na = detail::state_count(a_axes, shape), nb = detail::state_count(b_axes, shape);
  const auto lambda = rng.simplex_interior(h);
  std::vector<std::vector<Rational>> as, bs;
  for (std::size_t i = 0; i < h; ++i) {
    as.push_back(rng.simplex_interior(na));
    bs.push_back(rng.simplex_interior(nb));
  }
  std::size_t total = 1;
  for (auto s : shape) total *= s;
  std::vector<Rational> entries(total, Rational(0));
  detail::for_each_state(shape, [&](std::span<const std::size_t> s, std::size_t flat) {
    const auto ia = detail::sub_index(s, a_axes, shape), ib = detail::sub_index(s, b_axes, shape);
    for (std::size_t i = 0; i < h; ++i) entries[flat] += lambda[i] * as[i][ia] * bs[i][ib];
  });
  std::vector<std::string> names;
  for (auto i : obs) names.push_back(model.variable(i).name);
  return ProbTensor(std::move(names), shape, std::move(entries));
}

}  // namespace detvar
