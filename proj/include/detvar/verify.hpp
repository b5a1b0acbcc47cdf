#pragma once

// Seeded sampling witnesses and symbolic containment checks for the worked
// decompositions, packaged as deterministic reports.
//
// Every trial draws from its own generator Rng(derive_seed(seed, stream, trial)),
// so reports depend only on the seed and never on evaluation order.

#include "detvar/cimodel.hpp"
#include "detvar/groebner.hpp"
#include "detvar/hypergraph.hpp"
#include "detvar/matroid.hpp"
#include "detvar/minors.hpp"
#include "detvar/random.hpp"
#include "detvar/secrig.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace detvar {

enum class Status { pass, fail, inconclusive };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Sampling campaign: `trials` independent draws, each a success or failure.
struct SampleCheck {
  explicit SampleCheck(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t trials = 0, successes = 0, failures = 0;
  std::size_t resampled = 0;
  std::string detail;
  std::optional<std::string> counterexample;  // first failing sample

  void record(bool ok, const std::function<std::string()>& describe) {
    ++trials;
    if (ok) {
      ++successes;
    } else {
      ++failures;
      if (!counterexample) counterexample = describe();
    }
  }
};

struct SymbolicCheck {
  std::string name;
  Status status = Status::pass;
  std::string detail;
};

struct WitnessReport {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<SymbolicCheck> symbolic;
  std::vector<SampleCheck> samples;

  Status status() const {
    bool inconclusive = false;
    for (const auto& s : symbolic) {
      if (s.status == Status::fail) return Status::fail;
      inconclusive |= s.status == Status::inconclusive;
    }
    for (const auto& c : samples)
      if (c.failures) return Status::fail;
    return inconclusive ? Status::inconclusive : Status::pass;
  }

  const SampleCheck& sample(std::string_view check) const {
    for (const auto& c : samples)
      if (c.name == check) return c;
    throw std::out_of_range("no sample check named " + std::string(check));
  }

  const SymbolicCheck& symbolic_check(std::string_view check) const {
    for (const auto& c : symbolic)
      if (c.name == check) return c;
    throw std::out_of_range("no symbolic check named " + std::string(check));
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "report " << name << '\n' << "seed " << seed << '\n' << "trials " << trials << '\n';
    for (const auto& [k, v] : parameters) os << "param " << k << ' ' << v << '\n';
    for (const auto& s : symbolic) {
      os << "symbolic " << s.name << ": " << status_name(s.status);
      if (!s.detail.empty()) os << " (" << s.detail << ')';
      os << '\n';
    }
    for (const auto& c : samples) {
      os << "sample " << c.name << ": " << c.successes << '/' << c.trials;
      if (c.resampled) os << " resampled " << c.resampled;
      if (!c.detail.empty()) os << " (" << c.detail << ')';
      os << '\n';
      if (c.counterexample) os << "  counterexample:\n" << *c.counterexample;
    }
    os << "status " << status_name(status()) << '\n';
    return os.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["report"] = name;
    j["seed"] = seed;
    j["trials"] = trials;
    j["parameters"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) j["parameters"][k] = v;
    j["symbolic"] = nlohmann::ordered_json::array();
    for (const auto& s : symbolic)
      j["symbolic"].push_back({{"name", s.name}, {"status", status_name(s.status)}, {"detail", s.detail}});
    j["samples"] = nlohmann::ordered_json::array();
    for (const auto& c : samples) {
      nlohmann::ordered_json e{{"name", c.name},         {"trials", c.trials},       {"successes", c.successes},
                               {"failures", c.failures}, {"resampled", c.resampled}, {"detail", c.detail}};
      e["counterexample"] = c.counterexample ? nlohmann::ordered_json(*c.counterexample) : nlohmann::ordered_json();
      j["samples"].push_back(std::move(e));
    }
    j["status"] = status_name(status());
    return j;
  }
};

/// Draws points exactly on one component; `draw` returns nullopt on a
/// degenerate draw, which `sample` retries and counts.
struct ComponentSampler {
  std::string name;
  std::function<std::optional<QMatrix>(Rng&)> draw;

  QMatrix sample(Rng& rng, std::size_t* resampled = nullptr, std::size_t limit = 64) const {
    for (std::size_t i = 0; i < limit; ++i) {
      if (auto x = draw(rng)) return *x;
      if (resampled) ++*resampled;
    }
    throw std::runtime_error(name + ": every draw was degenerate");
  }
};

/// 3 × 7 matrices with first column zero.
inline ComponentSampler sampler_loop_component() {
  return {"loop", [](Rng& rng) -> std::optional<QMatrix> {
            QMatrix x = random_matrix(3, 7, rng);
            for (std::size_t r = 0; r < 3; ++r) x(r, 0) = 0;
            return x;
          }};
}

/// Three lines through the apex x_1, carrying x_2 x_3, x_4 x_5 and x_6 x_7.
inline ComponentSampler sampler_concurrent_lines() {
  return {"concurrent-lines", [](Rng& rng) -> std::optional<QMatrix> {
            const QMatrix apex = random_matrix(3, 1, rng);
            const QMatrix dirs = random_matrix(3, 3, rng);
            QMatrix x(3, 7, Rational(0));
            for (std::size_t r = 0; r < 3; ++r) x(r, 0) = apex(r, 0);
            for (std::size_t line = 0; line < 3; ++line)
              for (std::size_t p = 0; p < 2; ++p) {
                const Rational a = rng.rational(), b = rng.rational();
                for (std::size_t r = 0; r < 3; ++r) x(r, 1 + 2 * line + p) = a * apex(r, 0) + b * dirs(r, line);
              }
            auto rank_of = [&](std::initializer_list<std::size_t> cols) {
              const std::vector<std::size_t> c(cols);
              return rank(x.select_columns(c));
            };
            if (rank_of({0}) != 1) return std::nullopt;
            // Distinct lines, and three distinct points on each.
            if (rank_of({1, 3, 5}) != 3 || rank_of({0, 1, 3}) != 3 || rank_of({0, 3, 5}) != 3 || rank_of({0, 1, 5}) != 3)
              return std::nullopt;
            for (std::size_t line = 0; line < 3; ++line) {
              const std::size_t p = 1 + 2 * line;
              if (rank_of({0, p}) != 2 || rank_of({0, p + 1}) != 2 || rank_of({p, p + 1}) != 2) return std::nullopt;
            }
            return x;
          }};
}

namespace detail {

inline std::vector<Rational> flat_point(const QMatrix& x) { return {x.data().begin(), x.data().end()}; }

inline bool all_vanish(const std::vector<Polynomial>& gens, std::span<const Rational> point) {
  return std::all_of(gens.begin(), gens.end(), [&](const Polynomial& g) { return is_zero(g.evaluate(point)); });
}

inline std::string describe_matrix(const QMatrix& x) {
  std::string s = format_matrix(x), out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out += "    " + line + "\n";
  return out;
}

inline Polynomial bracket(const SymbolicMatrix& x, std::size_t a, std::size_t b, std::size_t c) {
  const std::array<std::size_t, 3> rows{0, 1, 2}, cols{a, b, c};
  return minor(x, rows, cols);
}

inline std::string budget_text(const GroebnerBudget& b) {
  return std::to_string(b.max_pairs) + " pairs, degree " + std::to_string(b.max_degree);
}

}  // namespace detail

/// The first-column coordinates x_1_1, x_2_1, x_3_1 of the 3 × 7 matrix.
inline Ideal example31_loop_ideal() {
  return Ideal(Ring::matrix("x", 3, 7), {Polynomial::variable(0), Polynomial::variable(7), Polynomial::variable(14)});
}

/// [123], [145], [167] and [234][567] − [235][467].
inline Ideal example31_concurrent_ideal() {
  const SymbolicMatrix x = generic_matrix(3, 7);
  using detail::bracket;
  return Ideal(Ring::matrix("x", 3, 7),
               {bracket(x, 0, 1, 2), bracket(x, 0, 3, 4), bracket(x, 0, 5, 6),
                bracket(x, 1, 2, 3) * bracket(x, 4, 5, 6) - bracket(x, 1, 2, 4) * bracket(x, 3, 5, 6)});
}

inline WitnessReport verify_example_3_1(std::size_t trials, std::uint64_t seed, const GroebnerBudget& budget = {}) {
  WitnessReport rep{"example31", seed, trials, {{"max_pairs", std::to_string(budget.max_pairs)},
                                                {"max_degree", std::to_string(budget.max_degree)}}, {}, {}};
  const Ideal delta = hypergraph_ideal(example31_hypergraph(), 3);
  const Ideal loop = buchberger(example31_loop_ideal());
  const Ideal lines = example31_concurrent_ideal();
  const Polynomial sextic = lines.generators().back();

  {
    SymbolicCheck c{"delta-in-loop-ideal", Status::pass, "normal forms of [123], [145], [167] modulo the loop ideal"};
    for (const auto& g : delta.generators())
      if (!normal_form(g, loop).is_zero()) c.status = Status::fail;
    rep.symbolic.push_back(c);
  }
  {
    SymbolicCheck c{"delta-in-concurrent-ideal", Status::pass, "generator identity up to sign"};
    const auto gens = generator_set(lines.generators());
    for (const auto& g : delta.generators())
      if (!gens.count(g.sign_normalized())) c.status = Status::fail;
    rep.symbolic.push_back(c);
  }
  {
    SymbolicCheck c{"intersection-in-delta", Status::pass, {}};
    try {
      const Ideal meet = intersect(example31_loop_ideal(), lines, budget);
      const Ideal gb = buchberger(delta, MonomialOrder::grevlex(), budget);
      std::size_t outside = 0;
      for (const auto& g : meet.generators())
        if (!normal_form(g, gb).is_zero()) ++outside;
      c.status = outside ? Status::fail : Status::pass;
      c.detail = std::to_string(meet.generators().size()) + " generators of the intersection, " + std::to_string(outside) +
                 " outside the hypergraph ideal";
    } catch (const BudgetExhausted& e) {
      c.status = Status::inconclusive;
      c.detail = std::string("budget exhausted (") + detail::budget_text(budget) + "): " + e.what();
    }
    rep.symbolic.push_back(c);
  }

  // Loop component: the loop and hypergraph ideals vanish, the sextic does not.
  {
    const auto sampler = sampler_loop_component();
    SampleCheck delta_zero{"delta-vanishes-on-loop"}, loop_zero{"loop-ideal-vanishes-on-loop"},
        sextic_nonzero{"sextic-nonzero-on-loop"};
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, 1, t));
      QMatrix x = sampler.sample(rng, &delta_zero.resampled);
      auto p = detail::flat_point(x);
      while (is_zero(sextic.evaluate(p))) {
        ++sextic_nonzero.resampled;
        if (sextic_nonzero.resampled > 64 * trials + 64) break;
        x = sampler.sample(rng);
        p = detail::flat_point(x);
      }
      auto show = [&] { return detail::describe_matrix(x); };
      delta_zero.record(detail::all_vanish(delta.generators(), p), show);
      loop_zero.record(detail::all_vanish(loop.generators(), p), show);
      sextic_nonzero.record(!is_zero(sextic.evaluate(p)), show);
    }
    rep.samples.insert(rep.samples.end(), {delta_zero, loop_zero, sextic_nonzero});
  }
  // Concurrent lines: all four generators vanish, the first column does not.
  {
    const auto sampler = sampler_concurrent_lines();
    SampleCheck lines_zero{"concurrent-ideal-vanishes-on-lines"}, delta_zero{"delta-vanishes-on-lines"},
        apex_nonzero{"loop-ideal-nonzero-on-lines"};
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, 2, t));
      const QMatrix x = sampler.sample(rng, &lines_zero.resampled);
      const auto p = detail::flat_point(x);
      auto show = [&] { return detail::describe_matrix(x); };
      lines_zero.record(detail::all_vanish(lines.generators(), p), show);
      delta_zero.record(detail::all_vanish(delta.generators(), p), show);
      apex_nonzero.record(!detail::all_vanish(loop.generators(), p), show);
    }
    rep.samples.insert(rep.samples.end(), {lines_zero, delta_zero, apex_nonzero});
  }
  return rep;
}

inline WitnessReport verify_example_3_2_rank2(std::size_t trials, std::uint64_t seed) {
  WitnessReport rep{"example32", seed, trials, {}, {}, {}};
  const Hypergraph h = example32_hypergraph();
  const Ideal delta = hypergraph_ideal(h, 3);
  rep.symbolic.push_back({"fixture-is-grid-hypergraph",
                          h == grid_hypergraph(GridSpec{3, 3, 3, 4, 3}) ? Status::pass : Status::fail,
                          "relabelled fixture equals the (3, 3) grid hypergraph on the 3 x 4 grid"});

  SampleCheck rank2{"rank-2-in-variety"}, rank1{"rank-1-in-variety"}, rank3{"rank-3-outside-variety"};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, 1, t));
    const QMatrix x2 = random_matrix(3, 2, rng) * random_matrix(2, 12, rng);
    const QMatrix x1 = random_matrix(3, 1, rng) * random_matrix(1, 12, rng);
    const QMatrix x3 = random_matrix(3, 12, rng);
    rank2.record(in_variety(h, x2) && detail::all_vanish(delta.generators(), detail::flat_point(x2)),
                 [&] { return detail::describe_matrix(x2); });
    rank1.record(in_variety(h, x1) && detail::all_vanish(delta.generators(), detail::flat_point(x1)),
                 [&] { return detail::describe_matrix(x1); });
    rank3.record(!in_variety(h, x3) && !detail::all_vanish(delta.generators(), detail::flat_point(x3)),
                 [&] { return detail::describe_matrix(x3); });
  }
  rep.samples.insert(rep.samples.end(), {rank2, rank1, rank3});
  return rep;
}

namespace detail {

inline std::vector<std::pair<std::string, std::string>> spec_parameters(const GridSpec& spec) {
  return {{"s", std::to_string(spec.s)},
          {"t", std::to_string(spec.t)},
          {"k", std::to_string(spec.k)},
          {"l", std::to_string(spec.l)},
          {"d", std::to_string(spec.d)}};
}

}  // namespace detail

/// The CI ideal of X ⊥⊥ Y1 | {Y2, H1}, X ⊥⊥ Y2 | {Y1, H2} against the
/// conclusion X ⊥⊥ {Y1, Y2} | H2: every generator must be a t-minor of the
/// full d × kℓ flattening, and mixture points of the conclusion model must
/// satisfy all generators exactly.
inline WitnessReport verify_intersection_axiom(const GridSpec& spec, std::size_t trials, std::uint64_t seed) {
  spec.validate();
  if (spec.s != spec.t || spec.t > spec.d || spec.s < 2)
    throw std::invalid_argument("intersection-axiom comparison needs 2 <= s = t <= d");
  WitnessReport rep{"intersection-axiom", seed, trials, detail::spec_parameters(spec), {}, {}};
  const GridCorrespondence corr = grid_ci_correspondence(spec);
  const Ideal jc = ci_ideal(corr.problem.statements, corr.problem.model);

  {
    const auto full_minors = generator_set(all_minors(generic_matrix(spec.d, spec.k * spec.l), spec.t));
    std::size_t found = 0;
    for (const auto& g : jc.generators())
      if (full_minors.count(g.renamed(corr.coordinate_map).sign_normalized())) ++found;
    rep.symbolic.push_back({"generators-are-full-minors", found == jc.generators().size() ? Status::pass : Status::fail,
                            std::to_string(found) + "/" + std::to_string(jc.generators().size()) + " generators are " +
                                std::to_string(spec.t) + "-minors of the " + std::to_string(spec.d) + " x " +
                                std::to_string(spec.k * spec.l) + " matrix"});
  }

  const CIStatement conclusion{{0}, {1, 2}, {4}};
  SampleCheck vanish{"mixture-satisfies-ci-ideal"}, positive{"mixture-fully-supported"}, normalized{"mixture-sums-to-one"};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, 1, t));
    const ProbTensor p = mixture_parametrization_sample(corr.problem.model, conclusion, rng);
    auto show = [&] { return format_tensor(p); };
    vanish.record(detail::all_vanish(jc.generators(), p.entries()), show);
    positive.record(p.fully_supported(), show);
    normalized.record(p.is_normalized(), show);
  }
  vanish.detail = std::to_string(jc.generators().size()) + " generators";
  rep.samples.insert(rep.samples.end(), {vanish, positive, normalized});
  return rep;
}

/// Realizes the grid matroid in the unique-minimal regime and compares its
/// circuits with min(Δ^{s,t} ∪ ([kℓ] choose d+1)).
inline WitnessReport verify_theorem32(const GridSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (!spec.unique_minimal_regime())
    throw std::invalid_argument("theorem32 needs 3 <= s <= t <= l, s <= k, t <= d <= s + t - 3");
  WitnessReport rep{"theorem32", seed, 1, detail::spec_parameters(spec), {}, {}};
  Rng rng(derive_seed(seed, 1, 0));
  const QMatrix x = realize_grid_matroid(spec, rng);
  const Matroid m = matroid_from_matrix(x);
  const auto circuits = m.circuits();
  const auto expected = minimal_with_uniform(grid_hypergraph(spec), spec.d);
  auto sorted = [](std::vector<Edge> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  rep.symbolic.push_back({"rank", m.rank() == spec.d ? Status::pass : Status::fail, "rank " + std::to_string(m.rank())});
  rep.symbolic.push_back({"circuits-match", sorted(circuits) == sorted(expected) ? Status::pass : Status::fail,
                          std::to_string(circuits.size()) + " circuits, " + std::to_string(expected.size()) + " expected"});
  rep.symbolic.push_back(
      {"circuit-axioms", is_circuit_family(spec.k * spec.l, circuits) ? Status::pass : Status::fail, {}});
  return rep;
}

struct RigidityCase {
  std::size_t d, n;
};

inline const std::vector<RigidityCase>& default_rigidity_cases() {
  static const std::vector<RigidityCase> cases{{2, 3}, {2, 4}, {2, 5}, {3, 5}, {3, 6}};
  return cases;
}

inline WitnessReport verify_rigidity(const std::vector<RigidityCase>& cases, std::uint64_t seed) {
  WitnessReport rep{"rigidity", seed, cases.size(), {}, {}, {}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto [d, n] = cases[i];
    Rng rng(derive_seed(seed, 1, i));
    const RigidityReport r = generic_rigidity_check(n, d, rng);
    const std::string tag = "d" + std::to_string(d) + "-n" + std::to_string(n);
    rep.symbolic.push_back({"rank-" + tag, r.rank == r.expected_rank ? Status::pass : Status::fail,
                            "rank " + std::to_string(r.rank) + ", expected " + std::to_string(r.expected_rank)});
    if (r.kd2_checked)
      rep.symbolic.push_back({"k" + std::to_string(d + 2) + "-circuits-" + tag,
                              r.kd2_circuits == r.kd2_checked ? Status::pass : Status::fail,
                              std::to_string(r.kd2_circuits) + "/" + std::to_string(r.kd2_checked) + " copies are circuits"});
    rep.symbolic.push_back({"motions-in-kernel-" + tag,
                            r.motions_in_kernel == r.motions_checked ? Status::pass : Status::fail,
                            std::to_string(r.motions_in_kernel) + "/" + std::to_string(r.motions_checked)});
  }
  return rep;
}

struct SecantCase {
  std::size_t m, n, k;
};

inline const std::vector<SecantCase>& default_secant_cases() {
  static const std::vector<SecantCase> cases{{3, 3, 1}, {3, 3, 2}, {3, 4, 2}, {4, 4, 3}};
  return cases;
}

/// min(mn, k(m + n − k)): expected affine dimension of the rank ≤ k matrices.
inline std::size_t expected_secant_dimension(std::size_t m, std::size_t n, std::size_t k) {
  if (k >= std::min(m, n)) return m * n;
  return std::min(m * n, k * (m + n - k));
}

inline WitnessReport verify_terracini(const std::vector<SecantCase>& cases, std::uint64_t seed) {
  WitnessReport rep{"terracini", seed, cases.size(), {}, {}, {}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto [m, n, k] = cases[i];
    Rng rng(derive_seed(seed, 1, i));
    const std::size_t dim = secant_dimension(segre_model(m, n), k, rng);
    const std::size_t want = expected_secant_dimension(m, n, k);
    rep.symbolic.push_back({"secant-" + std::to_string(m) + "x" + std::to_string(n) + "-k" + std::to_string(k),
                            dim == want ? Status::pass : Status::fail,
                            "affine " + std::to_string(dim) + ", projective " + std::to_string(dim - 1) + ", expected " +
                                std::to_string(want)});
  }
  return rep;
}

}  // namespace detvar
