// Acceptance runner: one [PASS]/[FAIL] line per criterion, exit 1 on any failure.

#include "detvar/detvar.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace detvar;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string(DETVAR_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string strip_comments(const std::string& text) {
  std::istringstream is(text);
  std::string line, out;
  while (std::getline(is, line))
    if (line.rfind('#', 0) != 0) out += line + '\n';
  return out;
}

Outcome grid_fixture() {
  Outcome o;
  const auto [code, out] = run_cli("grid --k 4 --l 7");
  std::string want;
  for (std::size_t i = 1; i <= 4; ++i)
    for (std::size_t j = 1; j <= 7; ++j) want += std::to_string((j - 1) * 4 + i) + (j == 7 ? "\n" : " ");
  o.require(code == 0, "exit " + std::to_string(code));
  o.require(strip_comments(out) == want, "grid text differs");
  return o;
}

Outcome correspondence() {
  Outcome o;
  const GridSpec spec{3, 3, 3, 4, 3};
  const auto corr = grid_ci_correspondence(spec);
  const Ideal ci = ci_ideal(corr.problem.statements, corr.problem.model);
  std::vector<Polynomial> renamed;
  for (const auto& g : ci.generators()) renamed.push_back(g.renamed(corr.coordinate_map));
  const auto grid = generator_set(hypergraph_ideal(grid_hypergraph(spec), spec.d).generators());
  o.require(generator_set(renamed) == grid, "generator sets differ");
  o.require(grid.size() == 16, std::to_string(grid.size()) + " grid generators");
  const auto first = generator_set(ci_minor_generators(corr.problem.statements[0], corr.problem.model));
  const auto second = generator_set(ci_minor_generators(corr.problem.statements[1], corr.problem.model));
  o.require(first.size() == 4 && second.size() == 12,
            "split " + std::to_string(first.size()) + "+" + std::to_string(second.size()));
  return o;
}

void require_all(Outcome& o, const WitnessReport& rep, std::size_t trials) {
  for (const auto& c : rep.samples)
    o.require(c.trials == trials && c.successes == trials,
              c.name + " " + std::to_string(c.successes) + "/" + std::to_string(c.trials));
}

Outcome example31() {
  Outcome o;
  const auto rep = verify_example_3_1(100, 1);
  o.require(rep.symbolic_check("delta-in-loop-ideal").status == Status::pass, "normal forms nonzero");
  o.require(rep.symbolic_check("delta-in-concurrent-ideal").status == Status::pass, "generator identity");
  o.require(rep.symbolic_check("intersection-in-delta").status != Status::fail, "reverse containment failed");
  require_all(o, rep, 100);
  o.note = o.note.empty() ? rep.symbolic_check("intersection-in-delta").detail : o.note;
  return o;
}

Outcome theorem32() {
  Outcome o;
  const GridSpec spec{3, 3, 3, 3, 3};
  const auto rep = verify_theorem32(spec, 1);
  o.require(rep.status() == Status::pass, "report " + std::string(status_name(rep.status())));
  // Independent oracle: S is dependent iff it has four or more elements or contains a grid row or column.
  Rng rng(derive_seed(1, 1, 0));
  const Matroid m = matroid_from_matrix(realize_grid_matroid(spec, rng));
  const Hypergraph h = grid_hypergraph(spec);
  std::size_t mismatched = 0;
  for (Mask s = 1; s < (Mask{1} << 9); ++s) {
    bool dependent = std::popcount(s) >= 4;
    for (const auto& e : h.edges()) dependent |= (mask_of(e) & s) == mask_of(e);
    mismatched += m.is_dependent(s) != dependent;
  }
  o.require(mismatched == 0, std::to_string(mismatched) + " subsets disagree");
  return o;
}

Outcome example32() {
  Outcome o;
  const auto rep = verify_example_3_2_rank2(100, 1);
  o.require(rep.sample("rank-2-in-variety").successes == 100, "rank-2 samples");
  o.require(rep.status() == Status::pass, "report " + std::string(status_name(rep.status())));
  return o;
}

Outcome intersection_axiom() {
  Outcome o;
  const auto rep = verify_intersection_axiom({3, 3, 3, 4, 3}, 100, 1);
  require_all(o, rep, 100);
  o.require(rep.symbolic_check("generators-are-full-minors").status == Status::pass,
            rep.symbolic_check("generators-are-full-minors").detail);
  return o;
}

Outcome algebraic() {
  Outcome o;
  Rng rng(derive_seed(1, 2, 0));
  const Matroid segre = algebraic_matroid(low_rank_parametrization(2, 2, 1), rng);
  o.require(segre.circuits() == std::vector<Edge>{{0, 1, 2, 3}}, "2x2 circuits");
  const Matroid m = algebraic_matroid(low_rank_parametrization(3, 3, 2), rng);
  o.require(m.rank() == 8, "3x3 rank " + std::to_string(m.rank()));
  std::size_t dependent8 = 0;
  for (std::size_t drop = 0; drop < 9; ++drop) dependent8 += m.is_dependent(full_mask(9) & ~(Mask{1} << drop));
  o.require(dependent8 == 0, std::to_string(dependent8) + " dependent 8-subsets");
  o.require(m.is_dependent(full_mask(9)), "[9] independent");
  return o;
}

Outcome rigidity() {
  Outcome o;
  const auto rep = verify_rigidity(default_rigidity_cases(), 1);
  for (const auto& c : rep.symbolic) o.require(c.status == Status::pass, c.name + " " + c.detail);
  for (const auto [d, n] : default_rigidity_cases()) {
    Rng rng(derive_seed(1, 4, n * 10 + d));
    const auto fw = random_framework(n, d, complete_graph(n), rng);
    const std::size_t want = d * n - d * (d + 1) / 2;
    o.require(rank(rigidity_matrix(fw)) == want, "rank d" + std::to_string(d) + " n" + std::to_string(n));
  }
  return o;
}

Outcome terracini() {
  Outcome o;
  const std::vector<std::pair<SecantCase, std::size_t>> table{
      {{3, 3, 1}, 5}, {{3, 3, 2}, 8}, {{3, 4, 2}, 10}, {{4, 4, 3}, 15}};
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [c, want] = table[i];
    Rng rng(derive_seed(1, 3, i));
    const std::size_t dim = secant_dimension(segre_model(c.m, c.n), c.k, rng);
    o.require(dim == want, std::to_string(c.m) + "x" + std::to_string(c.n) + " k" + std::to_string(c.k) + " gave " +
                               std::to_string(dim));
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const std::string args :
       {"verify example31 --trials 20 --seed 11", "verify example32 --trials 20 --seed 11 --json",
        "verify intersection-axiom --trials 20 --seed 11", "verify theorem32 --seed 11", "verify rigidity --seed 11",
        "verify terracini --seed 11", "matroid --grid --seed 11", "secant --m 3 --n 4 --k 2 --seed 11"}) {
    const auto a = run_cli(args), b = run_cli(args);
    o.require(a.first == 0 && a == b && !a.second.empty(), args);
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"grid fixture identity", grid_fixture},
      {"CI and hypergraph ideals coincide", correspondence},
      {"loop and concurrent-lines components", example31},
      {"grid matroid circuits", theorem32},
      {"rank-2 component of the 12-point hypergraph", example32},
      {"intersection-axiom witnesses", intersection_axiom},
      {"algebraic matroid oracle", algebraic},
      {"rigidity ranks", rigidity},
      {"secant dimensions", terracini},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.ok;
    std::printf("[%s] %zu %s (%.2fs)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.note.empty() ? "" : ": ", o.note.c_str());
  }
  return failures ? 1 : 0;
}
