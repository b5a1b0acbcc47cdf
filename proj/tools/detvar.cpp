#include "detvar/detvar.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace detvar;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInconclusive = 3 };

struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  GroebnerBudget budget;
  std::string out;
  bool json = false;
};

std::string header(const RunConfig& rc, const std::string& comment) {
  std::ostringstream os;
  os << comment << " detvar " << rc.command << '\n'
     << comment << " seed " << rc.seed << " trials " << rc.trials << " max_pairs " << rc.budget.max_pairs << " max_degree "
     << rc.budget.max_degree << '\n';
  return os.str();
}

json run_json(const RunConfig& rc) {
  return {{"command", rc.command},
          {"seed", rc.seed},
          {"trials", rc.trials},
          {"max_pairs", rc.budget.max_pairs},
          {"max_degree", rc.budget.max_degree}};
}

// Writes to stdout, and to <out>/<file> when --out is set.
void emit(const RunConfig& rc, const std::string& file, const std::string& content) {
  std::cout << content;
  if (rc.out.empty()) return;
  fs::create_directories(rc.out);
  std::ofstream f(fs::path(rc.out) / file, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (fs::path(rc.out) / file).string());
  f << content;
}

void emit_text_or_json(const RunConfig& rc, const std::string& stem, const std::string& text, json j) {
  if (rc.json) {
    json doc{{"run", run_json(rc)}};
    for (auto& [k, v] : j.items()) doc[k] = v;
    emit(rc, stem + ".json", doc.dump(2) + "\n");
  } else {
    emit(rc, stem + ".txt", header(rc, "#") + text);
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return in;
}

struct GridFlags {
  std::size_t s = 3, t = 3, k = 3, l = 3, d = 3;
  GridSpec spec() const { return {s, t, k, l, d}; }
};

void add_grid_flags(CLI::App* app, GridFlags& g) {
  app->add_option("--s", g.s, "column subset size")->capture_default_str();
  app->add_option("--t", g.t, "row subset size")->capture_default_str();
  app->add_option("--k", g.k, "grid rows")->capture_default_str();
  app->add_option("--l", g.l, "grid columns")->capture_default_str();
  app->add_option("--d", g.d, "ambient dimension")->capture_default_str();
}

// ---- ideal ---------------------------------------------------------------

struct IdealArgs {
  bool grid = false;
  GridFlags g;
  std::string ci, hypergraph;
  bool as_matrix = false;
  std::string format = "text";
};

std::string cas_script(const Ring& ring, const std::vector<Polynomial>& gens, const RunConfig& rc) {
  std::ostringstream os;
  os << header(rc, "//") << "ring R = 0, (";
  for (std::size_t v = 0; v < ring.size(); ++v) os << (v ? ", " : "") << ring.name(v);
  os << "), dp;\n";
  if (gens.empty()) {
    os << "ideal I = 0;\n";
    return os.str();
  }
  os << "ideal I =\n";
  for (std::size_t i = 0; i < gens.size(); ++i)
    os << "  " << format_polynomial(gens[i], ring) << (i + 1 < gens.size() ? ",\n" : ";\n");
  return os.str();
}

int cmd_ideal(const RunConfig& rc, const IdealArgs& a) {
  const int sources = int(a.grid) + int(!a.ci.empty()) + int(!a.hypergraph.empty());
  if (sources != 1) throw std::invalid_argument("ideal needs exactly one of --grid, --ci, --hypergraph");
  if (a.as_matrix && a.ci.empty()) throw std::invalid_argument("--as-matrix applies to --ci input only");

  Ring ring;
  std::vector<Polynomial> gens;
  if (a.grid) {
    const Ideal i = hypergraph_ideal(grid_hypergraph(a.g.spec()), a.g.d);
    ring = i.ring();
    gens = i.generators();
  } else if (!a.hypergraph.empty()) {
    auto in = open_input(a.hypergraph);
    const Ideal i = hypergraph_ideal(parse_hypergraph(in), a.g.d);
    ring = i.ring();
    gens = i.generators();
  } else {
    auto in = open_input(a.ci);
    const CIProblem prob = parse_ci_file(in);
    const Ideal i = ci_ideal(prob.statements, prob.model);
    ring = i.ring();
    gens = i.generators();
    if (a.as_matrix) {
      const auto shape = prob.model.observed_shape();
      const auto map = tensor_to_matrix_map(shape);
      ring = Ring::matrix("x", shape[0], ring.size() / shape[0]);
      for (auto& g : gens) g = g.renamed(map).sign_normalized();
    }
  }
  gens = dedup_up_to_sign(gens);
  std::sort(gens.begin(), gens.end());

  if (a.format == "cas") {
    emit(rc, "ideal.cas", cas_script(ring, gens, rc));
    return kPass;
  }
  std::string text;
  json list = json::array();
  for (const auto& g : gens) {
    const auto s = format_polynomial(g, ring);
    text += s + "\n";
    list.push_back(s);
  }
  emit_text_or_json(rc, "ideal", text, {{"ring", ring.names()}, {"generators", list}});
  return kPass;
}

// ---- matroid -------------------------------------------------------------

struct MatroidArgs {
  std::string matrix, param;
  bool grid = false;
  GridFlags g;
};

std::string circuit_text(const std::vector<Edge>& circuits, const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& c : circuits) {
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? " " : "") + labels[c[i]];
    out += '\n';
  }
  return out;
}

template <class V>
std::string join_numbers(const V& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

int cmd_matroid(const RunConfig& rc, const MatroidArgs& a) {
  const int sources = int(a.grid) + int(!a.matrix.empty()) + int(!a.param.empty());
  if (sources != 1) throw std::invalid_argument("matroid needs exactly one of --matrix, --grid, --param");

  std::optional<QMatrix> x;
  std::vector<std::string> labels;
  std::optional<Matroid> m;
  if (!a.param.empty()) {
    auto in = open_input(a.param);
    const PolyMap phi = parse_polymap(in);
    Rng rng(derive_seed(rc.seed, 2));
    m = algebraic_matroid(phi, rng);
    labels = phi.labels;
  } else {
    if (a.grid) {
      Rng rng(derive_seed(rc.seed, 1));
      x = realize_grid_matroid(a.g.spec(), rng);
    } else {
      auto in = open_input(a.matrix);
      x = parse_matrix(in);
    }
    m = matroid_from_matrix(*x);
    for (std::size_t j = 0; j < x->cols(); ++j) labels.push_back(std::to_string(j + 1));
  }
  const auto circuits = m->circuits();

  std::ostringstream os;
  json j;
  os << "ground " << m->size() << '\n' << "rank " << m->rank() << '\n';
  j["ground"] = m->size();
  j["rank"] = m->rank();
  if (a.grid) {
    os << "realization\n" << format_matrix(*x);
    j["realization"] = format_matrix(*x);
  }
  os << "circuits " << circuits.size() << '\n' << circuit_text(circuits, labels);
  json cs = json::array();
  for (const auto& c : circuits) {
    json one = json::array();
    for (auto e : c) one.push_back(labels[e]);
    cs.push_back(one);
  }
  j["circuits"] = cs;
  if (x && x->rows() == 3) {
    const auto sig = arrangement_signature(*x);
    os << "signature lines " << sig.lines << " points-per-line [" << join_numbers(sig.points_per_line)
       << "] lines-per-multipoint [" << join_numbers(sig.lines_per_multipoint) << "]\n";
    j["signature"] = {{"lines", sig.lines},
                      {"points_per_line", sig.points_per_line},
                      {"lines_per_multipoint", sig.lines_per_multipoint}};
  }
  emit_text_or_json(rc, "matroid", os.str(), j);
  return kPass;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string name;
  GridFlags g;
  std::optional<std::size_t> n, d, m, k;
  bool grid_flags_given = false;
};

int status_exit(Status s) {
  switch (s) {
    case Status::pass: return kPass;
    case Status::fail: return kFail;
    case Status::inconclusive: return kInconclusive;
  }
  return kFail;
}

int cmd_verify(const RunConfig& rc, VerifyArgs a, CLI::App* sub) {
  auto given = [&](const char* flag) { return sub->count(flag) > 0; };
  WitnessReport rep;
  if (a.name == "example31") {
    rep = verify_example_3_1(rc.trials, rc.seed, rc.budget);
  } else if (a.name == "example32") {
    rep = verify_example_3_2_rank2(rc.trials, rc.seed);
  } else if (a.name == "intersection-axiom") {
    GridSpec spec{3, 3, 3, 4, 3};
    if (given("--s")) spec.s = a.g.s;
    if (given("--t")) spec.t = a.g.t;
    if (given("--k")) spec.k = a.g.k;
    if (given("--l")) spec.l = a.g.l;
    if (given("--d")) spec.d = a.g.d;
    rep = verify_intersection_axiom(spec, rc.trials, rc.seed);
  } else if (a.name == "theorem32") {
    rep = verify_theorem32(a.g.spec(), rc.seed);
  } else if (a.name == "rigidity") {
    auto cases = default_rigidity_cases();
    if (given("--n") || given("--d")) {
      if (!a.n || !a.d) throw std::invalid_argument("verify rigidity needs both --n and --d");
      cases = {{*a.d, *a.n}};
    }
    rep = verify_rigidity(cases, rc.seed);
  } else if (a.name == "terracini") {
    auto cases = default_secant_cases();
    if (a.m || a.n || a.k) {
      if (!a.m || !a.n || !a.k) throw std::invalid_argument("verify terracini needs --m, --n and --k together");
      cases = {{*a.m, *a.n, *a.k}};
    }
    rep = verify_terracini(cases, rc.seed);
  } else {
    throw std::invalid_argument("unknown verification " + a.name);
  }
  const std::string stem = "verify-" + a.name;
  if (rc.json)
    emit_text_or_json(rc, stem, {}, rep.to_json());
  else
    emit(rc, stem + ".txt", header(rc, "#") + rep.to_text());
  return status_exit(rep.status());
}

// ---- secant / rigidity / grid --------------------------------------------

int cmd_secant(const RunConfig& rc, std::size_t m, std::size_t n, std::size_t k) {
  Rng rng(derive_seed(rc.seed, 3));
  const std::size_t dim = secant_dimension(segre_model(m, n), k, rng);
  const std::size_t want = expected_secant_dimension(m, n, k);
  std::ostringstream os;
  os << "model rank-1 " << m << "x" << n << "\nk " << k << "\naffine " << dim << "\nprojective " << dim - 1
     << "\nexpected " << want << '\n';
  emit_text_or_json(rc, "secant", os.str(),
                    {{"m", m}, {"n", n}, {"k", k}, {"affine", dim}, {"projective", dim - 1}, {"expected", want}});
  return dim == want ? kPass : kFail;
}

int cmd_rigidity(const RunConfig& rc, std::optional<std::size_t> n, std::optional<std::size_t> d,
                 const std::string& framework) {
  if (!framework.empty()) {
    if (n || d) throw std::invalid_argument("--framework excludes --n and --d");
    auto in = open_input(framework);
    const Framework fw = parse_framework(in);
    const QMatrix r = rigidity_matrix(fw);
    const std::size_t rk = rank(r);
    std::size_t in_kernel = 0;
    const auto motions = trivial_motions(fw);
    for (const auto& v : motions) {
      const auto img = multiply(r, v);
      if (std::all_of(img.begin(), img.end(), [](const Rational& q) { return is_zero(q); })) ++in_kernel;
    }
    std::ostringstream os;
    os << "n " << fw.n << "\nd " << fw.d << "\nedges " << fw.edges.size() << "\nrank " << rk << "\nmotions-in-kernel "
       << in_kernel << "/" << motions.size() << '\n';
    emit_text_or_json(rc, "rigidity", os.str(),
                      {{"n", fw.n},
                       {"d", fw.d},
                       {"edges", fw.edges.size()},
                       {"rank", rk},
                       {"motions_in_kernel", in_kernel},
                       {"motions", motions.size()}});
    return in_kernel == motions.size() ? kPass : kFail;
  }
  if (!n || !d) throw std::invalid_argument("rigidity needs --n and --d, or --framework");
  Rng rng(derive_seed(rc.seed, 4));
  const RigidityReport r = generic_rigidity_check(*n, *d, rng);
  std::ostringstream os;
  os << "n " << r.n << "\nd " << r.d << "\nrank " << r.rank << "\nexpected " << r.expected_rank << "\nk" << r.d + 2
     << "-circuits " << r.kd2_circuits << "/" << r.kd2_checked << "\nmotions-in-kernel " << r.motions_in_kernel << "/"
     << r.motions_checked << "\nstatus " << (r.passed() ? "pass" : "fail") << '\n';
  emit_text_or_json(rc, "rigidity", os.str(),
                    {{"n", r.n},
                     {"d", r.d},
                     {"rank", r.rank},
                     {"expected", r.expected_rank},
                     {"kd2_circuits", r.kd2_circuits},
                     {"kd2_checked", r.kd2_checked},
                     {"motions_in_kernel", r.motions_in_kernel},
                     {"motions", r.motions_checked},
                     {"status", r.passed() ? "pass" : "fail"}});
  return r.passed() ? kPass : kFail;
}

int cmd_grid(const RunConfig& rc, std::size_t k, std::size_t l, bool sets) {
  const Grid g = grid_matrix(k, l);
  std::string text = format_grid(g);
  auto set_lines = [&](char tag, const std::vector<Edge>& groups) {
    std::string s;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      s += tag + std::to_string(i + 1) + ":";
      for (auto v : groups[i]) s += " " + std::to_string(v + 1);
      s += '\n';
    }
    return s;
  };
  if (sets) text += set_lines('R', g.rows) + set_lines('C', g.cols);
  json labels = json::array();
  for (std::size_t i = 0; i < k; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < l; ++j) row.push_back(g.labels(i, j));
    labels.push_back(row);
  }
  emit_text_or_json(rc, "grid", text, {{"k", k}, {"l", l}, {"labels", labels}});
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinantal varieties, CI ideals, grid matroids, secants and rigidity"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file replacing command-line flags");

  RunConfig rc;
  app.add_option("--seed", rc.seed, "master seed")->capture_default_str();
  app.add_option("--trials", rc.trials, "sampling trials per check")->capture_default_str();
  app.add_option("--max-pairs", rc.budget.max_pairs, "Groebner pair budget")->capture_default_str();
  app.add_option("--max-degree", rc.budget.max_degree, "Groebner degree budget")->capture_default_str();
  app.add_option("--out", rc.out, "directory for output files");
  app.add_flag("--json", rc.json, "JSON output");

  IdealArgs ia;
  auto* ideal = app.add_subcommand("ideal", "generators of a grid, CI or hypergraph ideal");
  ideal->add_flag("--grid", ia.grid, "grid hypergraph ideal from --s --t --k --l --d");
  add_grid_flags(ideal, ia.g);
  ideal->add_option("--ci", ia.ci, "CI statement file")->check(CLI::ExistingFile);
  ideal->add_option("--hypergraph", ia.hypergraph, "hypergraph file (with --d)")->check(CLI::ExistingFile);
  ideal->add_flag("--as-matrix", ia.as_matrix, "rename CI coordinates to the first-variable-by-rest matrix");
  ideal->add_option("--format", ia.format, "text or cas")->check(CLI::IsMember({"text", "cas"}))->capture_default_str();

  MatroidArgs ma;
  auto* matroid = app.add_subcommand("matroid", "rank, circuits and signature of a matroid");
  matroid->add_option("--matrix", ma.matrix, "matrix file (column matroid)")->check(CLI::ExistingFile);
  matroid->add_flag("--grid", ma.grid, "realize the grid matroid from --s --t --k --l --d");
  add_grid_flags(matroid, ma.g);
  matroid->add_option("--param", ma.param, "parametrization file (algebraic matroid)")->check(CLI::ExistingFile);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a named verification and write its report");
  verify->add_option("name", va.name, "example31, example32, intersection-axiom, theorem32, rigidity, terracini")
      ->required()
      ->check(CLI::IsMember({"example31", "example32", "intersection-axiom", "theorem32", "rigidity", "terracini"}));
  add_grid_flags(verify, va.g);
  verify->add_option("--n", va.n, "vertices (rigidity) or columns (terracini)");
  verify->add_option("--m", va.m, "rows (terracini)");
  verify->add_option("--rank", va.k, "secant order k (terracini)");

  std::size_t sm = 3, sn = 3, sk = 2;
  auto* secant = app.add_subcommand("secant", "affine dimension of the k-th secant of rank-1 m x n matrices");
  secant->add_option("--m", sm)->capture_default_str();
  secant->add_option("--n", sn)->capture_default_str();
  secant->add_option("--k", sk)->capture_default_str();

  std::optional<std::size_t> rn, rd;
  std::string framework;
  auto* rigidity = app.add_subcommand("rigidity", "rigidity-matrix rank of K_n or of a framework file");
  rigidity->add_option("--n", rn, "vertices of K_n");
  rigidity->add_option("--d", rd, "dimension");
  rigidity->add_option("--framework", framework, "framework file")->check(CLI::ExistingFile);

  std::size_t gk = 4, gl = 7;
  bool gsets = false;
  auto* grid = app.add_subcommand("grid", "the k x l grid label matrix");
  grid->add_option("--k", gk)->capture_default_str();
  grid->add_option("--l", gl)->capture_default_str();
  grid->add_flag("--sets", gsets, "also list row and column vertex sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*ideal) {
      rc.command = "ideal";
      return cmd_ideal(rc, ia);
    }
    if (*matroid) {
      rc.command = "matroid";
      return cmd_matroid(rc, ma);
    }
    if (*verify) {
      rc.command = "verify " + va.name;
      va.d = verify->count("--d") ? std::optional<std::size_t>(va.g.d) : std::nullopt;
      return cmd_verify(rc, va, verify);
    }
    if (*secant) {
      rc.command = "secant";
      return cmd_secant(rc, sm, sn, sk);
    }
    if (*rigidity) {
      rc.command = "rigidity";
      return cmd_rigidity(rc, rn, rd, framework);
    }
    if (*grid) {
      rc.command = "grid";
      return cmd_grid(rc, gk, gl, gsets);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExhausted& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
