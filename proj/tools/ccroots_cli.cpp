// ccroots: generate CC residual systems, analyse their Newton polytopes, solve
// them, and run the numerical experiments. Exit codes: 0 ok, 1 usage or bad
// input, 2 capacity exceeded, 3 numerical failure.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "ccroots/io.hpp"

namespace fs = std::filesystem;
using namespace ccroots;
using io::json;

namespace {

struct HamiltonianSource {
  int n = 2;
  int k = 4;
  std::string scheme = "CCSD";
  std::string hamiltonian;  // path
  std::string model;        // random | ccs
  std::uint64_t seed = 1;
  double eps = 0.0;
  double gamma = 1.0 / 12;
  bool force_float = false;

  void add_options(CLI::App* app) {
    app->add_option("--n", n, "electrons")->check(CLI::NonNegativeNumber);
    app->add_option("--k", k, "spin orbitals")->check(CLI::PositiveNumber);
    app->add_option("--scheme", scheme, "CCS, CCSD, CCSDT or FULL");
    auto* h = app->add_option("--hamiltonian", hamiltonian, "JSON matrix or integral file")->check(CLI::ExistingFile);
    auto* m = app->add_option("--model", model, "built-in Hamiltonian: random or ccs")
                  ->check(CLI::IsMember({"random", "ccs"}));
    h->excludes(m);
    app->add_option("--seed", seed, "seed for the random model");
    app->add_option("--eps", eps, "eps of the ccs model")->check(CLI::NonNegativeNumber);
    app->add_option("--gamma", gamma, "gamma of the ccs model");
    app->add_flag("--float", force_float, "generate with floating coefficients even for exact input");
  }

  json to_json() const {
    return {{"n", n}, {"k", k}, {"scheme", scheme}, {"hamiltonian", hamiltonian}, {"model", model},
            {"seed", seed}, {"eps", eps}, {"gamma", gamma}, {"float", force_float}};
  }

  io::HamiltonianInput load() const {
    if (hamiltonian.empty() && model.empty()) throw CLI::ValidationError("give --hamiltonian or --model");
    if (!hamiltonian.empty()) return io::load_hamiltonian(hamiltonian);
    io::HamiltonianInput in;
    if (model == "ccs") {
      if (n != 2 || k != 4) throw std::invalid_argument("the ccs model lives in the 2-in-4 sector");
      in.N = 2;
      in.K = 4;
      in.numeric = build_ccs_hamiltonian(eps, gamma);
      return in;
    }
    const SpinOrbitalBasis basis(k, n);
    auto H = (n == 2 && k == 4) ? random_rational_hamiltonian_2in4(seed) : random_rational_hamiltonian(basis, seed);
    in.N = n;
    in.K = k;
    in.numeric = FockOperator<double>{H.basis, matrix_cast<double>(H.matrix)};
    in.exact = std::move(H);
    return in;
  }
};

fs::path prepare_out(const std::string& dir) {
  fs::path out(dir);
  fs::create_directories(out);
  return out;
}

void write_bounds(const fs::path& path, const json& header, int N, int K) {
  const auto b = bezout_bounds(N, K);
  io::write_csv(path, header,
                io::Table{{"N", "K", "naive", "refined", "quadratic"},
                          {{std::to_string(N), std::to_string(K), b.naive.str(), b.refined.str(), b.quadratic.str()}}});
}

template <class S>
json generate_and_write(const FockOperator<S>& H, const TruncationScheme& scheme, const fs::path& out,
                        const json& header) {
  const auto sys = generate_residual_system(H, scheme);
  json doc = io::system_to_json(sys);
  doc["header"] = header;
  io::write_json(out / "system.json", doc);
  json hdoc = io::hamiltonian_to_json(H);
  hdoc["header"] = header;
  io::write_json(out / "hamiltonian.json", hdoc);
  return doc;
}

int cmd_generate(const HamiltonianSource& src, const std::string& out_dir) {
  const json config = {{"command", "generate"}, {"source", src.to_json()}, {"out", out_dir}};
  const json header = io::make_header(config, src.seed);
  const auto in = src.load();
  const auto scheme = TruncationScheme::parse(src.scheme, in.N);
  const fs::path out = prepare_out(out_dir);
  const json doc = in.exact && !src.force_float ? generate_and_write(*in.exact, scheme, out, header)
                                                : generate_and_write(in.numeric, scheme, out, header);
  write_bounds(out / "bounds.csv", header, in.N, in.K);
  std::cout << "wrote " << (out / "system.json").string() << ": " << doc["equations"].size() << " equations, scheme "
            << scheme.name() << "\n";
  return 0;
}

template <class S>
int polytope_report(const PolynomialSystem<S>& sys, const fs::path& out, const json& header, bool surrogates) {
  const int n = sys.num_vars();
  std::vector<LatticePolytope> polys;
  io::Table fvec{{"equation", "variable", "terms", "dim", "vertices", "facets", "f_vector"}, {}};
  for (int i = 0; i < n; ++i) {
    auto P = newton_polytope(sys.equations[i]);
    json doc = io::polytope_to_json(P);
    doc["header"] = header;
    doc["equation"] = i + 1;
    doc["variable"] = io::excitation_to_json(sys.variables[i]);
    io::write_json(out / ("polytope_f" + std::to_string(i + 1) + ".json"), doc);
    std::string fv = "-";
    if (P.has_hrep() && static_cast<int>(P.facets().size()) <= kMaxFaceLatticeFacets) {
      fv = f_vector(P).to_string();
      io::Table g{{"facet_a", "facet_b", "intersection_dim"}, {}};
      for (const auto& e : facet_intersection_graph(P).edges)
        g.rows.push_back({std::to_string(e.a), std::to_string(e.b), std::to_string(e.dim)});
      io::write_csv(out / ("facet_graph_f" + std::to_string(i + 1) + ".csv"), header, g);
    }
    fvec.rows.push_back({std::to_string(i + 1), sys.variables[i].label(), std::to_string(sys.equations[i].size()),
                         std::to_string(P.dim()), P.has_hrep() ? std::to_string(P.vertices().size()) : "-",
                         P.has_hrep() ? std::to_string(P.facets().size()) : "-", fv});
    polys.push_back(std::move(P));
  }
  io::write_csv(out / "fvectors.csv", header, fvec);

  const auto bounds = bezout_bounds(sys.N, sys.K);
  io::Table summary{{"N", "K", "scheme", "mixed_volume", "quadratic", "refined", "naive", "note"}, {}};
  std::string mv = "-", note;
  const bool ccsd = sys.scheme.name() == "CCSD" || (sys.N == 2 && sys.scheme.name() == "FULL");
  if (n > kMaxMixedVolumeArity || n > kMaxHullDimension) {
    note = "mixed volume skipped: " + std::to_string(n) + " variables exceed the capacity of " +
           std::to_string(kMaxMixedVolumeArity);
    std::cerr << "notice: " << note << "\n";
  } else {
    mv = mixed_volume(polys).str();
  }
  summary.rows.push_back({std::to_string(sys.N), std::to_string(sys.K), sys.scheme.name(), mv,
                          ccsd ? bounds.quadratic.str() : "-", ccsd ? bounds.refined.str() : "-",
                          ccsd ? bounds.naive.str() : "-", note});
  io::write_csv(out / "mixed_volume.csv", header, summary);
  std::cout << "mixed volume: " << mv << (note.empty() ? "" : " (" + note + ")") << "\n";

  if (surrogates) {
    for (auto [kind, name] : {std::pair{SurrogateKind::singles, "N_S"}, std::pair{SurrogateKind::doubles, "N_D"}}) {
      json doc = io::polytope_to_json(surrogate_polytope(sys.N, sys.K, kind));
      doc["header"] = header;
      doc["name"] = name;
      io::write_json(out / (std::string("surrogate_") + name + ".json"), doc);
    }
    const auto rep = verify_inclusion_lemmas(sys.N, sys.K);
    io::Table lem{{"statement", "points_checked", "failures"}, {}};
    for (const auto& c : rep.checks)
      lem.rows.push_back({"\"" + c.statement + "\"", std::to_string(c.points_checked), std::to_string(c.failures)});
    io::write_csv(out / "inclusion_lemmas.csv", header, lem);
  }
  return 0;
}

int cmd_polytope(const std::string& system_path, const std::string& out_dir, bool surrogates) {
  const json config = {{"command", "polytope"}, {"system", system_path}, {"out", out_dir}, {"surrogates", surrogates}};
  const json doc = io::read_json(system_path);
  const std::uint64_t seed = doc.contains("header") ? doc["header"].value("seed", 0ULL) : 0ULL;
  const json header = io::make_header(config, seed);
  const fs::path out = prepare_out(out_dir);
  if (doc.value("exact", false)) return polytope_report(io::system_from_json<Rational>(doc), out, header, surrogates);
  return polytope_report(io::system_from_json<double>(doc), out, header, surrogates);
}

int cmd_solve(const HamiltonianSource& src, const std::string& method, const std::string& start,
              const std::string& out_dir) {
  const json config = {{"command", "solve"}, {"source", src.to_json()}, {"method", method}, {"start", start},
                       {"out", out_dir}};
  const json header = io::make_header(config, src.seed);
  const auto in = src.load();
  const auto scheme = TruncationScheme::parse(src.scheme, in.N);
  const auto sys = generate_residual_system(in.numeric, scheme);
  const auto num = NumericSystem::from(sys);
  const auto spectrum = fci_eigensolve(in.numeric).values;

  std::vector<RootRecord> roots;
  json stats;
  if (method == "newton") {
    Vector<Complex> t0 = Vector<Complex>::Zero(num.n);
    if (!start.empty()) {
      const auto t = io::amplitudes_from_json(io::read_json(start));
      if (t.scheme.name() != scheme.name()) throw std::invalid_argument("start amplitudes use scheme " + t.scheme.name());
      t0 = t.values.cast<Complex>();
    }
    roots.push_back(newton_solve(num, t0));
  } else {
    HomotopyConfig hc;
    hc.seed = src.seed;
    auto res = homotopy_solve(num, hc);
    stats = {{"paths", res.paths}, {"diverged", res.diverged}, {"singular", res.singular},
             {"failed", res.failed}, {"duplicates", res.duplicates}};
    roots = std::move(res.roots);
  }
  io::Table table{{"root", "status", "iterations", "residual", "re_energy", "im_energy", "classification", "fci_index"}, {}};
  json list = json::array();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto& r = roots[i];
    classify(r, spectrum);
    list.push_back(io::root_to_json(r));
    char e1[32], e2[32], res[32];
    std::snprintf(e1, sizeof e1, "%.15g", r.energy.real());
    std::snprintf(e2, sizeof e2, "%.15g", r.energy.imag());
    std::snprintf(res, sizeof res, "%.3g", r.residual_norm);
    table.rows.push_back({std::to_string(i), to_string(r.status), std::to_string(r.iterations), res, e1, e2,
                          to_string(r.classification), r.fci_index ? std::to_string(*r.fci_index) : ""});
  }
  const fs::path out = prepare_out(out_dir);
  io::write_json(out / "roots.json", {{"header", header},
                                      {"spectrum", std::vector<double>(spectrum.data(), spectrum.data() + spectrum.size())},
                                      {"homotopy", stats},
                                      {"roots", list}});
  io::write_csv(out / "roots.csv", header, table);
  std::cout << roots.size() << " root(s) written to " << (out / "roots.json").string() << "\n";
  if (method == "newton" && !roots.front().converged()) {
    std::cerr << "newton: " << to_string(roots.front().status) << "\n";
    return 3;
  }
  return 0;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: " + item);
    }
  }
  return out;
}

struct ExperimentOptions {
  std::string name;
  std::uint64_t seed = 1;
  int points = 81;
  double gamma = 1.0 / 12;
  double eps_max = 8.0;
  std::string radii = "0,0.1,0.6,1.0,2.0";
  int samples = 50;
  int instances = 1;
  int census_seeds = 10;
  double rank_gap = kDefaultRankGap;
};

int cmd_experiment(const ExperimentOptions& o, const std::string& out_dir) {
  const json config = {{"command", "experiment"}, {"name", o.name}, {"seed", o.seed}, {"points", o.points},
                       {"gamma", o.gamma}, {"eps_max", o.eps_max}, {"radii", o.radii}, {"samples", o.samples},
                       {"instances", o.instances}, {"census_seeds", o.census_seeds}, {"rank_gap", o.rank_gap},
                       {"out", out_dir}};
  const json header = io::make_header(config, o.seed);
  const fs::path out = prepare_out(out_dir);
  auto emit = [&](const std::string& stem, json doc, const io::Table& table) {
    doc["header"] = header;
    io::write_json(out / (stem + ".json"), doc);
    io::write_csv(out / (stem + ".csv"), header, table);
    std::cout << "wrote " << (out / (stem + ".csv")).string() << " (" << table.rows.size() << " rows)\n";
  };
  if (o.name == "ccs-trajectory") {
    TrajectoryConfig tc;
    tc.gamma = o.gamma;
    tc.eps_max = o.eps_max;
    tc.points = o.points;
    tc.homotopy.seed = o.seed;
    const auto rep = ccs_trajectory_experiment(tc);
    emit("ccs_trajectory", io::trajectory_to_json(rep), io::trajectory_table(rep));
  } else if (o.name == "newton-perturb") {
    PerturbationConfig pc;
    pc.radii = parse_list(o.radii);
    pc.samples = o.samples;
    for (int i = 0; i < o.instances; ++i) {
      const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
      pc.seed = seed;
      const auto inst = random_hamiltonian_3in6(seed, o.rank_gap);
      const auto rep = perturbation_experiment(inst, pc);
      emit("newton_perturb_seed" + std::to_string(seed), io::perturbation_to_json(rep), io::perturbation_table(rep));
    }
  } else if (o.name == "homotopy-census") {
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < o.census_seeds; ++i) seeds.push_back(o.seed + static_cast<std::uint64_t>(i));
    const auto entries = homotopy_census(seeds);
    emit("homotopy_census", io::census_to_json(entries), io::census_table(entries));
  } else {
    throw CLI::ValidationError("unknown experiment " + o.name + "; valid: ccs-trajectory, newton-perturb, homotopy-census");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled-cluster root structure toolkit"};
  app.set_config("--config", "", "TOML/INI configuration file; command-line flags take precedence");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kVersion));

  HamiltonianSource gen_src, solve_src;
  std::string gen_out = "out", poly_out = "out", solve_out = "out", exp_out = "out";

  auto* gen = app.add_subcommand("generate", "write the CC residual system and root-count bounds");
  gen_src.add_options(gen);
  gen->add_option("--out", gen_out, "output directory");

  std::string system_path;
  bool surrogates = false;
  auto* poly = app.add_subcommand("polytope", "Newton polytopes, f-vectors, facet graphs and mixed volume");
  poly->add_option("--system", system_path, "system.json from generate")->required()->check(CLI::ExistingFile);
  poly->add_flag("--surrogates", surrogates, "also emit N_S, N_D and the inclusion lemma checks");
  poly->add_option("--out", poly_out, "output directory");

  std::string method = "homotopy", start;
  auto* solve = app.add_subcommand("solve", "find CC roots by homotopy or Newton");
  solve_src.add_options(solve);
  solve->add_option("--method", method, "homotopy or newton")->check(CLI::IsMember({"homotopy", "newton"}));
  solve->add_option("--start", start, "amplitude JSON for newton (default zero)")->check(CLI::ExistingFile);
  solve->add_option("--out", solve_out, "output directory");

  ExperimentOptions eo;
  auto* exp = app.add_subcommand("experiment", "ccs-trajectory, newton-perturb or homotopy-census");
  exp->add_option("name", eo.name, "experiment name")->required();
  exp->add_option("--seed", eo.seed, "base seed");
  exp->add_option("--points", eo.points, "eps grid points (ccs-trajectory)")->check(CLI::PositiveNumber);
  exp->add_option("--gamma", eo.gamma, "gamma (ccs-trajectory)");
  exp->add_option("--eps-max", eo.eps_max, "largest eps (ccs-trajectory)")->check(CLI::NonNegativeNumber);
  exp->add_option("--radii", eo.radii, "comma-separated perturbation norms (newton-perturb)");
  exp->add_option("--samples", eo.samples, "samples per radius (newton-perturb)")->check(CLI::PositiveNumber);
  exp->add_option("--instances", eo.instances, "3-in-6 instances, seeds seed..seed+n-1")->check(CLI::PositiveNumber);
  exp->add_option("--rank-gap", eo.rank_gap, "diagonal excitation-rank gap of the 3-in-6 draws")
      ->check(CLI::NonNegativeNumber);
  exp->add_option("--census-seeds", eo.census_seeds, "instances (homotopy-census)")->check(CLI::PositiveNumber);
  exp->add_option("--out", exp_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) return cmd_generate(gen_src, gen_out);
    if (*poly) return cmd_polytope(system_path, poly_out, surrogates);
    if (*solve) return cmd_solve(solve_src, method, start, solve_out);
    if (*exp) return cmd_experiment(eo, exp_out);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical: " << e.what() << "\n";
    return 3;
  } catch (const CLI::Error& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
