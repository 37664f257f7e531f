#include "ccroots/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ccroots::io {

std::string config_hash(const json& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json make_header(const json& config, std::uint64_t seed) {
  return {{"version", kVersion}, {"config_hash", config_hash(config)}, {"seed", seed}, {"config", config}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& doc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

json scalar_to_json(const Rational& r) {
  if (denominator(r) == 1) {
    const BigInt n = numerator(r);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
      return n.convert_to<long long>();
  }
  return r.str();
}

json scalar_to_json(double x) { return x; }

std::optional<Rational> exact_scalar(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(BigInt(s));
      return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("not a rational number: " + s);
    }
  }
  if (j.is_number()) return std::nullopt;
  throw std::invalid_argument("expected a number, got " + j.dump());
}

double float_scalar(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (auto r = exact_scalar(j)) return r->convert_to<double>();
  throw std::invalid_argument("expected a number, got " + j.dump());
}

namespace {

// Fills both representations; exact stays set only while every entry is exact.
struct ScalarGrid {
  Matrix<double> numeric;
  Matrix<Rational> exact;
  bool is_exact = true;

  ScalarGrid(Eigen::Index r, Eigen::Index c) : numeric(r, c), exact(r, c) {}
  void set(Eigen::Index i, Eigen::Index k, const json& j) {
    numeric(i, k) = float_scalar(j);
    if (!is_exact) return;
    if (auto q = exact_scalar(j)) exact(i, k) = *q;
    else is_exact = false;
  }
};

ScalarGrid square_matrix(const json& rows, std::size_t n, const char* what) {
  if (!rows.is_array() || rows.size() != n)
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) + " rows");
  ScalarGrid g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw std::invalid_argument(std::string(what) + ": row " + std::to_string(i) + " has wrong length");
    for (std::size_t k = 0; k < n; ++k) g.set(i, k, rows[i][k]);
  }
  return g;
}

}  // namespace

HamiltonianInput hamiltonian_from_matrix_json(const json& doc) {
  HamiltonianInput in;
  in.N = doc.at("N").get<int>();
  in.K = doc.at("K").get<int>();
  const SpinOrbitalBasis basis(in.K, in.N);
  auto g = square_matrix(doc.at("matrix"), static_cast<std::size_t>(basis.fci_dimension()), "matrix");
  in.numeric = hamiltonian_from_matrix(g.numeric, basis);
  if (g.is_exact) in.exact = hamiltonian_from_matrix(g.exact, basis);
  return in;
}

HamiltonianInput hamiltonian_from_integrals_json(const json& doc) {
  HamiltonianInput in;
  in.N = doc.at("N").get<int>();
  in.K = doc.at("K").get<int>();
  const SpinOrbitalBasis basis(in.K, in.N);
  const auto conv_name = doc.value("convention", std::string("chemist"));
  const auto conv = parse_convention(conv_name);
  if (!conv) throw std::invalid_argument("integrals: unknown convention " + conv_name);
  auto h = square_matrix(doc.at("h"), static_cast<std::size_t>(in.K), "h");
  const auto& vj = doc.at("v");
  const std::size_t K4 = static_cast<std::size_t>(in.K) * in.K * in.K * in.K;
  if (!vj.is_array() || vj.size() != K4) throw std::invalid_argument("integrals: v must hold K^4 entries");
  std::vector<double> vd;
  std::vector<Rational> vr;
  bool exact = h.is_exact;
  for (const auto& e : vj) {
    vd.push_back(float_scalar(e));
    if (!exact) continue;
    if (auto q = exact_scalar(e)) vr.push_back(*q);
    else exact = false;
  }
  in.numeric = hamiltonian_from_integrals(IntegralSet<double>::create(in.K, h.numeric, vd, *conv), basis);
  if (exact) in.exact = hamiltonian_from_integrals(IntegralSet<Rational>::create(in.K, h.exact, vr, *conv), basis);
  return in;
}

HamiltonianInput load_hamiltonian(const std::filesystem::path& path) {
  const json doc = read_json(path);
  if (doc.contains("matrix")) return hamiltonian_from_matrix_json(doc);
  if (doc.contains("h")) return hamiltonian_from_integrals_json(doc);
  throw std::invalid_argument(path.string() + ": needs a \"matrix\" or integrals \"h\"/\"v\"");
}

namespace {

template <class S>
json operator_to_json(const FockOperator<S>& H) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < H.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < H.matrix.cols(); ++k) row.push_back(scalar_to_json(H.matrix(i, k)));
    rows.push_back(row);
  }
  json basis = json::array();
  for (std::size_t k = 0; k < H.basis->size(); ++k) basis.push_back(excitation_to_json(H.basis->excitation(k)));
  return {{"N", H.basis->orbitals().N()}, {"K", H.basis->orbitals().K()}, {"basis", basis}, {"matrix", rows}};
}

}  // namespace

json hamiltonian_to_json(const FockOperator<double>& H) { return operator_to_json(H); }
json hamiltonian_to_json(const FockOperator<Rational>& H) { return operator_to_json(H); }

json excitation_to_json(const ExcitationIndex& mu) {
  return {{"occupied", mu.occupied}, {"virtuals", mu.virtuals}};
}

ExcitationIndex excitation_from_json(const json& j) {
  return ExcitationIndex{j.at("occupied").get<std::vector<int>>(), j.at("virtuals").get<std::vector<int>>()};
}

json amplitudes_to_json(const ClusterAmplitudes<double>& t) {
  json vals = json::array();
  for (std::size_t k = 0; k < t.size(); ++k) {
    json e = excitation_to_json(t.excitation(k));
    e["value"] = t.values(static_cast<Eigen::Index>(k));
    vals.push_back(e);
  }
  return {{"N", t.basis->orbitals().N()}, {"K", t.basis->orbitals().K()}, {"scheme", t.scheme.name()},
          {"amplitudes", vals}};
}

ClusterAmplitudes<double> amplitudes_from_json(const json& j) {
  const int N = j.at("N").get<int>(), K = j.at("K").get<int>();
  auto basis = make_sector_basis(SpinOrbitalBasis(K, N));
  auto t = ClusterAmplitudes<double>::zero(basis, TruncationScheme::parse(j.at("scheme").get<std::string>(), N));
  for (const auto& e : j.at("amplitudes")) t.at(excitation_from_json(e)) = e.at("value").get<double>();
  return t;
}

json polytope_to_json(const LatticePolytope& P) {
  json out{{"ambient_dim", P.ambient_dim()}, {"generators", P.generators()}, {"has_hrep", P.has_hrep()}};
  if (!P.has_hrep()) return out;
  auto facet_list = [](const std::vector<Facet>& fs) {
    json a = json::array();
    for (const auto& f : fs) a.push_back({{"offset", f.offset}, {"normal", f.normal}});
    return a;
  };
  out["dim"] = P.dim();
  out["vertices"] = P.vertices();
  out["facets"] = facet_list(P.facets());
  out["equations"] = facet_list(P.equations());
  out["volume"] = scalar_to_json(P.volume());
  if (P.dim() >= 1 && static_cast<int>(P.facets().size()) <= kMaxFaceLatticeFacets) {
    out["f_vector"] = f_vector(P).counts;
    json edges = json::array();
    for (const auto& e : facet_intersection_graph(P).edges) edges.push_back({e.a, e.b, e.dim});
    out["facet_graph"] = edges;
  }
  return out;
}

namespace {

json complex_json(Complex z) { return {z.real(), z.imag()}; }

json complex_vector(const Vector<Complex>& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(complex_json(v(k)));
  return a;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json homotopy_stats(const HomotopyResult& h) {
  return {{"paths", h.paths}, {"roots", h.roots.size()}, {"diverged", h.diverged}, {"singular", h.singular},
          {"failed", h.failed}, {"duplicates", h.duplicates}};
}

}  // namespace

json root_to_json(const RootRecord& r) {
  json j{{"amplitudes", complex_vector(r.amplitudes)},
         {"residual_norm", r.residual_norm},
         {"iterations", r.iterations},
         {"status", to_string(r.status)},
         {"energy", complex_json(r.energy)},
         {"classification", to_string(r.classification)}};
  j["fci_index"] = r.fci_index ? json(*r.fci_index) : json(nullptr);
  return j;
}

json trajectory_to_json(const TrajectoryReport& r) {
  json pts = json::array(), fci = json::array(), solves = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"eps", p.eps},
                   {"branch", p.branch},
                   {"energy", complex_json(p.energy)},
                   {"classification", to_string(p.classification)},
                   {"amplitudes", complex_vector(p.amplitudes)}});
  for (const auto& s : r.fci) fci.push_back(std::vector<double>(s.data(), s.data() + s.size()));
  for (const auto& s : r.solves) solves.push_back(homotopy_stats(s));
  return {{"experiment", "ccs-trajectory"},
          {"gamma", r.config.gamma},
          {"grid", r.config.grid()},
          {"branches", r.branches},
          {"refinements", r.refinements},
          {"points", pts},
          {"fci", fci},
          {"homotopy", solves}};
}

json perturbation_to_json(const PerturbationReport& r) {
  json trials = json::array(), summary = json::array();
  for (const auto& t : r.trials) {
    json j = root_to_json(t.root);
    j["radius"] = t.radius;
    j["sample"] = t.sample;
    j["subseed"] = t.subseed;
    j["distance"] = t.distance;
    j["other_root"] = t.other_root;
    trials.push_back(j);
  }
  for (const auto& s : r.summary)
    summary.push_back({{"radius", s.radius},
                       {"samples", s.samples},
                       {"converged", s.converged},
                       {"success_rate", s.success_rate()},
                       {"other_roots", s.other_roots},
                       {"unphysical", s.unphysical},
                       {"mean_iterations", s.mean_iterations}});
  return {{"experiment", "newton-perturb"},
          {"instance_seed", r.instance_seed},
          {"target_energy", r.target_energy},
          {"trials", trials},
          {"summary", summary}};
}

json census_to_json(const std::vector<CensusEntry>& entries) {
  json a = json::array();
  for (const auto& e : entries) {
    json roots = json::array();
    for (const auto& r : e.result.roots) roots.push_back(root_to_json(r));
    json stats = homotopy_stats(e.result);
    stats["seed"] = e.seed;
    stats["spectrum"] = std::vector<double>(e.spectrum.data(), e.spectrum.data() + e.spectrum.size());
    stats["max_energy_error"] = std::isfinite(e.max_energy_error) ? json(e.max_energy_error) : json(nullptr);
    stats["matches_fci"] = e.matches_fci;
    stats["seconds"] = e.seconds;
    stats["root_records"] = roots;
    a.push_back(stats);
  }
  return {{"experiment", "homotopy-census"}, {"instances", a}};
}

Table trajectory_table(const TrajectoryReport& r) {
  Table t{{"kind", "eps", "branch", "re_energy", "im_energy", "classification"}, {}};
  for (const auto& p : r.points)
    t.rows.push_back({"root", num(p.eps), std::to_string(p.branch), num(p.energy.real()), num(p.energy.imag()),
                      to_string(p.classification)});
  const auto grid = r.config.grid();
  for (std::size_t k = 0; k < r.fci.size(); ++k)
    for (Eigen::Index i = 0; i < r.fci[k].size(); ++i)
      t.rows.push_back({"fci", num(grid[k]), std::to_string(i), num(r.fci[k](i)), "0", "eigenvalue"});
  return t;
}

Table perturbation_table(const PerturbationReport& r) {
  Table t{{"kind", "radius", "sample", "subseed", "status", "iterations", "residual", "distance", "other_root",
           "re_energy", "im_energy", "classification", "success_rate"},
          {}};
  for (const auto& x : r.trials)
    t.rows.push_back({"trial", num(x.radius), std::to_string(x.sample), std::to_string(x.subseed),
                      to_string(x.root.status), std::to_string(x.root.iterations), num(x.root.residual_norm),
                      num(x.distance), x.other_root ? "1" : "0", num(x.root.energy.real()),
                      num(x.root.energy.imag()), to_string(x.root.classification), ""});
  for (const auto& s : r.summary)
    t.rows.push_back({"summary", num(s.radius), std::to_string(s.samples), "", "", num(s.mean_iterations), "", "",
                      std::to_string(s.other_roots), "", "", std::to_string(s.unphysical) + " unphysical",
                      num(s.success_rate())});
  return t;
}

Table census_table(const std::vector<CensusEntry>& entries) {
  Table t{{"seed", "paths", "roots", "diverged", "singular", "failed", "max_energy_error", "matches_fci", "seconds"}, {}};
  for (const auto& e : entries)
    t.rows.push_back({std::to_string(e.seed), std::to_string(e.result.paths), std::to_string(e.result.roots.size()),
                      std::to_string(e.result.diverged), std::to_string(e.result.singular), std::to_string(e.result.failed), num(e.max_energy_error),
                      e.matches_fci ? "1" : "0", num(e.seconds)});
  return t;
}

void write_csv(const std::filesystem::path& path, const json& header, const Table& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& [k, v] : header.items()) out << "# " << k << ": " << v.dump() << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
}

}  // namespace ccroots::io
