#pragma once

// JSON and CSV interchange: Hamiltonian inputs, amplitudes, polynomial systems,
// polytopes and experiment reports. Every emitted document carries a header
// with the library version, a hash of the run configuration and the seed.

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "ccroots/experiments.hpp"

namespace ccroots::io {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a over the compact dump of the configuration, as 16 hex digits.
std::string config_hash(const json& config);

json make_header(const json& config, std::uint64_t seed);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& doc);

/// Rationals are written as "p/q" strings (integers as plain numbers), floats
/// as numbers. Parsing accepts both; a float in the input makes it inexact.
json scalar_to_json(const Rational& r);
json scalar_to_json(double x);
std::optional<Rational> exact_scalar(const json& j);
double float_scalar(const json& j);

/// A Hamiltonian read from disk: exact when every entry was an integer or a
/// "p/q" string, so rational generation stays available.
struct HamiltonianInput {
  int N = 0;
  int K = 0;
  std::optional<FockOperator<Rational>> exact;
  FockOperator<double> numeric;
};

/// {"N", "K", "matrix": [[...]]} in the sector ordering.
HamiltonianInput hamiltonian_from_matrix_json(const json& doc);
/// {"N", "K", "convention": "chemist"|"physicist", "h": [[...]], "v": [K^4 entries]}
HamiltonianInput hamiltonian_from_integrals_json(const json& doc);
/// Dispatches on the presence of "matrix" or "h".
HamiltonianInput load_hamiltonian(const std::filesystem::path& path);

json hamiltonian_to_json(const FockOperator<double>& H);
json hamiltonian_to_json(const FockOperator<Rational>& H);

json excitation_to_json(const ExcitationIndex& mu);
ExcitationIndex excitation_from_json(const json& j);

json amplitudes_to_json(const ClusterAmplitudes<double>& t);
ClusterAmplitudes<double> amplitudes_from_json(const json& j);

template <class S>
json polynomial_to_json(const Polynomial<S>& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"exponents", m.exponents}, {"coefficient", scalar_to_json(c)}});
  return terms;
}

template <class S>
Polynomial<S> polynomial_from_json(const json& j, int nvars) {
  Polynomial<S> p(nvars);
  for (const auto& t : j) {
    Monomial m{t.at("exponents").get<std::vector<int>>()};
    if constexpr (is_exact_v<S>) {
      auto c = exact_scalar(t.at("coefficient"));
      if (!c) throw std::invalid_argument("polynomial: inexact coefficient in an exact system");
      p.add_term(m, *c);
    } else {
      p.add_term(m, float_scalar(t.at("coefficient")));
    }
  }
  return p;
}

template <class S>
json system_to_json(const PolynomialSystem<S>& sys) {
  json vars = json::array(), eqs = json::array();
  for (const auto& v : sys.variables) vars.push_back(excitation_to_json(v));
  for (const auto& f : sys.equations) eqs.push_back(polynomial_to_json(f));
  return {{"N", sys.N},
          {"K", sys.K},
          {"scheme", sys.scheme.name()},
          {"exact", is_exact_v<S>},
          {"variables", vars},
          {"equations", eqs},
          {"energy", polynomial_to_json(sys.energy)}};
}

template <class S>
PolynomialSystem<S> system_from_json(const json& j) {
  PolynomialSystem<S> sys;
  sys.N = j.at("N").get<int>();
  sys.K = j.at("K").get<int>();
  sys.scheme = TruncationScheme::parse(j.at("scheme").get<std::string>(), sys.N);
  sys.basis = make_sector_basis(SpinOrbitalBasis(sys.K, sys.N));
  for (const auto& v : j.at("variables")) {
    sys.variables.push_back(excitation_from_json(v));
    const auto pos = sys.basis->index_of(sys.variables.back());
    if (!pos || !sys.scheme.admits(sys.variables.back().rank()))
      throw std::invalid_argument("system: variable " + sys.variables.back().label() + " not in the scheme");
    sys.positions.push_back(*pos);
  }
  if (sys.positions != scheme_positions(*sys.basis, sys.scheme))
    throw std::invalid_argument("system: variables must list the " + sys.scheme.name() + " excitations in basis order");
  const int n = sys.num_vars();
  for (const auto& f : j.at("equations")) sys.equations.push_back(polynomial_from_json<S>(f, n));
  if (static_cast<int>(sys.equations.size()) != n)
    throw std::invalid_argument("system: equation count does not match variable count");
  sys.energy = polynomial_from_json<S>(j.at("energy"), n);
  return sys;
}

json polytope_to_json(const LatticePolytope& P);

json root_to_json(const RootRecord& r);

json trajectory_to_json(const TrajectoryReport& r);
json perturbation_to_json(const PerturbationReport& r);
json census_to_json(const std::vector<CensusEntry>& entries);

/// CSV table; the header object is written as leading "# key: value" lines.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

Table trajectory_table(const TrajectoryReport& r);
Table perturbation_table(const PerturbationReport& r);
Table census_table(const std::vector<CensusEntry>& entries);

void write_csv(const std::filesystem::path& path, const json& header, const Table& table);

}  // namespace ccroots::io
