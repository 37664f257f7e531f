#pragma once

// The two numerical studies (CCS energy trajectory in eps, Newton sensitivity
// on a 3-in-6 instance) and a root census of 2-in-4 CCSD by homotopy.

#include <cstdint>
#include <vector>

#include "ccroots/solve.hpp"

namespace ccroots {

struct TrajectoryConfig {
  double gamma = 1.0 / 12;
  double eps_min = 0.0;
  double eps_max = 8.0;
  int points = 81;
  double match_distance = 0.5;  // bisect the eps step above this
  int max_refinements = 3;  // bisection depth per grid step
  HomotopyConfig homotopy{};

  std::vector<double> grid() const;
  void validate() const;
};

struct TrajectoryPoint {
  double eps = 0;
  int branch = 0;
  Complex energy;
  RootClass classification = RootClass::complex;
  Vector<Complex> amplitudes;
};

struct TrajectoryReport {
  TrajectoryConfig config;
  std::vector<TrajectoryPoint> points;          // grid points only
  std::vector<Vector<double>> fci;              // spectrum per grid point
  std::vector<HomotopyResult> solves;           // stats per grid point (roots cleared)
  int refinements = 0;                          // extra eps values inserted
  int branches = 0;
};

TrajectoryReport ccs_trajectory_experiment(const TrajectoryConfig& config = {});

struct PerturbationConfig {
  std::vector<double> radii{0.0, 0.1, 0.6, 1.0, 2.0};
  int samples = 50;
  std::uint64_t seed = 1;
  double same_root = 1e-6;  // converged root counts as the target within this distance
  NewtonConfig newton{};

  void validate() const;
};

struct PerturbationTrial {
  double radius = 0;
  int sample = 0;
  std::uint64_t subseed = 0;
  RootRecord root;
  double distance = 0;  // converged root to the target amplitudes
  bool other_root = false;
};

struct RadiusSummary {
  double radius = 0;
  int samples = 0;
  int converged = 0;
  int other_roots = 0;
  int unphysical = 0;  // converged roots not classified real-physical
  double mean_iterations = 0;  // over converged trials
  double success_rate() const { return samples ? double(converged) / samples : 0.0; }
};

struct PerturbationReport {
  PerturbationConfig config;
  std::uint64_t instance_seed = 0;
  double target_energy = 0;
  std::vector<PerturbationTrial> trials;
  std::vector<RadiusSummary> summary;
};

PerturbationReport perturbation_experiment(const Instance3in6& instance, const PerturbationConfig& config = {});

struct CensusEntry {
  std::uint64_t seed = 0;
  HomotopyResult result;
  Vector<double> spectrum;
  double max_energy_error = 0;  // sorted CC energies against sorted FCI eigenvalues
  bool matches_fci = false;
  double seconds = 0;
};

/// homotopy_solve on 2-in-4 CCSD for random rational Hamiltonians.
std::vector<CensusEntry> homotopy_census(const std::vector<std::uint64_t>& seeds, double match_tol = 1e-8);

}  // namespace ccroots
