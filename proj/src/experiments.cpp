#include "ccroots/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <tuple>

namespace ccroots {

std::vector<double> TrajectoryConfig::grid() const {
  validate();
  std::vector<double> g;
  for (int k = 0; k < points; ++k)
    g.push_back(points == 1 ? eps_min : eps_min + (eps_max - eps_min) * k / (points - 1));
  return g;
}

void TrajectoryConfig::validate() const {
  if (points < 1) throw std::invalid_argument("trajectory: grid must be non-empty");
  if (!(eps_min >= 0) || !(eps_max >= eps_min)) throw std::invalid_argument("trajectory: need 0 <= eps_min <= eps_max");
  if (!(match_distance > 0) || max_refinements < 0) throw std::invalid_argument("trajectory: bad matching parameters");
}

namespace {

struct Snapshot {
  double eps;
  Vector<double> spectrum;
  HomotopyResult solve;
};

Snapshot ccs_roots(double eps, const TrajectoryConfig& cfg) {
  const auto H = build_ccs_hamiltonian(eps, cfg.gamma);
  const auto eig = fci_eigensolve(H);
  const auto sys = generate_residual_system(H, TruncationScheme::ccs());
  Snapshot snap{eps, eig.values, homotopy_solve(NumericSystem::from(sys), cfg.homotopy)};
  for (auto& r : snap.solve.roots) classify(r, eig.values);
  return snap;
}

struct Branch {
  int id;
  Vector<Complex> amplitudes;
};

// Greedy nearest-neighbour assignment; returns per-root branch ids (-1 when
// unmatched) and the largest matched distance.
std::pair<std::vector<int>, double> match(const std::vector<Branch>& prev, const std::vector<RootRecord>& roots) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < prev.size(); ++a)
    for (std::size_t b = 0; b < roots.size(); ++b)
      pairs.emplace_back((prev[a].amplitudes - roots[b].amplitudes).norm(), a, b);
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> ids(roots.size(), -1);
  std::vector<bool> used(prev.size(), false);
  double worst = 0;
  for (auto [d, a, b] : pairs) {
    if (used[a] || ids[b] >= 0) continue;
    used[a] = true;
    ids[b] = prev[a].id;
    worst = std::max(worst, d);
  }
  return {ids, worst};
}

class BranchTracker {
 public:
  BranchTracker(const TrajectoryConfig& cfg, TrajectoryReport& report) : cfg_(cfg), report_(report) {}

  std::vector<Branch> advance(const std::vector<Branch>& prev, double from, const Snapshot& target, int depth) {
    auto [ids, worst] = match(prev, target.solve.roots);
    if (!prev.empty() && worst > cfg_.match_distance && depth < cfg_.max_refinements) {
      const double mid = 0.5 * (from + target.eps);
      ++report_.refinements;
      const auto mid_branches = advance(prev, from, ccs_roots(mid, cfg_), depth + 1);
      return advance(mid_branches, mid, target, depth + 1);
    }
    std::vector<Branch> next;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (ids[k] < 0) ids[k] = report_.branches++;
      next.push_back({ids[k], target.solve.roots[k].amplitudes});
    }
    last_ids_ = ids;
    return next;
  }

  const std::vector<int>& last_ids() const { return last_ids_; }

 private:
  const TrajectoryConfig& cfg_;
  TrajectoryReport& report_;
  std::vector<int> last_ids_;
};

}  // namespace

TrajectoryReport ccs_trajectory_experiment(const TrajectoryConfig& config) {
  TrajectoryReport report;
  report.config = config;
  BranchTracker tracker(config, report);
  std::vector<Branch> branches;
  double prev_eps = config.eps_min;
  for (double eps : config.grid()) {
    Snapshot snap = ccs_roots(eps, config);
    branches = tracker.advance(branches, prev_eps, snap, 0);
    const auto& ids = tracker.last_ids();
    for (std::size_t k = 0; k < snap.solve.roots.size(); ++k) {
      const auto& r = snap.solve.roots[k];
      report.points.push_back({eps, ids[k], r.energy, r.classification, r.amplitudes});
    }
    report.fci.push_back(snap.spectrum);
    snap.solve.roots.clear();
    report.solves.push_back(std::move(snap.solve));
    prev_eps = eps;
  }
  return report;
}

void PerturbationConfig::validate() const {
  if (radii.empty() || samples < 1) throw std::invalid_argument("perturbation: need radii and samples >= 1");
  for (double r : radii)
    if (!(r >= 0)) throw std::invalid_argument("perturbation: radii must be >= 0");
  newton.validate();
}

PerturbationReport perturbation_experiment(const Instance3in6& instance, const PerturbationConfig& config) {
  config.validate();
  const NumericSystem sys = NumericSystem::from(instance.ccsd);
  if (sys.n != instance.ccsd_root.size()) throw std::invalid_argument("perturbation: instance root has wrong size");
  PerturbationReport report;
  report.config = config;
  report.instance_seed = instance.seed;
  report.target_energy = instance.ccsd_energy;
  const Vector<Complex> target = instance.ccsd_root.cast<Complex>();

  std::uint64_t index = 0;
  for (double r : config.radii) {
    RadiusSummary sum{r, config.samples};
    double iters = 0;
    for (int s = 0; s < config.samples; ++s, ++index) {
      PerturbationTrial trial;
      trial.radius = r;
      trial.sample = s;
      trial.subseed = config.seed ^ index;
      std::mt19937_64 rng(trial.subseed);
      std::normal_distribution<double> normal(0.0, 1.0);
      Vector<double> delta(sys.n);
      for (int k = 0; k < sys.n; ++k) delta(k) = normal(rng);
      delta *= (r == 0 ? 0.0 : r / delta.norm());
      trial.root = newton_solve(sys, target + delta.cast<Complex>(), config.newton);
      classify(trial.root, instance.spectrum.values);
      if (trial.root.converged()) {
        trial.distance = (trial.root.amplitudes - target).norm();
        trial.other_root = trial.distance > config.same_root;
        ++sum.converged;
        iters += trial.root.iterations;
        if (trial.other_root) ++sum.other_roots;
        if (trial.root.classification != RootClass::real_physical) ++sum.unphysical;
      }
      report.trials.push_back(std::move(trial));
    }
    sum.mean_iterations = sum.converged ? iters / sum.converged : 0.0;
    report.summary.push_back(sum);
  }
  return report;
}

std::vector<CensusEntry> homotopy_census(const std::vector<std::uint64_t>& seeds, double match_tol) {
  std::vector<CensusEntry> out;
  for (auto seed : seeds) {
    const auto start = std::chrono::steady_clock::now();
    CensusEntry e;
    e.seed = seed;
    const auto H = random_rational_hamiltonian_2in4(seed);
    const FockOperator<double> Hd{H.basis, matrix_cast<double>(H.matrix)};
    e.spectrum = fci_eigensolve(Hd).values;
    const auto sys = generate_residual_system(H, TruncationScheme::ccsd());
    HomotopyConfig hc;
    hc.seed = seed;
    e.result = homotopy_solve(NumericSystem::from(sys), hc);
    for (auto& r : e.result.roots) classify(r, e.spectrum);
    std::vector<Complex> energies;
    for (const auto& r : e.result.roots) energies.push_back(r.energy);
    std::sort(energies.begin(), energies.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    if (energies.size() == static_cast<std::size_t>(e.spectrum.size())) {
      for (std::size_t k = 0; k < energies.size(); ++k)
        e.max_energy_error = std::max(e.max_energy_error, std::abs(energies[k] - e.spectrum(k)));
      e.matches_fci = e.max_energy_error <= match_tol;
    } else {
      e.max_energy_error = INFINITY;
    }
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace ccroots
