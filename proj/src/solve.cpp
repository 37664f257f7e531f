#include "ccroots/solve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ccroots {

Eigenpairs fci_eigensolve(const FockOperator<double>& H, double symmetry_tol) {
  const Matrix<double>& M = H.matrix;
  if (M.rows() != M.cols()) throw std::invalid_argument("eigensolve: matrix not square");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > symmetry_tol * scale)
    throw std::invalid_argument("eigensolve: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix<double>> es(M);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolve: no convergence");
  return Eigenpairs{es.eigenvalues(), es.eigenvectors()};
}

void NewtonConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("newton: max_iter must be >= 1");
  if (!(tol > 0) || !(damping > 0) || !(singular_threshold > 0))
    throw std::invalid_argument("newton: tolerances must be positive");
}

std::string to_string(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::converged: return "converged";
    case NewtonStatus::max_iterations: return "max-iterations";
    case NewtonStatus::singular_jacobian: return "singular-jacobian";
    case NewtonStatus::non_finite: return "non-finite";
  }
  return "?";
}

std::string to_string(RootClass c) {
  switch (c) {
    case RootClass::real_physical: return "real-physical";
    case RootClass::real_unphysical: return "real-unphysical";
    case RootClass::complex: return "complex";
  }
  return "?";
}

namespace {

double inf_norm(const Vector<Complex>& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool all_finite(const Vector<Complex>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  return true;
}

}  // namespace

RootRecord newton_solve(const NumericSystem& sys, const Vector<Complex>& t0, const NewtonConfig& config) {
  config.validate();
  if (t0.size() != sys.n) throw std::invalid_argument("newton: start vector has wrong length");
  if (sys.equations.num_equations() != sys.n) throw std::invalid_argument("newton: system not square");
  RootRecord rec;
  rec.amplitudes = t0;
  Vector<Complex> f = sys.equations.residual(rec.amplitudes);
  rec.residual_norm = inf_norm(f);
  while (true) {
    if (!all_finite(rec.amplitudes) || !std::isfinite(rec.residual_norm)) {
      rec.status = NewtonStatus::non_finite;
      break;
    }
    if (rec.residual_norm <= config.tol) {
      rec.status = NewtonStatus::converged;
      break;
    }
    if (rec.iterations >= config.max_iter) {
      rec.status = NewtonStatus::max_iterations;
      break;
    }
    const Matrix<Complex> J = sys.equations.jacobian(rec.amplitudes);
    Eigen::JacobiSVD<Matrix<Complex>> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0, smin = sv.size() ? sv(sv.size() - 1) : 0.0;
    if (!(smin > 0) || smax / smin > config.singular_threshold) {
      rec.status = NewtonStatus::singular_jacobian;
      break;
    }
    rec.amplitudes -= config.damping * svd.solve(f);
    ++rec.iterations;
    f = sys.equations.residual(rec.amplitudes);
    rec.residual_norm = inf_norm(f);
  }
  rec.energy = all_finite(rec.amplitudes) ? sys.energy_at(rec.amplitudes) : Complex(NAN, NAN);
  return rec;
}

void classify(RootRecord& root, const Vector<double>& spectrum, double imag_tol, double match_tol) {
  if (spectrum.size() == 0) throw std::invalid_argument("classify: empty spectrum");
  const double lo = spectrum.minCoeff(), hi = spectrum.maxCoeff();
  const double delta = 1e-6 * (hi - lo);
  const Complex E = root.energy;
  root.fci_index.reset();
  if (!(std::abs(E.imag()) <= imag_tol)) {
    root.classification = RootClass::complex;
  } else if (E.real() >= lo - delta && E.real() <= hi + delta) {
    root.classification = RootClass::real_physical;
  } else {
    root.classification = RootClass::real_unphysical;
  }
  double best = match_tol;
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    const double d = std::abs(E - Complex(spectrum(k), 0.0));
    if (d <= best) {
      best = d;
      root.fci_index = static_cast<int>(k);
    }
  }
}

// ---------------------------------------------------------------------------
// total-degree homotopy, tracked in projective space: z = (x, 1) up to scale,
// normalized by a random affine chart a . z = 1 so that paths heading to
// infinity stay bounded.

namespace {

struct Tracker {
  const NumericSystem& sys;
  const HomotopyConfig& cfg;
  Complex gamma;
  Vector<Complex> chart;

  int n() const { return sys.n; }

  Vector<Complex> value(const Vector<Complex>& z, double s) const {
    Vector<Complex> out(n() + 1);
    const Vector<Complex> f = sys.homogeneous.residual(z);
    for (int i = 0; i < n(); ++i) {
      const int d = sys.degrees[i];
      out(i) = (1 - s) * gamma * (std::pow(z(i), d) - std::pow(z(n()), d)) + s * f(i);
    }
    out(n()) = chart.dot(z) - 1.0;  // dot conjugates the chart, which is fine for a random chart
    return out;
  }
  Matrix<Complex> dz(const Vector<Complex>& z, double s) const {
    Matrix<Complex> J = Matrix<Complex>::Zero(n() + 1, n() + 1);
    J.topRows(n()) = s * sys.homogeneous.jacobian(z);
    for (int i = 0; i < n(); ++i) {
      const int d = sys.degrees[i];
      J(i, i) += (1 - s) * gamma * double(d) * std::pow(z(i), d - 1);
      J(i, n()) -= (1 - s) * gamma * double(d) * std::pow(z(n()), d - 1);
    }
    J.row(n()) = chart.adjoint();
    return J;
  }
  Vector<Complex> ds(const Vector<Complex>& z) const {
    Vector<Complex> out = Vector<Complex>::Zero(n() + 1);
    const Vector<Complex> f = sys.homogeneous.residual(z);
    for (int i = 0; i < n(); ++i) {
      const int d = sys.degrees[i];
      out(i) = f(i) - gamma * (std::pow(z(i), d) - std::pow(z(n()), d));
    }
    return out;
  }

  // Newton corrector at fixed s; rejects iterations that do not contract, which
  // keeps the tracker from hopping onto a neighbouring path.
  bool correct(Vector<Complex>& z, double s) const {
    double prev = INFINITY;
    for (int it = 0; it < 4; ++it) {
      Eigen::PartialPivLU<Matrix<Complex>> lu(dz(z, s));
      const Vector<Complex> d = lu.solve(value(z, s));
      if (!all_finite(d)) return false;
      const double nd = d.norm();
      if (it > 0 && nd > 0.5 * prev) return false;
      z -= d;
      if (nd <= 1e-11 * (1 + z.norm())) return true;
      prev = nd;
    }
    return prev <= 1e-8 * (1 + z.norm());
  }

  Vector<Complex> tangent(const Vector<Complex>& z, double s) const {
    Eigen::PartialPivLU<Matrix<Complex>> lu(dz(z, s));
    return -lu.solve(ds(z));
  }

  // Returns the last s reached; s == 1 on success.
  double track(Vector<Complex>& z) const {
    double s = 0, h = 0.02;
    int streak = 0;
    while (s < 1) {
      const double step = std::min(h, 1 - s);
      const double s1 = step == 1 - s ? 1.0 : s + step;
      // classical RK4 predictor along dz/ds = -H_z^{-1} H_s
      const Vector<Complex> k1 = tangent(z, s);
      const Vector<Complex> k2 = tangent(z + 0.5 * step * k1, s + 0.5 * step);
      const Vector<Complex> k3 = tangent(z + 0.5 * step * k2, s + 0.5 * step);
      const Vector<Complex> k4 = tangent(z + step * k3, s1);
      Vector<Complex> y = z + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      const Vector<Complex> predicted = y;
      // the corrected point must stay close to the prediction
      if (all_finite(y) && correct(y, s1) && (y - predicted).norm() <= 1e-2 * (predicted - z).norm() + 1e-9 * z.norm()) {
        z = y;
        s = s1;
        if (++streak == 3) {
          h = std::min(2 * h, cfg.max_step);
          streak = 0;
        }
      } else {
        h *= 0.5;
        streak = 0;
        if (h < (s >= cfg.endgame_start ? cfg.endgame_min_step : cfg.min_step)) return s;
      }
    }
    return 1.0;
  }
};

Vector<Complex> start_point(const std::vector<int>& degrees, long long index) {
  Vector<Complex> x(static_cast<Eigen::Index>(degrees.size()));
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const long long k = index % degrees[i];
    index /= degrees[i];
    x(static_cast<Eigen::Index>(i)) = std::polar(1.0, 2 * std::numbers::pi * double(k) / degrees[i]);
  }
  return x;
}

}  // namespace

HomotopyResult homotopy_solve(const NumericSystem& sys, const HomotopyConfig& config) {
  config.polish.validate();
  if (sys.n < 1 || sys.equations.num_equations() != sys.n)
    throw std::invalid_argument("homotopy: system must be square and non-empty");
  long long paths = 1;
  for (int d : sys.degrees) {
    paths *= d;
    if (paths > 1'000'000) throw CapacityError("homotopy: more than 10^6 start paths");
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Complex gamma = std::polar(1.0, angle(rng));
  Vector<Complex> chart(sys.n + 1);
  for (int i = 0; i <= sys.n; ++i) chart(i) = Complex(normal(rng), normal(rng));
  const Tracker tr{sys, config, gamma, chart};

  HomotopyResult out;
  out.paths = static_cast<int>(paths);
  for (long long p = 0; p < paths; ++p) {
    Vector<Complex> z(sys.n + 1);
    z.head(sys.n) = start_point(sys.degrees, p);
    z(sys.n) = 1.0;
    z /= chart.dot(z);
    const double s = tr.track(z);
    // affine magnitude |x| = |z| / |z_n|
    const double scale = std::abs(z(sys.n));
    const double affine = scale > 0 ? z.head(sys.n).norm() / scale : INFINITY;
    if (s < config.endgame_start) {
      ++out.failed;
      continue;
    }
    if (!(affine <= config.divergence)) {
      ++out.diverged;
      continue;
    }
    const Vector<Complex> x_end = z.head(sys.n) / z(sys.n);
    RootRecord r = newton_solve(sys, x_end, config.polish);
    // a stalled path only counts when polishing stays at its endpoint
    const bool stayed = (r.amplitudes - x_end).norm() <= 1e-3 * (1 + x_end.norm());
    if (!r.converged() || r.residual_norm > config.final_tol || (s < 1 && !stayed)) {
      // stalled near s = 1 with no nonsingular finite limit: almost always a
      // path running off to infinity
      if (s < 1) ++out.singular;
      else ++out.failed;
      continue;
    }
    const bool dup = std::any_of(out.roots.begin(), out.roots.end(), [&](const RootRecord& q) {
      return (q.amplitudes - r.amplitudes).norm() <= config.dedup * (1 + r.amplitudes.norm());
    });
    if (dup) ++out.duplicates;
    else out.roots.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// model Hamiltonians

Matrix<double> ccs_vtilde(double eps) {
  if (!(eps >= 0)) throw std::invalid_argument("ccs hamiltonian: eps must be >= 0");
  Matrix<double> V = Matrix<double>::Zero(6, 6);
  V(0, 0) = 1;
  for (int j = 1; j < 6; ++j) V(0, j) = 1 + eps;
  for (int i = 1; i <= 4; ++i) {
    V(i, 0) = 0.05;
    V(i, i) = 1;
  }
  for (int j = 1; j < 6; ++j) V(5, j) = eps;
  return V;
}

Matrix<double> ccs_orthonormal_factor(double eps) {
  const Matrix<double> Vt = ccs_vtilde(eps);
  Eigen::HouseholderQR<Matrix<double>> qr(Vt);
  Matrix<double> Q = qr.householderQ() * Matrix<double>::Identity(6, 6);
  const Matrix<double> R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 6; ++k)
    if (R(k, k) < 0) Q.col(k) *= -1;
  return Q;
}

FockOperator<double> build_ccs_hamiltonian(double eps, double gamma) {
  const Matrix<double> V = ccs_orthonormal_factor(eps);
  Vector<double> d(6);
  d << 1.0 / 6 - gamma, 1.0 / 6 + gamma, 2.0 / 6, 3.0 / 6, 4.0 / 6, 5.0 / 6;
  Matrix<double> H = V * d.asDiagonal() * V.transpose();
  H = (0.5 * (H + H.transpose())).eval();
  return hamiltonian_from_matrix(H, SpinOrbitalBasis(4, 2));
}

FockOperator<Rational> random_rational_hamiltonian(const SpinOrbitalBasis& basis, std::uint64_t seed,
                                                   double min_overlap) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, 9), sign(0, 1);
  const auto n = static_cast<Eigen::Index>(basis.fci_dimension());
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix<Rational> M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) {
        const int v = (sign(rng) ? 1 : -1) * pick(rng);
        M(i, j) = Rational(v, 4) + (i == j ? Rational(2 * i) : Rational(0));
        M(j, i) = M(i, j);
      }
    bool nonzero = true;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) nonzero = nonzero && !is_zero(M(i, j));
    if (!nonzero) continue;
    auto H = hamiltonian_from_matrix(M, basis);
    const auto eig = fci_eigensolve(FockOperator<double>{H.basis, matrix_cast<double>(M)});
    bool ok = true;
    for (Eigen::Index k = 0; k + 1 < n; ++k) ok = ok && eig.values(k + 1) - eig.values(k) > 1e-2;
    for (Eigen::Index k = 0; k < n; ++k) ok = ok && std::abs(eig.vectors(0, k)) >= min_overlap;
    if (ok) return H;
  }
  throw NumericalError("random hamiltonian: no admissible draw in 1000 attempts");
}

FockOperator<Rational> random_rational_hamiltonian_2in4(std::uint64_t seed) {
  return random_rational_hamiltonian(SpinOrbitalBasis(4, 2), seed, 0.1);
}

Instance3in6 random_hamiltonian_3in6(std::uint64_t seed, double rank_gap, double min_overlap,
                                     double max_triple, int max_draws) {
  if (!(min_overlap > 0.5 && min_overlap <= 1)) throw std::invalid_argument("3-in-6: overlap must lie in (0.5, 1]");
  const SpinOrbitalBasis basis(6, 3);
  auto sector = make_sector_basis(basis);
  const auto n = static_cast<Eigen::Index>(sector->size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto full = TruncationScheme::full(3), ccsd = TruncationScheme::ccsd();

  for (int draw = 1; draw <= max_draws; ++draw) {
    Matrix<double> A(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) A(i, j) = normal(rng);
    Matrix<double> M = 0.5 * (A + A.transpose());
    for (Eigen::Index k = 0; k < n; ++k) M(k, k) += rank_gap * sector->rank(static_cast<std::size_t>(k));
    M(0, n - 1) = M(n - 1, 0) = 0.0;

    FockOperator<double> H{sector, M};
    const auto eig = fci_eigensolve(H);
    Eigen::Index target = -1;
    for (Eigen::Index k = 0; k < n; ++k)
      if (std::abs(eig.vectors(0, k)) >= min_overlap) target = k;
    if (target < 0) continue;
    const Vector<double> v = eig.vectors.col(target);
    const auto t_full = amplitudes_from_state<double>(sector, v, full);
    const double triple = t_full.values(t_full.size() - 1);
    if (std::abs(triple) > max_triple) continue;

    auto sys = generate_residual_system(H, ccsd);
    const auto t_ccsd = amplitudes_from_state<double>(sector, v, ccsd);
    const auto num = NumericSystem::from(sys);
    const RootRecord root = newton_solve(num, t_ccsd.values.cast<Complex>());
    if (!root.converged() || inf_norm(root.amplitudes.imag().cast<Complex>()) > 1e-8) continue;

    Instance3in6 inst;
    inst.seed = seed;
    inst.rank_gap = rank_gap;
    inst.draws = draw;
    inst.H = H;
    inst.spectrum = eig;
    inst.target = static_cast<int>(target);
    inst.target_energy = eig.values(target);
    inst.target_vector = v;
    inst.full_amplitudes = t_full.values;
    inst.triple_amplitude = triple;
    inst.ccsd = std::move(sys);
    inst.ccsd_root = root.amplitudes.real();
    inst.ccsd_energy = root.energy.real();
    return inst;
  }
  throw NumericalError("3-in-6: no admissible Hamiltonian within " + std::to_string(max_draws) + " draws");
}

}  // namespace ccroots
