#pragma once

// FCI diagonalization, Newton and total-degree homotopy root finding on
// generated CC systems, and classification of roots against the spectrum.

#include <cstdint>
#include <optional>

#include "ccroots/ccgen.hpp"
#include "ccroots/errors.hpp"

namespace ccroots {

struct Eigenpairs {
  Vector<double> values;   // ascending
  Matrix<double> vectors;  // columns, orthonormal
};

Eigenpairs fci_eigensolve(const FockOperator<double>& H, double symmetry_tol = 1e-12);

/// Residual and Jacobian evaluator plus energy for a generated system. The
/// homogenized copy (extra variable z_n last, f_i of degree d_i) drives the
/// projective path tracker.
struct NumericSystem {
  int n = 0;
  CompiledSystem equations;
  CompiledSystem energy;
  CompiledSystem homogeneous;
  std::vector<int> degrees;

  template <class S>
  static NumericSystem from(const PolynomialSystem<S>& sys) {
    return from_equations(sys.equations, sys.energy);
  }

  template <class S>
  static NumericSystem from_equations(const std::vector<Polynomial<S>>& eqs, const Polynomial<S>& energy) {
    const int n = eqs.empty() ? 0 : eqs.front().num_vars();
    std::vector<int> deg;
    std::vector<Polynomial<S>> hom;
    for (const auto& f : eqs) {
      deg.push_back(std::max(f.degree(), 1));
      Polynomial<S> h(n + 1);
      for (const auto& [m, c] : f.terms()) {
        Monomial k = m;
        k.exponents.push_back(deg.back() - m.degree());
        h.add_term(k, c);
      }
      hom.push_back(std::move(h));
    }
    return NumericSystem{n, CompiledSystem(eqs, n), CompiledSystem(std::vector<Polynomial<S>>{energy}, n),
                         CompiledSystem(hom, n + 1), std::move(deg)};
  }

  Complex energy_at(const Vector<Complex>& t) const { return energy.residual(t)(0); }
};

struct NewtonConfig {
  int max_iter = 30;
  double tol = 1e-10;             // infinity norm of the residual
  double damping = 1.0;           // full steps
  double singular_threshold = 1e14;

  void validate() const;
};

enum class NewtonStatus { converged, max_iterations, singular_jacobian, non_finite };
enum class RootClass { real_physical, real_unphysical, complex };

std::string to_string(NewtonStatus s);
std::string to_string(RootClass c);

struct RootRecord {
  Vector<Complex> amplitudes;
  double residual_norm = 0;
  int iterations = 0;
  NewtonStatus status = NewtonStatus::max_iterations;
  Complex energy{0.0, 0.0};
  RootClass classification = RootClass::complex;
  std::optional<int> fci_index;

  bool converged() const { return status == NewtonStatus::converged; }
};

RootRecord newton_solve(const NumericSystem& sys, const Vector<Complex>& t0, const NewtonConfig& config = {});

/// Real-physical iff |Im E| <= imag_tol and E lies in [l_min - d, l_max + d],
/// d = 1e-6 times the spectral width. Matches the nearest eigenvalue within match_tol.
void classify(RootRecord& root, const Vector<double>& spectrum, double imag_tol = 1e-8,
              double match_tol = 1e-7);

struct HomotopyConfig {
  std::uint64_t seed = 1;
  double min_step = 1e-4;
  double max_step = 1e-1;
  double endgame_start = 0.99;     // beyond this s the step floor drops to
  double endgame_min_step = 1e-8;  // resolve slowly converging endpoints
  double divergence = 1e8;
  double dedup = 1e-8;
  double final_tol = 1e-9;
  NewtonConfig polish{};
};

struct HomotopyResult {
  std::vector<RootRecord> roots;  // distinct finite roots, polished
  int paths = 0;
  int diverged = 0;  // |x| beyond the divergence bound
  int singular = 0;  // stalled near s = 1 without a nonsingular finite endpoint
  int failed = 0;    // tracking lost before the endgame, or polishing failed
  int duplicates = 0;  // endpoints equal to an earlier root
};

/// Total-degree homotopy (1-s) gamma g(x) + s f(x), g_i = x_i^{d_i} - 1.
HomotopyResult homotopy_solve(const NumericSystem& sys, const HomotopyConfig& config = {});

/// H = V diag(1/6 - gamma, 1/6 + gamma, 2/6, 3/6, 4/6, 5/6) V^T with V the
/// orthonormal factor of the QR decomposition (positive R diagonal) of V~(eps).
FockOperator<double> build_ccs_hamiltonian(double eps, double gamma);
Matrix<double> ccs_vtilde(double eps);
Matrix<double> ccs_orthonormal_factor(double eps);

/// Random symmetric rational sector Hamiltonian: entries k/4 with k in +-1..9,
/// diagonal shifted by 2i, all entries nonzero, eigenvalue gaps above 1e-2 and
/// every eigenvector with reference overlap at least min_overlap.
FockOperator<Rational> random_rational_hamiltonian(const SpinOrbitalBasis& basis, std::uint64_t seed,
                                                   double min_overlap = 1e-3);

/// The 2-in-4 draw used for root censuses. Overlaps are kept >= 0.1: an
/// eigenvector with overlap 1e-2 puts its CC root at amplitude norm ~1e3, where
/// the projective tracker cannot resolve it within the step floor.
FockOperator<Rational> random_rational_hamiltonian_2in4(std::uint64_t seed);

struct Instance3in6 {
  std::uint64_t seed = 0;
  double rank_gap = 0;
  int draws = 0;
  FockOperator<double> H;
  Eigenpairs spectrum;
  int target = 0;            // eigenvector index selected
  double target_energy = 0;
  Vector<double> target_vector;
  Vector<double> full_amplitudes;  // FULL-scheme amplitudes of the target vector
  double triple_amplitude = 0;
  PolynomialSystem<double> ccsd;
  Vector<double> ccsd_root;   // CCSD root nearest to the truncated amplitudes
  double ccsd_energy = 0;
};

/// Draws (A + A^T)/2 with A_ij ~ N(0,1), plus rank_gap * rank(mu) on the diagonal,
/// with H(Phi_0, Phi_123^456) = 0, until an eigenvector has overlap >= min_overlap,
/// |t_123^456| <= max_triple and its truncated amplitudes lead Newton to a CCSD
/// root. rank_gap = 0 is the bare Gaussian ensemble, which essentially never
/// produces a 0.95 overlap. Throws NumericalError after max_draws.
inline constexpr double kDefaultRankGap = 6.0;

Instance3in6 random_hamiltonian_3in6(std::uint64_t seed, double rank_gap = kDefaultRankGap,
                                     double min_overlap = 0.95, double max_triple = 0.01,
                                     int max_draws = 1000);

}  // namespace ccroots
