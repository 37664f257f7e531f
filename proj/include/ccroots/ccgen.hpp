#pragma once

// Symbolic CC residuals by operator algebra on polynomial-coefficient state
// vectors, root-count bounds, surrogate Newton polytopes and the 2-in-4
// quadratic reformulation.

#include <array>
#include <functional>

#include "ccroots/cluster.hpp"
#include "ccroots/polynomial.hpp"
#include "ccroots/polytope.hpp"

namespace ccroots {

/// Float coefficients below this magnitude are dropped after expansion.
inline constexpr double kPruneTolerance = 1e-13;

template <class S>
struct PolynomialSystem {
  int N = 0;
  int K = 0;
  TruncationScheme scheme = TruncationScheme::ccs();
  SectorBasisPtr basis;
  std::vector<std::size_t> positions;       // sector index per variable
  std::vector<ExcitationIndex> variables;   // amplitude variables, frozen order
  std::vector<Polynomial<S>> equations;     // f_mu aligned with variables
  Polynomial<S> energy;                     // <Phi_0, e^{-T} H e^{T} Phi_0>

  int num_vars() const { return static_cast<int>(variables.size()); }
};

/// State vector whose entries are polynomials in the amplitudes.
template <class S>
using PolyVector = std::vector<Polynomial<S>>;

namespace detail {

template <class S>
PolyVector<S> apply_cluster(const PolyVector<S>& w, const std::vector<std::vector<SectorBasis::Entry>>& actions,
                            int nvars) {
  PolyVector<S> out(w.size(), Polynomial<S>(nvars));
  for (int k = 0; k < nvars; ++k)
    for (const auto& e : actions[k]) {
      if (w[e.col].is_zero()) continue;
      out[e.row].add_scaled_times_variable(w[e.col], k, S(e.sign));
    }
  return out;
}

}  // namespace detail

/// e^{T} Phi_0 with T = sum_k x_k X_{mu_k} over the scheme variables.
template <class S>
PolyVector<S> exp_cluster_reference(const SectorBasis& basis, const std::vector<std::size_t>& positions) {
  const int nvars = static_cast<int>(positions.size());
  std::vector<std::vector<SectorBasis::Entry>> actions;
  for (auto p : positions) actions.push_back(basis.excitation_action(basis.excitation(p)));
  PolyVector<S> w(basis.size(), Polynomial<S>(nvars));
  w[0] = Polynomial<S>::constant(nvars, S(1));
  PolyVector<S> term = w;
  for (int m = 1; m <= basis.orbitals().N(); ++m) {
    term = detail::apply_cluster(term, actions, nvars);
    for (auto& p : term) p *= S(1) / S(m);
    for (std::size_t r = 0; r < w.size(); ++r) w[r] += term[r];
  }
  return w;
}

template <class S>
PolynomialSystem<S> generate_residual_system(const FockOperator<S>& H, const TruncationScheme& scheme) {
  const SectorBasis& basis = *H.basis;
  scheme.validate(basis.orbitals());
  PolynomialSystem<S> sys;
  sys.N = basis.orbitals().N();
  sys.K = basis.orbitals().K();
  sys.scheme = scheme;
  sys.basis = H.basis;
  sys.positions = scheme_positions(basis, scheme);
  for (auto p : sys.positions) sys.variables.push_back(basis.excitation(p));
  const int nvars = sys.num_vars();
  std::vector<std::vector<SectorBasis::Entry>> actions;
  for (auto p : sys.positions) actions.push_back(basis.excitation_action(basis.excitation(p)));

  const PolyVector<S> c = exp_cluster_reference<S>(basis, sys.positions);
  // H acts numerically on the polynomial entries
  PolyVector<S> g(basis.size(), Polynomial<S>(nvars));
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const S& h = H.matrix(r, col);
      if (is_zero(h) || c[col].is_zero()) continue;
      g[r] += c[col] * h;
    }
  // e^{-T} = sum_m (-T)^m / m!
  PolyVector<S> result = g, term = g;
  for (int m = 1; m <= sys.N; ++m) {
    term = detail::apply_cluster(term, actions, nvars);
    for (auto& p : term) p *= S(-1) / S(m);
    for (std::size_t r = 0; r < result.size(); ++r) result[r] += term[r];
  }
  for (auto& p : result) p.prune(kPruneTolerance);
  for (auto p : sys.positions) sys.equations.push_back(result[p]);
  sys.energy = result[0];
  return sys;
}

struct SystemCounts {
  long long n_s = 0;
  long long n_d = 0;
  long long total = 0;  // all variables admitted by the scheme
};

SystemCounts system_counts(int N, int K, const TruncationScheme& scheme = TruncationScheme::ccsd());

struct BezoutBounds {
  BigInt naive;      // 4^(n_s + n_d)
  BigInt refined;    // 3^n_s 4^n_d
  BigInt quadratic;  // 2^(n_s + 2 n_d)
};

BezoutBounds bezout_bounds(int N, int K);

/// Exponent vectors of the nonzero terms of f.
template <class S>
std::vector<IntPoint> exponent_vectors(const Polynomial<S>& f) {
  std::vector<IntPoint> pts;
  for (const auto& [m, c] : f.terms()) pts.emplace_back(m.exponents.begin(), m.exponents.end());
  return pts;
}

template <class S>
LatticePolytope newton_polytope(const Polynomial<S>& f) {
  if (f.is_zero()) throw std::invalid_argument("newton polytope: zero polynomial");
  if (f.num_vars() > kMaxHullDimension) return LatticePolytope::from_generators(exponent_vectors(f));
  return convex_hull(exponent_vectors(f));
}

/// Surrogate vertex families in Z^(n_s + n_d): singles coordinates first.
std::vector<IntPoint> surrogate_set(char family, int index, int n_s, int n_d);

enum class SurrogateKind { singles, doubles };

/// N_S = conv({0} u S2 u S4 u S6 u S7) or N_D = conv({0} u D3 u D10 u D11 u D12).
LatticePolytope surrogate_polytope(int N, int K, SurrogateKind kind);

struct LemmaCheck {
  std::string statement;
  long long points_checked = 0;
  long long failures = 0;
  bool holds() const { return failures == 0; }
};

struct InclusionReport {
  int N = 0;
  int K = 0;
  std::vector<LemmaCheck> checks;
  bool all_hold() const;
};

InclusionReport verify_inclusion_lemmas(int N, int K);

/// p_i(t) = v^T H(i) v with v = (1, t, x_6), x_6 = x_3 x_2 - x_1 x_4 in the 2-in-4
/// variable order (t_2^3, t_2^4, t_1^3, t_1^4, t_12^34).
template <class S>
struct QuadraticForm2in4 {
  std::array<Matrix<S>, 5> H;

  static Vector<S> lift(const Vector<S>& t) {
    Vector<S> v(7);
    v(0) = S(1);
    for (int k = 0; k < 5; ++k) v(k + 1) = t(k);
    v(6) = t(2) * t(1) - t(0) * t(3);
    return v;
  }
  /// Defining equation of the variety A: x_6 - x_2 x_3 + x_1 x_4.
  static S variety_residual(const Vector<S>& v) { return v(6) - v(2) * v(3) + v(1) * v(4); }

  S evaluate(int i, const Vector<S>& t) const {
    const Vector<S> v = lift(t);
    return (v.transpose() * H[i] * v)(0, 0);
  }
};

template <class S>
QuadraticForm2in4<S> quadratic_form_2in4(const FockOperator<S>& H) {
  const SectorBasis& basis = *H.basis;
  if (basis.orbitals().N() != 2 || basis.orbitals().K() != 4 || H.matrix.rows() != 6)
    throw std::invalid_argument("quadratic form: requires the 2-electron, 4-orbital sector");
  const auto ccsd = TruncationScheme::ccsd();
  // c = e^T Phi_0 = L v; only c_5 is nonlinear: c_5 = x_5 + s * x_6
  auto unit = ClusterAmplitudes<S>::zero(H.basis, ccsd);
  unit.values(1) = S(1);  // t_2^4
  unit.values(2) = S(1);  // t_1^3
  const S s = exp_cluster(unit).matrix(5, 0);
  Matrix<S> L = Matrix<S>::Zero(6, 7);
  for (int k = 0; k < 6; ++k) L(k, k) = S(1);
  L(5, 6) = s;
  const Matrix<S> HL = H.matrix * L;

  QuadraticForm2in4<S> q;
  for (auto& m : q.H) m = Matrix<S>::Zero(7, 7);
  // singles: f_i = (Hc)_i - x_i (Hc)_0
  for (int i = 1; i <= 4; ++i) {
    q.H[i - 1].row(0) = HL.row(i);
    q.H[i - 1].row(i) = -HL.row(0);
  }
  // double: row 5 of e^{-T} is (-x_5 + s x_6, -T_{5,1..4}, 1)
  Matrix<S>& h5 = q.H[4];
  h5.row(0) = HL.row(5);
  for (int j = 1; j <= 4; ++j)
    for (const auto& e : basis.excitation_action(basis.excitation(j)))
      if (e.row == 5) h5.row(j) -= S(e.sign) * HL.row(e.col);
  h5.row(5) -= HL.row(0);
  h5.row(6) += s * HL.row(0);
  return q;
}

}  // namespace ccroots
