#pragma once

// Cluster operators T = sum t_mu X_mu, the exponential parametrization, its
// inverse (cluster analysis) and the dense matrix route to CC residuals.

#include <set>
#include <string>

#include "ccroots/fock.hpp"

namespace ccroots {

class TruncationScheme {
 public:
  explicit TruncationScheme(std::set<int> ranks);

  static TruncationScheme ccs() { return TruncationScheme({1}); }
  static TruncationScheme ccsd() { return TruncationScheme({1, 2}); }
  static TruncationScheme ccsdt() { return TruncationScheme({1, 2, 3}); }
  /// All ranks 1..N; the FCI-equivalent parametrization.
  static TruncationScheme full(int N);
  /// Accepts CCS, CCSD, CCSDT and FULL (case-insensitive).
  static TruncationScheme parse(const std::string& name, int N);

  const std::set<int>& ranks() const { return ranks_; }
  bool admits(int rank) const { return ranks_.count(rank) > 0; }
  int max_rank() const { return *ranks_.rbegin(); }
  std::string name() const;
  /// Throws when a rank exceeds N.
  void validate(const SpinOrbitalBasis& basis) const;

  bool operator==(const TruncationScheme&) const = default;

 private:
  std::set<int> ranks_;
};

/// Sector indices of the excitations admitted by the scheme, in basis order.
/// This ordering is the variable ordering everywhere downstream.
std::vector<std::size_t> scheme_positions(const SectorBasis& basis, const TruncationScheme& scheme);

template <class S>
struct ClusterAmplitudes {
  SectorBasisPtr basis;
  TruncationScheme scheme;
  std::vector<std::size_t> positions;  // sector index of each variable
  Vector<S> values;

  static ClusterAmplitudes zero(SectorBasisPtr basis, const TruncationScheme& scheme) {
    scheme.validate(basis->orbitals());
    auto pos = scheme_positions(*basis, scheme);
    Vector<S> v = Vector<S>::Zero(static_cast<Eigen::Index>(pos.size()));
    return ClusterAmplitudes{std::move(basis), scheme, std::move(pos), std::move(v)};
  }

  static ClusterAmplitudes from_values(SectorBasisPtr basis, const TruncationScheme& scheme,
                                       const Vector<S>& values) {
    auto t = zero(std::move(basis), scheme);
    if (values.size() != t.values.size())
      throw std::invalid_argument("amplitudes: expected " + std::to_string(t.values.size()) +
                                  " values, got " + std::to_string(values.size()));
    t.values = values;
    return t;
  }

  std::size_t size() const { return positions.size(); }
  const ExcitationIndex& excitation(std::size_t k) const { return basis->excitation(positions[k]); }

  S& at(const ExcitationIndex& mu) { return values(lookup(mu)); }
  const S& at(const ExcitationIndex& mu) const { return values(lookup(mu)); }

 private:
  Eigen::Index lookup(const ExcitationIndex& mu) const {
    for (std::size_t k = 0; k < positions.size(); ++k)
      if (excitation(k) == mu) return static_cast<Eigen::Index>(k);
    throw std::out_of_range("amplitudes: excitation " + mu.label() + " not in scheme " +
                            scheme.name());
  }
};

/// Intermediate normalized wave operator Id + C, C strictly block-lower-triangular.
template <class S>
struct WaveOperator {
  SectorBasisPtr basis;
  Matrix<S> matrix;

  Vector<S> reference_image() const { return matrix.col(0); }
};

template <class S>
FockOperator<S> cluster_matrix(const ClusterAmplitudes<S>& t) {
  const auto n = static_cast<Eigen::Index>(t.basis->size());
  Matrix<S> T = Matrix<S>::Zero(n, n);
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (is_zero(t.values(k))) continue;
    for (const auto& e : t.basis->excitation_action(t.excitation(k)))
      T(e.row, e.col) += S(e.sign) * t.values(k);
  }
  return FockOperator<S>{t.basis, std::move(T)};
}

/// sum_{k=0..N} A^k / k! for a nilpotent A with A^{N+1} = 0.
template <class S>
Matrix<S> nilpotent_exp(const Matrix<S>& A, int N) {
  Matrix<S> out = Matrix<S>::Identity(A.rows(), A.cols());
  Matrix<S> power = out;
  for (int k = 1; k <= N; ++k) {
    power = (power * A).eval();
    out += power / factorial<S>(k);
  }
  return out;
}

template <class S>
WaveOperator<S> exp_cluster(const ClusterAmplitudes<S>& t) {
  auto T = cluster_matrix(t);
  return WaveOperator<S>{t.basis, nilpotent_exp(T.matrix, t.basis->orbitals().N())};
}

/// Intermediate normalization v / <Phi_0, v>; rejects near-orthogonal states.
template <class S>
Vector<S> intermediate_normalize(const Vector<S>& v, double tol = 1e-12) {
  if (v.size() == 0) throw std::invalid_argument("state: empty vector");
  if constexpr (is_exact_v<S>) {
    if (v(0) == 0) throw std::domain_error("state: vanishing reference overlap");
  } else {
    if (std::abs(v(0)) <= tol * std::max(1.0, static_cast<double>(v.norm())))
      throw std::domain_error("state: vanishing reference overlap");
  }
  return v / v(0);
}

/// Cluster analysis: t with exp(T) Phi_0 = v / <Phi_0, v>, via the terminating
/// logarithm series of the wave operator Id + C.
template <class S>
ClusterAmplitudes<S> amplitudes_from_state(SectorBasisPtr basis, const Vector<S>& v,
                                           std::optional<TruncationScheme> scheme = std::nullopt,
                                           double tol = 1e-12) {
  const int N = basis->orbitals().N();
  if (v.size() != static_cast<Eigen::Index>(basis->size()))
    throw std::invalid_argument("state: dimension does not match the sector");
  const Vector<S> c = intermediate_normalize(v, tol);
  const auto n = static_cast<Eigen::Index>(basis->size());
  // C = sum_mu c_mu X_mu over all excitations, so that C Phi_0 = c - Phi_0
  Matrix<S> C = Matrix<S>::Zero(n, n);
  for (std::size_t k = 1; k < basis->size(); ++k) {
    if (is_zero(c(k))) continue;
    for (const auto& e : basis->excitation_action(basis->excitation(k)))
      C(e.row, e.col) += S(e.sign) * c(k);
  }
  // log(Id + C) = sum_{m>=1} (-1)^{m+1} C^m / m, terminating at m = N
  Vector<S> logc = Vector<S>::Zero(n);
  Vector<S> power = Vector<S>::Zero(n);
  power(0) = S(1);
  for (int m = 1; m <= N; ++m) {
    power = (C * power).eval();
    const S coeff = S(m % 2 == 1 ? 1 : -1) / S(m);
    logc += coeff * power;
  }
  const TruncationScheme target = scheme.value_or(TruncationScheme::full(N));
  auto t = ClusterAmplitudes<S>::zero(basis, target);
  for (std::size_t k = 0; k < t.size(); ++k) t.values(k) = logc(t.positions[k]);
  return t;
}

/// e^{-T} H e^{T} Phi_0 as a sector vector.
template <class S, class R>
Vector<S> similarity_transformed_reference(const FockOperator<R>& H, const ClusterAmplitudes<S>& t) {
  const int N = t.basis->orbitals().N();
  auto T = cluster_matrix(t).matrix;
  const Matrix<S> Hs = matrix_cast<S>(H.matrix);
  Vector<S> w = nilpotent_exp(T, N).col(0);
  w = (Hs * w).eval();
  return nilpotent_exp(Matrix<S>(-T), N) * w;
}

template <class S, class R>
S cc_energy(const FockOperator<R>& H, const ClusterAmplitudes<S>& t) {
  if (H.dimension() != t.basis->size())
    throw std::invalid_argument("cc_energy: operator and amplitudes live in different sectors");
  return similarity_transformed_reference(H, t)(0);
}

/// Projections <Phi_mu, e^{-T} H e^{T} Phi_0> for mu admitted by the scheme
/// (default: the scheme of t), in variable order.
template <class S, class R>
Vector<S> residual_exact(const FockOperator<R>& H, const ClusterAmplitudes<S>& t,
                         std::optional<TruncationScheme> scheme = std::nullopt) {
  if (H.dimension() != t.basis->size())
    throw std::invalid_argument("residual: operator and amplitudes live in different sectors");
  const Vector<S> w = similarity_transformed_reference(H, t);
  const auto pos = scheme_positions(*t.basis, scheme.value_or(t.scheme));
  Vector<S> r(static_cast<Eigen::Index>(pos.size()));
  for (std::size_t k = 0; k < pos.size(); ++k) r(k) = w(pos[k]);
  return r;
}

}  // namespace ccroots
