#pragma once

// Dense Jordan-Wigner model of the full 2^K Fock space, written without the
// library's ladder code so it can serve as an independent reference.

#include <bit>
#include <random>
#include <vector>

#include "ccroots/cluster.hpp"

namespace oracle {

using ccroots::Matrix;
using ccroots::Vector;

inline Matrix<double> annihilator(int p, int K) {
  const int dim = 1 << K;
  Matrix<double> a = Matrix<double>::Zero(dim, dim);
  const unsigned bit = 1u << (p - 1);
  for (int s = 0; s < dim; ++s) {
    if (!(s & bit)) continue;
    const int below = std::popcount(static_cast<unsigned>(s) & (bit - 1));
    a(s ^ bit, s) = below % 2 ? -1.0 : 1.0;
  }
  return a;
}

inline Matrix<double> creator(int p, int K) { return annihilator(p, K).transpose(); }

inline Matrix<double> excitation(const ccroots::ExcitationIndex& mu, int K) {
  Matrix<double> X = Matrix<double>::Identity(1 << K, 1 << K);
  for (int k = 0; k < mu.rank(); ++k) X = X * creator(mu.virtuals[k], K) * annihilator(mu.occupied[k], K);
  return X;
}

/// Fock-space images of the sector basis vectors X_mu Phi_0, as columns.
inline Matrix<double> sector_embedding(const ccroots::SectorBasis& basis) {
  const int K = basis.orbitals().K();
  const int N = basis.orbitals().N();
  Vector<double> ref = Vector<double>::Zero(1 << K);
  ref((1 << N) - 1) = 1.0;
  Matrix<double> E(1 << K, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) E.col(k) = excitation(basis.excitation(k), K) * ref;
  return E;
}

/// sum h_pq a_p^+ a_q + 1/2 sum (pq|rs) a_p^+ a_r^+ a_s a_q on the full space.
inline Matrix<double> fock_hamiltonian(const Matrix<double>& h, const std::vector<double>& v, int K) {
  const int dim = 1 << K;
  std::vector<Matrix<double>> a, c;
  for (int p = 1; p <= K; ++p) {
    a.push_back(annihilator(p, K));
    c.push_back(creator(p, K));
  }
  Matrix<double> H = Matrix<double>::Zero(dim, dim);
  for (int p = 0; p < K; ++p)
    for (int q = 0; q < K; ++q) H += h(p, q) * c[p] * a[q];
  for (int p = 0; p < K; ++p)
    for (int q = 0; q < K; ++q)
      for (int r = 0; r < K; ++r)
        for (int s = 0; s < K; ++s) {
          const double x = v[((p * K + q) * K + r) * K + s];
          if (x != 0) H += 0.5 * x * c[p] * c[r] * a[s] * a[q];
        }
  return H;
}

/// Random real integrals with the chemist-order symmetries.
inline std::pair<Matrix<double>, std::vector<double>> random_integrals(int K, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix<double> h(K, K);
  for (int p = 0; p < K; ++p)
    for (int q = 0; q <= p; ++q) h(p, q) = h(q, p) = g(rng);
  const std::size_t k4 = static_cast<std::size_t>(K) * K * K * K;
  std::vector<double> raw(k4), v(k4);
  for (auto& x : raw) x = g(rng);
  auto at = [K](int p, int q, int r, int s) { return ((p * K + q) * K + r) * K + s; };
  for (int p = 0; p < K; ++p)
    for (int q = 0; q < K; ++q)
      for (int r = 0; r < K; ++r)
        for (int s = 0; s < K; ++s)
          v[at(p, q, r, s)] =
              0.25 * (raw[at(p, q, r, s)] + raw[at(r, s, p, q)] + raw[at(q, p, s, r)] + raw[at(s, r, q, p)]);
  return {h, v};
}

/// <Phi_mu, e^{-T} H e^{T} Phi_0> for every sector index, computed in Fock space.
/// H is given as a sector matrix and lifted through the embedding.
inline Vector<double> residuals(const ccroots::SectorBasis& basis, const Matrix<double>& Hsector,
                                const std::vector<std::size_t>& positions, const Vector<double>& t) {
  const int K = basis.orbitals().K();
  const Matrix<double> E = sector_embedding(basis);
  const Matrix<double> H = E * Hsector * E.transpose();
  Matrix<double> T = Matrix<double>::Zero(1 << K, 1 << K);
  for (std::size_t k = 0; k < positions.size(); ++k) T += t(k) * excitation(basis.excitation(positions[k]), K);
  auto expm = [&](const Matrix<double>& A, Vector<double> x) {
    Vector<double> out = x;
    for (int m = 1; m <= K; ++m) {
      x = A * x / m;
      out += x;
    }
    return out;
  };
  Vector<double> w = E.col(0);
  w = expm(-T, H * expm(T, w));
  return E.transpose() * w;
}

}  // namespace oracle
