#pragma once

// Finite fermionic Fock space: occupation strings, ladder operators, excitation
// operators and second-quantized Hamiltonians restricted to an N-particle sector.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Sparse>

#include "ccroots/scalar.hpp"

namespace ccroots {

/// Largest orbital count for which operators are assembled on the full Fock space.
inline constexpr int kMaxFockOrbitals = 14;

/// Occupation string; bit p-1 is set when spin orbital p is occupied.
using OccupationBits = std::uint32_t;

class SpinOrbitalBasis {
 public:
  SpinOrbitalBasis(int num_orbitals, int num_electrons);

  int K() const { return num_orbitals_; }
  int N() const { return num_electrons_; }
  int num_virtual() const { return num_orbitals_ - num_electrons_; }
  std::size_t fci_dimension() const;

  bool operator==(const SpinOrbitalBasis&) const = default;

 private:
  int num_orbitals_;
  int num_electrons_;
};

struct OccupationVector {
  OccupationBits bits = 0;
  int K = 0;

  int particle_number() const;
  bool occupied(int orbital) const { return (bits >> (orbital - 1)) & 1u; }
  /// Ket notation, e.g. "|1100>".
  std::string to_string() const;
};

/// Canonically ordered determinant Phi[p_1, ..., p_N] with 1-based orbitals.
struct SlaterDeterminant {
  std::vector<int> orbitals;

  OccupationBits bits() const;
  static SlaterDeterminant from_bits(OccupationBits bits, int K);
  int size() const { return static_cast<int>(orbitals.size()); }

  auto operator<=>(const SlaterDeterminant&) const = default;
};

/// Excitation multi-index mu: occupied orbitals i_1 < ... < i_k are replaced by
/// virtual orbitals a_1 < ... < a_k. The empty index denotes the reference.
struct ExcitationIndex {
  std::vector<int> occupied;
  std::vector<int> virtuals;

  int rank() const { return static_cast<int>(occupied.size()); }
  bool is_reference() const { return occupied.empty(); }
  /// Throws std::invalid_argument unless the index is a valid excitation of the
  /// reference Phi[1..N] in the given basis.
  void validate(const SpinOrbitalBasis& basis) const;
  /// Compact label such as "12->34".
  std::string label() const;

  auto operator<=>(const ExcitationIndex&) const = default;
};

struct SignedBits {
  int sign;
  OccupationBits bits;
};

/// a_p^dagger |k>; std::nullopt when orbital p is already occupied.
std::optional<SignedBits> create(OccupationBits bits, int orbital);
/// a_p |k>; std::nullopt when orbital p is empty.
std::optional<SignedBits> annihilate(OccupationBits bits, int orbital);

/// X_mu = prod_k a_{a_k}^dagger a_{i_k} applied to an occupation string.
std::optional<SignedBits> excite(OccupationBits bits, const ExcitationIndex& mu);

/// Ladder operator a_i^dagger (create = true) or a_i as a 2^K x 2^K integer
/// matrix in the occupation-string basis (basis index = occupation bits).
Eigen::SparseMatrix<int> ladder_operator(int orbital, bool create, int K);

struct ExcitationResult {
  int phase = 0;
  std::optional<SlaterDeterminant> determinant;
};

/// X_mu applied to a canonical determinant, with the reordering phase. Phase 0
/// and no determinant when an i_j is empty or an a_j is already occupied.
ExcitationResult apply_excitation(const ExcitationIndex& mu, const SlaterDeterminant& det);

/// Determinants of the N-particle sector: the reference Phi[1..N] first, then by
/// excitation rank, ties broken lexicographically on the orbital list.
std::vector<SlaterDeterminant> enumerate_determinants(const SpinOrbitalBasis& basis);

struct CarReport {
  int K = 0;
  int identities_checked = 0;
  int failures = 0;
  bool ok() const { return failures == 0; }
};

/// Checks the canonical anticommutation relations exactly on the 2^K space.
CarReport car_check(int K);

/// Ordered N-particle basis {Phi_0} u {Phi_mu = X_mu Phi_0}. Each element is a
/// canonical determinant times the phase of X_mu Phi_0 relative to it.
class SectorBasis {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    int sign;
  };

  explicit SectorBasis(const SpinOrbitalBasis& basis);

  const SpinOrbitalBasis& orbitals() const { return basis_; }
  std::size_t size() const { return determinants_.size(); }

  const SlaterDeterminant& determinant(std::size_t k) const { return determinants_[k]; }
  const ExcitationIndex& excitation(std::size_t k) const { return excitations_[k]; }
  int phase(std::size_t k) const { return phases_[k]; }
  int rank(std::size_t k) const { return excitations_[k].rank(); }

  std::optional<std::size_t> index_of(OccupationBits bits) const;
  std::optional<std::size_t> index_of(const ExcitationIndex& mu) const;

  /// Nonzero matrix elements <Phi_row, X_mu Phi_col> in this basis.
  std::vector<Entry> excitation_action(const ExcitationIndex& mu) const;

  /// Maps a full-Fock state |bits> with sign to (index, sign in this basis).
  std::optional<std::pair<std::size_t, int>> locate(const SignedBits& state) const;

 private:
  SpinOrbitalBasis basis_;
  std::vector<SlaterDeterminant> determinants_;
  std::vector<ExcitationIndex> excitations_;
  std::vector<int> phases_;
  std::unordered_map<OccupationBits, std::size_t> index_;
};

using SectorBasisPtr = std::shared_ptr<const SectorBasis>;

SectorBasisPtr make_sector_basis(const SpinOrbitalBasis& basis);

/// Dense matrix of X_mu in the sector basis.
template <class S>
Matrix<S> excitation_matrix(const SectorBasis& basis, const ExcitationIndex& mu) {
  Matrix<S> m = Matrix<S>::Zero(basis.size(), basis.size());
  for (const auto& e : basis.excitation_action(mu)) m(e.row, e.col) = S(e.sign);
  return m;
}

/// An operator restricted to the N-particle sector, in the SectorBasis ordering.
template <class S>
struct FockOperator {
  SectorBasisPtr basis;
  Matrix<S> matrix;

  std::size_t dimension() const { return basis->size(); }
};

enum class IntegralConvention { chemist, physicist };

std::optional<IntegralConvention> parse_convention(const std::string& name);
std::string to_string(IntegralConvention c);

/// One- and two-electron integrals. Stored internally in chemists' order
/// v[p,q,r,s] = (pq|rs) regardless of the convention supplied.
template <class S>
struct IntegralSet {
  int K = 0;
  Matrix<S> h;
  std::vector<S> v;  // row-major K^4, chemist order

  S two_body(int p, int q, int r, int s) const {
    return v[((static_cast<std::size_t>(p) * K + q) * K + r) * K + s];
  }

  /// Validates shapes and symmetries; physicist-ordered tensors are permuted to
  /// chemist order. Tolerance applies to floating inputs only.
  static IntegralSet create(int K, const Matrix<S>& h, const std::vector<S>& v,
                            IntegralConvention convention, double tol = 1e-12) {
    if (K < 1 || K > kMaxFockOrbitals)
      throw std::invalid_argument("integral set: K must be in 1.." +
                                  std::to_string(kMaxFockOrbitals));
    if (h.rows() != K || h.cols() != K)
      throw std::invalid_argument("integral set: h must be K x K");
    const std::size_t k4 = static_cast<std::size_t>(K) * K * K * K;
    if (v.size() != k4) throw std::invalid_argument("integral set: v must have K^4 entries");
    auto close = [tol](const S& a, const S& b) {
      if constexpr (is_exact_v<S>) {
        return a == b;
      } else {
        return std::abs(a - b) <= tol * (1.0 + std::abs(a));
      }
    };
    for (int p = 0; p < K; ++p)
      for (int q = 0; q < K; ++q)
        if (!close(h(p, q), h(q, p))) throw std::invalid_argument("integral set: h not symmetric");

    IntegralSet out;
    out.K = K;
    out.h = h;
    out.v.resize(k4);
    auto at = [K](int p, int q, int r, int s) {
      return ((static_cast<std::size_t>(p) * K + q) * K + r) * K + s;
    };
    for (int p = 0; p < K; ++p)
      for (int q = 0; q < K; ++q)
        for (int r = 0; r < K; ++r)
          for (int s = 0; s < K; ++s) {
            // <pq|rs> (physicist) = (pr|qs) (chemist)
            out.v[at(p, q, r, s)] = convention == IntegralConvention::chemist
                                        ? v[at(p, q, r, s)]
                                        : v[at(p, r, q, s)];
          }
    for (int p = 0; p < K; ++p)
      for (int q = 0; q < K; ++q)
        for (int r = 0; r < K; ++r)
          for (int s = 0; s < K; ++s) {
            const S& x = out.v[at(p, q, r, s)];
            if (!close(x, out.v[at(r, s, p, q)]) || !close(x, out.v[at(q, p, s, r)]))
              throw std::invalid_argument(
                  "integral set: v violates the permutational symmetry of the " +
                  to_string(convention) + " convention");
          }
    return out;
  }
};

/// Second-quantized H = sum h_pq a_p^+ a_q + 1/2 sum (pq|rs) a_p^+ a_r^+ a_s a_q
/// assembled through ladder-operator actions and restricted to the sector.
template <class S>
FockOperator<S> hamiltonian_from_integrals(const IntegralSet<S>& ints, const SpinOrbitalBasis& basis) {
  if (ints.K != basis.K())
    throw std::invalid_argument("hamiltonian: integral K does not match the basis");
  if (basis.K() > kMaxFockOrbitals)
    throw std::invalid_argument("hamiltonian: K exceeds the Fock-space assembly cap");
  auto sector = make_sector_basis(basis);
  const int K = basis.K();
  Matrix<S> H = Matrix<S>::Zero(sector->size(), sector->size());
  const S half = S(1) / S(2);

  for (std::size_t col = 0; col < sector->size(); ++col) {
    const OccupationBits ket = sector->determinant(col).bits();
    const int ket_phase = sector->phase(col);
    auto accumulate = [&](const std::optional<SignedBits>& out, const S& coeff) {
      if (!out) return;
      auto loc = sector->locate(*out);
      if (!loc) return;
      H(loc->first, col) += coeff * S(loc->second * ket_phase);
    };
    for (int p = 1; p <= K; ++p)
      for (int q = 1; q <= K; ++q) {
        const S& hpq = ints.h(p - 1, q - 1);
        if (is_zero(hpq)) continue;
        auto s1 = annihilate(ket, q);
        if (!s1) continue;
        auto s2 = create(s1->bits, p);
        if (!s2) continue;
        accumulate(SignedBits{s1->sign * s2->sign, s2->bits}, hpq);
      }
    for (int q = 1; q <= K; ++q) {
      auto s1 = annihilate(ket, q);
      if (!s1) continue;
      for (int s = 1; s <= K; ++s) {
        auto s2 = annihilate(s1->bits, s);
        if (!s2) continue;
        for (int r = 1; r <= K; ++r) {
          auto s3 = create(s2->bits, r);
          if (!s3) continue;
          for (int p = 1; p <= K; ++p) {
            const S& vpqrs = ints.two_body(p - 1, q - 1, r - 1, s - 1);
            if (is_zero(vpqrs)) continue;
            auto s4 = create(s3->bits, p);
            if (!s4) continue;
            accumulate(SignedBits{s1->sign * s2->sign * s3->sign * s4->sign, s4->bits},
                       half * vpqrs);
          }
        }
      }
    }
  }
  return FockOperator<S>{std::move(sector), std::move(H)};
}

/// Wraps a symmetric sector matrix given in the canonical basis ordering.
template <class S>
FockOperator<S> hamiltonian_from_matrix(const Matrix<S>& M, const SpinOrbitalBasis& basis,
                                        double tol = 1e-12) {
  auto sector = make_sector_basis(basis);
  const auto n = static_cast<Eigen::Index>(sector->size());
  if (M.rows() != n || M.cols() != n)
    throw std::invalid_argument("hamiltonian: matrix size " + std::to_string(M.rows()) + "x" +
                                std::to_string(M.cols()) + " does not match FCI dimension " +
                                std::to_string(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if constexpr (is_exact_v<S>) {
        if (M(i, j) != M(j, i)) throw std::invalid_argument("hamiltonian: matrix not symmetric");
      } else {
        if (std::abs(M(i, j) - M(j, i)) > tol)
          throw std::invalid_argument("hamiltonian: matrix not symmetric");
      }
    }
  return FockOperator<S>{std::move(sector), M};
}

}  // namespace ccroots
