#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccroots/cluster.hpp"
#include "ccroots/solve.hpp"
#include "fock_oracle.hpp"

using namespace ccroots;

namespace {

Vector<double> gaussian(std::mt19937_64& rng, Eigen::Index n, double sigma) {
  std::normal_distribution<double> g(0.0, sigma);
  Vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

ClusterAmplitudes<double> random_amplitudes(SectorBasisPtr b, const TruncationScheme& s, std::mt19937_64& rng,
                                            double sigma = 0.5) {
  auto t = ClusterAmplitudes<double>::zero(b, s);
  t.values = gaussian(rng, t.values.size(), sigma);
  return t;
}

FockOperator<double> random_symmetric(const SpinOrbitalBasis& basis, std::mt19937_64& rng) {
  auto sector = make_sector_basis(basis);
  const auto n = static_cast<Eigen::Index>(sector->size());
  Matrix<double> A(n, n);
  for (auto& x : A.reshaped()) x = std::normal_distribution<double>(0.0, 1.0)(rng);
  Matrix<double> M = (A + A.transpose()) / 2;
  for (Eigen::Index k = 0; k < n; ++k) M(k, k) += 3.0 * sector->rank(k);
  return hamiltonian_from_matrix(M, basis);
}

}  // namespace

TEST_CASE("truncation schemes") {
  CHECK(TruncationScheme::parse("ccsd", 3) == TruncationScheme::ccsd());
  CHECK(TruncationScheme::parse("FULL", 3) == TruncationScheme::ccsdt());
  CHECK_THROWS(TruncationScheme::parse("cisd", 3));
  CHECK_THROWS(TruncationScheme::ccsdt().validate(SpinOrbitalBasis(4, 2)));
  auto b = make_sector_basis(SpinOrbitalBasis(6, 3));
  CHECK(scheme_positions(*b, TruncationScheme::ccsd()).size() == 18);
  // CCSD variables are a prefix of the FULL variables
  const auto full = scheme_positions(*b, TruncationScheme::full(3));
  const auto ccsd = scheme_positions(*b, TruncationScheme::ccsd());
  CHECK(std::equal(ccsd.begin(), ccsd.end(), full.begin()));
}

TEST_CASE("cluster matrices") {
  auto b = make_sector_basis(SpinOrbitalBasis(4, 2));
  auto t = ClusterAmplitudes<double>::zero(b, TruncationScheme::ccsd());
  CHECK(cluster_matrix(t).matrix.isZero());
  t.values(0) = 1.0;
  const auto T = cluster_matrix(t).matrix;
  CHECK(T(1, 0) == 1.0);
  CHECK(T.col(0).cwiseAbs().sum() == 1.0);
  // X_2^3 also carries Phi_1^4 to Phi_12^34
  CHECK(std::abs(T(5, 4)) == 1.0);
  CHECK(T.cwiseAbs().sum() == 2.0);

  std::mt19937_64 rng(3);
  for (auto [K, N] : {std::pair{4, 2}, std::pair{6, 3}}) {
    auto bb = make_sector_basis(SpinOrbitalBasis(K, N));
    for (int rep = 0; rep < 20; ++rep) {
      const auto A = cluster_matrix(random_amplitudes(bb, TruncationScheme::full(N), rng)).matrix;
      const auto B = cluster_matrix(random_amplitudes(bb, TruncationScheme::full(N), rng)).matrix;
      CHECK((A * B - B * A).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("exponential of the cluster operator") {
  auto b = make_sector_basis(SpinOrbitalBasis(4, 2));
  auto zero = ClusterAmplitudes<Rational>::zero(b, TruncationScheme::ccsd());
  CHECK(exp_cluster(zero).matrix == Matrix<Rational>::Identity(6, 6));

  // exact: coefficient of Phi_12^34 is t12 + t13 t24 - t23 t14
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-9, 9);
  for (int rep = 0; rep < 25; ++rep) {
    auto t = ClusterAmplitudes<Rational>::zero(b, TruncationScheme::ccsd());
    for (auto& x : t.values) x = Rational(u(rng), 7);
    const auto c = exp_cluster(t).reference_image();
    const auto& v = t.values;
    CHECK(c(5) == v(4) + v(2) * v(1) - v(0) * v(3));
    for (int k = 1; k <= 4; ++k) CHECK(c(k) == v(k - 1));
  }

  // exp(T) exp(S) = exp(T + S)
  auto b36 = make_sector_basis(SpinOrbitalBasis(6, 3));
  for (int rep = 0; rep < 20; ++rep) {
    auto t = random_amplitudes(b36, TruncationScheme::full(3), rng);
    auto s = random_amplitudes(b36, TruncationScheme::full(3), rng);
    auto ts = t;
    ts.values += s.values;
    const Matrix<double> lhs = exp_cluster(t).matrix * exp_cluster(s).matrix;
    CHECK((lhs - exp_cluster(ts).matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("cluster analysis inverts the exponential") {
  auto b = make_sector_basis(SpinOrbitalBasis(4, 2));
  Vector<double> ref = Vector<double>::Zero(6);
  ref(0) = 2.5;
  CHECK(amplitudes_from_state(b, ref).values.isZero());

  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    Vector<double> c = gaussian(rng, 6, 1.0);
    c(0) = 1.0;
    const auto t = amplitudes_from_state(b, c);
    CHECK(std::abs(t.values(4) - (c(5) - c(3) * c(2) + c(1) * c(4))) < 1e-12);
  }

  auto b36 = make_sector_basis(SpinOrbitalBasis(6, 3));
  for (int rep = 0; rep < 50; ++rep) {
    const auto t0 = random_amplitudes(b36, TruncationScheme::full(3), rng);
    const auto t1 = amplitudes_from_state(b36, exp_cluster(t0).reference_image());
    CHECK((t1.values - t0.values).cwiseAbs().maxCoeff() < 1e-12);
  }

  Vector<double> orth = Vector<double>::Zero(6);
  orth(3) = 1.0;
  CHECK_THROWS_AS(amplitudes_from_state(b, orth), std::domain_error);
  CHECK_THROWS(amplitudes_from_state(b, Vector<double>(Vector<double>::Ones(5))));
}

TEST_CASE("energies and residuals") {
  std::mt19937_64 rng(9);
  for (auto [K, N] : {std::pair{4, 2}, std::pair{6, 3}}) {
    const SpinOrbitalBasis basis(K, N);
    const auto H = random_symmetric(basis, rng);
    auto zero = ClusterAmplitudes<double>::zero(H.basis, TruncationScheme::full(N));
    CHECK(cc_energy(H, zero) == doctest::Approx(H.matrix(0, 0)));
    const auto r0 = residual_exact(H, zero);
    for (std::size_t k = 0; k < zero.size(); ++k) CHECK(r0(k) == doctest::Approx(H.matrix(zero.positions[k], 0)));

    const auto eig = fci_eigensolve(H);
    for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
      const Vector<double> v = eig.vectors.col(j);
      if (std::abs(v(0)) < 0.05) continue;
      const auto t = amplitudes_from_state(H.basis, v);
      // conditioning grows with the amplitude size
      const double scale = std::pow(std::max(1.0, t.values.cwiseAbs().maxCoeff()), N + 1);
      CHECK(std::abs(cc_energy(H, t) - eig.values(j)) < 1e-10 * scale);
      CHECK(residual_exact(H, t).cwiseAbs().maxCoeff() < 1e-10 * scale);
    }
  }

  // with a two-body H the energy never sees the triple amplitude
  auto [h, v] = oracle::random_integrals(6, rng);
  const auto H = hamiltonian_from_integrals(IntegralSet<double>::create(6, h, v, IntegralConvention::chemist),
                                            SpinOrbitalBasis(6, 3));
  auto t = random_amplitudes(H.basis, TruncationScheme::full(3), rng);
  const double e0 = cc_energy(H, t);
  t.values(t.size() - 1) += 3.0;
  CHECK(std::abs(cc_energy(H, t) - e0) < 1e-12);
}
