#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccroots/fock.hpp"
#include "fock_oracle.hpp"

using namespace ccroots;

TEST_CASE("sector sizes and the reference determinant") {
  SectorBasis b24(SpinOrbitalBasis(4, 2));
  CHECK(b24.size() == 6);
  CHECK(b24.determinant(0).orbitals == std::vector<int>{1, 2});
  SectorBasis vac(SpinOrbitalBasis(4, 0));
  CHECK(vac.size() == 1);
  CHECK(vac.determinant(0).orbitals.empty());
  CHECK(SectorBasis(SpinOrbitalBasis(6, 3)).size() == 20);
  CHECK_THROWS(SpinOrbitalBasis(2, 3));
}

TEST_CASE("2-in-4 ordering: singles t23, t24, t13, t14 then the double") {
  SectorBasis b(SpinOrbitalBasis(4, 2));
  const std::vector<std::string> labels{"", "2->3", "2->4", "1->3", "1->4", "12->34"};
  for (std::size_t k = 1; k < b.size(); ++k) CHECK(b.excitation(k).label() == labels[k]);
  for (std::size_t k = 1; k < b.size(); ++k) CHECK(b.rank(k) == (k == 5 ? 2 : 1));
}

TEST_CASE("ladder signs") {
  // bit p-1 <-> orbital p; |100> has orbital 1 occupied
  auto r = create(0b001, 2);
  REQUIRE(r);
  CHECK(r->sign == -1);
  CHECK(r->bits == 0b011u);
  for (int i = 1; i <= 5; ++i) {
    auto once = create(0, i);
    REQUIRE(once);
    CHECK_FALSE(create(once->bits, i));
  }
  auto vac = create(0, 1);
  CHECK(vac->sign == 1);
  CHECK(vac->bits == 1u);
  CHECK_FALSE(annihilate(0b010, 1));
}

TEST_CASE("excitations on canonical determinants") {
  auto r = apply_excitation({{2}, {4}}, SlaterDeterminant{{2, 3}});
  REQUIRE(r.determinant);
  CHECK(r.phase == -1);
  CHECK(r.determinant->orbitals == std::vector<int>{3, 4});
  auto none = apply_excitation({{1}, {3}}, SlaterDeterminant{{2, 3}});
  CHECK(none.phase == 0);
  CHECK_FALSE(none.determinant);

  // in the sector basis X_i^a Phi_0 is +Phi_i^a by construction
  SectorBasis b(SpinOrbitalBasis(4, 2));
  for (std::size_t k = 1; k < b.size(); ++k) {
    const auto X = excitation_matrix<int>(b, b.excitation(k));
    CHECK(X(k, 0) == 1);
  }
}

TEST_CASE("canonical anticommutation relations, exact for K <= 8") {
  for (int K = 1; K <= 8; ++K) {
    const auto rep = car_check(K);
    CHECK(rep.ok());
    CHECK(rep.identities_checked >= 3 * K * K);
  }
  // independent check on the library's sparse ladder matrices
  for (int K = 1; K <= 6; ++K) {
    const int dim = 1 << K;
    Eigen::SparseMatrix<int> I(dim, dim);
    I.setIdentity();
    for (int p = 1; p <= K; ++p)
      for (int q = 1; q <= K; ++q) {
        const auto ap = ladder_operator(p, false, K), aq = ladder_operator(q, false, K);
        const auto cp = ladder_operator(p, true, K), cq = ladder_operator(q, true, K);
        Eigen::SparseMatrix<int> aa = ap * aq + aq * ap;
        Eigen::SparseMatrix<int> cc = cp * cq + cq * cp;
        Eigen::SparseMatrix<int> ca = cp * aq + aq * cp;
        CHECK(aa.norm() == 0);
        CHECK(cc.norm() == 0);
        Eigen::SparseMatrix<int> want = p == q ? I : Eigen::SparseMatrix<int>(dim, dim);
        CHECK((ca - want).norm() == 0);
      }
  }
}

TEST_CASE("ladder matrices agree with the Jordan-Wigner oracle") {
  for (int K : {1, 3, 5})
    for (int p = 1; p <= K; ++p) {
      const Matrix<double> lib = Matrix<int>(ladder_operator(p, false, K)).cast<double>();
      CHECK((lib - oracle::annihilator(p, K)).norm() == 0.0);
    }
}

TEST_CASE("excitation operators commute at (2,4) and (3,6)") {
  for (auto [K, N] : {std::pair{4, 2}, std::pair{6, 3}}) {
    SectorBasis b(SpinOrbitalBasis(K, N));
    std::vector<Matrix<int>> X;
    for (std::size_t k = 1; k < b.size(); ++k) X.push_back(excitation_matrix<int>(b, b.excitation(k)));
    int failures = 0;
    for (std::size_t i = 0; i < X.size(); ++i)
      for (std::size_t j = 0; j < X.size(); ++j)
        if ((X[i] * X[j] - X[j] * X[i]).cwiseAbs().maxCoeff() != 0) ++failures;
    CHECK(failures == 0);
    // also on the full Fock space
    const auto E = oracle::sector_embedding(b);
    for (std::size_t k = 1; k < b.size(); ++k) {
      const Matrix<double> lifted = E * X[k - 1].cast<double>() * E.transpose();
      const Matrix<double> fock = oracle::excitation(b.excitation(k), K);
      CHECK((lifted * E - fock * E).norm() == 0.0);
    }
  }
}

TEST_CASE("Hamiltonian from integrals matches dense Fock-space products") {
  std::mt19937_64 rng(11);
  for (auto [K, N] : {std::pair{4, 2}, std::pair{6, 3}}) {
    auto [h, v] = oracle::random_integrals(K, rng);
    const SpinOrbitalBasis basis(K, N);
    const auto ints = IntegralSet<double>::create(K, h, v, IntegralConvention::chemist);
    const auto H = hamiltonian_from_integrals(ints, basis);
    const auto E = oracle::sector_embedding(*H.basis);
    const Matrix<double> ref = E.transpose() * oracle::fock_hamiltonian(h, v, K) * E;
    CHECK((H.matrix - ref).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((H.matrix - H.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-12);

    // the same physics supplied in physicist order
    std::vector<double> phys(v.size());
    for (int p = 0; p < K; ++p)
      for (int q = 0; q < K; ++q)
        for (int r = 0; r < K; ++r)
          for (int s = 0; s < K; ++s) phys[((p * K + q) * K + r) * K + s] = v[((p * K + r) * K + q) * K + s];
    const auto Hp = hamiltonian_from_integrals(IntegralSet<double>::create(K, h, phys, IntegralConvention::physicist),
                                               basis);
    CHECK((Hp.matrix - H.matrix).cwiseAbs().maxCoeff() < 1e-12);

    // Slater-Condon: nothing couples determinants differing in more than two orbitals
    int violations = 0;
    for (std::size_t i = 0; i < H.basis->size(); ++i)
      for (std::size_t j = 0; j < H.basis->size(); ++j) {
        const auto a = H.basis->determinant(i).bits(), c = H.basis->determinant(j).bits();
        if (std::popcount(a ^ c) > 4 && H.matrix(i, j) != 0) ++violations;
      }
    CHECK(violations == 0);
  }
}

TEST_CASE("number-operator case") {
  const SpinOrbitalBasis basis(4, 2);
  Matrix<double> h = Matrix<double>::Zero(4, 4);
  h.diagonal() << 0.5, -1.25, 3.0, 7.0;
  const auto H = hamiltonian_from_integrals(
      IntegralSet<double>::create(4, h, std::vector<double>(256, 0.0), IntegralConvention::chemist), basis);
  CHECK(H.matrix(0, 0) == doctest::Approx(-0.75));
}

TEST_CASE("integral and matrix input validation") {
  Matrix<double> h = Matrix<double>::Identity(4, 4);
  h(0, 1) = 1;
  CHECK_THROWS_AS(IntegralSet<double>::create(4, h, std::vector<double>(256, 0.0), IntegralConvention::chemist),
                  std::invalid_argument);
  CHECK_THROWS_AS(IntegralSet<double>::create(4, Matrix<double>::Identity(4, 4), std::vector<double>(10, 0.0),
                                              IntegralConvention::chemist),
                  std::invalid_argument);
  std::vector<double> v(256, 0.0);
  v[1] = 1.0;  // (00|01) without its partners
  CHECK_THROWS_AS(IntegralSet<double>::create(4, Matrix<double>::Identity(4, 4), v, IntegralConvention::chemist),
                  std::invalid_argument);

  const SpinOrbitalBasis basis(4, 2);
  const auto I = hamiltonian_from_matrix(Matrix<double>(Matrix<double>::Identity(6, 6)), basis);
  CHECK(I.matrix.trace() == 6.0);
  Matrix<double> bad = Matrix<double>::Identity(6, 6);
  bad(0, 3) = 0.5;
  CHECK_THROWS_AS(hamiltonian_from_matrix(bad, basis), std::invalid_argument);
  CHECK_THROWS_AS(hamiltonian_from_matrix(Matrix<double>(Matrix<double>::Identity(5, 5)), basis),
                  std::invalid_argument);
  CHECK(parse_convention("physicist") == IntegralConvention::physicist);
  CHECK_FALSE(parse_convention("mulliken?"));
}
