#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccroots/ccgen.hpp"
#include "ccroots/solve.hpp"
#include "fock_oracle.hpp"

using namespace ccroots;

namespace {

FockOperator<double> random_two_body(int K, int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto [h, v] = oracle::random_integrals(K, rng);
  return hamiltonian_from_integrals(IntegralSet<double>::create(K, h, v, IntegralConvention::chemist),
                                    SpinOrbitalBasis(K, N));
}

Vector<double> random_point(std::mt19937_64& rng, int n, double sigma = 0.7) {
  std::normal_distribution<double> g(0.0, sigma);
  Vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

}  // namespace

TEST_CASE("variable counts and Bezout-type bounds") {
  auto c = system_counts(2, 4);
  CHECK(c.n_s == 4);
  CHECK(c.n_d == 1);
  c = system_counts(3, 6);
  CHECK(c.n_s == 9);
  CHECK(c.n_d == 9);
  CHECK(c.n_s + c.n_d == 18);
  c = system_counts(2, 2);
  CHECK(c.n_s + c.n_d == 0);

  const auto b = bezout_bounds(2, 4);
  CHECK(b.naive == 1024);
  CHECK(b.refined == 324);
  CHECK(b.quadratic == 64);
  const auto b36 = bezout_bounds(3, 6);
  CHECK(b36.refined == BigInt(19683) * BigInt(262144));
  CHECK(b36.quadratic == BigInt(1) << 27);
  CHECK(b36.quadratic < b36.refined);
}

TEST_CASE("degrees and constant terms") {
  for (auto [K, N] : {std::pair{4, 2}, std::pair{6, 3}}) {
    const auto H = random_two_body(K, N, 21);
    const auto sys = generate_residual_system(H, TruncationScheme::ccsd());
    for (int k = 0; k < sys.num_vars(); ++k) {
      const auto& f = sys.equations[k];
      CHECK(f.degree() <= (sys.variables[k].rank() == 1 ? 3 : 4));
      const double c0 = f.coefficient(Monomial{std::vector<int>(sys.num_vars(), 0)});
      CHECK(c0 == doctest::Approx(H.matrix(sys.positions[k], 0)));
    }
  }
}

TEST_CASE("generated residuals agree with the Fock-space oracle") {
  std::mt19937_64 rng(17);
  for (auto [K, N] : {std::pair{4, 2}, std::pair{6, 3}}) {
    const auto H = random_two_body(K, N, 100 + K);
    for (const auto& scheme : {TruncationScheme::ccs(), TruncationScheme::ccsd(), TruncationScheme::full(N)}) {
      const auto sys = generate_residual_system(H, scheme);
      double worst = 0;
      for (int rep = 0; rep < 20; ++rep) {
        const Vector<double> t = random_point(rng, sys.num_vars());
        const Vector<double> ref = oracle::residuals(*H.basis, H.matrix, sys.positions, t);
        for (int k = 0; k < sys.num_vars(); ++k)
          worst = std::max(worst, std::abs(sys.equations[k].evaluate(t) - ref(sys.positions[k])));
        worst = std::max(worst, std::abs(sys.energy.evaluate(t) - ref(0)));
      }
      CHECK(worst <= 1e-10);
    }
  }
}

TEST_CASE("2-in-4 singles equations in closed form, exactly") {
  // f_i = (H c)_i - t_i (H c)_0 with c = (1, t, t12 + t13 t24 - t23 t14)
  const auto H = random_rational_hamiltonian_2in4(4);
  const auto sys = generate_residual_system(H, TruncationScheme::ccsd());
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> u(-12, 12);
  for (int rep = 0; rep < 20; ++rep) {
    Vector<Rational> x(5);
    for (auto& v : x) v = Rational(u(rng), 5);
    Vector<Rational> c(6);
    c << Rational(1), x(0), x(1), x(2), x(3), x(4) + x(2) * x(1) - x(0) * x(3);
    const Vector<Rational> g = H.matrix * c;
    for (int i = 1; i <= 4; ++i) CHECK(sys.equations[i - 1].evaluate(x) == g(i) - x(i - 1) * g(0));
  }
}

TEST_CASE("exact and floating generation agree") {
  const auto H = random_rational_hamiltonian_2in4(2);
  const auto exact = generate_residual_system(H, TruncationScheme::ccsd());
  const auto flt = generate_residual_system(FockOperator<double>{H.basis, matrix_cast<double>(H.matrix)},
                                            TruncationScheme::ccsd());
  for (int k = 0; k < 5; ++k) {
    CHECK(exact.equations[k].support() == flt.equations[k].support());
    for (const auto& [m, c] : exact.equations[k].terms())
      CHECK(std::abs(c.convert_to<double>() - flt.equations[k].coefficient(m)) < 1e-12);
  }
}

TEST_CASE("analytic Jacobians match central differences") {
  std::mt19937_64 rng(23);
  const double h = 1e-6;
  for (auto [K, N] : {std::pair{4, 2}, std::pair{6, 3}}) {
    const auto sys = NumericSystem::from(generate_residual_system(random_two_body(K, N, 5), TruncationScheme::ccsd()));
    int bad = 0;
    for (int rep = 0; rep < 50; ++rep) {
      const Vector<Complex> x = random_point(rng, sys.n, 0.5).cast<Complex>() +
                                Complex(0, 1) * random_point(rng, sys.n, 0.2).cast<Complex>();
      const Matrix<Complex> J = sys.equations.jacobian(x);
      for (int j = 0; j < sys.n; ++j) {
        Vector<Complex> xp = x, xm = x;
        xp(j) += h;
        xm(j) -= h;
        const Vector<Complex> fd = (sys.equations.residual(xp) - sys.equations.residual(xm)) / (2 * h);
        for (int i = 0; i < sys.n; ++i)
          if (std::abs(fd(i) - J(i, j)) > 1e-6 * std::max(1.0, std::abs(J(i, j)))) ++bad;
      }
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("quadratic reformulation of 2-in-4 CCSD") {
  const auto H = random_rational_hamiltonian_2in4(3);
  const auto q = quadratic_form_2in4(H);
  const auto sys = generate_residual_system(H, TruncationScheme::ccsd());

  // H(1): only the first two rows are populated
  for (int r = 2; r < 7; ++r) CHECK(q.H[0].row(r).isZero());
  for (int c = 0; c < 6; ++c) {
    CHECK(q.H[0](0, c) == H.matrix(1, c));
    CHECK(q.H[0](1, c) == -H.matrix(0, c));
  }

  Vector<Rational> zero = Vector<Rational>::Zero(5);
  for (int i = 0; i < 5; ++i) CHECK(q.evaluate(i, zero) == H.matrix(i + 1, 0));

  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> u(-20, 20);
  for (int rep = 0; rep < 30; ++rep) {
    Vector<Rational> t(5);
    for (auto& v : t) v = Rational(u(rng), 7);
    CHECK(QuadraticForm2in4<Rational>::variety_residual(QuadraticForm2in4<Rational>::lift(t)) == 0);
    for (int i = 0; i < 5; ++i) CHECK(q.evaluate(i, t) == sys.equations[i].evaluate(t));
  }
  CHECK_THROWS(quadratic_form_2in4(random_two_body(6, 3, 1)));
}

TEST_CASE("surrogate polytopes") {
  for (auto [N, K] : {std::pair{2, 4}, std::pair{3, 6}}) {
    const auto c = system_counts(N, K);
    const int ns = static_cast<int>(c.n_s), nd = static_cast<int>(c.n_d);
    CHECK(surrogate_set('S', 6, ns, nd) == surrogate_set('D', 10, ns, nd));
    const auto rep = verify_inclusion_lemmas(N, K);
    for (const auto& chk : rep.checks) {
      INFO(chk.statement);
      CHECK(chk.holds());
      if (N == 3) CHECK(chk.points_checked > 0);
    }
  }
  // (2,4) singles surrogate contains every singles support point and nothing larger
  const auto NS = surrogate_polytope(2, 4, SurrogateKind::singles);
  const auto sys = generate_residual_system(random_two_body(4, 2, 8), TruncationScheme::ccsd());
  for (int k = 0; k < 4; ++k)
    for (const auto& p : exponent_vectors(sys.equations[k])) CHECK(contains(NS, p));
  CHECK_FALSE(contains(NS, IntPoint{3, 0, 0, 0, 0}));
  CHECK_THROWS(surrogate_set('S', 99, 4, 1));
}
