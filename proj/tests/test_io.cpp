#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "ccroots/io.hpp"

using namespace ccroots;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("ccroots_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("scalars") {
  CHECK(io::scalar_to_json(Rational(3)) == 3);
  CHECK(io::scalar_to_json(Rational(-3, 4)) == "-3/4");
  CHECK(io::exact_scalar(json("-3/4")) == Rational(-3, 4));
  CHECK(io::exact_scalar(json(5)) == Rational(5));
  CHECK_FALSE(io::exact_scalar(json(0.5)));
  CHECK(io::float_scalar(json("1/8")) == 0.125);
  CHECK_THROWS(io::float_scalar(json("x/y")));
}

TEST_CASE("headers carry version, hash and seed") {
  const json cfg{{"n", 2}, {"k", 4}};
  const auto h = io::make_header(cfg, 42);
  CHECK(h.at("version") == io::kVersion);
  CHECK(h.at("seed") == 42);
  CHECK(h.at("config_hash") == io::config_hash(cfg));
  CHECK(io::config_hash(cfg).size() == 16);
  CHECK(io::config_hash(cfg) != io::config_hash(json{{"n", 2}, {"k", 6}}));
}

TEST_CASE("polynomial systems survive a JSON round trip") {
  const auto H = random_rational_hamiltonian_2in4(1);
  const auto exact = generate_residual_system(H, TruncationScheme::ccsd());
  const auto back = io::system_from_json<Rational>(json::parse(io::system_to_json(exact).dump()));
  CHECK(back.variables == exact.variables);
  CHECK(back.positions == exact.positions);
  for (int k = 0; k < exact.num_vars(); ++k) CHECK(back.equations[k] == exact.equations[k]);
  CHECK(back.energy == exact.energy);

  const auto flt = generate_residual_system(FockOperator<double>{H.basis, matrix_cast<double>(H.matrix)},
                                            TruncationScheme::ccs());
  const auto fb = io::system_from_json<double>(json::parse(io::system_to_json(flt).dump()));
  for (int k = 0; k < flt.num_vars(); ++k) CHECK(fb.equations[k] == flt.equations[k]);

  auto doc = io::system_to_json(exact);
  doc["variables"][0] = io::excitation_to_json({{1, 2}, {3, 4}});
  CHECK_THROWS(io::system_from_json<Rational>(doc));
}

TEST_CASE("Hamiltonians from disk") {
  const auto dir = scratch_dir();
  const auto H = random_rational_hamiltonian_2in4(3);
  io::write_json(dir / "h.json", io::hamiltonian_to_json(H));
  const auto in = io::load_hamiltonian(dir / "h.json");
  REQUIRE(in.exact);
  CHECK(in.exact->matrix == H.matrix);
  CHECK(in.N == 2);
  CHECK(in.K == 4);

  json ints{{"N", 1}, {"K", 2}, {"convention", "chemist"}, {"h", {{1.0, 0.5}, {0.5, -1.0}}},
            {"v", std::vector<double>(16, 0.0)}};
  const auto hi = io::hamiltonian_from_integrals_json(ints);
  CHECK_FALSE(hi.exact);
  CHECK(hi.numeric.matrix(0, 0) == 1.0);
  CHECK(hi.numeric.matrix(1, 1) == -1.0);
  ints["convention"] = "mulliken?";
  CHECK_THROWS(io::hamiltonian_from_integrals_json(ints));

  std::ofstream(dir / "bad.json") << "{\"N\": 2}";
  CHECK_THROWS(io::load_hamiltonian(dir / "bad.json"));
  CHECK_THROWS(io::read_json(dir / "missing.json"));
  fs::remove_all(dir);
}

TEST_CASE("amplitudes and roots") {
  auto b = make_sector_basis(SpinOrbitalBasis(6, 3));
  auto t = ClusterAmplitudes<double>::zero(b, TruncationScheme::ccsd());
  for (Eigen::Index k = 0; k < t.values.size(); ++k) t.values(k) = 0.1 * k - 0.7;
  const auto back = io::amplitudes_from_json(json::parse(io::amplitudes_to_json(t).dump()));
  CHECK(back.scheme == t.scheme);
  CHECK(back.values == t.values);

  RootRecord r;
  r.amplitudes = Vector<Complex>::Constant(2, Complex(1.0, -2.0));
  r.status = NewtonStatus::converged;
  r.energy = Complex(0.25, 0.0);
  classify(r, Vector<double>::LinSpaced(3, 0.0, 1.0));
  const auto j = io::root_to_json(r);
  CHECK(j.at("status") == "converged");
  CHECK(j.at("classification") == "real-physical");
}

TEST_CASE("CSV tables") {
  const auto dir = scratch_dir();
  io::Table t{{"a", "b"}, {{"1", "x"}, {"2", "y"}}};
  io::write_csv(dir / "t.csv", io::make_header(json{{"k", 1}}, 7), t);
  std::ifstream in(dir / "t.csv");
  std::string line, all;
  int comments = 0, rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0)
      ++comments;
    else
      ++rows;
    all += line + "\n";
  }
  CHECK(comments >= 3);
  CHECK(rows == 3);
  CHECK(all.find("# seed: 7") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("polytope documents") {
  const auto P = convex_hull({{0, 0}, {1, 0}, {0, 1}});
  const auto j = io::polytope_to_json(P);
  CHECK(j.at("vertices").size() == 3);
  CHECK(j.at("facets").size() == 3);
  CHECK(j.at("f_vector") == json::array({3, 3}));
}
