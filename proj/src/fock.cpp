#include "ccroots/fock.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace ccroots {

SpinOrbitalBasis::SpinOrbitalBasis(int num_orbitals, int num_electrons)
    : num_orbitals_(num_orbitals), num_electrons_(num_electrons) {
  if (num_orbitals < 1 || num_orbitals > 30)
    throw std::invalid_argument("basis: K must be in 1..30");
  if (num_electrons < 0)
    throw std::invalid_argument("basis: N must be non-negative");
  if (num_electrons > num_orbitals)
    throw std::invalid_argument("basis: N = " + std::to_string(num_electrons) +
                                " exceeds K = " + std::to_string(num_orbitals));
}

std::size_t SpinOrbitalBasis::fci_dimension() const {
  std::size_t c = 1;
  for (int j = 1; j <= num_electrons_; ++j) c = c * (num_orbitals_ - num_electrons_ + j) / j;
  return c;
}

int OccupationVector::particle_number() const { return std::popcount(bits); }

std::string OccupationVector::to_string() const {
  std::string s = "|";
  for (int p = 1; p <= K; ++p) s += occupied(p) ? '1' : '0';
  return s + ">";
}

OccupationBits SlaterDeterminant::bits() const {
  OccupationBits b = 0;
  for (int p : orbitals) b |= OccupationBits{1} << (p - 1);
  return b;
}

SlaterDeterminant SlaterDeterminant::from_bits(OccupationBits bits, int K) {
  SlaterDeterminant d;
  for (int p = 1; p <= K; ++p)
    if ((bits >> (p - 1)) & 1u) d.orbitals.push_back(p);
  return d;
}

void ExcitationIndex::validate(const SpinOrbitalBasis& basis) const {
  if (occupied.size() != virtuals.size())
    throw std::invalid_argument("excitation: occupied and virtual lists differ in length");
  if (occupied.empty()) throw std::invalid_argument("excitation: rank must be at least 1");
  for (std::size_t k = 0; k < occupied.size(); ++k) {
    if (occupied[k] < 1 || occupied[k] > basis.N())
      throw std::invalid_argument("excitation: occupied index out of range");
    if (virtuals[k] <= basis.N() || virtuals[k] > basis.K())
      throw std::invalid_argument("excitation: virtual index out of range");
    if (k > 0 && (occupied[k] <= occupied[k - 1] || virtuals[k] <= virtuals[k - 1]))
      throw std::invalid_argument("excitation: indices must be strictly increasing");
  }
}

std::string ExcitationIndex::label() const {
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k > 0 && (v[k] > 9 || v[k - 1] > 9)) s += ',';
      s += std::to_string(v[k]);
    }
    return s;
  };
  if (occupied.empty()) return "ref";
  return join(occupied) + "->" + join(virtuals);
}

namespace {

int sign_below(OccupationBits bits, int orbital) {
  const OccupationBits mask = (OccupationBits{1} << (orbital - 1)) - 1;
  return (std::popcount(bits & mask) & 1) ? -1 : 1;
}

}  // namespace

std::optional<SignedBits> create(OccupationBits bits, int orbital) {
  const OccupationBits b = OccupationBits{1} << (orbital - 1);
  if (bits & b) return std::nullopt;
  return SignedBits{sign_below(bits, orbital), bits | b};
}

std::optional<SignedBits> annihilate(OccupationBits bits, int orbital) {
  const OccupationBits b = OccupationBits{1} << (orbital - 1);
  if (!(bits & b)) return std::nullopt;
  return SignedBits{sign_below(bits, orbital), bits & ~b};
}

std::optional<SignedBits> excite(OccupationBits bits, const ExcitationIndex& mu) {
  // product of commuting singles; apply the rightmost factor first
  int sign = 1;
  for (int k = mu.rank() - 1; k >= 0; --k) {
    auto a = annihilate(bits, mu.occupied[k]);
    if (!a) return std::nullopt;
    auto c = create(a->bits, mu.virtuals[k]);
    if (!c) return std::nullopt;
    sign *= a->sign * c->sign;
    bits = c->bits;
  }
  return SignedBits{sign, bits};
}

Eigen::SparseMatrix<int> ladder_operator(int orbital, bool make, int K) {
  if (orbital < 1 || orbital > K) throw std::invalid_argument("ladder operator: orbital out of range");
  if (K > kMaxFockOrbitals) throw std::invalid_argument("ladder operator: K exceeds the Fock-space cap");
  const int dim = 1 << K;
  std::vector<Eigen::Triplet<int>> entries;
  entries.reserve(dim / 2);
  for (int k = 0; k < dim; ++k) {
    auto out = make ? create(static_cast<OccupationBits>(k), orbital)
                    : annihilate(static_cast<OccupationBits>(k), orbital);
    if (out) entries.emplace_back(static_cast<int>(out->bits), k, out->sign);
  }
  Eigen::SparseMatrix<int> m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

ExcitationResult apply_excitation(const ExcitationIndex& mu, const SlaterDeterminant& det) {
  if (det.orbitals.empty()) return {};
  const int K = std::max(det.orbitals.back(), mu.virtuals.empty() ? 0 : mu.virtuals.back());
  auto out = excite(det.bits(), mu);
  if (!out) return {};
  return {out->sign, SlaterDeterminant::from_bits(out->bits, K)};
}

std::vector<SlaterDeterminant> enumerate_determinants(const SpinOrbitalBasis& basis) {
  const int K = basis.K(), N = basis.N();
  std::vector<SlaterDeterminant> dets;
  dets.reserve(basis.fci_dimension());
  std::vector<int> pick(N);
  std::iota(pick.begin(), pick.end(), 1);
  while (true) {
    dets.push_back(SlaterDeterminant{pick});
    int j = N - 1;
    while (j >= 0 && pick[j] == K - N + j + 1) --j;
    if (j < 0) break;
    ++pick[j];
    for (int l = j + 1; l < N; ++l) pick[l] = pick[l - 1] + 1;
  }
  auto rank = [N](const SlaterDeterminant& d) {
    return static_cast<int>(std::count_if(d.orbitals.begin(), d.orbitals.end(),
                                          [N](int p) { return p > N; }));
  };
  std::stable_sort(dets.begin(), dets.end(), [&](const auto& a, const auto& b) {
    const int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
    return a.orbitals < b.orbitals;
  });
  return dets;
}

CarReport car_check(int K) {
  if (K < 1 || K > 10) throw std::invalid_argument("car_check: K must be in 1..10");
  CarReport report;
  report.K = K;
  const int dim = 1 << K;
  std::vector<Eigen::SparseMatrix<int>> a, ad;
  for (int i = 1; i <= K; ++i) {
    a.push_back(ladder_operator(i, false, K));
    ad.push_back(ladder_operator(i, true, K));
  }
  Eigen::SparseMatrix<int> id(dim, dim);
  id.setIdentity();
  auto is_zero_matrix = [](const Eigen::SparseMatrix<int>& m) {
    for (int k = 0; k < m.outerSize(); ++k)
      for (Eigen::SparseMatrix<int>::InnerIterator it(m, k); it; ++it)
        if (it.value() != 0) return false;
    return true;
  };
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      Eigen::SparseMatrix<int> mixed = ad[i] * a[j] + a[j] * ad[i];
      if (i == j) mixed -= id;
      Eigen::SparseMatrix<int> cc = ad[i] * ad[j] + ad[j] * ad[i];
      Eigen::SparseMatrix<int> aa = a[i] * a[j] + a[j] * a[i];
      report.identities_checked += 3;
      report.failures += !is_zero_matrix(mixed) + !is_zero_matrix(cc) + !is_zero_matrix(aa);
    }
  return report;
}

SectorBasis::SectorBasis(const SpinOrbitalBasis& basis) : basis_(basis) {
  determinants_ = enumerate_determinants(basis);
  const int N = basis.N();
  const OccupationBits ref = N == 0 ? 0 : ((OccupationBits{1} << N) - 1);
  for (std::size_t k = 0; k < determinants_.size(); ++k) {
    const auto& d = determinants_[k];
    ExcitationIndex mu;
    for (int i = 1; i <= N; ++i)
      if (!std::binary_search(d.orbitals.begin(), d.orbitals.end(), i)) mu.occupied.push_back(i);
    for (int p : d.orbitals)
      if (p > N) mu.virtuals.push_back(p);
    auto out = excite(ref, mu);
    phases_.push_back(out->sign);
    excitations_.push_back(std::move(mu));
    index_.emplace(d.bits(), k);
  }
}

std::optional<std::size_t> SectorBasis::index_of(OccupationBits bits) const {
  auto it = index_.find(bits);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SectorBasis::index_of(const ExcitationIndex& mu) const {
  const OccupationBits ref = basis_.N() == 0 ? 0 : ((OccupationBits{1} << basis_.N()) - 1);
  auto out = excite(ref, mu);
  if (!out) return std::nullopt;
  return index_of(out->bits);
}

std::optional<std::pair<std::size_t, int>> SectorBasis::locate(const SignedBits& state) const {
  auto k = index_of(state.bits);
  if (!k) return std::nullopt;
  return std::make_pair(*k, state.sign * phases_[*k]);
}

std::vector<SectorBasis::Entry> SectorBasis::excitation_action(const ExcitationIndex& mu) const {
  std::vector<Entry> out;
  for (std::size_t col = 0; col < size(); ++col) {
    auto s = excite(determinants_[col].bits(), mu);
    if (!s) continue;
    auto loc = locate(*s);
    if (!loc) continue;
    out.push_back({loc->first, col, loc->second * phases_[col]});
  }
  return out;
}

SectorBasisPtr make_sector_basis(const SpinOrbitalBasis& basis) {
  return std::make_shared<const SectorBasis>(basis);
}

std::optional<IntegralConvention> parse_convention(const std::string& name) {
  if (name == "chemist") return IntegralConvention::chemist;
  if (name == "physicist") return IntegralConvention::physicist;
  return std::nullopt;
}

std::string to_string(IntegralConvention c) {
  return c == IntegralConvention::chemist ? "chemist" : "physicist";
}

}  // namespace ccroots
