#include "ccroots/cluster.hpp"

#include <algorithm>
#include <cctype>

namespace ccroots {

TruncationScheme::TruncationScheme(std::set<int> ranks) : ranks_(std::move(ranks)) {
  if (ranks_.empty()) throw std::invalid_argument("scheme: no excitation ranks");
  if (*ranks_.begin() < 1) throw std::invalid_argument("scheme: ranks start at 1");
}

TruncationScheme TruncationScheme::full(int N) {
  if (N < 1) throw std::invalid_argument("scheme: FULL needs at least one electron");
  std::set<int> r;
  for (int k = 1; k <= N; ++k) r.insert(k);
  return TruncationScheme(std::move(r));
}

TruncationScheme TruncationScheme::parse(const std::string& name, int N) {
  std::string u = name;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (u == "CCS") return ccs();
  if (u == "CCSD") return ccsd();
  if (u == "CCSDT") return ccsdt();
  if (u == "FULL" || u == "FCI") return full(N);
  throw std::invalid_argument("scheme: unknown truncation '" + name +
                              "' (expected CCS, CCSD, CCSDT or FULL)");
}

std::string TruncationScheme::name() const {
  if (ranks_ == std::set<int>{1}) return "CCS";
  if (ranks_ == std::set<int>{1, 2}) return "CCSD";
  if (ranks_ == std::set<int>{1, 2, 3}) return "CCSDT";
  std::string s = "ranks";
  for (int r : ranks_) s += "-" + std::to_string(r);
  return s;
}

void TruncationScheme::validate(const SpinOrbitalBasis& basis) const {
  if (max_rank() > basis.N())
    throw std::invalid_argument("scheme: rank " + std::to_string(max_rank()) +
                                " exceeds the electron count " + std::to_string(basis.N()));
}

std::vector<std::size_t> scheme_positions(const SectorBasis& basis, const TruncationScheme& scheme) {
  std::vector<std::size_t> pos;
  for (std::size_t k = 1; k < basis.size(); ++k)
    if (scheme.admits(basis.rank(k))) pos.push_back(k);
  return pos;
}

}  // namespace ccroots
