#include "ccroots/ccgen.hpp"

#include <algorithm>
#include <set>

namespace ccroots {

namespace {

long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long c = 1;
  for (long long j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

constexpr int kMaxSurrogateDimension = 24;

IntPoint unit_sum(int dim, std::initializer_list<std::pair<int, int>> coords) {
  IntPoint p(dim, 0);
  for (auto [c, mult] : coords) p[c] += mult;
  return p;
}

}  // namespace

SystemCounts system_counts(int N, int K, const TruncationScheme& scheme) {
  if (N < 0 || K < 1 || N > K) throw std::invalid_argument("counts: need 0 <= N <= K");
  SystemCounts c;
  c.n_s = static_cast<long long>(N) * (K - N);
  c.n_d = binomial(N, 2) * binomial(K - N, 2);
  for (int r : scheme.ranks()) c.total += binomial(N, r) * binomial(K - N, r);
  return c;
}

BezoutBounds bezout_bounds(int N, int K) {
  const auto c = system_counts(N, K);
  auto power = [](long long base, long long e) {
    BigInt r = 1;
    for (long long k = 0; k < e; ++k) r *= base;
    return r;
  };
  return BezoutBounds{power(4, c.n_s + c.n_d), power(3, c.n_s) * power(4, c.n_d),
                      power(2, c.n_s + 2 * c.n_d)};
}

std::vector<IntPoint> surrogate_set(char family, int index, int n_s, int n_d) {
  const int n = n_s + n_d;
  std::vector<IntPoint> out;
  auto singles_tuples = [&](int k, auto&& emit) {
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int pos, int start) {
      if (pos == k) {
        emit(idx);
        return;
      }
      for (int i = start; i < n_s; ++i) {
        idx[pos] = i;
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 0);
  };
  auto distinct_singles = [&](int k) {
    singles_tuples(k, [&](const std::vector<int>& idx) {
      IntPoint p(n, 0);
      for (int i : idx) p[i] = 1;
      out.push_back(p);
    });
  };
  const bool S = family == 'S';
  if (!S && family != 'D') throw std::invalid_argument("surrogate: family must be S or D");
  const int key = S ? index : 100 + index;
  switch (key) {
    case 1:    // one single
    case 104:
      distinct_singles(1);
      break;
    case 2:    // one double
    case 101:
      for (int j = 0; j < n_d; ++j) out.push_back(unit_sum(n, {{n_s + j, 1}}));
      break;
    case 3:    // two distinct singles
    case 105:
      distinct_singles(2);
      break;
    case 4:    // single times double
    case 106:
      for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_d; ++j) out.push_back(unit_sum(n, {{i, 1}, {n_s + j, 1}}));
      break;
    case 5:    // three distinct singles
    case 108:
      distinct_singles(3);
      break;
    case 6:    // squared single
    case 110:
      for (int i = 0; i < n_s; ++i) out.push_back(unit_sum(n, {{i, 2}}));
      break;
    case 7:    // x^2 y over singles
      for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_s; ++j)
          if (i != j) out.push_back(unit_sum(n, {{i, 2}, {j, 1}}));
      break;
    case 102:  // two distinct doubles
      for (int i = 0; i < n_d; ++i)
        for (int j = i + 1; j < n_d; ++j) out.push_back(unit_sum(n, {{n_s + i, 1}, {n_s + j, 1}}));
      break;
    case 103:  // squared double
      for (int j = 0; j < n_d; ++j) out.push_back(unit_sum(n, {{n_s + j, 2}}));
      break;
    case 107:  // two distinct singles times a double
      singles_tuples(2, [&](const std::vector<int>& idx) {
        for (int j = 0; j < n_d; ++j) out.push_back(unit_sum(n, {{idx[0], 1}, {idx[1], 1}, {n_s + j, 1}}));
      });
      break;
    case 109:  // four distinct singles
      distinct_singles(4);
      break;
    case 111:  // squared single times a double
      for (int i = 0; i < n_s; ++i)
        for (int j = 0; j < n_d; ++j) out.push_back(unit_sum(n, {{i, 2}, {n_s + j, 1}}));
      break;
    case 112:  // two squared singles
      for (int i = 0; i < n_s; ++i)
        for (int j = i + 1; j < n_s; ++j) out.push_back(unit_sum(n, {{i, 2}, {j, 2}}));
      break;
    default:
      throw std::invalid_argument("surrogate: no family " + std::string(1, family) +
                                  std::to_string(index));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<IntPoint> union_of(char family, std::initializer_list<int> indices, int n_s, int n_d,
                               bool with_origin) {
  std::vector<IntPoint> pts;
  if (with_origin) pts.push_back(IntPoint(n_s + n_d, 0));
  for (int i : indices) {
    auto s = surrogate_set(family, i, n_s, n_d);
    pts.insert(pts.end(), s.begin(), s.end());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::pair<int, int> checked_counts(int N, int K) {
  const auto c = system_counts(N, K);
  if (c.n_s + c.n_d > kMaxSurrogateDimension)
    throw CapacityError("surrogate: " + std::to_string(c.n_s + c.n_d) +
                        " variables exceed the enumeration cap " + std::to_string(kMaxSurrogateDimension));
  if (c.n_s + c.n_d == 0) throw std::invalid_argument("surrogate: system has no variables");
  return {static_cast<int>(c.n_s), static_cast<int>(c.n_d)};
}

}  // namespace

LatticePolytope surrogate_polytope(int N, int K, SurrogateKind kind) {
  auto [n_s, n_d] = checked_counts(N, K);
  auto pts = kind == SurrogateKind::singles ? union_of('S', {2, 4, 6, 7}, n_s, n_d, true)
                                            : union_of('D', {3, 10, 11, 12}, n_s, n_d, true);
  if (n_s + n_d > kMaxHullDimension) return LatticePolytope::from_generators(std::move(pts));
  return convex_hull(pts);
}

bool InclusionReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.holds(); });
}

InclusionReport verify_inclusion_lemmas(int N, int K) {
  auto [n_s, n_d] = checked_counts(N, K);
  InclusionReport report{N, K, {}};

  auto inclusion = [&](const std::string& text, std::vector<IntPoint> members, std::vector<IntPoint> hull) {
    LemmaCheck c{text};
    for (const auto& p : members) {
      ++c.points_checked;
      if (hull.empty() || !in_convex_hull(hull, p)) ++c.failures;
    }
    report.checks.push_back(c);
  };
  auto extremal = [&](const std::string& text, const std::vector<IntPoint>& members,
                      const std::vector<IntPoint>& universe) {
    LemmaCheck c{text};
    for (const auto& p : members) {
      ++c.points_checked;
      auto it = std::find(universe.begin(), universe.end(), p);
      if (it == universe.end() || !is_extremal(universe, static_cast<std::size_t>(it - universe.begin())))
        ++c.failures;
    }
    report.checks.push_back(c);
  };
  auto S = [&](int i) { return surrogate_set('S', i, n_s, n_d); };
  auto D = [&](int i) { return surrogate_set('D', i, n_s, n_d); };
  auto U = [&](char f, std::initializer_list<int> ids, bool origin) { return union_of(f, ids, n_s, n_d, origin); };
  const std::vector<IntPoint> origin{IntPoint(n_s + n_d, 0)};

  inclusion("S3 in conv(S6)", S(3), S(6));
  inclusion("S1 in conv(S6 u {0})", S(1), U('S', {6}, true));

  const auto s_universe = U('S', {1, 2, 3, 4, 5, 6, 7}, true);
  {
    // every S5 point is the midpoint of two S7 points and is not extremal
    LemmaCheck c{"S5 points are midpoints of S7 pairs and not extremal"};
    const auto s7 = S(7);
    const std::set<IntPoint> s7set(s7.begin(), s7.end());
    for (const auto& p : S(5)) {
      ++c.points_checked;
      bool midpoint = false;
      for (const auto& a : s7) {
        IntPoint b(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) b[k] = 2 * p[k] - a[k];
        if (b != a && s7set.count(b)) {
          midpoint = true;
          break;
        }
      }
      auto it = std::find(s_universe.begin(), s_universe.end(), p);
      const bool ext = is_extremal(s_universe, static_cast<std::size_t>(it - s_universe.begin()));
      if (!midpoint || ext) ++c.failures;
    }
    report.checks.push_back(c);
  }
  extremal("{0}, S2, S4, S6, S7 extremal in conv(S1..S7 u {0})", U('S', {2, 4, 6, 7}, true), s_universe);

  inclusion("D1 in conv(D3 u {0})", D(1), U('D', {3}, true));
  inclusion("D2 in conv(D3)", D(2), D(3));
  inclusion("D4 in conv(D10 u {0})", D(4), U('D', {10}, true));
  inclusion("D5 in conv(D10)", D(5), D(10));
  inclusion("D6 in conv(D3 u D10)", D(6), U('D', {3, 10}, false));
  inclusion("D7 in conv(D3 u D12)", D(7), U('D', {3, 12}, false));
  inclusion("D8 in conv(D10 u D12)", D(8), U('D', {10, 12}, false));
  inclusion("D9 in conv(D12)", D(9), D(12));
  inclusion("S2 in conv(D3 u {0})", S(2), U('D', {3}, true));
  inclusion("S4 in conv(D3 u D10)", S(4), U('D', {3, 10}, false));
  {
    LemmaCheck c{"S6 = D10"};
    const auto a = S(6), b = D(10);
    c.points_checked = static_cast<long long>(a.size() + b.size());
    c.failures = a == b ? 0 : 1;
    report.checks.push_back(c);
  }
  inclusion("S7 in conv(D10 u D12)", S(7), U('D', {10, 12}, false));

  const auto d_universe = U('D', {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, true);
  extremal("{0}, D3, D10, D11, D12 extremal in conv(D1..D12 u {0})", U('D', {3, 10, 11, 12}, true),
           d_universe);
  return report;
}

}  // namespace ccroots
