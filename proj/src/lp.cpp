#include "ccroots/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccroots {

RationalPoint to_rational(const IntPoint& p) {
  RationalPoint q;
  q.reserve(p.size());
  for (long long x : p) q.emplace_back(x);
  return q;
}

namespace {

// Keeps generators that can carry weight: if q sits on the minimum or maximum
// of some coordinate, every generator used must sit there too.
std::optional<std::vector<std::size_t>> prune(const std::vector<IntPoint>& gens,
                                              const RationalPoint& q) {
  std::vector<std::size_t> keep(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) keep[j] = j;
  const std::size_t n = q.size();
  bool changed = true;
  while (changed) {
    changed = false;
    if (keep.empty()) return std::nullopt;
    for (std::size_t c = 0; c < n; ++c) {
      long long lo = gens[keep[0]][c], hi = lo;
      for (std::size_t j : keep) {
        lo = std::min(lo, gens[j][c]);
        hi = std::max(hi, gens[j][c]);
      }
      if (q[c] < lo || q[c] > hi) return std::nullopt;
      std::vector<std::size_t> next;
      if (q[c] == lo || q[c] == hi) {
        const long long target = q[c] == lo ? lo : hi;
        for (std::size_t j : keep)
          if (gens[j][c] == target) next.push_back(j);
        if (next.size() != keep.size()) {
          keep.swap(next);
          changed = true;
          if (keep.empty()) return std::nullopt;
        }
      }
    }
  }
  return keep;
}

}  // namespace

std::optional<std::vector<Rational>> convex_combination(const std::vector<IntPoint>& generators,
                                                        const RationalPoint& q) {
  if (generators.empty()) return std::nullopt;
  const std::size_t n = q.size();
  for (const auto& g : generators)
    if (g.size() != n) throw std::invalid_argument("lp: dimension mismatch");

  auto kept = prune(generators, q);
  if (!kept) return std::nullopt;
  const std::vector<std::size_t>& cols = *kept;
  const std::size_t m = n + 1;         // coordinate rows plus the convexity row
  const std::size_t nv = cols.size();  // structural columns
  const std::size_t width = nv + m + 1;

  // tableau rows: [A | I | b] with b >= 0; objective row minimizes the artificials
  std::vector<std::vector<Rational>> T(m + 1, std::vector<Rational>(width, Rational(0)));
  for (std::size_t r = 0; r < m; ++r) {
    Rational rhs = r < n ? q[r] : Rational(1);
    const bool flip = rhs < 0;
    for (std::size_t j = 0; j < nv; ++j) {
      Rational a = r < n ? Rational(generators[cols[j]][r]) : Rational(1);
      T[r][j] = flip ? Rational(-a) : a;
    }
    T[r][nv + r] = 1;
    T[r][width - 1] = flip ? Rational(-rhs) : rhs;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = nv + r;
  // reduced costs of phase one: c_j - sum over rows
  auto& obj = T[m];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < width; ++j)
      if (j < nv || j == width - 1) obj[j] -= T[r][j];

  while (true) {
    // Bland: smallest index with negative reduced cost enters
    std::size_t enter = width;
    for (std::size_t j = 0; j < nv + m; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (T[r][enter] <= 0) continue;
      Rational ratio = T[r][width - 1] / T[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded cannot happen in phase one
    const Rational piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave || T[r][enter] == 0) continue;
      const Rational f = T[r][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (T[leave][j] != 0) T[r][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  if (obj[width - 1] != 0) return std::nullopt;  // artificial cost left

  std::vector<Rational> weights(generators.size(), Rational(0));
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < nv) weights[cols[basis[r]]] = T[r][width - 1];
  return weights;
}

bool in_convex_hull(const std::vector<IntPoint>& generators, const RationalPoint& q) {
  return convex_combination(generators, q).has_value();
}

bool in_convex_hull(const std::vector<IntPoint>& generators, const IntPoint& q) {
  return in_convex_hull(generators, to_rational(q));
}

bool is_extremal(const std::vector<IntPoint>& points, std::size_t index) {
  std::vector<IntPoint> others;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (j != index && points[j] != points[index]) others.push_back(points[j]);
  if (others.empty()) return true;
  return !in_convex_hull(others, points[index]);
}

}  // namespace ccroots
