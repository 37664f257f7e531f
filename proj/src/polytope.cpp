#include "ccroots/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

namespace ccroots {

namespace {

using i128 = __int128;

long long gcd_ll(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Fraction-free Gaussian elimination; exact for integer input.
i128 determinant(std::vector<std::vector<i128>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  i128 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Reduced row echelon form over the rationals; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational piv = a[r][c];
    for (auto& x : a[r]) x /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank_of(const std::vector<std::vector<long long>>& rows) {
  std::vector<std::vector<Rational>> a;
  for (const auto& r : rows) a.emplace_back(r.begin(), r.end());
  return rref(a).size();
}

void make_primitive(std::vector<long long>& v) {
  long long g = 0;
  for (long long x : v) g = gcd_ll(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

struct Hyperplane {
  long long b;
  std::vector<long long> a;

  i128 eval(const IntPoint& x) const {
    i128 s = b;
    for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<i128>(a[k]) * x[k];
    return s;
  }
};

// Hyperplane through d affinely independent points of Z^d, via cofactors.
Hyperplane hyperplane_through(const std::vector<const IntPoint*>& pts) {
  const std::size_t d = pts.size();
  std::vector<std::vector<i128>> diff(d - 1, std::vector<i128>(d));
  for (std::size_t r = 1; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) diff[r - 1][c] = (*pts[r])[c] - (*pts[0])[c];
  Hyperplane h;
  h.a.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::vector<i128>> minor(d - 1);
    for (std::size_t r = 0; r + 1 < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (c != j) minor[r].push_back(diff[r][c]);
    i128 m = determinant(minor);
    h.a[j] = static_cast<long long>((j % 2 == 0) ? m : -m);
  }
  make_primitive(h.a);
  i128 s = 0;
  for (std::size_t k = 0; k < d; ++k) s += static_cast<i128>(h.a[k]) * (*pts[0])[k];
  h.b = static_cast<long long>(-s);
  return h;
}

struct Simplex {
  std::vector<int> v;  // sorted point ids
  Hyperplane h;
  bool alive = true;
};

// Beneath-beyond on full-dimensional points in Z^d (d >= 2). Returns the
// boundary triangulation and the integer reference point sum used for
// orientation (an interior point scaled by d + 1).
struct HullCore {
  std::vector<Simplex> simplices;
  IntPoint center_sum;
};

HullCore beneath_beyond(const std::vector<IntPoint>& q) {
  const std::size_t d = q[0].size();
  // initial simplex by greedy rank growth
  std::vector<int> init{0};
  std::vector<std::vector<Rational>> basis_rows;
  for (std::size_t i = 1; i < q.size() && init.size() < d + 1; ++i) {
    std::vector<std::vector<Rational>> trial = basis_rows;
    std::vector<Rational> row;
    for (std::size_t c = 0; c < d; ++c) row.emplace_back(q[i][c] - q[0][c]);
    trial.push_back(row);
    auto copy = trial;
    if (rref(copy).size() == trial.size()) {
      basis_rows = std::move(trial);
      init.push_back(static_cast<int>(i));
    }
  }
  HullCore core;
  core.center_sum.assign(d, 0);
  for (int id : init)
    for (std::size_t c = 0; c < d; ++c) core.center_sum[c] += q[id][c];
  const long long scale = static_cast<long long>(d) + 1;

  auto orient = [&](Hyperplane& h) {
    i128 s = static_cast<i128>(h.b) * scale;
    for (std::size_t k = 0; k < d; ++k) s += static_cast<i128>(h.a[k]) * core.center_sum[k];
    if (s < 0) {
      h.b = -h.b;
      for (auto& x : h.a) x = -x;
    }
  };

  std::unordered_map<std::vector<int>, std::array<int, 2>, VecHash> ridges;
  auto attach = [&](int sid) {
    const auto& v = core.simplices[sid].v;
    for (std::size_t drop = 0; drop < v.size(); ++drop) {
      std::vector<int> key;
      key.reserve(v.size() - 1);
      for (std::size_t k = 0; k < v.size(); ++k)
        if (k != drop) key.push_back(v[k]);
      auto [it, fresh] = ridges.try_emplace(std::move(key), std::array<int, 2>{-1, -1});
      (it->second[0] < 0 ? it->second[0] : it->second[1]) = sid;
    }
  };
  auto add_simplex = [&](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    std::vector<const IntPoint*> pts;
    for (int id : v) pts.push_back(&q[id]);
    Simplex s{std::move(v), hyperplane_through(pts), true};
    orient(s.h);
    core.simplices.push_back(std::move(s));
    attach(static_cast<int>(core.simplices.size()) - 1);
  };

  for (std::size_t drop = 0; drop < init.size(); ++drop) {
    std::vector<int> v;
    for (std::size_t k = 0; k < init.size(); ++k)
      if (k != drop) v.push_back(init[k]);
    add_simplex(std::move(v));
  }

  std::vector<int> order;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (std::find(init.begin(), init.end(), static_cast<int>(i)) == init.end())
      order.push_back(static_cast<int>(i));
  std::mt19937 shuffle_rng(12345);
  std::shuffle(order.begin(), order.end(), shuffle_rng);

  std::vector<char> visible;
  for (int pid : order) {
    const IntPoint& p = q[pid];
    std::vector<int> vis;
    for (std::size_t s = 0; s < core.simplices.size(); ++s)
      if (core.simplices[s].alive && core.simplices[s].h.eval(p) < 0) vis.push_back(static_cast<int>(s));
    if (vis.empty()) continue;
    visible.assign(core.simplices.size(), 0);
    for (int s : vis) visible[s] = 1;

    std::vector<std::vector<int>> horizon;
    for (int s : vis) {
      const auto v = core.simplices[s].v;
      for (std::size_t drop = 0; drop < v.size(); ++drop) {
        std::vector<int> key;
        for (std::size_t k = 0; k < v.size(); ++k)
          if (k != drop) key.push_back(v[k]);
        auto it = ridges.find(key);
        auto& pair = it->second;
        const int other = pair[0] == s ? pair[1] : pair[0];
        if (other >= 0 && !visible[other]) horizon.push_back(key);
        (pair[0] == s ? pair[0] : pair[1]) = -1;
        if (pair[0] < 0 && pair[1] < 0) {
          ridges.erase(it);
        } else if (pair[0] < 0) {
          std::swap(pair[0], pair[1]);
        }
      }
      core.simplices[s].alive = false;
    }
    for (auto& ridge : horizon) {
      ridge.push_back(pid);
      add_simplex(std::move(ridge));
    }
  }
  return core;
}

// Exact affine structure of a point set: pivot coordinates giving an injective
// projection and the integer equations of the affine hull.
struct AffineStructure {
  int dim = 0;
  std::vector<std::size_t> pivots;
  std::vector<Facet> equations;
};

AffineStructure affine_structure(const std::vector<IntPoint>& pts) {
  const std::size_t n = pts[0].size();
  AffineStructure out;
  std::vector<std::vector<Rational>> diff;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rational> row;
    for (std::size_t c = 0; c < n; ++c) row.emplace_back(pts[i][c] - pts[0][c]);
    diff.push_back(std::move(row));
  }
  out.pivots = rref(diff);
  out.dim = static_cast<int>(out.pivots.size());
  if (out.dim == static_cast<int>(n)) return out;

  // equations: null space of rows (1, p)
  std::vector<std::vector<Rational>> m;
  for (const auto& p : pts) {
    std::vector<Rational> row{Rational(1)};
    for (long long x : p) row.emplace_back(x);
    m.push_back(std::move(row));
  }
  auto piv = rref(m);
  std::vector<char> is_pivot(n + 1, 0);
  for (auto c : piv) is_pivot[c] = 1;
  for (std::size_t f = 0; f <= n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> vec(n + 1, Rational(0));
    vec[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) vec[piv[r]] = -m[r][f];
    BigInt lcm = 1;
    for (const auto& x : vec) {
      const BigInt den = denominator(x);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    std::vector<long long> iv;
    for (const auto& x : vec) iv.push_back(static_cast<long long>(numerator(x * lcm)));
    make_primitive(iv);
    auto first = std::find_if(iv.begin() + 1, iv.end(), [](long long x) { return x != 0; });
    if (first != iv.end() && *first < 0)
      for (auto& x : iv) x = -x;
    out.equations.push_back(Facet{iv[0], std::vector<long long>(iv.begin() + 1, iv.end())});
  }
  std::sort(out.equations.begin(), out.equations.end());
  return out;
}

Facet lift(const Hyperplane& h, const std::vector<std::size_t>& pivots, std::size_t n) {
  Facet f{h.b, std::vector<long long>(n, 0)};
  for (std::size_t k = 0; k < pivots.size(); ++k) f.normal[pivots[k]] = h.a[k];
  return f;
}

}  // namespace

long long Facet::evaluate(const IntPoint& x) const {
  long long s = offset;
  for (std::size_t k = 0; k < normal.size(); ++k) s += normal[k] * x[k];
  return s;
}

Rational Facet::evaluate(const RationalPoint& x) const {
  Rational s(offset);
  for (std::size_t k = 0; k < normal.size(); ++k)
    if (normal[k] != 0) s += Rational(normal[k]) * x[k];
  return s;
}

std::vector<long long> Facet::homogeneous() const {
  std::vector<long long> h{offset};
  h.insert(h.end(), normal.begin(), normal.end());
  return h;
}

LatticePolytope LatticePolytope::from_generators(std::vector<IntPoint> points) {
  if (points.empty()) throw std::invalid_argument("polytope: no points");
  LatticePolytope P;
  P.ambient_ = static_cast<int>(points[0].size());
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != P.ambient_) throw std::invalid_argument("polytope: ragged points");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  P.generators_ = points;
  P.vertices_ = std::move(points);
  return P;
}

LatticePolytope convex_hull(const std::vector<IntPoint>& input) {
  if (input.empty()) throw std::invalid_argument("convex hull: empty point set");
  const std::size_t n = input[0].size();
  if (n == 0) throw std::invalid_argument("convex hull: zero-dimensional ambient space");
  if (static_cast<int>(n) > kMaxHullDimension)
    throw CapacityError("convex hull: ambient dimension " + std::to_string(n) + " exceeds cap " +
                        std::to_string(kMaxHullDimension));
  for (const auto& p : input)
    if (p.size() != n) throw std::invalid_argument("convex hull: ragged points");

  LatticePolytope P;
  P.ambient_ = static_cast<int>(n);
  P.generators_ = input;
  std::vector<IntPoint> pts = input;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto aff = affine_structure(pts);
  P.dim_ = aff.dim;
  P.equations_ = aff.equations;
  P.has_hrep_ = true;
  const std::size_t d = static_cast<std::size_t>(aff.dim);

  if (d == 0) {
    P.vertices_ = pts;
    return P;
  }

  std::vector<IntPoint> q;
  for (const auto& p : pts) {
    IntPoint y;
    for (auto c : aff.pivots) y.push_back(p[c]);
    q.push_back(std::move(y));
  }

  std::vector<Hyperplane> planes;
  if (d == 1) {
    auto [lo, hi] = std::minmax_element(q.begin(), q.end());
    planes.push_back(Hyperplane{-(*lo)[0], {1}});
    planes.push_back(Hyperplane{(*hi)[0], {-1}});
    if (n == 1) P.volume_ = Rational((*hi)[0] - (*lo)[0]);
  } else {
    HullCore core = beneath_beyond(q);
    std::set<std::pair<long long, std::vector<long long>>> seen;
    i128 total = 0;
    const long long scale = static_cast<long long>(d) + 1;
    for (const auto& s : core.simplices) {
      if (!s.alive) continue;
      if (seen.emplace(s.h.b, s.h.a).second) planes.push_back(s.h);
      if (d == n) {
        std::vector<std::vector<i128>> m;
        for (int id : s.v) {
          std::vector<i128> row(d);
          for (std::size_t c = 0; c < d; ++c) row[c] = static_cast<i128>(q[id][c]) * scale - core.center_sum[c];
          m.push_back(std::move(row));
        }
        i128 det = determinant(std::move(m));
        total += det < 0 ? -det : det;
      }
    }
    if (d == n) {
      BigInt num = 0;
      // i128 -> BigInt through two 64-bit halves
      const bool neg = total < 0;
      unsigned __int128 u = neg ? static_cast<unsigned __int128>(-total) : static_cast<unsigned __int128>(total);
      num = BigInt(static_cast<unsigned long long>(u >> 64));
      num <<= 64;
      num += BigInt(static_cast<unsigned long long>(u));
      if (neg) num = -num;
      BigInt den = factorial<BigInt>(static_cast<int>(d));
      for (std::size_t k = 0; k < d; ++k) den *= scale;
      P.volume_ = Rational(num) / Rational(den);
    }
  }

  // vertices: points whose tight facet normals span R^d
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::vector<std::vector<long long>> tight;
    for (const auto& h : planes)
      if (h.eval(q[i]) == 0) tight.push_back(h.a);
    if (tight.size() >= d && rank_of(tight) == d) P.vertices_.push_back(pts[i]);
  }
  std::sort(P.vertices_.begin(), P.vertices_.end());

  for (const auto& h : planes) P.facets_.push_back(lift(h, aff.pivots, n));
  std::sort(P.facets_.begin(), P.facets_.end());
  for (const auto& f : P.facets_) {
    std::vector<int> on;
    for (std::size_t v = 0; v < P.vertices_.size(); ++v)
      if (f.evaluate(P.vertices_[v]) == 0) on.push_back(static_cast<int>(v));
    P.facet_vertices_.push_back(std::move(on));
  }
  return P;
}

int affine_dimension(const std::vector<IntPoint>& points) {
  if (points.empty()) return -1;
  std::vector<std::vector<long long>> diff;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<long long> row(points[i].size());
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = points[i][c] - points[0][c];
    diff.push_back(std::move(row));
  }
  return static_cast<int>(rank_of(diff));
}

bool FVector::euler_holds() const {
  const int d = static_cast<int>(counts.size());
  long long s = 0;
  for (int i = 0; i < d; ++i) s += (i % 2 == 0 ? 1 : -1) * counts[i];
  return s == 1 - (d % 2 == 0 ? 1 : -1);
}

std::string FVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < counts.size(); ++i) s += (i ? ", " : "") + std::to_string(counts[i]);
  return s + ")";
}

namespace {

using Bits = std::vector<std::uint64_t>;

Bits to_bits(const std::vector<int>& ids, std::size_t nv) {
  Bits b((nv + 63) / 64, 0);
  for (int i : ids) b[i / 64] |= std::uint64_t{1} << (i % 64);
  return b;
}

std::vector<IntPoint> points_of(const Bits& b, const std::vector<IntPoint>& verts) {
  std::vector<IntPoint> out;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if ((b[i / 64] >> (i % 64)) & 1u) out.push_back(verts[i]);
  return out;
}

}  // namespace

FVector f_vector(const LatticePolytope& P) {
  if (!P.has_hrep()) throw std::invalid_argument("f-vector: polytope has no H-representation");
  if (static_cast<int>(P.facets().size()) > kMaxFaceLatticeFacets)
    throw CapacityError("f-vector: " + std::to_string(P.facets().size()) +
                        " facets exceed the face-lattice cap " + std::to_string(kMaxFaceLatticeFacets));
  const int d = P.dim();
  FVector fv;
  fv.counts.assign(std::max(d, 0), 0);
  if (d <= 0) return fv;
  const std::size_t nv = P.vertices().size();
  std::vector<Bits> facets;
  for (const auto& fvs : P.facet_vertices()) facets.push_back(to_bits(fvs, nv));
  std::set<Bits> faces(facets.begin(), facets.end());
  std::vector<Bits> queue(faces.begin(), faces.end());
  while (!queue.empty()) {
    Bits face = std::move(queue.back());
    queue.pop_back();
    for (const auto& f : facets) {
      Bits x(face.size());
      bool empty = true;
      for (std::size_t w = 0; w < x.size(); ++w) {
        x[w] = face[w] & f[w];
        empty &= x[w] == 0;
      }
      if (!empty && faces.insert(x).second) queue.push_back(std::move(x));
    }
  }
  for (const auto& face : faces) {
    const int k = affine_dimension(points_of(face, P.vertices()));
    if (k >= 0 && k < d) ++fv.counts[k];
  }
  return fv;
}

FacetGraph facet_intersection_graph(const LatticePolytope& P) {
  FacetGraph g;
  g.nodes = static_cast<int>(P.facets().size());
  const auto& fv = P.facet_vertices();
  for (int i = 0; i < g.nodes; ++i)
    for (int j = i + 1; j < g.nodes; ++j) {
      std::vector<int> shared;
      std::set_intersection(fv[i].begin(), fv[i].end(), fv[j].begin(), fv[j].end(),
                            std::back_inserter(shared));
      if (shared.empty()) continue;
      std::vector<IntPoint> pts;
      for (int v : shared) pts.push_back(P.vertices()[v]);
      g.edges.push_back({i, j, affine_dimension(pts)});
    }
  return g;
}

Rational volume(const LatticePolytope& P) {
  if (!P.has_hrep()) return volume(convex_hull(P.generators()));
  return P.volume();
}

BigInt normalized_volume(const LatticePolytope& P) {
  Rational v = volume(P) * Rational(factorial<BigInt>(P.ambient_dim()));
  if (denominator(v) != 1)
    throw std::logic_error("normalized volume is not an integer");
  return numerator(v);
}

LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q) {
  if (P.ambient_dim() != Q.ambient_dim())
    throw std::invalid_argument("minkowski sum: ambient dimensions differ");
  std::vector<IntPoint> pts;
  pts.reserve(P.vertices().size() * Q.vertices().size());
  for (const auto& v : P.vertices())
    for (const auto& w : Q.vertices()) {
      IntPoint s(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) s[k] = v[k] + w[k];
      pts.push_back(std::move(s));
    }
  return convex_hull(pts);
}

BigInt mixed_volume(const std::vector<LatticePolytope>& polys) {
  const int n = static_cast<int>(polys.size());
  if (n == 0) throw std::invalid_argument("mixed volume: no polytopes");
  if (n > kMaxMixedVolumeArity)
    throw CapacityError("mixed volume: " + std::to_string(n) + " polytopes exceed the cap " +
                        std::to_string(kMaxMixedVolumeArity));
  for (const auto& p : polys)
    if (p.ambient_dim() != n)
      throw std::invalid_argument("mixed volume: need n polytopes in R^n");
  std::vector<LatticePolytope> sums(std::size_t{1} << n);
  Rational mv = 0;
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const int top = 31 - __builtin_clz(static_cast<unsigned>(mask));
    const std::size_t rest = mask & ~(std::size_t{1} << top);
    const LatticePolytope& Pt = polys[top];
    sums[mask] = rest == 0 ? (Pt.has_hrep() ? Pt : convex_hull(Pt.generators()))
                           : minkowski_sum(sums[rest], Pt);
    const int size = __builtin_popcount(static_cast<unsigned>(mask));
    const Rational& vol = sums[mask].volume();
    if ((n - size) % 2 == 0)
      mv += vol;
    else
      mv -= vol;
  }
  if (denominator(mv) != 1)
    throw std::logic_error("mixed volume is not an integer");
  return numerator(mv);
}

bool contains(const LatticePolytope& P, const RationalPoint& q) {
  if (static_cast<int>(q.size()) != P.ambient_dim())
    throw std::invalid_argument("contains: dimension mismatch");
  if (!P.has_hrep()) return in_convex_hull(P.generators(), q);
  for (const auto& e : P.equations())
    if (e.evaluate(q) != 0) return false;
  if (P.dim() == 0) {
    for (std::size_t k = 0; k < q.size(); ++k)
      if (q[k] != P.vertices()[0][k]) return false;
    return true;
  }
  for (const auto& f : P.facets())
    if (f.evaluate(q) < 0) return false;
  return true;
}

bool contains(const LatticePolytope& P, const IntPoint& q) { return contains(P, to_rational(q)); }

}  // namespace ccroots
