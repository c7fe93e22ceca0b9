#include "crepant/polyhedra.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "crepant/errors.hpp"

namespace crepant {

namespace {

// next k-subset of {0..n-1} in lex order; returns false when exhausted
bool next_subset(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<IntVec> pointed_cone_rays(const std::vector<IntVec>& normals, int n) {
  std::vector<IntVec> rays;
  std::set<IntVec> seen;
  int m = static_cast<int>(normals.size());

  if (n == 1) {
    // {x >= 0}, {x <= 0} or {0}
    for (Int s : {Int(1), Int(-1)}) {
      bool ok = true;
      for (const IntVec& a : normals)
        if (a[0] * s < 0) { ok = false; break; }
      if (ok) rays.push_back({s});
    }
    if (rays.size() == 2) throw NotStronglyConvex("constraint set admits a line");
    return rays;
  }
  if (m < n - 1) return rays;

  std::vector<int> idx(n - 1);
  for (int i = 0; i < n - 1; ++i) idx[i] = i;
  do {
    std::vector<IntVec> sub;
    sub.reserve(n - 1);
    for (int i : idx) sub.push_back(normals[i]);
    IntMatrix s = IntMatrix::from_rows(sub);
    std::vector<IntVec> ker = integer_kernel_basis(s);
    if (ker.size() != 1) continue;  // subset rank below n-1
    IntVec w = primitive(ker[0]);

    bool nonneg = true, nonpos = true;
    for (const IntVec& a : normals) {
      Int d = dot(a, w);
      if (d < 0) nonneg = false;
      if (d > 0) nonpos = false;
      if (!nonneg && !nonpos) break;
    }
    if (!nonneg && !nonpos) continue;
    if (nonneg && nonpos) throw NotStronglyConvex("constraint set admits a line");
    if (nonpos)
      for (Int& x : w) x = -x;

    if (!seen.insert(w).second) continue;

    // extreme ray test: active constraints must have rank n-1
    std::vector<IntVec> active;
    for (const IntVec& a : normals)
      if (dot(a, w) == 0) active.push_back(a);
    if (IntMatrix::from_rows(active).rank() == n - 1) rays.push_back(w);
  } while (next_subset(idx, m));

  std::sort(rays.begin(), rays.end());
  return rays;
}

std::vector<IntVec> dual_cone(const std::vector<IntVec>& generators, int n) {
  IntMatrix g = IntMatrix::from_rows(generators);
  if (g.cols() != n || g.rank() != n)
    throw NotFullDimensional("generators do not span the ambient space");
  std::vector<IntVec> rays = pointed_cone_rays(generators, n);
  if (IntMatrix::from_rows(rays).rank() != n)
    throw NotStronglyConvex("generated cone contains a line, dual not full-dimensional");
  return rays;
}

std::vector<Facet> polytope_facets(const std::vector<IntVec>& points) {
  if (points.empty()) throw NotFullDimensional("empty point set");
  int m = static_cast<int>(points[0].size());
  int np = static_cast<int>(points.size());

  // affine full-dimensionality
  {
    std::vector<IntVec> diffs;
    for (int i = 1; i < np; ++i) {
      IntVec d(m);
      for (int c = 0; c < m; ++c) d[c] = points[i][c] - points[0][c];
      diffs.push_back(d);
    }
    if (m > 0 && IntMatrix::from_rows(diffs).rank() != m)
      throw NotFullDimensional("point set not full-dimensional");
  }

  std::vector<Facet> facets;
  std::set<std::pair<IntVec, Int>> seen;
  auto push_facet = [&](IntVec a, Int b) {
    Int g = gcd_vec(a);
    g = boost::multiprecision::gcd(g, b);
    if (g > 1) {
      for (Int& x : a) x /= g;
      b /= g;
    }
    if (seen.insert({a, b}).second) facets.push_back({a, b});
  };

  if (m == 1) {
    Int lo = points[0][0], hi = points[0][0];
    for (const IntVec& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    push_facet({Int(1)}, lo);
    push_facet({Int(-1)}, -hi);
    return facets;
  }

  // hyperplanes through m-subsets, kept when all points lie weakly inside
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  do {
    std::vector<IntVec> diffs;
    for (int i = 1; i < m; ++i) {
      IntVec d(m);
      for (int c = 0; c < m; ++c) d[c] = points[idx[i]][c] - points[idx[0]][c];
      diffs.push_back(d);
    }
    std::vector<IntVec> ker = integer_kernel_basis(IntMatrix::from_rows(diffs));
    if (ker.size() != 1) continue;
    IntVec a = primitive(ker[0]);
    Int b = dot(a, points[idx[0]]);
    bool above = false, below = false;
    for (const IntVec& p : points) {
      Int v = dot(a, p) - b;
      if (v > 0) above = true;
      if (v < 0) below = true;
      if (above && below) break;
    }
    if (above && below) continue;
    if (below) {
      for (Int& x : a) x = -x;
      b = -b;
    }
    push_facet(a, b);
  } while (next_subset(idx, np));

  std::sort(facets.begin(), facets.end(), [](const Facet& x, const Facet& y) {
    return std::tie(x.normal, x.offset) < std::tie(y.normal, y.offset);
  });
  return facets;
}

namespace {

bool fits_small(const Int& x) {
  static const Int bound = Int(1) << 40;
  return x > -bound && x < bound;
}

std::vector<LatticePoint> scan_small(const std::vector<Facet>& facets, const IntVec& lo,
                                     const IntVec& hi, int m) {
  std::vector<LatticePoint> out;
  std::vector<std::vector<std::int64_t>> fa;
  std::vector<std::int64_t> fb;
  for (const Facet& f : facets) {
    std::vector<std::int64_t> row(m);
    for (int c = 0; c < m; ++c) row[c] = static_cast<std::int64_t>(f.normal[c]);
    fa.push_back(row);
    fb.push_back(static_cast<std::int64_t>(f.offset));
  }
  std::vector<std::int64_t> l(m), h(m), x(m);
  for (int c = 0; c < m; ++c) {
    l[c] = static_cast<std::int64_t>(lo[c]);
    h[c] = static_cast<std::int64_t>(hi[c]);
    x[c] = l[c];
  }
  while (true) {
    bool inside = true, strict = true;
    for (std::size_t f = 0; f < fa.size() && inside; ++f) {
      std::int64_t s = -fb[f];
      for (int c = 0; c < m; ++c) s += fa[f][c] * x[c];
      if (s < 0) inside = false;
      if (s == 0) strict = false;
    }
    if (inside) {
      IntVec p(m);
      for (int c = 0; c < m; ++c) p[c] = x[c];
      out.push_back({p, strict});
    }
    int c = m - 1;
    while (c >= 0 && x[c] == h[c]) {
      x[c] = l[c];
      --c;
    }
    if (c < 0) break;
    ++x[c];
  }
  return out;
}

}  // namespace

std::vector<LatticePoint> lattice_points_in_polytope(const std::vector<IntVec>& vertices) {
  if (vertices.empty()) return {};
  int m = static_cast<int>(vertices[0].size());
  std::vector<Facet> facets = polytope_facets(vertices);

  IntVec lo = vertices[0], hi = vertices[0];
  for (const IntVec& v : vertices)
    for (int c = 0; c < m; ++c) {
      lo[c] = std::min(lo[c], v[c]);
      hi[c] = std::max(hi[c], v[c]);
    }

  bool small = true;
  for (const Facet& f : facets) {
    for (const Int& x : f.normal) small = small && fits_small(x);
    small = small && fits_small(f.offset);
  }
  for (int c = 0; c < m; ++c) small = small && fits_small(lo[c]) && fits_small(hi[c]);
  if (small) return scan_small(facets, lo, hi, m);

  std::vector<LatticePoint> out;
  IntVec x = lo;
  while (true) {
    bool inside = true, strict = true;
    for (const Facet& f : facets) {
      Int s = dot(f.normal, x) - f.offset;
      if (s < 0) { inside = false; break; }
      if (s == 0) strict = false;
    }
    if (inside) out.push_back({x, strict});
    int c = m - 1;
    while (c >= 0 && x[c] == hi[c]) {
      x[c] = lo[c];
      --c;
    }
    if (c < 0) break;
    ++x[c];
  }
  return out;
}

Int polygon_double_area(const std::vector<IntVec>& cycle) {
  Int s = 0;
  int n = static_cast<int>(cycle.size());
  for (int i = 0; i < n; ++i) {
    const IntVec& p = cycle[i];
    const IntVec& q = cycle[(i + 1) % n];
    s += p[0] * q[1] - p[1] * q[0];
  }
  return boost::multiprecision::abs(s);
}

}  // namespace crepant
