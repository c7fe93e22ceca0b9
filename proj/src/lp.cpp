#include "crepant/lp.hpp"

#include <stdexcept>

namespace crepant {

namespace {

// Dense simplex tableau for maximize c.z, A z = b, z >= 0, b >= 0.
struct Tableau {
  int m, n;                       // rows, structural+artificial columns
  std::vector<RatVec> a;          // m rows of n coefficients
  RatVec b;                       // m rhs, kept >= 0
  RatVec cost;                    // reduced cost row (length n)
  Rat obj;                        // current objective value
  std::vector<int> basis;         // basis variable per row

  void pivot(int row, int col) {
    Rat inv = Rat(1) / a[row][col];
    for (int j = 0; j < n; ++j) a[row][j] *= inv;
    b[row] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    if (cost[col] != 0) {
      Rat f = cost[col];
      for (int j = 0; j < n; ++j) cost[j] -= f * a[row][j];
      obj += f * b[row];
    }
    basis[row] = col;
  }

  // Bland: entering = lowest-index improving column, leaving = min ratio with
  // lowest basis index on ties. Returns false when optimal, throws on
  // unbounded.
  bool step() {
    int col = -1;
    for (int j = 0; j < n; ++j)
      if (cost[j] > 0) { col = j; break; }
    if (col < 0) return false;
    int row = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (a[i][col] <= 0) continue;
      Rat ratio = b[i] / a[i][col];
      if (row < 0 || ratio < best || (ratio == best && basis[i] < basis[row])) {
        row = i;
        best = ratio;
      }
    }
    if (row < 0) throw LpStatus::Unbounded;
    pivot(row, col);
    return true;
  }
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
  int nv = lp.num_vars;
  auto lower_of = [&](int j) -> std::optional<Rat> {
    return j < static_cast<int>(lp.lower.size()) ? lp.lower[j] : std::nullopt;
  };
  auto upper_of = [&](int j) -> std::optional<Rat> {
    return j < static_cast<int>(lp.upper.size()) ? lp.upper[j] : std::nullopt;
  };

  // Substitution to nonnegative variables: x_j = shift + sign * z_p (+ maybe
  // a second column z_p2 with x = z_p - z_p2 for free variables).
  struct VarMap {
    Rat shift;
    int pos = -1, neg = -1;  // column indices; x = shift + z_pos - z_neg
  };
  std::vector<VarMap> vmap(nv);
  int ncols = 0;
  std::vector<LpConstraint> rows = lp.constraints;
  for (int j = 0; j < nv; ++j) {
    auto lo = lower_of(j), hi = upper_of(j);
    if (lo) {
      vmap[j].shift = *lo;
      vmap[j].pos = ncols++;
      if (hi) {
        if (*hi < *lo) return {LpStatus::Infeasible, {}, 0};
        RatVec cc(nv, Rat(0));
        cc[j] = 1;
        rows.push_back({cc, LpRel::Le, *hi});
      }
    } else if (hi) {
      vmap[j].shift = *hi;
      vmap[j].neg = ncols++;
    } else {
      vmap[j].pos = ncols++;
      vmap[j].neg = ncols++;
    }
  }

  int m = static_cast<int>(rows.size());
  // structural columns + one slack/surplus per inequality row
  int nslack = 0;
  for (const LpConstraint& r : rows)
    if (r.rel != LpRel::Eq) ++nslack;
  int n = ncols + nslack;

  Tableau t;
  t.m = m;
  t.n = n;
  t.a.assign(m, RatVec(n, Rat(0)));
  t.b.assign(m, Rat(0));
  t.basis.assign(m, -1);

  RatVec obj_row(n, Rat(0));
  Rat obj_const = 0;
  for (int j = 0; j < nv; ++j) {
    Rat c = j < static_cast<int>(lp.objective.size()) ? lp.objective[j] : Rat(0);
    obj_const += c * vmap[j].shift;
    if (vmap[j].pos >= 0) obj_row[vmap[j].pos] += c;
    if (vmap[j].neg >= 0) obj_row[vmap[j].neg] -= c;
  }

  int slack_at = ncols;
  for (int i = 0; i < m; ++i) {
    const LpConstraint& r = rows[i];
    Rat rhs = r.rhs;
    for (int j = 0; j < nv && j < static_cast<int>(r.coeffs.size()); ++j) {
      const Rat& c = r.coeffs[j];
      if (c == 0) continue;
      rhs -= c * vmap[j].shift;
      if (vmap[j].pos >= 0) t.a[i][vmap[j].pos] += c;
      if (vmap[j].neg >= 0) t.a[i][vmap[j].neg] -= c;
    }
    Rat dir = 1;
    if (r.rel == LpRel::Le) {
      t.a[i][slack_at++] = 1;
    } else if (r.rel == LpRel::Ge) {
      t.a[i][slack_at++] = -1;
    }
    if (rhs < 0) {
      dir = -1;
      for (int j = 0; j < n; ++j) t.a[i][j] = -t.a[i][j];
      rhs = -rhs;
    }
    t.b[i] = rhs;
    // slack basic only if its column is +1 after the sign flip
    if (r.rel != LpRel::Eq && dir == 1 && r.rel == LpRel::Le) t.basis[i] = slack_at - 1;
  }

  // Phase 1: artificials for rows without a basic column.
  int nart = 0;
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < 0) ++nart;
  if (nart > 0) {
    int full = n + nart;
    for (int i = 0; i < m; ++i) t.a[i].resize(full, Rat(0));
    int art_at = n;
    std::vector<int> art_cols;
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] >= 0) continue;
      t.a[i][art_at] = 1;
      t.basis[i] = art_at;
      art_cols.push_back(art_at);
      ++art_at;
    }
    t.n = full;
    // maximize -(sum of artificials)
    t.cost.assign(full, Rat(0));
    t.obj = 0;
    for (int c : art_cols) t.cost[c] = -1;
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < n) continue;
      for (int j = 0; j < full; ++j) t.cost[j] += t.a[i][j];
      t.obj -= t.b[i];
    }
    // cost currently has +1 on the artificial itself; cancel to keep reduced
    // costs of basic columns at zero
    try {
      while (t.step()) {
      }
    } catch (LpStatus) {
      throw std::logic_error("phase 1 cannot be unbounded");
    }
    if (t.obj != 0) return {LpStatus::Infeasible, {}, 0};
    // pivot surviving artificials out, or drop their (redundant) rows
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < n) continue;
      int col = -1;
      for (int j = 0; j < n; ++j)
        if (t.a[i][j] != 0) { col = j; break; }
      if (col >= 0) {
        t.pivot(i, col);
      }
    }
    // strip artificial columns; redundant rows keep an artificial basis at
    // value zero which is harmless, but prune them for cleanliness
    std::vector<int> keep;
    for (int i = 0; i < m; ++i)
      if (t.basis[i] < n) keep.push_back(i);
    if (static_cast<int>(keep.size()) != m) {
      std::vector<RatVec> a2;
      RatVec b2;
      std::vector<int> basis2;
      for (int i : keep) {
        a2.push_back(t.a[i]);
        b2.push_back(t.b[i]);
        basis2.push_back(t.basis[i]);
      }
      t.a = std::move(a2);
      t.b = std::move(b2);
      t.basis = std::move(basis2);
      t.m = m = static_cast<int>(keep.size());
    }
    for (int i = 0; i < m; ++i) t.a[i].resize(n);
    t.n = n;
  }

  // Phase 2.
  t.cost = obj_row;
  t.obj = obj_const;
  for (int i = 0; i < m; ++i) {
    int bc = t.basis[i];
    if (t.cost[bc] == 0) continue;
    Rat f = t.cost[bc];
    for (int j = 0; j < n; ++j) t.cost[j] -= f * t.a[i][j];
    t.obj += f * t.b[i];
  }
  try {
    while (t.step()) {
    }
  } catch (LpStatus s) {
    return {s, {}, 0};
  }

  RatVec z(n, Rat(0));
  for (int i = 0; i < m; ++i) z[t.basis[i]] = t.b[i];
  RatVec x(nv, Rat(0));
  for (int j = 0; j < nv; ++j) {
    x[j] = vmap[j].shift;
    if (vmap[j].pos >= 0) x[j] += z[vmap[j].pos];
    if (vmap[j].neg >= 0) x[j] -= z[vmap[j].neg];
  }
  return {LpStatus::Optimal, x, t.obj};
}

}  // namespace crepant
