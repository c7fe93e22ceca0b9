#include "crepant/intmat.hpp"

#include <stdexcept>

namespace crepant {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return IntMatrix(0, 0);
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (rows[r].size() != rows[0].size()) throw std::invalid_argument("ragged rows");
    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<IntVec>& cols) {
  if (cols.empty()) return IntMatrix(0, 0);
  IntMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols(); ++c) {
    if (cols[c].size() != cols[0].size()) throw std::invalid_argument("ragged cols");
    for (int r = 0; r < m.rows(); ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

IntVec IntMatrix::row(int r) const {
  IntVec v(cols_);
  for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

IntVec IntMatrix::col(int c) const {
  IntVec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("dim mismatch");
  IntMatrix p(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const Int& x = at(r, k);
      if (x == 0) continue;
      for (int c = 0; c < o.cols_; ++c) p.at(r, c) += x * o.at(k, c);
    }
  return p;
}

IntVec IntMatrix::apply(const IntVec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("dim mismatch");
  IntVec out(rows_, Int(0));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out[r] += at(r, c) * v[c];
  return out;
}

Int IntMatrix::det() const {
  if (rows_ != cols_) throw std::invalid_argument("det of non-square");
  int n = rows_;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination; every division below is exact.
  IntMatrix w = *this;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (w.at(r, k) != 0) { p = r; break; }
      if (p < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(w.at(k, c), w.at(p, c));
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c)
        w.at(r, c) = (w.at(r, c) * w.at(k, k) - w.at(r, k) * w.at(k, c)) / prev;
      w.at(r, k) = 0;
    }
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

int IntMatrix::rank() const {
  IntMatrix w = *this;
  int r = 0;
  for (int c = 0; c < w.cols() && r < w.rows(); ++c) {
    int p = -1;
    for (int i = r; i < w.rows(); ++i)
      if (w.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    for (int j = 0; j < w.cols(); ++j) std::swap(w.at(r, j), w.at(p, j));
    for (int i = r + 1; i < w.rows(); ++i) {
      if (w.at(i, c) == 0) continue;
      Int g = boost::multiprecision::gcd(w.at(r, c), w.at(i, c));
      Int fr = w.at(i, c) / g, fi = w.at(r, c) / g;
      for (int j = 0; j < w.cols(); ++j) w.at(i, j) = w.at(i, j) * fi - w.at(r, j) * fr;
    }
    ++r;
  }
  return r;
}

HnfResult hermite_normal_form(const IntMatrix& m) {
  int rows = m.rows(), cols = m.cols();
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(rows);

  auto swap_rows = [&](int a, int b) {
    if (a == b) return;
    for (int c = 0; c < cols; ++c) std::swap(h.at(a, c), h.at(b, c));
    for (int c = 0; c < rows; ++c) std::swap(u.at(a, c), u.at(b, c));
  };
  auto negate_row = [&](int r) {
    for (int c = 0; c < cols; ++c) h.at(r, c) = -h.at(r, c);
    for (int c = 0; c < rows; ++c) u.at(r, c) = -u.at(r, c);
  };
  auto add_multiple = [&](int dst, int src, const Int& f) {
    if (f == 0) return;
    for (int c = 0; c < cols; ++c) h.at(dst, c) += f * h.at(src, c);
    for (int c = 0; c < rows; ++c) u.at(dst, c) += f * u.at(src, c);
  };

  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    // Clear column c below row r using gcd row moves.
    while (true) {
      int p = -1;
      for (int i = r; i < rows; ++i)
        if (h.at(i, c) != 0) {
          if (p < 0 || boost::multiprecision::abs(h.at(i, c)) < boost::multiprecision::abs(h.at(p, c))) p = i;
        }
      if (p < 0) break;  // column already zero from r down
      swap_rows(r, p);
      if (h.at(r, c) < 0) negate_row(r);
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (h.at(i, c) == 0) continue;
        Int q = h.at(i, c) / h.at(r, c);  // truncated; remainder handled next sweep
        add_multiple(i, r, -q);
        if (h.at(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(r, c) != 0) {
      // Reduce entries above the pivot into [0, pivot).
      for (int i = 0; i < r; ++i) {
        Int q;
        // floor division so the remainder lands in [0, pivot)
        Int a = h.at(i, c), b = h.at(r, c);
        q = a / b;
        if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
        add_multiple(i, r, -q);
      }
      ++r;
    }
  }
  return {h, u};
}

std::vector<Int> smith_normal_form(const IntMatrix& m) {
  IntMatrix w = m;
  int rows = w.rows(), cols = w.cols();
  int k = std::min(rows, cols);
  std::vector<Int> d(k, Int(0));

  auto abs_ = [](const Int& x) { return boost::multiprecision::abs(x); };

  for (int t = 0; t < k; ++t) {
    // find nonzero pivot of minimal absolute value in the remaining block
    int pr = -1, pc = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (w.at(i, j) != 0 && (pr < 0 || abs_(w.at(i, j)) < abs_(w.at(pr, pc)))) { pr = i; pc = j; }
    if (pr < 0) break;  // remaining block is zero
    for (int j = 0; j < cols; ++j) std::swap(w.at(t, j), w.at(pr, j));
    for (int i = 0; i < rows; ++i) std::swap(w.at(i, t), w.at(i, pc));

    bool again = true;
    while (again) {
      again = false;
      for (int i = t + 1; i < rows; ++i) {
        if (w.at(i, t) == 0) continue;
        Int q = w.at(i, t) / w.at(t, t);
        for (int j = 0; j < cols; ++j) w.at(i, j) -= q * w.at(t, j);
        if (w.at(i, t) != 0) {
          for (int j = 0; j < cols; ++j) std::swap(w.at(t, j), w.at(i, j));
          again = true;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (w.at(t, j) == 0) continue;
        Int q = w.at(t, j) / w.at(t, t);
        for (int i = 0; i < rows; ++i) w.at(i, j) -= q * w.at(i, t);
        if (w.at(t, j) != 0) {
          for (int i = 0; i < rows; ++i) std::swap(w.at(i, t), w.at(i, j));
          again = true;
        }
      }
      if (!again) {
        // divisibility fix-up: pivot must divide every remaining entry
        for (int i = t + 1; i < rows && !again; ++i)
          for (int j = t + 1; j < cols && !again; ++j)
            if (w.at(i, j) % w.at(t, t) != 0) {
              for (int c = 0; c < cols; ++c) w.at(t, c) += w.at(i, c);
              again = true;
            }
      }
    }
    d[t] = abs_(w.at(t, t));
  }
  return d;
}

std::vector<IntVec> integer_kernel_basis(const IntMatrix& m) {
  // HNF of the transpose: rows of u that map to zero rows of h span the kernel.
  IntMatrix mt = m.transposed();
  HnfResult hr = hermite_normal_form(mt);
  std::vector<IntVec> basis;
  for (int r = 0; r < hr.h.rows(); ++r) {
    bool zero = true;
    for (int c = 0; c < hr.h.cols(); ++c)
      if (hr.h.at(r, c) != 0) { zero = false; break; }
    if (zero) basis.push_back(primitive(hr.u.row(r)));
  }
  return basis;
}

bool solve_rational(const IntMatrix& m, const RatVec& b, RatVec& x) {
  int rows = m.rows(), cols = m.cols();
  // rational Gaussian elimination on the augmented system
  std::vector<RatVec> w(rows, RatVec(cols + 1));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) w[r][c] = Rat(m.at(r, c));
    w[r][cols] = b[r];
  }
  int rank = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (w[r][c] != 0) { p = r; break; }
    if (p < 0) continue;
    std::swap(w[rank], w[p]);
    Rat inv = Rat(1) / w[rank][c];
    for (int j = c; j <= cols; ++j) w[rank][j] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || w[r][c] == 0) continue;
      Rat f = w[r][c];
      for (int j = c; j <= cols; ++j) w[r][j] -= f * w[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (int r = rank; r < rows; ++r)
    if (w[r][cols] != 0) return false;  // inconsistent
  if (rank < cols) throw std::invalid_argument("underdetermined system");
  x.assign(cols, Rat(0));
  for (int i = 0; i < rank; ++i) x[pivot_col[i]] = w[i][cols];
  return true;
}

std::vector<RatVec> rational_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square");
  int n = m.rows();
  std::vector<RatVec> w(n, RatVec(2 * n, Rat(0)));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) w[r][c] = Rat(m.at(r, c));
    w[r][n + r] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (w[r][c] != 0) { p = r; break; }
    if (p < 0) throw std::invalid_argument("singular matrix");
    std::swap(w[c], w[p]);
    Rat inv = Rat(1) / w[c][c];
    for (int j = 0; j < 2 * n; ++j) w[c][j] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || w[r][c] == 0) continue;
      Rat f = w[r][c];
      for (int j = 0; j < 2 * n; ++j) w[r][j] -= f * w[c][j];
    }
  }
  std::vector<RatVec> out(n, RatVec(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out[r][c] = w[r][n + c];
  return out;
}

}  // namespace crepant
