#include "corner/linalg.hpp"

#include <cassert>

namespace corner {

Vec vadd(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vsub(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vscale(const Rat& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

Rat dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Rat r(0);
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

std::vector<int> rref(Mat& m, const std::vector<int>& col_order) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const std::size_t ncol = m[0].size();
  std::vector<int> order = col_order;
  if (order.empty()) {
    order.resize(ncol);
    for (std::size_t j = 0; j < ncol; ++j) order[j] = static_cast<int>(j);
  }
  std::size_t row = 0;
  for (int col : order) {
    if (row >= m.size()) break;
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rat inv = Rat(1) / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != row && m[r][col] != 0) {
        Rat f = m[r][col];
        for (std::size_t j = 0; j < ncol; ++j) m[r][j] -= f * m[row][j];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);  // drop zero rows
  return pivots;
}

std::size_t rank(Mat m) {
  auto p = rref(m);
  return p.size();
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (a.empty()) return is_zero(b) ? std::optional<Vec>(Vec{}) : std::nullopt;
  const std::size_t n = a[0].size();
  Mat aug = a;
  for (std::size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
  auto pivots = rref(aug);
  Vec x = zero_vec(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == static_cast<int>(n)) return std::nullopt;  // 0 = 1 row
    x[pivots[r]] = aug[r][n];
  }
  return x;
}

Mat null_space(const Mat& a) {
  if (a.empty()) return {};
  const std::size_t n = a[0].size();
  Mat m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  Mat basis;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Vec v = zero_vec(n);
    v[j] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_row_span(const Mat& m, const Vec& v) {
  if (is_zero(v)) return true;
  Mat a = m;
  std::size_t r0 = rank(a);
  a = m;
  a.push_back(v);
  return rank(a) == r0;
}

Mat span_basis(Mat m) {
  rref(m);
  return m;
}

Mat span_intersection(const Mat& a, const Mat& b) {
  // rows x with x = u A = v B. Solve [A^T | -B^T] kernel, read off u A.
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a[0].size();
  Mat sys(n, zero_vec(a.size() + b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) sys[j][i] = a[i][j];
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) sys[j][a.size() + i] = -b[i][j];
  Mat ker = null_space(sys);
  Mat out;
  for (const auto& k : ker) {
    Vec x = zero_vec(n);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (k[i] != 0) x = vadd(x, vscale(k[i], a[i]));
    if (!is_zero(x)) out.push_back(std::move(x));
  }
  return span_basis(std::move(out));
}

}  // namespace corner
