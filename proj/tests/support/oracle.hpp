#pragma once

// Independent reference arithmetic for the tests. Nothing here calls into
// the library; vectors are plain coefficient lists in the order
// a1, b1, ..., ag, bg, d1, ..., d_{b-1}.

#include <cstdint>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;  // row-major

/// Gram matrix of the intersection form: one 2x2 block [[0,1],[-1,0]] per
/// handle, zero on the boundary classes.
inline Mat gram(int genus, int boundary_count) {
  const auto n = static_cast<std::size_t>(2 * genus + boundary_count - 1);
  Mat j(n, Vec(n, 0));
  for (std::size_t i = 0; i < static_cast<std::size_t>(genus); ++i) {
    j[2 * i][2 * i + 1] = 1;
    j[2 * i + 1][2 * i] = -1;
  }
  return j;
}

inline std::int64_t form(const Mat& j, const Vec& x, const Vec& y) {
  std::int64_t total = 0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t c = 0; c < y.size(); ++c) total += x[r] * j[r][c] * y[c];
  }
  return total;
}

/// Picard-Lefschetz: T_c^s(x) = x + s <x, c> c.
inline Vec transvect(const Mat& j, const Vec& c, const Vec& x, int s) {
  const std::int64_t k = s * form(j, x, c);
  Vec out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += k * c[i];
  return out;
}

inline Mat identity(std::size_t n) {
  Mat m(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Mat multiply(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k == 0 ? 0 : b[0].size();
  Mat out(n, Vec(m, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = 0; c < m; ++c) out[r][c] += a[r][i] * b[i][c];
    }
  }
  return out;
}

/// Matrix whose columns are the images of the basis vectors.
inline Mat transvection_matrix(const Mat& j, const Vec& c, int s) {
  const std::size_t n = c.size();
  Mat out(n, Vec(n, 0));
  for (std::size_t col = 0; col < n; ++col) {
    Vec e(n, 0);
    e[col] = 1;
    const Vec image = transvect(j, c, e, s);
    for (std::size_t r = 0; r < n; ++r) out[r][col] = image[r];
  }
  return out;
}

inline int euler(int genus, int boundary_count) { return 2 - 2 * genus - boundary_count; }

/// Legendrian stabilization and push-off arithmetic.
struct Classical {
  int tb;
  int rot;
};
inline Classical stabilized(Classical k, int sign) { return {k.tb - 1, k.rot + sign}; }
inline int positive_pushoff_sl(Classical k) { return k.tb - k.rot; }

/// Number of orientation flips along a parallel class scanned in index order;
/// the push-off schedule spends one auxiliary stabilization per flip.
inline int orientation_flips(const std::vector<int>& signs_by_index) {
  int flips = 0;
  for (std::size_t i = 1; i < signs_by_index.size(); ++i) flips += signs_by_index[i] != signs_by_index[i - 1];
  return flips;
}

/// Permutation respects "i before j" precedence pairs.
inline bool respects(const std::vector<std::size_t>& order, const std::vector<std::pair<std::size_t, std::size_t>>& before) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t q = 0; q < order.size(); ++q) pos[order[q]] = q;
  for (const auto& [a, b] : before) {
    if (pos[a] > pos[b]) return false;
  }
  return true;
}

}  // namespace oracle
