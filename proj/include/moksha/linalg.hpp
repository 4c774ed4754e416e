#ifndef MOKSHA_LINALG_HPP
#define MOKSHA_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace moksha::linalg {

// Gaussian elimination with pivoting on a dense row-major n x n system.
// Doubles pivot by magnitude; rationals take the first nonzero pivot (exact
// arithmetic needs no magnitude ordering). Returns false on a singular matrix.
template <typename T>
bool solve(std::vector<T> a, std::vector<T> b, std::vector<T>& x) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    if constexpr (std::is_same_v<T, double>) {
      for (size_t r = col + 1; r < n; ++r) {
        if (std::fabs(a[r * n + col]) > std::fabs(a[pivot * n + col])) pivot = r;
      }
      if (std::fabs(a[pivot * n + col]) < 1e-13) return false;
    } else {
      while (pivot < n && a[pivot * n + col] == 0) ++pivot;
      if (pivot == n) return false;
    }
    if (pivot != col) {
      for (size_t c = col; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r * n + col] == 0) continue;
      T factor = a[r * n + col] / a[col * n + col];
      a[r * n + col] = 0;
      for (size_t c = col + 1; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  x.assign(n, T(0));
  for (size_t r = n; r-- > 0;) {
    T acc = b[r];
    for (size_t c = r + 1; c < n; ++c) acc -= a[r * n + c] * x[c];
    x[r] = acc / a[r * n + r];
  }
  return true;
}

}  // namespace moksha::linalg

#endif  // MOKSHA_LINALG_HPP
