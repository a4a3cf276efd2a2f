#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace strip::linalg {

using Q = boost::rational<long long>;
using Matrix = std::vector<std::vector<Q>>;

inline std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].numerator() == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].numerator() == 0) continue;
      Q f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace strip::linalg
