#include "commcalc/lattice.hpp"

#include "commcalc/errors.hpp"

namespace commcalc {

IntMatrix hermiteNormalForm(IntMatrix rows, std::size_t columns) {
  for (const auto& r : rows)
    if (r.size() != columns) throw DomainError("row length does not match column count");
  IntMatrix result;
  std::size_t top = 0;
  for (std::size_t col = 0; col < columns && top < rows.size(); ++col) {
    // Euclid on column `col` across rows [top, end).
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        const Integer f = rows[r][col] / rows[top][col];
        for (std::size_t k = col; k < columns; ++k) rows[r][k] -= f * rows[top][k];
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0)
      for (std::size_t k = col; k < columns; ++k) rows[top][k] = -rows[top][k];
    for (std::size_t r = 0; r < top; ++r) {
      const Integer f = floorDiv(rows[r][col], rows[top][col]);
      if (f == 0) continue;
      for (std::size_t k = col; k < columns; ++k) rows[r][k] -= f * rows[top][k];
    }
    ++top;
  }
  result.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(top));
  return result;
}

std::vector<std::size_t> pivotColumns(const IntMatrix& hnf) {
  std::vector<std::size_t> cols;
  for (const auto& row : hnf) {
    std::size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    cols.push_back(c);
  }
  return cols;
}

Integer latticeIndex(const IntMatrix& hnf, std::size_t columns) {
  if (hnf.size() != columns) return 0;
  Integer index = 1;
  for (std::size_t r = 0; r < hnf.size(); ++r) index *= hnf[r][r];
  return index;
}

bool latticeContains(const IntMatrix& hnf, std::vector<Integer> v) {
  const auto cols = pivotColumns(hnf);
  std::size_t next = 0;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] == 0) continue;
    while (next < cols.size() && cols[next] < c) ++next;
    if (next == cols.size() || cols[next] != c) return false;
    const Integer& p = hnf[next][c];
    if (v[c] % p != 0) return false;
    const Integer f = v[c] / p;
    for (std::size_t k = c; k < v.size(); ++k) v[k] -= f * hnf[next][k];
  }
  return true;
}

bool latticeEqual(const IntMatrix& a, const IntMatrix& b) { return a == b; }

}  // namespace commcalc
