#pragma once

// Independent reference computations used to cross-check the library.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

#include "pargrade/exactlin.hpp"

namespace pargrade::oracle {

using exactlin::Integer;
using exactlin::IntMatrix;

inline long long gcd_of(long long a, long long b) { return std::gcd(a, b); }
inline Integer gcd_of(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

/// Fraction-free elimination, kept separate from the library determinant.
template <class Int>
Int bareiss_det(std::vector<std::vector<Int>> a) {
  const std::size_t n = a.size();
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return out;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Invariant factors as ratios of determinantal divisors (gcd of k x k minors).
template <class Int>
std::vector<Int> invariant_factors_by_minors(const std::vector<std::vector<Int>>& m, std::size_t cols) {
  const std::size_t rows = m.size();
  const std::size_t r = std::min(rows, cols);
  std::vector<Int> factors;
  Int prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    Int g = 0;
    for (const auto& ri : combinations(rows, k))
      for (const auto& ci : combinations(cols, k)) {
        std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub[a][b] = m[ri[a]][ci[b]];
        Int d = bareiss_det(sub);
        if (d < 0) d = -d;
        g = gcd_of(g, d);
      }
    if (g == 0) {
      factors.resize(r, 0);
      return factors;
    }
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

inline std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m) {
  std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return invariant_factors_by_minors<Integer>(rows, m.cols());
}

/// Primes dividing the torsion of Z^cols / <rows>.
inline std::set<long long> torsion_primes(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
  std::set<long long> out;
  if (rows.empty()) return out;
  for (long long f : invariant_factors_by_minors<long long>(rows, cols)) {
    for (long long p = 2; p * p <= f; ++p)
      while (f % p == 0) {
        out.insert(p);
        f /= p;
      }
    if (f > 1) out.insert(f);
  }
  return out;
}

}  // namespace pargrade::oracle
