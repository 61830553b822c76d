#pragma once

// Brute-force references used only by tests. Nothing here calls the
// elimination code in surfsat/linalg.hpp.

#include "surfsat/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using surfsat::Integer;
using surfsat::Rational;
using Dense = std::vector<std::vector<Rational>>;

/// Determinant by cofactor expansion along the first row.
inline Rational laplace_det(const Dense& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Rational det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Dense minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Rational term = m[0][c] * laplace_det(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

inline Dense principal(const Dense& m, std::uint32_t mask) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (mask & (1u << k)) idx.push_back(k);
  Dense out;
  for (auto i : idx) {
    std::vector<Rational> row;
    for (auto j : idx) row.push_back(m[i][j]);
    out.push_back(std::move(row));
  }
  return out;
}

/// e[k] = sum of all k x k principal minors, k = 0..n.
inline std::vector<Rational> principal_minor_sums(const Dense& m) {
  const std::size_t n = m.size();
  std::vector<Rational> e(n + 1);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) e[__builtin_popcount(mask)] += laplace_det(principal(m, mask));
  return e;
}

struct Signature {
  std::size_t positive = 0, negative = 0, zero = 0;
};

inline std::size_t sign_changes(const std::vector<Rational>& coeffs) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& c : coeffs) {
    int s = c.sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Inertia of a symmetric matrix from its characteristic polynomial
/// det(tI - M) = sum_k (-1)^k e_k t^(n-k), built from principal minors. All
/// roots are real, so Descartes' rule of signs counts them exactly.
inline Signature descartes_inertia(const Dense& m) {
  const std::size_t n = m.size();
  auto e = principal_minor_sums(m);
  // coefficient of t^(n-k), highest degree first
  std::vector<Rational> p(n + 1), q(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    p[k] = (k % 2 == 0) ? e[k] : -e[k];
    // p(-t): coefficient of t^(n-k) picks up (-1)^(n-k)
    q[k] = ((n - k) % 2 == 0) ? p[k] : -p[k];
  }
  Signature s;
  std::size_t top = n;
  while (top > 0 && e[top] == 0) --top;
  s.zero = n - top;
  p.resize(top + 1);
  q.resize(top + 1);
  s.positive = sign_changes(p);
  s.negative = sign_changes(q);
  return s;
}

/// Negative semidefinite iff every principal minor of -M is >= 0.
inline bool nsd_by_minors(const Dense& m) {
  Dense neg = m;
  for (auto& row : neg)
    for (auto& x : row) x = -x;
  for (std::uint32_t mask = 1; mask < (1u << m.size()); ++mask)
    if (laplace_det(principal(neg, mask)) < 0) return false;
  return true;
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
inline Integer bareiss_det(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[r], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Integer copy of a rational matrix with integral entries.
inline std::vector<std::vector<Integer>> integer_matrix(const Dense& m) {
  std::vector<std::vector<Integer>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& x : m[i]) out[i].push_back(numerator(x));
  return out;
}

/// Sylvester: M negative definite iff (-1)^k det(M_k) > 0 for all leading k.
inline bool nd_by_sylvester(const std::vector<std::vector<Integer>>& m) {
  for (std::size_t k = 1; k <= m.size(); ++k) {
    std::vector<std::vector<Integer>> lead(k, std::vector<Integer>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead[i][j] = m[i][j];
    Integer d = bareiss_det(lead);
    if ((k % 2 == 1 && d >= 0) || (k % 2 == 0 && d <= 0)) return false;
  }
  return true;
}

/// Connected components of the graph i ~ j iff adj[i][j] > 0, restricted to
/// `subset`, by breadth-first search.
template <class Adj>
std::vector<std::vector<std::size_t>> components(const Adj& adj, const std::vector<std::size_t>& subset) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> in(adj.size(), false), seen(adj.size(), false);
  for (auto v : subset) in[v] = true;
  for (auto v : subset) {
    if (seen[v]) continue;
    std::vector<std::size_t> comp{v}, queue{v};
    seen[v] = true;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (std::size_t w = 0; w < adj.size(); ++w)
        if (in[w] && !seen[w] && w != queue[h] && adj[queue[h]][w] > 0) {
          seen[w] = true;
          queue.push_back(w);
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

}  // namespace oracle
