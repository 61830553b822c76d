#pragma once

#include "surfsat/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace surfsat {

/// Dense symmetric matrix over the rationals. Writes keep both triangles in
/// sync, so symmetry holds for every reachable state.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  SymmetricMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::vector<Vector> dense;
    for (const auto& row : rows) dense.emplace_back(row);
    *this = from_rows(dense);
  }

  static SymmetricMatrix from_rows(const std::vector<Vector>& rows) {
    SymmetricMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[i][j] != rows[j][i]) {
          throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
        }
        m.entries_[i * m.n_ + j] = rows[i][j];
      }
    }
    return m;
  }

  static SymmetricMatrix diagonal(const Vector& d) {
    SymmetricMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
  }

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, const Rational& v) {
    entries_[i * n_ + j] = v;
    entries_[j * n_ + i] = v;
  }

  /// Principal submatrix on the given (ordered) indices.
  SymmetricMatrix principal(std::span<const std::size_t> idx) const {
    SymmetricMatrix m(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) m.entries_[a * idx.size() + b] = (*this)(idx[a], idx[b]);
    return m;
  }

  Vector apply(const Vector& x) const {
    if (x.size() != n_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
    Vector y(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (x[j] != 0 && (*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  Rational bilinear(const Vector& x, const Vector& y) const {
    if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("dimension mismatch in bilinear form");
    Rational s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (y[j] != 0) s += x[i] * (*this)(i, j) * y[j];
    }
    return s;
  }

  std::vector<Vector> rows() const {
    std::vector<Vector> out(n_, Vector(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  std::size_t n_ = 0;
  Vector entries_;
};

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

inline std::string to_string(const Inertia& in) {
  return "(" + std::to_string(in.positive) + "," + std::to_string(in.negative) + "," + std::to_string(in.zero) + ")";
}

namespace detail {

struct Echelon {
  std::vector<Vector> rows;          // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

// Gauss-Jordan elimination over the rationals on the first `cols` columns.
inline Echelon reduced_echelon(std::vector<Vector> a, std::size_t cols) {
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < a[i].size(); ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

inline std::vector<Vector> raw_kernel(const std::vector<Vector>& rows, std::size_t cols) {
  Echelon e = reduced_echelon(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rational dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

}  // namespace detail

/// Basis of {x : Mx = 0}. Vectors are primitive integral with a positive
/// leading entry; the list is empty iff M is nonsingular.
inline std::vector<Vector> kernel_basis(const SymmetricMatrix& m) {
  auto basis = detail::raw_kernel(m.rows(), m.size());
  for (auto& v : basis) v = primitive_integral(std::move(v));
  return basis;
}

/// Exact solution of Mx = b. When the solution is not unique, returns the one
/// orthogonal to ker M (the unique solution lying in the column space).
inline std::optional<Vector> solve(const SymmetricMatrix& m, const Vector& b) {
  const std::size_t n = m.size();
  if (b.size() != n) {
    throw std::invalid_argument("solve: right-hand side has dimension " + std::to_string(b.size()) +
                                ", matrix has " + std::to_string(n));
  }
  std::vector<Vector> aug = m.rows();
  for (std::size_t i = 0; i < n; ++i) aug[i].push_back(b[i]);
  detail::Echelon e = detail::reduced_echelon(std::move(aug), n + 1);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;

  Vector x(n);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.rows[r][n];

  auto ker = kernel_basis(m);
  if (!ker.empty()) {
    const std::size_t k = ker.size();
    std::vector<Vector> gram(k, Vector(k + 1));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) gram[i][j] = detail::dot(ker[i], ker[j]);
      gram[i][k] = detail::dot(ker[i], x);
    }
    detail::Echelon g = detail::reduced_echelon(std::move(gram), k);
    for (std::size_t i = 0; i < k; ++i) {
      const Rational& c = g.rows[i][k];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) x[j] -= c * ker[i][j];
    }
  }
  return x;
}

/// Sylvester inertia by symmetric elimination. A nonzero diagonal entry is
/// eliminated as a 1x1 pivot; when the active block has a zero diagonal but a
/// nonzero off-diagonal entry b, the block [[0,b],[b,0]] is eliminated as a
/// 2x2 pivot contributing one positive and one negative square.
inline Inertia inertia(const SymmetricMatrix& m) {
  std::vector<Vector> a = m.rows();
  std::vector<std::size_t> active(m.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  Inertia out;

  auto remove = [&](std::size_t pos) { active.erase(active.begin() + static_cast<std::ptrdiff_t>(pos)); };

  while (!active.empty()) {
    std::optional<std::size_t> diag;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (a[active[k]][active[k]] != 0) {
        diag = k;
        break;
      }
    }
    if (diag) {
      const std::size_t p = active[*diag];
      const Rational pivot = a[p][p];
      (pivot > 0 ? out.positive : out.negative) += 1;
      remove(*diag);
      for (auto i : active) {
        if (a[i][p] == 0) continue;
        Rational f = a[i][p] / pivot;
        for (auto j : active)
          if (a[p][j] != 0) a[i][j] -= f * a[p][j];
      }
      continue;
    }

    std::optional<std::pair<std::size_t, std::size_t>> block;
    for (std::size_t x = 0; x < active.size() && !block; ++x)
      for (std::size_t y = x + 1; y < active.size(); ++y)
        if (a[active[x]][active[y]] != 0) {
          block = {x, y};
          break;
        }
    if (!block) {
      out.zero += active.size();
      break;
    }
    const std::size_t p = active[block->first];
    const std::size_t q = active[block->second];
    const Rational b = a[p][q];
    out.positive += 1;
    out.negative += 1;
    remove(block->second);
    remove(block->first);
    // Schur complement of [[0,b],[b,0]]: A_ij -= (A_ip A_qj + A_iq A_pj) / b.
    std::vector<Vector> next = a;
    for (auto i : active)
      for (auto j : active) {
        Rational corr = a[i][p] * a[q][j] + a[i][q] * a[p][j];
        if (corr != 0) next[i][j] = a[i][j] - corr / b;
      }
    a = std::move(next);
  }
  return out;
}

/// The empty matrix counts as negative definite.
inline bool is_negative_definite(const SymmetricMatrix& m) {
  Inertia in = inertia(m);
  return in.positive == 0 && in.zero == 0;
}

inline bool is_negative_semidefinite(const SymmetricMatrix& m) { return inertia(m).positive == 0; }

}  // namespace surfsat
