#include "chernweil/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace chernweil {

namespace {

// Row echelon form in place; returns pivot columns. Row swaps negate `sign`.
std::vector<std::size_t> eliminate(RMatrix& m, int* sign, std::vector<std::size_t>* row_order = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
      if (row_order) std::swap((*row_order)[p], (*row_order)[r]);
      if (sign) *sign = -*sign;
    }
    const RatFunc inv = m(r, c).inverse();
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      const RatFunc f = m(i, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Fraction-free (Bareiss) elimination on polynomial rows. Each row of m is
// first multiplied by the lcm of its denominators; `scale` receives the
// product of those multipliers. Returns the rank; `last_pivot` is the final
// leading minor, i.e. the determinant of the scaled matrix when square and full.
std::size_t bareiss(const RMatrix& m, int* sign, Poly* last_pivot, Poly* scale) {
  const std::size_t nv = m.zero().chart()->nvars();
  std::vector<std::vector<Poly>> a(m.rows(), std::vector<Poly>(m.cols(), Poly(nv)));
  Poly total = Poly::constant(nv, 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Poly l = Poly::constant(nv, 1);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Poly& d = m(i, j).denominator();
      if (d.is_constant()) continue;
      l = *divide_exact(l * d, gcd(l, d));
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) a[i][j] = *divide_exact(m(i, j).numerator() * l, m(i, j).denominator());
    }
    total = total * l;
  }
  if (scale) *scale = total;
  Poly prev = Poly::constant(nv, 1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c].is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      if (sign) *sign = -*sign;
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        a[i][j] = *divide_exact(a[r][c] * a[i][j] - a[i][c] * a[r][j], prev);
      }
      a[i][c] = Poly(nv);
    }
    prev = a[r][c];
    ++r;
  }
  if (last_pivot) *last_pivot = prev;
  return r;
}

ChartPtr fraction_of(const ChartPtr& chart) {
  return chart->is_fraction_field() ? chart : Chart::fraction_field(*chart);
}

}  // namespace

RMatrix zero_matrix(const ChartPtr& chart, std::size_t rows, std::size_t cols) {
  return RMatrix(rows, cols, RatFunc(chart));
}

RMatrix identity_matrix(const ChartPtr& chart, std::size_t n) {
  return RMatrix::identity(n, RatFunc(chart), RatFunc(chart, 1));
}

ChartPtr matrix_chart(const RMatrix& m) {
  const ChartPtr& chart = m.zero().chart();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) require_same_chart(chart, m(i, j).chart(), "matrix entries");
  }
  return chart;
}

RMatrix on_chart(const RMatrix& m, const ChartPtr& chart) {
  return m.map([&](const RatFunc& f) { return f.on_chart(chart); });
}

RMatrix restrict_matrix(const RMatrix& m, const Substitution& s) {
  return m.map([&](const RatFunc& f) { return s.apply(f); });
}

std::size_t matrix_rank(const RMatrix& m) {
  matrix_chart(m);
  return bareiss(m, nullptr, nullptr, nullptr);
}

RatFunc determinant(const RMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::ShapeMismatch, "determinant of " + m.shape());
  const ChartPtr chart = matrix_chart(m);
  if (m.rows() == 0) return RatFunc(chart, 1);
  int sign = 1;
  Poly pivot(chart->nvars());
  Poly scale(chart->nvars());
  if (bareiss(m, &sign, &pivot, &scale) < m.rows()) return RatFunc(chart);
  const ChartPtr frac = fraction_of(chart);
  return ratfunc_normalize(pivot * Rational(sign), scale, frac).on_chart(chart);
}

RMatrix inverse(const RMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::ShapeMismatch, "inverse of " + m.shape());
  const ChartPtr chart = matrix_chart(m);
  const ChartPtr frac = fraction_of(chart);
  const std::size_t n = m.rows();
  RMatrix w = hstack(on_chart(m, frac), identity_matrix(frac, n));
  const auto pivots = eliminate(w, nullptr);
  if (pivots.size() < n || (n > 0 && pivots.back() >= n)) {
    fail(ErrorCode::NotInvertibleOnChart, "singular matrix on chart " + chart->id());
  }
  for (std::size_t r = n; r-- > 0;) {
    const RatFunc inv = w(r, r).inverse();
    for (std::size_t j = 0; j < w.cols(); ++j) w(r, j) *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (w(i, r).is_zero()) continue;
      const RatFunc f = w(i, r);
      for (std::size_t j = r; j < w.cols(); ++j) {
        if (!w(r, j).is_zero()) w(i, j) -= f * w(r, j);
      }
    }
  }
  return on_chart(w.block(0, n, n, n), chart);
}

bool is_invertible(const RMatrix& m) {
  if (m.rows() != m.cols()) return false;
  try {
    inverse(m);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotInvertibleOnChart) return false;
    throw;
  }
}

std::optional<RMatrix> left_inverse(const RMatrix& m) {
  const ChartPtr chart = matrix_chart(m);
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  if (n > rows) return std::nullopt;
  if (n == 0) return zero_matrix(chart, 0, rows);
  std::vector<bool> pick(rows, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(n), true);
  do {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < rows; ++i) {
      if (pick[i]) chosen.push_back(i);
    }
    RMatrix minor = zero_matrix(chart, n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t j = 0; j < n; ++j) minor(a, j) = m(chosen[a], j);
    }
    if (!is_invertible(minor)) continue;
    const RMatrix inv = inverse(minor);
    RMatrix out = zero_matrix(chart, n, rows);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < n; ++a) out(i, chosen[a]) = inv(i, a);
    }
    return out;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return std::nullopt;
}

std::optional<RMatrix> left_inverse_fraction(const RMatrix& m) {
  const ChartPtr chart = matrix_chart(m);
  const ChartPtr frac = fraction_of(chart);
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  if (n == 0) return zero_matrix(frac, 0, rows);
  // Independent rows of m are the pivot rows of the transpose.
  RMatrix t = on_chart(m.transpose(), frac);
  const auto pivots = eliminate(t, nullptr);
  if (pivots.size() < n) return std::nullopt;
  RMatrix minor = zero_matrix(frac, n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t j = 0; j < n; ++j) minor(a, j) = m(pivots[a], j).on_chart(frac);
  }
  const RMatrix inv = inverse(minor);
  RMatrix out = zero_matrix(frac, n, rows);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < n; ++a) out(i, pivots[a]) = inv(i, a);
  }
  return out;
}

}  // namespace chernweil
