#include "pbx/linalg.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace pbx::linalg {

namespace {

__extension__ using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer elimination exceeded 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

// (a*d - b*c) / prev, exact by Sylvester's identity.
std::int64_t bareiss_step(std::int64_t a, std::int64_t d, std::int64_t b, std::int64_t c, std::int64_t prev) {
  const Wide num = static_cast<Wide>(a) * d - static_cast<Wide>(b) * c;
  return narrow(num / prev);
}

}  // namespace

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const IntVector> cols) {
  const std::size_t rows = cols.empty() ? 0 : cols.front().size();
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

std::size_t rank(IntMatrix m) {
  // Cross-multiplied elimination with each row reduced by its content, so the
  // entries stay small without any division that must come out exact.
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(pivot, k));
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const std::int64_t a = m(r, c);
      const std::int64_t b = m(i, c);
      std::int64_t g = 0;
      for (std::size_t k = c; k < m.cols(); ++k) {
        m(i, k) = narrow(static_cast<Wide>(a) * m(i, k) - static_cast<Wide>(b) * m(r, k));
        g = std::gcd(g, m(i, k));
      }
      if (g > 1) {
        for (std::size_t k = c; k < m.cols(); ++k) m(i, k) /= g;
      }
    }
    ++r;
  }
  return r;
}

std::int64_t determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(pivot, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = bareiss_step(m(k, k), m(i, j), m(i, k), m(k, j), prev);
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::optional<IntVector> kernel_vector(const IntMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() + 1 != n) throw std::invalid_argument("kernel_vector expects an (n-1) x n matrix");
  IntVector t(n, 0);
  bool nonzero = false;
  for (std::size_t drop = 0; drop < n; ++drop) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 0; r + 1 < n; ++r) {
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c != drop) minor(r, cc++) = m(r, c);
      }
    }
    const std::int64_t d = determinant(std::move(minor));
    t[drop] = (drop % 2 == 0) ? d : -d;
    nonzero = nonzero || d != 0;
  }
  if (!nonzero) return std::nullopt;
  return t;
}

std::optional<std::vector<Rational>> solve(IntMatrix a, std::span<const Rational> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve expects a square system");
  std::vector<Rational> rhs(b.begin(), b.end());
  std::int64_t prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      std::swap(rhs[k], rhs[pivot]);
    }
    const Rational prev_q(prev);
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::int64_t lead = a(i, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = bareiss_step(a(k, k), a(i, j), a(i, k), a(k, j), prev);
      a(i, k) = 0;
      rhs[i] = (Rational(a(k, k)) * rhs[i] - Rational(lead) * rhs[k]) / prev_q;
    }
    prev = a(k, k);
  }
  std::vector<Rational> x(n);
  for (std::size_t k = n; k-- > 0;) {
    Rational acc = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j) != 0) acc -= Rational(a(k, j)) * x[j];
    }
    x[k] = acc / Rational(a(k, k));
  }
  return x;
}

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot of vectors with different lengths");
  Wide s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<Wide>(a[i]) * b[i];
  return narrow(s);
}

}  // namespace pbx::linalg
