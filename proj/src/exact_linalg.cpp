#include "fimalg/exact_linalg.hpp"

#include <map>

namespace fimalg {

template class BasicMatrix<Rational>;

namespace {

using Row = ExactMatrix::Row;

// Integer copy of m, each row scaled by the lcm of its denominators.
std::vector<std::vector<mpz_class>> integer_rows(const ExactMatrix& m) {
  std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (const auto& [j, v] : m.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.raw().get_den_mpz_t());
    for (const auto& [j, v] : m.row(i)) out[i][j] = v.raw().get_num() * (l / v.raw().get_den());
  }
  return out;
}

// this_row -= c * pivot_row, both sparse and column-sorted.
Row sub_scaled(const Row& x, const Row& y, const Rational& c) {
  Row out;
  out.reserve(x.size() + y.size());
  std::size_t p = 0, q = 0;
  while (p < x.size() || q < y.size()) {
    if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
      out.push_back(x[p++]);
    } else if (p == x.size() || y[q].first < x[p].first) {
      out.emplace_back(y[q].first, -(c * y[q].second));
      ++q;
    } else {
      Rational v = x[p].second - c * y[q].second;
      if (!v.is_zero()) out.emplace_back(x[p].first, std::move(v));
      ++p;
      ++q;
    }
  }
  return out;
}

bool strictly_lower(const ExactMatrix& n) {
  for (std::size_t i = 0; i < n.rows(); ++i)
    if (!n.row(i).empty() && n.row(i).back().first >= i) return false;
  return true;
}

bool strictly_upper(const ExactMatrix& n) {
  for (std::size_t i = 0; i < n.rows(); ++i)
    if (!n.row(i).empty() && n.row(i).front().first <= i) return false;
  return true;
}

}  // namespace

std::size_t rank_bareiss(const ExactMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  mpz_class prev = 1;
  std::size_t r = 0;
  mpz_class t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        t = a[r][c] * a[i][j];
        t -= a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::size_t rank_sparse(const ExactMatrix& m) {
  // Pivot rows keyed by leading column, leading coefficient normalised to 1.
  std::map<std::size_t, Row> pivots;
  std::vector<std::size_t> order(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.row(a).size() < m.row(b).size(); });
  for (std::size_t i : order) {
    Row r = m.row(i);
    while (!r.empty()) {
      auto it = pivots.find(r.front().first);
      if (it == pivots.end()) break;
      Rational c = r.front().second;
      r = sub_scaled(r, it->second, c);
    }
    if (r.empty()) continue;
    Rational inv = r.front().second.inverse();
    for (auto& e : r) e.second *= inv;
    pivots.emplace(r.front().first, std::move(r));
  }
  return pivots.size();
}

std::size_t rank(const ExactMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const std::size_t cells = m.rows() * m.cols();
  if (m.nnz() * 4 >= cells && cells <= 200000) return rank_bareiss(m);
  return rank_sparse(m);
}

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  auto a = m.to_dense();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    Rational inv = a[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(cols, 0);
  for (std::size_t c : pivot_cols) is_pivot[c] = 1;
  std::vector<ExactVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    ExactVector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (!m.is_square()) throw ShapeMismatch("inverse of non-square " + m.shape());
  const std::size_t n = m.rows();
  // Augmented rows [m | 1] kept sparse.
  std::vector<Row> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = m.row(i);
    rows[i].emplace_back(n + i, Rational(1));
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    std::size_t best = 0;
    for (std::size_t i = c; i < n; ++i) {
      if (!rows[i].empty() && rows[i].front().first == c &&
          (piv == n || rows[i].size() < best)) {
        piv = i;
        best = rows[i].size();
      }
    }
    if (piv == n) throw SingularMatrix("matrix is singular (column " + std::to_string(c) + ")");
    std::swap(rows[piv], rows[c]);
    Rational inv = rows[c].front().second.inverse();
    for (auto& e : rows[c]) e.second *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const Row& r = rows[i];
      auto it = std::lower_bound(r.begin(), r.end(), c,
                                 [](const auto& e, std::size_t col) { return e.first < col; });
      if (it == r.end() || it->first != c) continue;
      Rational f = it->second;
      rows[i] = sub_scaled(rows[i], rows[c], f);
    }
  }
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Row r;
    r.reserve(rows[i].size());
    for (auto& [j, v] : rows[i])
      if (j >= n) r.emplace_back(j - n, std::move(v));
    out.set_row(i, std::move(r));
  }
  return out;
}

bool is_unipotent(const ExactMatrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m.at(i, i).is_one()) return false;
  ExactMatrix nil = m - ExactMatrix::identity(m.rows());
  if (strictly_lower(nil) || strictly_upper(nil)) return true;
  return power(nil, static_cast<unsigned>(m.rows())).is_zero();
}

ExactMatrix unipotent_inverse(const ExactMatrix& m) {
  if (!m.is_square()) throw NotUnipotent("non-square matrix " + m.shape());
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (!m.at(i, i).is_one()) throw NotUnipotent("diagonal entry " + std::to_string(i) + " is not 1");
  ExactMatrix nil = m - ExactMatrix::identity(n);

  // Triangular cases: X = 1 - N X, solved row by row in dependency order.
  // This is the geometric series sum_k (-N)^k evaluated without forming powers.
  if (strictly_lower(nil) || strictly_upper(nil)) {
    const bool lower = strictly_lower(nil);
    ExactMatrix x(n, n);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t i = lower ? step : n - 1 - step;
      Row acc{{i, Rational(1)}};
      for (const auto& [j, v] : nil.row(i)) acc = sub_scaled(acc, x.row(j), v);
      x.set_row(i, std::move(acc));
    }
    return x;
  }

  ExactMatrix result = ExactMatrix::identity(n);
  ExactMatrix p = -nil;
  const ExactMatrix one = ExactMatrix::identity(n);
  std::size_t reach = 1;  // exponent range covered so far
  while (!p.is_zero()) {
    if (reach > n) throw NotUnipotent("off-diagonal part is not nilpotent");
    result = result * (one + p);
    p = p * p;
    reach *= 2;
  }
  return result;
}

ExactMatrix power(const ExactMatrix& m, unsigned e) {
  if (!m.is_square()) throw ShapeMismatch("power of non-square " + m.shape());
  ExactMatrix result = ExactMatrix::identity(m.rows());
  ExactMatrix base = m;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

ExactMatrix lower_shift(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t j = 0; j + 1 < n; ++j) m.set_row(j + 1, {{j, Rational(1)}});
  return m;
}

ExactMatrix upper_shift(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t j = 0; j + 1 < n; ++j) m.set_row(j, {{j + 1, Rational(1)}});
  return m;
}

ExactVector mat_vec(const ExactMatrix& m, const ExactVector& v) {
  if (v.size() != m.cols()) throw ShapeMismatch("mat_vec: vector length mismatch");
  ExactVector out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, a] : m.row(i)) out[i] += a * v[j];
  return out;
}

}  // namespace fimalg
