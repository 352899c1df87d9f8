#pragma once

// Exact sparse matrices over a field, with fraction-free rank, kernels,
// inverses and unipotent inverses.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fimalg/rational.hpp"

namespace fimalg {

struct ShapeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotUnipotent : std::domain_error {
  using std::domain_error::domain_error;
};

/// Sparse matrix with rows stored as column-sorted lists of nonzero entries.
/// Indices are 0-based. No zero value is ever stored.
template <Field K>
class BasicMatrix {
 public:
  using Entry = std::pair<std::size_t, K>;
  using Row = std::vector<Entry>;

  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, K(1));
    return m;
  }

  /// Standard matrix unit e_{ij} of M_n, with 1-based (i, j) as in the usual
  /// notation.
  static BasicMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    if (i == 0 || j == 0 || i > n || j > n) throw ShapeMismatch("matrix unit index out of range");
    BasicMatrix m(n, n);
    m.data_[i - 1].emplace_back(j - 1, K(1));
    return m;
  }

  static BasicMatrix from_dense(const std::vector<std::vector<K>>& d) {
    std::size_t r = d.size();
    std::size_t c = r == 0 ? 0 : d[0].size();
    BasicMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (d[i].size() != c) throw ShapeMismatch("ragged dense matrix");
      for (std::size_t j = 0; j < c; ++j)
        if (!d[i][j].is_zero()) m.data_[i].emplace_back(j, d[i][j]);
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] const Row& row(std::size_t i) const { return data_.at(i); }

  [[nodiscard]] std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }
  [[nodiscard]] bool is_zero() const { return nnz() == 0; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  [[nodiscard]] K at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    const Row& r = data_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Entry& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) return it->second;
    return K(0);
  }

  void set(std::size_t i, std::size_t j, const K& v) {
    check_index(i, j);
    Row& r = data_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Entry& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
      if (v.is_zero())
        r.erase(it);
      else
        it->second = v;
    } else if (!v.is_zero()) {
      r.insert(it, Entry{j, v});
    }
  }

  void add_to(std::size_t i, std::size_t j, const K& v) { set(i, j, at(i, j) + v); }

  /// Replaces row i; the entries must be column-sorted, in range and nonzero.
  void set_row(std::size_t i, Row r) { data_.at(i) = std::move(r); }

  [[nodiscard]] std::vector<std::vector<K>> to_dense() const {
    std::vector<std::vector<K>> d(rows_, std::vector<K>(cols_, K(0)));
    for (std::size_t i = 0; i < rows_; ++i)
      for (const auto& [j, v] : data_[i]) d[i][j] = v;
    return d;
  }

  [[nodiscard]] BasicMatrix transpose() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
    return t;
  }

  /// Transpose composed with the scalar involution.
  [[nodiscard]] BasicMatrix adjoint() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v.conj());
    return t;
  }

  [[nodiscard]] BasicMatrix scaled(const K& c) const {
    if (c.is_zero()) return BasicMatrix(rows_, cols_);
    BasicMatrix m = *this;
    for (auto& r : m.data_)
      for (auto& e : r) e.second = e.second * c;
    return m;
  }

  BasicMatrix& operator+=(const BasicMatrix& o) { return axpy(K(1), o); }
  BasicMatrix& operator-=(const BasicMatrix& o) { return axpy(K(-1), o); }

  /// this += c * o
  BasicMatrix& axpy(const K& c, const BasicMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeMismatch("add: " + shape() + " vs " + o.shape());
    for (std::size_t i = 0; i < rows_; ++i) data_[i] = merge(data_[i], o.data_[i], c);
    return *this;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
  friend BasicMatrix operator-(const BasicMatrix& a) { return a.scaled(K(-1)); }
  friend BasicMatrix operator*(const K& c, const BasicMatrix& a) { return a.scaled(c); }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.cols_ != b.rows_) throw ShapeMismatch("mul: " + a.shape() + " * " + b.shape());
    BasicMatrix out(a.rows_, b.cols_);
    std::vector<K> acc(b.cols_, K(0));
    std::vector<char> used(b.cols_, 0);
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      touched.clear();
      for (const auto& [k, av] : a.data_[i]) {
        for (const auto& [j, bv] : b.data_[k]) {
          if (!used[j]) {
            used[j] = 1;
            touched.push_back(j);
            acc[j] = av * bv;
          } else {
            acc[j] += av * bv;
          }
        }
      }
      std::sort(touched.begin(), touched.end());
      Row& r = out.data_[i];
      for (std::size_t j : touched) {
        if (!acc[j].is_zero()) r.emplace_back(j, acc[j]);
        used[j] = 0;
      }
    }
    return out;
  }

  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  [[nodiscard]] std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  /// Block-diagonal sum.
  static BasicMatrix direct_sum(const BasicMatrix& a, const BasicMatrix& b) {
    BasicMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) m.data_[i] = a.data_[i];
    for (std::size_t i = 0; i < b.rows_; ++i) {
      Row r;
      r.reserve(b.data_[i].size());
      for (const auto& [j, v] : b.data_[i]) r.emplace_back(j + a.cols_, v);
      m.data_[a.rows_ + i] = std::move(r);
    }
    return m;
  }

  /// Writes `blk` into this matrix with its top-left corner at (r0, c0).
  void place_block(std::size_t r0, std::size_t c0, const BasicMatrix& blk) {
    if (r0 + blk.rows_ > rows_ || c0 + blk.cols_ > cols_) throw ShapeMismatch("block out of range");
    for (std::size_t i = 0; i < blk.rows_; ++i)
      for (const auto& [j, v] : blk.data_[i]) set(r0 + i, c0 + j, v);
  }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw ShapeMismatch("index (" + std::to_string(i) + "," + std::to_string(j) +
                          ") outside " + shape());
  }

  static Row merge(const Row& x, const Row& y, const K& c) {
    Row out;
    out.reserve(x.size() + y.size());
    std::size_t p = 0, q = 0;
    while (p < x.size() || q < y.size()) {
      if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
        out.push_back(x[p++]);
      } else if (p == x.size() || y[q].first < x[p].first) {
        K v = c * y[q].second;
        if (!v.is_zero()) out.emplace_back(y[q].first, std::move(v));
        ++q;
      } else {
        K v = x[p].second + c * y[q].second;
        if (!v.is_zero()) out.emplace_back(x[p].first, std::move(v));
        ++p;
        ++q;
      }
    }
    return out;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

using ExactMatrix = BasicMatrix<Rational>;
using ExactVector = std::vector<Rational>;

extern template class BasicMatrix<Rational>;

/// Rank over Q. Dense inputs go through fraction-free Bareiss elimination on
/// an integer copy; sparse inputs through sparse elimination with
/// fewest-entries pivoting.
std::size_t rank(const ExactMatrix& m);

/// Fraction-free Bareiss rank, regardless of density.
std::size_t rank_bareiss(const ExactMatrix& m);

/// Sparse elimination rank, regardless of density.
std::size_t rank_sparse(const ExactMatrix& m);

/// Basis of {v : m v = 0}, one column vector (length cols) per element.
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);

/// Exact inverse by Gauss-Jordan. Throws SingularMatrix / ShapeMismatch.
ExactMatrix inverse(const ExactMatrix& m);

/// True iff m = 1 + N with N nilpotent.
bool is_unipotent(const ExactMatrix& m);

/// (1 + N)^{-1} = sum_k (-N)^k, evaluated as prod_j (1 + (-N)^{2^j}) until the
/// power of N vanishes. Throws NotUnipotent if the diagonal is not all ones or
/// N is not nilpotent.
ExactMatrix unipotent_inverse(const ExactMatrix& m);

/// m^e for square m.
ExactMatrix power(const ExactMatrix& m, unsigned e);

/// Lower shift sum_{j=1}^{n-1} e_{j+1,j} in M_n.
ExactMatrix lower_shift(std::size_t n);

/// Upper shift sum_{j=1}^{n-1} e_{j,j+1} in M_n.
ExactMatrix upper_shift(std::size_t n);

/// Matrix-vector product.
ExactVector mat_vec(const ExactMatrix& m, const ExactVector& v);

}  // namespace fimalg
