#ifndef ARRTOWER_SPARSE_MATRIX_HPP
#define ARRTOWER_SPARSE_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "arrtower/error.hpp"

namespace arrtower {

using BigInt = boost::multiprecision::cpp_int;

/// Column-compressed sparse matrix over an exact integer type. Each column
/// is a row-sorted list of nonzero entries.
template <class T>
class SparseMatrix {
 public:
  using value_type = T;
  using Entry = std::pair<std::uint32_t, T>;
  using Column = std::vector<Entry>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {
    if (rows > std::numeric_limits<std::uint32_t>::max())
      throw UsageError("sparse matrix row count exceeds 32-bit indexing");
  }

  /// Row-major dense input.
  static SparseMatrix from_dense(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    std::size_t c = rows.empty() ? cols : rows.front().size();
    SparseMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw UsageError("ragged dense matrix");
      for (std::size_t j = 0; j < c; ++j)
        if (rows[i][j] != 0) m.columns_[j].emplace_back(static_cast<std::uint32_t>(i), rows[i][j]);
    }
    return m;
  }

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.columns_[j].emplace_back(static_cast<std::uint32_t>(j), T(1));
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  const Column& column(std::size_t j) const { return columns_[j]; }

  /// Replaces column j; entries are sorted and zeros dropped.
  void set_column(std::size_t j, Column col) {
    normalize(col);
    columns_[j] = std::move(col);
  }

  void push_column(Column col) {
    normalize(col);
    columns_.push_back(std::move(col));
  }

  T at(std::size_t i, std::size_t j) const {
    const Column& c = columns_[j];
    auto it = std::lower_bound(c.begin(), c.end(), static_cast<std::uint32_t>(i),
                               [](const Entry& e, std::uint32_t r) { return e.first < r; });
    if (it != c.end() && it->first == i) return it->second;
    return T(0);
  }

  std::size_t nonzeros() const noexcept {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const noexcept { return nonzeros() == 0; }

  std::vector<std::vector<T>> to_dense() const {
    std::vector<std::vector<T>> out(rows_, std::vector<T>(cols(), T(0)));
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [i, v] : columns_[j]) out[i][j] = v;
    return out;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols(), rows_);
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [i, v] : columns_[j]) t.columns_[i].emplace_back(static_cast<std::uint32_t>(j), v);
    return t;
  }

  /// Appends the columns of `other` (same row count).
  void append_columns(const SparseMatrix& other) {
    if (other.rows_ != rows_) throw UsageError("append_columns: row counts differ");
    columns_.insert(columns_.end(), other.columns_.begin(), other.columns_.end());
  }

  template <class U>
  SparseMatrix<U> cast() const {
    SparseMatrix<U> out(rows_, cols());
    for (std::size_t j = 0; j < cols(); ++j) {
      typename SparseMatrix<U>::Column c;
      c.reserve(columns_[j].size());
      for (const auto& [i, v] : columns_[j]) c.emplace_back(i, U(v));
      out.set_column(j, std::move(c));
    }
    return out;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows())
      throw UsageError("matrix product: inner dimensions differ (" + std::to_string(a.cols()) +
                       " vs " + std::to_string(b.rows()) + ")");
    SparseMatrix out(a.rows(), b.cols());
    std::vector<T> acc(a.rows(), T(0));
    std::vector<std::uint32_t> touched;
    std::vector<char> mark(a.rows(), 0);
    for (std::size_t j = 0; j < b.cols(); ++j) {
      touched.clear();
      for (const auto& [k, bv] : b.columns_[j])
        for (const auto& [i, av] : a.columns_[k]) {
          if (!mark[i]) {
            mark[i] = 1;
            touched.push_back(i);
          }
          acc[i] += av * bv;
        }
      std::sort(touched.begin(), touched.end());
      Column c;
      for (std::uint32_t i : touched) {
        if (acc[i] != 0) c.emplace_back(i, acc[i]);
        acc[i] = T(0);
        mark[i] = 0;
      }
      out.columns_[j] = std::move(c);
    }
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

 private:
  void normalize(Column& col) const {
    std::sort(col.begin(), col.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
    Column merged;
    merged.reserve(col.size());
    for (auto& e : col) {
      if (e.first >= rows_) throw UsageError("sparse matrix entry row out of range");
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(std::move(e));
    }
    std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
    col = std::move(merged);
  }

  std::size_t rows_ = 0;
  std::vector<Column> columns_;
};

/// Exact integer matrix used for homomorphisms between free abelian groups.
using IntegerMatrix = SparseMatrix<BigInt>;

}  // namespace arrtower

#endif  // ARRTOWER_SPARSE_MATRIX_HPP
