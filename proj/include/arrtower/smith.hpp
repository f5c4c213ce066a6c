#ifndef ARRTOWER_SMITH_HPP
#define ARRTOWER_SMITH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "arrtower/error.hpp"
#include "arrtower/sparse_matrix.hpp"

namespace arrtower {

/// Rank and nontrivial invariant factors d_1 | d_2 | ... (all >= 2) of an
/// integer matrix. Unit invariant factors are implied by the rank.
struct SmithForm {
  std::size_t rank = 0;
  std::vector<BigInt> invariant_factors;

  friend bool operator==(const SmithForm&, const SmithForm&) = default;
};

struct SmithOptions {
  /// Recompute the rank over GF(p) with an independent pivoting pass and
  /// check it against the integer result.
  bool certify = true;
};

namespace detail {

struct Overflow {};

/// int64 whose arithmetic throws Overflow instead of wrapping.
class CheckedInt {
 public:
  CheckedInt() = default;
  CheckedInt(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  std::int64_t value() const noexcept { return v_; }

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t out;
    if (__builtin_add_overflow(a.v_, b.v_, &out)) throw Overflow{};
    return out;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t out;
    if (__builtin_sub_overflow(a.v_, b.v_, &out)) throw Overflow{};
    return out;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a.v_, b.v_, &out)) throw Overflow{};
    return out;
  }
  friend bool operator==(CheckedInt a, CheckedInt b) noexcept { return a.v_ == b.v_; }
  friend bool operator==(CheckedInt a, int b) noexcept { return a.v_ == b; }

 private:
  std::int64_t v_ = 0;
};

inline BigInt to_big(const CheckedInt& v) { return BigInt(v.value()); }
inline BigInt to_big(const BigInt& v) { return v; }

/// Integer pivots are restricted to units so that every step is unimodular.
template <class Int>
struct IntegerRing {
  using value_type = Int;
  static bool is_unit(const Int& a) { return a == 1 || a == -1; }
  // Multiplier m with a - m * p == 0 for a unit pivot p (p^-1 = p).
  static Int eliminator(const Int& a, const Int& p) { return a * p; }
  static Int sub_mul(const Int& x, const Int& m, const Int& y) { return x - m * y; }
  static bool is_zero(const Int& a) { return a == 0; }
};

/// Arithmetic in GF(p) for p = 2^31 - 1.
struct PrimeField {
  using value_type = std::uint64_t;
  static constexpr std::uint64_t kPrime = 2147483647ull;
  static bool is_unit(value_type a) { return a != 0; }
  static value_type inverse(value_type a) {
    value_type result = 1, base = a, e = kPrime - 2;
    while (e) {
      if (e & 1) result = result * base % kPrime;
      base = base * base % kPrime;
      e >>= 1;
    }
    return result;
  }
  static value_type eliminator(value_type a, value_type p) { return a * inverse(p) % kPrime; }
  static value_type sub_mul(value_type x, value_type m, value_type y) {
    return (x + kPrime - m * y % kPrime) % kPrime;
  }
  static bool is_zero(value_type a) { return a == 0; }
  template <class T>
  static value_type reduce(const T& v) {
    BigInt r = BigInt(v) % BigInt(kPrime);
    if (r < 0) r += kPrime;
    return static_cast<value_type>(r);
  }
};

/// Sparse Gaussian elimination restricted to pivots the ring accepts as
/// units. Pivots are chosen per column with a Markowitz-style preference for
/// short rows. After `run`, `rank` counts eliminated pivots and the active
/// columns hold the Schur complement that remains.
template <class Ring>
class UnitEliminator {
 public:
  using T = typename Ring::value_type;
  using Entry = std::pair<std::uint32_t, T>;
  using Column = std::vector<Entry>;

  UnitEliminator(std::size_t rows, std::vector<Column> columns)
      : cols_(std::move(columns)), row_cols_(rows), active_(cols_.size(), 1) {
    for (std::uint32_t j = 0; j < cols_.size(); ++j)
      for (const auto& e : cols_[j]) row_cols_[e.first].push_back(j);
  }

  void run() {
    std::vector<std::uint32_t> order;
    for (;;) {
      order.clear();
      for (std::uint32_t j = 0; j < cols_.size(); ++j) {
        if (!active_[j]) continue;
        if (cols_[j].empty()) {
          active_[j] = 0;
          continue;
        }
        order.push_back(j);
      }
      std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return cols_[a].size() < cols_[b].size();
      });
      bool progress = false;
      for (std::uint32_t c : order) {
        if (!active_[c]) continue;
        if (cols_[c].empty()) {
          active_[c] = 0;
          continue;
        }
        std::size_t best = cols_[c].size();
        std::size_t best_len = 0;
        for (std::size_t t = 0; t < cols_[c].size(); ++t) {
          const auto& [row, v] = cols_[c][t];
          if (!Ring::is_unit(v)) continue;
          std::size_t len = row_cols_[row].size();
          if (best == cols_[c].size() || len < best_len) {
            best = t;
            best_len = len;
          }
        }
        if (best == cols_[c].size()) continue;
        pivot(c, best);
        progress = true;
      }
      if (!progress) break;
    }
  }

  std::size_t rank = 0;

  /// Remaining nonzero active columns.
  std::vector<Column> residual() const {
    std::vector<Column> out;
    for (std::uint32_t j = 0; j < cols_.size(); ++j)
      if (active_[j] && !cols_[j].empty()) out.push_back(cols_[j]);
    return out;
  }

 private:
  void pivot(std::uint32_t c, std::size_t slot) {
    const std::uint32_t prow = cols_[c][slot].first;
    const T pval = cols_[c][slot].second;
    active_[c] = 0;
    ++rank;
    std::vector<std::uint32_t> users;
    users.swap(row_cols_[prow]);
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    const Column& pcol = cols_[c];
    for (std::uint32_t u : users) {
      if (u == c || !active_[u]) continue;
      Column& target = cols_[u];
      auto it = std::lower_bound(target.begin(), target.end(), prow,
                                 [](const Entry& e, std::uint32_t r) { return e.first < r; });
      if (it == target.end() || it->first != prow) continue;
      T m = Ring::eliminator(it->second, pval);
      merged_.clear();
      merged_.reserve(target.size() + pcol.size());
      auto a = target.begin();
      auto b = pcol.begin();
      while (a != target.end() || b != pcol.end()) {
        if (b == pcol.end() || (a != target.end() && a->first < b->first)) {
          merged_.push_back(*a++);
        } else if (a == target.end() || b->first < a->first) {
          T v = Ring::sub_mul(T(0), m, b->second);
          if (!Ring::is_zero(v)) {
            merged_.emplace_back(b->first, v);
            row_cols_[b->first].push_back(u);
          }
          ++b;
        } else {
          T v = Ring::sub_mul(a->second, m, b->second);
          if (!Ring::is_zero(v)) merged_.emplace_back(a->first, v);
          ++a;
          ++b;
        }
      }
      target.swap(merged_);
    }
    Column().swap(cols_[c]);
  }

  std::vector<Column> cols_;
  std::vector<std::vector<std::uint32_t>> row_cols_;
  std::vector<char> active_;
  Column merged_;
};

/// Diagonal entries -> invariant factors via repeated gcd/lcm exchange.
inline std::vector<BigInt> normalize_invariant_factors(std::vector<BigInt> diag) {
  for (auto& d : diag) d = boost::multiprecision::abs(d);
  std::erase_if(diag, [](const BigInt& d) { return d == 0; });
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g = boost::multiprecision::gcd(diag[i], diag[j]);
      BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  std::erase_if(diag, [](const BigInt& d) { return d == 1; });
  return diag;
}

/// Dense Smith reduction; returns the diagonal (nonzero entries only).
inline std::vector<BigInt> dense_smith_diagonal(std::vector<std::vector<BigInt>> a) {
  using boost::multiprecision::abs;
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  std::vector<BigInt> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero magnitude in the trailing block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          clean = false;
          if (abs(a[i][t]) < abs(a[t][t])) std::swap(a[i], a[t]);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          clean = false;
          if (abs(a[t][j]) < abs(a[t][t]))
            for (auto& row : a) std::swap(row[t], row[j]);
        }
      }
      if (clean) break;
    }
    diag.push_back(a[t][t]);
    ++t;
  }
  return diag;
}

template <class Int, class T>
SmithForm integer_smith(const SparseMatrix<T>& m) {
  using Column = typename UnitEliminator<IntegerRing<Int>>::Column;
  std::vector<Column> cols(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    cols[j].reserve(m.column(j).size());
    for (const auto& [i, v] : m.column(j)) {
      if constexpr (std::is_same_v<Int, CheckedInt>) {
        if constexpr (std::is_same_v<T, BigInt>) {
          if (v > std::numeric_limits<std::int64_t>::max() / 4 ||
              v < std::numeric_limits<std::int64_t>::min() / 4)
            throw Overflow{};
          cols[j].emplace_back(i, Int(static_cast<std::int64_t>(v)));
        } else {
          cols[j].emplace_back(i, Int(static_cast<std::int64_t>(v)));
        }
      } else {
        cols[j].emplace_back(i, Int(v));
      }
    }
  }
  UnitEliminator<IntegerRing<Int>> elim(m.rows(), std::move(cols));
  elim.run();
  SmithForm out;
  out.rank = elim.rank;
  auto rest = elim.residual();
  if (!rest.empty()) {
    std::vector<std::uint32_t> rows_used;
    for (const auto& c : rest)
      for (const auto& e : c) rows_used.push_back(e.first);
    std::sort(rows_used.begin(), rows_used.end());
    rows_used.erase(std::unique(rows_used.begin(), rows_used.end()), rows_used.end());
    std::vector<std::vector<BigInt>> dense(rows_used.size(), std::vector<BigInt>(rest.size(), 0));
    for (std::size_t j = 0; j < rest.size(); ++j)
      for (const auto& [i, v] : rest[j]) {
        auto r = std::lower_bound(rows_used.begin(), rows_used.end(), i) - rows_used.begin();
        dense[r][j] = to_big(v);
      }
    auto diag = dense_smith_diagonal(std::move(dense));
    out.rank += diag.size();
    out.invariant_factors = normalize_invariant_factors(std::move(diag));
  }
  return out;
}

template <class T>
std::size_t rank_mod_prime(const SparseMatrix<T>& m) {
  using Column = typename UnitEliminator<PrimeField>::Column;
  std::vector<Column> cols(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.column(j)) {
      auto r = PrimeField::reduce(v);
      if (r != 0) cols[j].emplace_back(i, r);
    }
  UnitEliminator<PrimeField> elim(m.rows(), std::move(cols));
  elim.run();
  if (!elim.residual().empty()) throw IntegrityError("GF(p) elimination left a residual block");
  return elim.rank;
}

}  // namespace detail

/// Smith normal form of an integer matrix (rank and invariant factors).
///
/// Elimination runs in overflow-checked 64-bit arithmetic and is restarted
/// with arbitrary precision if any intermediate entry overflows. Only unit
/// pivots are used in the sparse phase; whatever is left is reduced densely.
template <class T>
SmithForm smith_normal_form(const SparseMatrix<T>& m, const SmithOptions& options = {}) {
  SmithForm out;
  try {
    out = detail::integer_smith<detail::CheckedInt>(m);
  } catch (const detail::Overflow&) {
    out = detail::integer_smith<BigInt>(m);
  }
  if (options.certify) {
    std::size_t divisible = 0;
    for (const auto& f : out.invariant_factors)
      if (f % BigInt(detail::PrimeField::kPrime) == 0) ++divisible;
    std::size_t modp = detail::rank_mod_prime(m);
    if (modp + divisible != out.rank)
      throw IntegrityError("Smith normal form certificate failed: integer rank " +
                           std::to_string(out.rank) + ", GF(p) rank " + std::to_string(modp));
  }
  return out;
}

}  // namespace arrtower

#endif  // ARRTOWER_SMITH_HPP
