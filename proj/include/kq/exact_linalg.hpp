#pragma once

// Exact rational scalars and dense matrices.
//
// Rational is GMP's mpq_class; every arithmetic result is kept in canonical
// form (positive denominator, coprime numerator) by libgmp itself.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kq/error.hpp"

namespace kq {

using Rational = mpq_class;
using Integer = mpz_class;

/// p/q in canonical form. Throws on q == 0.
inline Rational rat(long p, long q = 1) {
  if (q == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0)
    throw Error(Errc::MalformedInput, "not a rational: '" + s + "'");
  if (r.get_den() == 0) throw Error(Errc::MalformedInput, "zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw Error(Errc::DimensionMismatch, "entry count does not match shape");
  }

  /// Row-major literal, e.g. RatMatrix::from_rows({{1, 2}, {3, 4}}).
  static RatMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    RatMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(Errc::DimensionMismatch, "ragged row literal");
      std::size_t j = 0;
      for (const auto& x : row) m(i, j++) = x;
      ++i;
    }
    return m;
  }

  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw Error(Errc::DimensionMismatch, "ragged row literal");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RatMatrix column(std::span<const Rational> v) {
    return RatMatrix(v.size(), 1, std::vector<Rational>(v.begin(), v.end()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Rational>& entries() const noexcept { return data_; }

  std::vector<Rational> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  std::vector<Rational> col(std::size_t j) const {
    std::vector<Rational> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Columns in the given order.
  RatMatrix select_columns(std::span<const std::size_t> which) const {
    RatMatrix m(rows_, which.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < which.size(); ++k) m(i, k) = (*this)(i, which[k]);
    return m;
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    check_same_shape(a, b);
    RatMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
    return c;
  }

  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    check_same_shape(a, b);
    RatMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
    return c;
  }

  friend RatMatrix operator*(const Rational& s, const RatMatrix& a) {
    RatMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = s * a.data_[k];
    return c;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::DimensionMismatch, "matrix product shape");
    RatMatrix c(a.rows_, b.cols_);
    Rational t;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& x = a(i, k);
        if (sgn(x) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (sgn(b(k, j)) == 0) continue;
          t = x * b(k, j);
          c(i, j) += t;
        }
      }
    return c;
  }

  RatMatrix& operator+=(const RatMatrix& b) { return *this = *this + b; }

 private:
  static void check_same_shape(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(Errc::DimensionMismatch, "matrix sum shape");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Horizontal concatenation [A | B | ...]. All blocks must share a row count.
inline RatMatrix hconcat(std::span<const RatMatrix> blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw Error(Errc::DimensionMismatch, "hconcat row count");
    cols += b.cols();
  }
  RatMatrix m(rows, cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, off + j) = b(i, j);
    off += b.cols();
  }
  return m;
}

struct Echelon {
  RatMatrix reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Gauss-Jordan elimination. The pivot in each column is the first nonzero
/// entry at or below the current row, so pivot columns are the leftmost
/// independent columns of the input.
inline Echelon rref(RatMatrix m) {
  Echelon out;
  std::size_t r = 0;
  Rational f;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const RatMatrix& m) {
  // Eliminate along the shorter side; rank is transpose-invariant.
  return m.rows() <= m.cols() ? rref(m).pivots.size() : rref(m.transpose()).pivots.size();
}

/// Basis of {v : M v = 0}, one free variable set to 1 per vector.
inline std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline RatMatrix invert(const RatMatrix& m) {
  if (!m.is_square()) throw Error(Errc::DimensionMismatch, "invert needs a square matrix");
  std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(std::move(aug));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    throw Error(Errc::SingularMatrix, "matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// Some X with A X = B (free variables set to zero).
inline RatMatrix solve_right(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw Error(Errc::DimensionMismatch, "solve_right row count");
  std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  Echelon e = rref(std::move(aug));
  for (auto p : e.pivots)
    if (p >= n) throw Error(Errc::Inconsistent, "system has no solution");
  RatMatrix x(n, b.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.reduced(i, n + j);
  return x;
}

/// Incrementally maintained row space over Q. Rows are stored as primitive
/// integer vectors in echelon form; insertion is fraction-free, which keeps
/// entry growth far below naive rational elimination on dense random data.
class RowSpace {
 public:
  explicit RowSpace(std::size_t width) : width_(width) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  bool full() const noexcept { return rows_.size() == width_; }

  /// Returns true when v was independent of the rows inserted so far.
  bool insert(std::span<const Rational> v) {
    if (v.size() != width_) throw Error(Errc::DimensionMismatch, "RowSpace width");
    Integer den = 1;
    for (const auto& x : v)
      if (sgn(x) != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> w(width_);
    for (std::size_t k = 0; k < width_; ++k)
      if (sgn(v[k]) != 0) w[k] = v[k].get_num() * (den / v[k].get_den());
    return insert_integer(std::move(w));
  }

  bool insert_integer(std::vector<Integer> w) {
    if (full()) return false;
    for (const auto& row : rows_) {
      const Integer& a = w[row.pivot];
      if (sgn(a) == 0) continue;
      const Integer& p = row.entries[row.pivot];
      Integer g = gcd(a, p);
      Integer mw = p / g, mr = a / g;
      for (std::size_t k = 0; k < width_; ++k) {
        if (sgn(row.entries[k]) == 0) {
          if (sgn(w[k]) != 0) w[k] *= mw;
        } else {
          w[k] = w[k] * mw - row.entries[k] * mr;
        }
      }
      make_primitive(w);
    }
    std::size_t piv = 0;
    while (piv < width_ && sgn(w[piv]) == 0) ++piv;
    if (piv == width_) return false;
    rows_.push_back({std::move(w), piv});
    return true;
  }

  /// Basis rows (primitive integer vectors).
  std::vector<std::vector<Integer>> basis() const {
    std::vector<std::vector<Integer>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.entries);
    return out;
  }

 private:
  struct Row {
    std::vector<Integer> entries;
    std::size_t pivot;
  };

  static void make_primitive(std::vector<Integer>& w) {
    Integer g = 0;
    for (const auto& x : w)
      if (sgn(x) != 0) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) return;
      }
    if (g > 1)
      for (auto& x : w)
        if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }

  std::size_t width_;
  std::vector<Row> rows_;
};

/// Finite formal linear combination over an ordered key type. Zero
/// coefficients are never stored.
template <class Key>
class LinComb {
 public:
  using map_type = std::map<Key, Rational>;

  LinComb() = default;
  LinComb(const Key& k, const Rational& c = 1) { add(k, c); }

  void add(const Key& k, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  const map_type& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  LinComb& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
    } else {
      for (auto& [k, c] : terms_) c *= s;
    }
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Rational& s, LinComb a) { return a *= s; }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

 private:
  map_type terms_;
};

}  // namespace kq
