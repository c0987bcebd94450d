#pragma once

// Young-diagram combinatorics: partitions, skew shapes, semistandard
// tableaux, lattice words, Littlewood-Richardson numbers, Pieri rules,
// Young symmetrizers and GL(n) dimensions.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "kq/error.hpp"
#include "kq/exact_linalg.hpp"

namespace kq {

/// Weakly decreasing sequence of non-negative integers. Trailing zeros are
/// trimmed on construction, so (2,1) and (2,1,0) compare equal.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw Error(Errc::InvalidPartition, "negative part");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw Error(Errc::InvalidPartition, "parts must be weakly decreasing");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }

  /// i-th part, 0-based, zero past the end.
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  /// Number of nonzero parts.
  std::size_t length() const noexcept { return parts_.size(); }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  bool empty() const noexcept { return parts_.empty(); }
  const std::vector<int>& parts() const noexcept { return parts_; }

  /// Parts padded with zeros to at least `width` entries.
  std::vector<int> padded(std::size_t width) const {
    std::vector<int> p = parts_;
    if (p.size() < width) p.resize(width, 0);
    return p;
  }

  /// Comma separated parts padded to `width`, e.g. "2,0".
  std::string str(std::size_t width = 0) const {
    std::string s;
    for (int x : padded(std::max<std::size_t>(width, 1))) {
      if (!s.empty()) s += ',';
      s += std::to_string(x);
    }
    return s;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Two-part partition (a, b); convenience for the rank-2 setting.
inline Partition pair(int a, int b) { return Partition{a, b}; }

/// Componentwise containment lambda <= mu with zero padding.
inline bool contains(const Partition& lambda, const Partition& mu) {
  for (std::size_t i = 0; i < lambda.length(); ++i)
    if (lambda[i] > mu[i]) return false;
  return true;
}

struct SkewShape {
  Partition inner;
  Partition outer;

  SkewShape() = default;
  SkewShape(Partition in, Partition out) : inner(std::move(in)), outer(std::move(out)) {
    if (!contains(inner, outer)) throw Error(Errc::NotContained, "inner not contained in outer");
  }

  std::size_t rows() const noexcept { return outer.length(); }
  int row_begin(std::size_t i) const { return inner[i]; }
  int row_end(std::size_t i) const { return outer[i]; }
  int boxes() const { return outer.size() - inner.size(); }

  /// Boxes as (row, col) in reading order: left to right, top to bottom.
  std::vector<std::pair<int, int>> reading_order() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < rows(); ++i)
      for (int j = row_begin(i); j < row_end(i); ++j) out.emplace_back(static_cast<int>(i), j);
    return out;
  }

  friend bool operator==(const SkewShape&, const SkewShape&) = default;
};

/// Semistandard filling; rows[i] holds the entries of row i left to right.
struct SkewTableau {
  SkewShape shape;
  std::vector<std::vector<int>> rows;

  int at(std::size_t row, int col) const {
    return rows[row][static_cast<std::size_t>(col - shape.row_begin(row))];
  }

  bool is_semistandard() const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t k = 1; k < rows[i].size(); ++k)
        if (rows[i][k] < rows[i][k - 1]) return false;
      if (i == 0) continue;
      for (int j = shape.row_begin(i); j < shape.row_end(i); ++j)
        if (j >= shape.row_begin(i - 1) && at(i, j) <= at(i - 1, j)) return false;
    }
    return true;
  }

  friend bool operator==(const SkewTableau&, const SkewTableau&) = default;
};

namespace detail {

// Backtracking over boxes in reading order. `visit` gets the partially
// built row vectors once every box is filled.
template <class Visit>
void fill_ssyt(const SkewShape& shape, int max_entry, std::vector<std::vector<int>>& rows,
               std::size_t row, Visit& visit) {
  if (row == shape.rows()) {
    visit(rows);
    return;
  }
  const int begin = shape.row_begin(row);
  const int end = shape.row_end(row);
  auto place = [&](auto&& self, int col) -> void {
    if (col == end) {
      fill_ssyt(shape, max_entry, rows, row + 1, visit);
      return;
    }
    int lo = 1;
    if (col > begin) lo = rows[row].back();
    if (row > 0 && col >= shape.row_begin(row - 1)) {
      int above = rows[row - 1][static_cast<std::size_t>(col - shape.row_begin(row - 1))];
      lo = std::max(lo, above + 1);
    }
    for (int v = lo; v <= max_entry; ++v) {
      rows[row].push_back(v);
      self(self, col + 1);
      rows[row].pop_back();
    }
  };
  place(place, begin);
}

}  // namespace detail

/// Every semistandard filling of `shape` with entries in 1..max_entry, in
/// lexicographic order of the reading-order entry sequence.
inline std::vector<SkewTableau> enumerate_ssyt(const SkewShape& shape, int max_entry) {
  if (max_entry < 1) throw Error(Errc::InvalidArgument, "max_entry must be >= 1");
  std::vector<SkewTableau> out;
  std::vector<std::vector<int>> rows(shape.rows());
  auto visit = [&](const std::vector<std::vector<int>>& r) { out.push_back({shape, r}); };
  detail::fill_ssyt(shape, max_entry, rows, 0, visit);
  return out;
}

/// Number of semistandard fillings without materialising them.
inline std::uint64_t count_ssyt(const SkewShape& shape, int max_entry) {
  if (max_entry < 1) throw Error(Errc::InvalidArgument, "max_entry must be >= 1");
  std::uint64_t count = 0;
  std::vector<std::vector<int>> rows(shape.rows());
  auto visit = [&](const std::vector<std::vector<int>>&) { ++count; };
  detail::fill_ssyt(shape, max_entry, rows, 0, visit);
  return count;
}

/// Rows top to bottom, each read right to left.
inline std::vector<int> reverse_word(const SkewTableau& t) {
  std::vector<int> w;
  for (const auto& row : t.rows) w.insert(w.end(), row.rbegin(), row.rend());
  return w;
}

/// Every prefix has at least as many i's as (i+1)'s.
inline bool is_lattice_word(const std::vector<int>& w) {
  std::vector<int> count;
  for (int x : w) {
    if (x < 1) return false;
    if (static_cast<std::size_t>(x) > count.size()) count.resize(static_cast<std::size_t>(x), 0);
    ++count[static_cast<std::size_t>(x - 1)];
    if (x > 1 && count[static_cast<std::size_t>(x - 1)] > count[static_cast<std::size_t>(x - 2)])
      return false;
  }
  return true;
}

/// Littlewood-Richardson number c^mu_{lambda,gamma}.
///
/// Rows are filled top to bottom and each row right to left, which is exactly
/// the reverse-word order, so content and lattice conditions prune as we go.
/// Entries are capped at the number of parts of gamma (forced by content).
inline std::uint64_t lr_number(const Partition& lambda, const Partition& gamma,
                               const Partition& mu) {
  if (!contains(lambda, mu) || lambda.size() + gamma.size() != mu.size()) return 0;
  if (!contains(gamma, mu)) return 0;
  const SkewShape shape(lambda, mu);
  const int kmax = static_cast<int>(gamma.length());
  if (shape.boxes() == 0) return 1;
  std::vector<int> used(static_cast<std::size_t>(kmax) + 1, 0);
  std::vector<std::vector<int>> grid(shape.rows());
  for (std::size_t i = 0; i < shape.rows(); ++i)
    grid[i].assign(static_cast<std::size_t>(shape.row_end(i)), 0);
  std::uint64_t count = 0;

  auto fill = [&](auto&& self, std::size_t row, int col) -> void {
    if (row == shape.rows()) {
      ++count;
      return;
    }
    if (col < shape.row_begin(row)) {
      std::size_t next = row + 1;
      self(self, next, next < shape.rows() ? shape.row_end(next) - 1 : 0);
      return;
    }
    // Right to left: value <= right neighbour, > value above.
    int hi = kmax;
    if (col + 1 < shape.row_end(row)) hi = std::min(hi, grid[row][static_cast<std::size_t>(col + 1)]);
    int lo = 1;
    if (row > 0 && col >= shape.row_begin(row - 1)) lo = grid[row - 1][static_cast<std::size_t>(col)] + 1;
    for (int v = lo; v <= hi; ++v) {
      auto vi = static_cast<std::size_t>(v);
      if (used[vi] == gamma[vi - 1]) continue;
      if (v > 1 && used[vi] + 1 > used[vi - 1]) continue;
      ++used[vi];
      grid[row][static_cast<std::size_t>(col)] = v;
      self(self, row, col - 1);
      --used[vi];
    }
    grid[row][static_cast<std::size_t>(col)] = 0;
  };
  fill(fill, 0, shape.row_end(0) - 1);
  return count;
}

/// All partitions of `total` with at most `max_parts` parts, each part at
/// most `max_part`, in increasing lexicographic order.
inline std::vector<Partition> partitions_of(int total, std::size_t max_parts, int max_part) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    if (cur.size() == max_parts) return;
    for (int p = 1; p <= std::min(cap, remaining); ++p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, total, max_part);
  std::sort(out.begin(), out.end());
  return out;
}

/// (gamma, c^mu_{lambda,gamma}) for every gamma with positive multiplicity,
/// sorted lexicographically by gamma.
inline std::vector<std::pair<Partition, std::uint64_t>> skew_decomposition(const SkewShape& shape) {
  std::vector<std::pair<Partition, std::uint64_t>> out;
  for (const auto& gamma : partitions_of(shape.boxes(), shape.outer.length(), shape.outer[0])) {
    std::uint64_t c = lr_number(shape.inner, gamma, shape.outer);
    if (c > 0) out.emplace_back(gamma, c);
  }
  return out;
}

namespace detail {

template <class Accept>
std::vector<Partition> add_boxes(const Partition& lambda, int m, std::size_t max_rows,
                                 Accept accept) {
  std::vector<Partition> out;
  std::vector<int> base = lambda.padded(max_rows);
  if (base.size() > max_rows) return out;
  std::vector<int> cur = base;
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == max_rows) {
      if (remaining == 0) out.emplace_back(cur);
      return;
    }
    int cap = i == 0 ? base[0] + remaining : cur[i - 1];
    for (int add = 0; add <= remaining && base[i] + add <= cap; ++add) {
      if (!accept(base, i, add)) continue;
      cur[i] = base[i] + add;
      self(self, i + 1, remaining - add);
    }
    cur[i] = base[i];
  };
  rec(rec, 0, m);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Add m boxes to lambda, no two in the same column (horizontal strip).
inline std::vector<Partition> pieri_row(const Partition& lambda, int m, std::size_t max_rows) {
  return detail::add_boxes(lambda, m, max_rows, [](const std::vector<int>& base, std::size_t i, int add) {
    return i == 0 || base[i] + add <= base[i - 1];
  });
}

/// Add m boxes to lambda, no two in the same row (vertical strip).
inline std::vector<Partition> pieri_col(const Partition& lambda, int m, std::size_t max_rows) {
  return detail::add_boxes(lambda, m, max_rows,
                           [](const std::vector<int>&, std::size_t, int add) { return add <= 1; });
}

/// dim S^gamma(k^n) by the hook-content formula.
inline std::uint64_t gl_dimension(const Partition& gamma, int n) {
  Integer num = 1, den = 1;
  for (std::size_t i = 0; i < gamma.length(); ++i) {
    for (int j = 0; j < gamma[i]; ++j) {
      int content = n + j - static_cast<int>(i);
      if (content <= 0) return 0;
      int arm = gamma[i] - j - 1;
      int leg = 0;
      while (i + 1 + static_cast<std::size_t>(leg) < gamma.length() &&
             gamma[i + 1 + static_cast<std::size_t>(leg)] > j)
        ++leg;
      num *= content;
      den *= arm + leg + 1;
    }
  }
  Integer q = num / den;
  return q.get_ui();
}

/// Irreducible summands of Hom(S^lambda W, S^mu W) for two-part partitions.
/// Closed-form interval: shift lambda_2 to zero, then step (+1,-1) from
/// (max(m1,m2), min(m1,m2)).
inline std::vector<Partition> gamma_set(const Partition& lambda, const Partition& mu) {
  if (lambda.length() > 2 || mu.length() > 2)
    throw Error(Errc::InvalidArgument, "gamma_set expects two-part partitions");
  if (!contains(lambda, mu)) throw Error(Errc::NotContained, "lambda not contained in mu");
  const int m1 = mu[0] - lambda[0];
  const int m2 = mu[1] - lambda[1];
  const int lo = std::min(m1, m2);
  // After the shift, lambda = (lambda1 - lambda2, 0) and mu2 -> mu2 - lambda2.
  const int last_second = mu[1] <= lambda[0] ? 0 : mu[1] - lambda[0];
  std::vector<Partition> out;
  for (int b = lo; b >= last_second; --b) out.push_back(pair(m1 + m2 - b, b));
  return out;
}

/// dim Hom(S^lambda W, S^mu W) = sum over gamma_set of gl_dimension.
inline std::uint64_t hom_dim(const Partition& lambda, const Partition& mu, int n) {
  std::uint64_t total = 0;
  for (const auto& g : gamma_set(lambda, mu)) total += gl_dimension(g, n);
  return total;
}

/// Tensor word u_{w0} (x) u_{w1} (x) ... ; letters are 1-based basis indices.
using Word = std::vector<int>;
using TensorLinComb = LinComb<Word>;

namespace detail {

// Sum over all products of permutations of the position groups, with sign
// when `signed_sum`. Positions in each group are permuted among themselves.
inline TensorLinComb permute_groups(const TensorLinComb& x,
                                    const std::vector<std::vector<std::size_t>>& groups,
                                    bool signed_sum) {
  TensorLinComb acc = x;
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    TensorLinComb next;
    std::vector<std::size_t> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int sign = 1;
      if (signed_sum) {
        for (std::size_t a = 0; a < perm.size(); ++a)
          for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) sign = -sign;
      }
      for (const auto& [w, c] : acc.terms()) {
        Word v = w;
        for (std::size_t k = 0; k < g.size(); ++k) v[g[k]] = w[g[perm[k]]];
        next.add(v, sign * c);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc = std::move(next);
  }
  return acc;
}

}  // namespace detail

/// c = b . a applied to a combination of tensor words: symmetrize over row
/// positions, then antisymmetrize over column positions. Word slots map to
/// boxes left to right, top to bottom.
inline TensorLinComb young_symmetrizer_image(const SkewShape& shape, const TensorLinComb& x) {
  const auto boxes = shape.reading_order();
  for (const auto& [w, c] : x.terms())
    if (w.size() != boxes.size())
      throw Error(Errc::LengthMismatch, "word length differs from box count");
  std::vector<std::vector<std::size_t>> row_groups(shape.rows());
  std::vector<std::vector<std::size_t>> col_groups(static_cast<std::size_t>(std::max(shape.outer[0], 0)));
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    row_groups[static_cast<std::size_t>(boxes[k].first)].push_back(k);
    col_groups[static_cast<std::size_t>(boxes[k].second)].push_back(k);
  }
  return detail::permute_groups(detail::permute_groups(x, row_groups, false), col_groups, true);
}

}  // namespace kq
