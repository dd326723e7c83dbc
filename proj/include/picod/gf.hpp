#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "picod/errors.hpp"

namespace picod {

inline bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

// Smallest prime >= n.
inline std::uint32_t next_prime(std::uint32_t n) {
  std::uint32_t q = n < 2 ? 2 : n;
  while (!is_prime(q)) ++q;
  return q;
}

/// Arithmetic in GF(q) for a prime q.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q = 2) : q_(q) {
    if (!is_prime(q)) throw PreconditionError("field modulus " + std::to_string(q) + " is not prime");
    if (q > 65521) throw PreconditionError("field modulus must be below 2^16");
  }

  std::uint32_t q() const { return q_; }
  std::uint32_t reduce(std::int64_t v) const {
    const auto r = v % static_cast<std::int64_t>(q_);
    return static_cast<std::uint32_t>(r < 0 ? r + q_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % q_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + q_ - b) % q_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return (a * b) % q_; }
  std::uint32_t pow(std::uint32_t a, std::uint32_t e) const {
    std::uint32_t r = 1 % q_;
    a %= q_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  // Fermat inverse; a must be nonzero.
  std::uint32_t inv(std::uint32_t a) const { return pow(a, q_ - 2); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t q_;
};

using Row = std::vector<std::uint32_t>;
using Matrix = std::vector<Row>;

inline Row unit_row(int m, int i) {
  Row r(m, 0);
  r[i] = 1;
  return r;
}

// Throws DimensionMismatch unless every row has `cols` entries, and
// PreconditionError if an entry is not reduced mod q.
inline void check_matrix(const Matrix& a, std::size_t cols, const PrimeField& f) {
  for (const auto& row : a) {
    if (row.size() != cols)
      throw DimensionMismatch("row of length " + std::to_string(row.size()) + ", expected " +
                              std::to_string(cols));
    for (auto v : row)
      if (v >= f.q()) throw PreconditionError("matrix entry not reduced mod q");
  }
}

/// In-place reduced row echelon form. Returns pivot columns; zero rows are
/// dropped so on return a.size() is the rank.
inline std::vector<int> rref_in_place(Matrix& a, const PrimeField& f) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const auto s = f.inv(a[r][c]);
    for (auto& v : a[r]) v = f.mul(v, s);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const auto k = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(k, a[r][j]));
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  a.resize(r);
  return pivots;
}

inline int gf_rank(Matrix a, std::size_t cols, const PrimeField& f) {
  check_matrix(a, cols, f);
  rref_in_place(a, f);
  return static_cast<int>(a.size());
}

inline int gf_rank(const Matrix& a, const PrimeField& f) {
  return a.empty() ? 0 : gf_rank(a, a.front().size(), f);
}

// True iff v is in the row space of a.
inline bool gf_in_span(const Row& v, const Matrix& a, const PrimeField& f) {
  check_matrix(a, v.size(), f);
  check_matrix(Matrix{v}, v.size(), f);
  Matrix work = a;
  const int base = static_cast<int>(rref_in_place(work, f).size());
  work.push_back(v);
  return static_cast<int>(rref_in_place(work, f).size()) == base;
}

/// Row space held in reduced echelon form; supports cheap membership tests.
class RowSpace {
 public:
  RowSpace(Matrix rows, std::size_t cols, const PrimeField& f) : field_(f), cols_(cols), basis_(std::move(rows)) {
    check_matrix(basis_, cols_, field_);
    pivots_ = rref_in_place(basis_, field_);
  }

  int dim() const { return static_cast<int>(basis_.size()); }
  const Matrix& basis() const { return basis_; }

  bool contains(Row v) const {
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const auto c = static_cast<std::size_t>(pivots_[r]);
      if (v[c] == 0) continue;
      const auto k = v[c];
      for (std::size_t j = c; j < cols_; ++j) v[j] = field_.sub(v[j], field_.mul(k, basis_[r][j]));
    }
    for (auto x : v)
      if (x != 0) return false;
    return true;
  }

  // e_i in the space iff reducing e_i leaves nothing.
  bool contains_unit(int i) const { return contains(unit_row(static_cast<int>(cols_), i)); }

 private:
  PrimeField field_;
  std::size_t cols_;
  Matrix basis_;
  std::vector<int> pivots_;
};

}  // namespace picod
