#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picod/caps.hpp"
#include "picod/errors.hpp"
#include "picod/gf.hpp"
#include "picod/instance.hpp"
#include "picod/linear_code.hpp"

namespace picod {

/// Messages a receiver holding `known` can recover from `code`: d is added when
/// e_d lies in span(code rows ∪ {e_a : a known so far}); repeats to a fixpoint.
/// The initial known set is not part of the result.
inline MessageSet decodable_closure(const LinearCode& code, MessageSet known) {
  const int m = code.m();
  MessageSet current = known & MessageSet::full(m);
  while (true) {
    Matrix gen = code.rows();
    for (int a : current.elements()) gen.push_back(unit_row(m, a));
    const RowSpace span(std::move(gen), static_cast<std::size_t>(m), code.field());
    MessageSet grown = current;
    for (int d = 0; d < m; ++d)
      if (!current.contains(d) && span.contains_unit(d)) grown.insert(d);
    if (grown == current) break;
    current = grown;
  }
  return current - known;
}

struct DecodabilityReport {
  std::vector<MessageSet> side_info;  // A_i
  std::vector<MessageSet> decodable;  // B_i, disjoint from A_i
  bool valid = false;

  MessageSet eventual(int user) const { return side_info[user] | decodable[user]; }  // C_i
};

inline DecodabilityReport is_valid(const LinearCode& code, const Instance& inst) {
  if (code.m() != inst.m())
    throw DimensionMismatch("code has " + std::to_string(code.m()) + " columns, instance has m = " +
                            std::to_string(inst.m()));
  DecodabilityReport rep;
  rep.valid = true;
  for (int i = 0; i < inst.n(); ++i) {
    const auto b = decodable_closure(code, inst.side_info(i));
    rep.side_info.push_back(inst.side_info(i));
    rep.decodable.push_back(b);
    if (b.size() < inst.t()) rep.valid = false;
  }
  return rep;
}

/// D_i = the t smallest decodable messages of user i.
inline DesiredAssignment induced_assignment(const LinearCode& code, const Instance& inst) {
  const auto rep = is_valid(code, inst);
  if (!rep.valid) throw PreconditionError("code is not valid for the instance");
  DesiredAssignment a;
  for (const auto& b : rep.decodable) a.desired.push_back(b.smallest(inst.t()));
  return a;
}

// Number of dim-dimensional subspaces of GF(q)^m.
inline BigCount gaussian_binomial(int m, int dim, std::uint32_t q) {
  if (dim < 0 || dim > m) return 0;
  BigCount num = 1, den = 1;
  for (int i = 0; i < dim; ++i) {
    num *= boost::multiprecision::pow(BigCount(q), m - i) - 1;
    den *= boost::multiprecision::pow(BigCount(q), i + 1) - 1;
  }
  return num / den;
}

/// Visits each dim-dimensional subspace of GF(q)^m exactly once through its
/// reduced row echelon basis: pivot sets in lexicographic order, then the free
/// entries as an odometer.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(int m, int dim, const PrimeField& f) : m_(m), dim_(dim), field_(f) {
    pivot_sets_ = k_subsets(MessageSet::full(m), dim);
    load_pivots();
  }

  // Writes the next basis into `out`; false when exhausted.
  bool next(Matrix& out) {
    if (pivot_index_ >= pivot_sets_.size()) return false;
    out.assign(dim_, Row(m_, 0));
    const auto piv = pivot_sets_[pivot_index_].elements();
    for (int r = 0; r < dim_; ++r) out[r][piv[r]] = 1;
    for (std::size_t i = 0; i < free_.size(); ++i) out[free_[i].first][free_[i].second] = digits_[i];
    advance();
    return true;
  }

 private:
  void load_pivots() {
    free_.clear();
    if (pivot_index_ >= pivot_sets_.size()) return;
    const auto pivots = pivot_sets_[pivot_index_];
    const auto piv = pivots.elements();
    for (int r = 0; r < dim_; ++r)
      for (int c = piv[r] + 1; c < m_; ++c)
        if (!pivots.contains(c)) free_.emplace_back(r, c);
    digits_.assign(free_.size(), 0);
  }

  void advance() {
    std::size_t p = 0;
    while (p < digits_.size()) {
      if (++digits_[p] < field_.q()) return;
      digits_[p] = 0;
      ++p;
    }
    ++pivot_index_;
    load_pivots();
  }

  int m_;
  int dim_;
  PrimeField field_;
  std::vector<MessageSet> pivot_sets_;
  std::size_t pivot_index_ = 0;
  std::vector<std::pair<int, int>> free_;
  std::vector<std::uint32_t> digits_;
};

struct MinLengthResult {
  int length;
  LinearCode witness;
};

/// Smallest ℓ <= ell_max admitting a valid ℓ-row code over `f`, with a witness.
/// Validity depends only on the row space, so one RREF basis per subspace is checked.
inline std::optional<MinLengthResult> min_linear_length_exhaustive(const Instance& inst, const PrimeField& f,
                                                                    int ell_max, const Caps& caps = {}) {
  const int m = inst.m();
  for (int ell = 0; ell <= std::min(ell_max, m); ++ell) {
    const BigCount count = gaussian_binomial(m, ell, f.q());
    if (count > caps.subspaces)
      throw SearchSpaceTooLarge("subspaces of dimension " + std::to_string(ell), count.str(),
                                std::to_string(caps.subspaces));
    SubspaceEnumerator it(m, ell, f);
    Matrix basis;
    while (it.next(basis)) {
      const LinearCode code(f, m, basis);
      bool ok = true;
      for (int i = 0; i < inst.n() && ok; ++i)
        ok = decodable_closure(code, inst.side_info(i)).size() >= inst.t();
      if (ok) return MinLengthResult{ell, code};
    }
  }
  return std::nullopt;
}

}  // namespace picod
