#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "picod/errors.hpp"
#include "picod/gf.hpp"
#include "picod/instance.hpp"
#include "picod/message_set.hpp"

namespace picod {

/// ℓ broadcast symbols, each a GF(q) combination of the m messages.
class LinearCode {
 public:
  LinearCode(PrimeField field, int m, Matrix rows) : field_(field), m_(m), rows_(std::move(rows)) {
    if (m < 1) throw std::invalid_argument("code needs at least one message column");
    check_matrix(rows_, static_cast<std::size_t>(m_), field_);
  }

  const PrimeField& field() const { return field_; }
  int m() const { return m_; }
  int length() const { return static_cast<int>(rows_.size()); }
  const Matrix& rows() const { return rows_; }

  LinearCode with_row(Row r) const {
    Matrix rows = rows_;
    rows.push_back(std::move(r));
    return LinearCode(field_, m_, std::move(rows));
  }

  bool operator==(const LinearCode&) const = default;

 private:
  PrimeField field_;
  int m_;
  Matrix rows_;
};

class FieldTooSmall : public PreconditionError {
 public:
  explicit FieldTooSmall(const std::string& what) : PreconditionError(what) {}
};

// Column set (ascending) whose k×k minor is singular, if one is found among the
// checked sets. Exhaustive when C(m,k) <= 1e5, otherwise 1e4 random k-sets.
inline std::optional<std::vector<int>> find_singular_minor(const Matrix& g, int m, const PrimeField& f,
                                                           std::uint64_t seed = 0x5eed) {
  const int k = static_cast<int>(g.size());
  if (k == 0) return std::nullopt;
  auto minor_ok = [&](const std::vector<int>& cols) {
    Matrix sub(k, Row(k));
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub[r][c] = g[r][cols[c]];
    return gf_rank(sub, f) == k;
  };
  if (binomial(m, k) <= 100'000) {
    for (auto cols : k_subsets(MessageSet::full(m), k)) {
      auto e = cols.elements();
      if (!minor_ok(e)) return e;
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i;
  for (int trial = 0; trial < 10'000; ++trial) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> cols(all.begin(), all.begin() + k);
    std::sort(cols.begin(), cols.end());
    if (!minor_ok(cols)) return cols;
  }
  return std::nullopt;
}

/// k×m Vandermonde matrix with nodes 1..m: entry (r, c) = (c+1)^r. Every k
/// columns are independent because the nodes are distinct mod q when q >= m.
inline Matrix mds_rows(int k, int m, const PrimeField& f) {
  if (k < 0 || k > m) throw PreconditionError("MDS row count must lie in [0, m]");
  if (f.q() < static_cast<std::uint32_t>(m))
    throw FieldTooSmall("field too small for MDS guarantee: q = " + std::to_string(f.q()) +
                        " < m = " + std::to_string(m));
  Matrix g(k, Row(m));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < m; ++c) g[r][c] = f.pow(static_cast<std::uint32_t>(c + 1), r);
  if (find_singular_minor(g, m, f))
    throw std::logic_error("Vandermonde construction produced a singular minor");
  return g;
}

enum class PartStrategy { Uncoded, Mds };

inline const char* to_string(PartStrategy s) { return s == PartStrategy::Uncoded ? "UNCODED" : "MDS"; }

struct PlanPart {
  std::vector<int> sizes;  // ascending
  PartStrategy strategy;
  int cost;
};

/// A partition of S into parts, each served by the cheaper of its two schemes.
struct PartitionPlan {
  std::vector<PlanPart> parts;

  int cost() const {
    int c = 0;
    for (const auto& p : parts) c += p.cost;
    return c;
  }
  bool uses_mds() const {
    return std::any_of(parts.begin(), parts.end(),
                       [](const PlanPart& p) { return p.strategy == PartStrategy::Mds; });
  }
};

// min{m - min(part), max(part) + t}; ties go to the uncoded scheme, which needs no
// field beyond GF(2).
inline PlanPart make_part(int m, int t, std::vector<int> sizes) {
  std::sort(sizes.begin(), sizes.end());
  const int uncoded = sizes.back() + t;
  const int mds = m - sizes.front();
  if (uncoded <= mds) return {std::move(sizes), PartStrategy::Uncoded, uncoded};
  return {std::move(sizes), PartStrategy::Mds, mds};
}

// Empty string when `plan` is a valid partition plan for (m, t, S).
inline std::string plan_violation(int m, int t, const SizeProfile& S, const PartitionPlan& plan) {
  std::vector<int> seen;
  for (const auto& p : plan.parts) {
    if (p.sizes.empty()) return "plan has an empty part";
    const int uncoded = p.sizes.back() + t;
    const int mds = m - p.sizes.front();
    const int want = p.strategy == PartStrategy::Uncoded ? uncoded : mds;
    if (p.cost != want) return "part cost does not match its strategy";
    if (p.cost != std::min(uncoded, mds)) return "part does not use its cheaper scheme";
    seen.insert(seen.end(), p.sizes.begin(), p.sizes.end());
  }
  std::sort(seen.begin(), seen.end());
  if (seen != S.sizes()) return "plan parts do not partition S exactly";
  return {};
}

/// Minimum-cost plan. Each part's cost depends only on its min and max, so an
/// optimum exists among partitions of sorted(S) into consecutive runs; this is
/// a DP over run boundaries. Ties prefer fewer parts, then the lexicographically
/// smallest list of run start positions.
inline PartitionPlan optimal_partition(int m, int t, const SizeProfile& S) {
  check_profile(m, t, S);
  const auto& s = S.sizes();
  const int k = S.size();
  struct Best {
    int cost = -1;
    int parts = 0;
    std::vector<int> starts;  // start index of every run
  };
  auto better = [](const Best& a, const Best& b) {
    if (b.cost < 0) return true;
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.parts != b.parts) return a.parts < b.parts;
    return a.starts < b.starts;
  };
  std::vector<Best> dp(k + 1);
  dp[0].cost = 0;
  for (int end = 1; end <= k; ++end) {
    for (int start = 0; start < end; ++start) {
      const int part_cost = std::min(m - s[start], s[end - 1] + t);
      Best cand = dp[start];
      cand.cost += part_cost;
      cand.parts += 1;
      cand.starts.push_back(start);
      if (better(cand, dp[end])) dp[end] = std::move(cand);
    }
  }
  PartitionPlan plan;
  const auto& starts = dp[k].starts;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const int lo = starts[i];
    const int hi = i + 1 < starts.size() ? starts[i + 1] : k;
    plan.parts.push_back(make_part(m, t, std::vector<int>(s.begin() + lo, s.begin() + hi)));
  }
  return plan;
}

// GF(2) unless some part needs MDS rows, then the smallest prime >= m.
inline PrimeField default_field(int m, const PartitionPlan& plan) {
  return plan.uses_mds() ? PrimeField(next_prime(static_cast<std::uint32_t>(m))) : PrimeField(2);
}

/// Concatenates each part's rows: uncoded parts send e_1..e_{max+t}, MDS parts
/// send m - min Vandermonde combinations.
inline LinearCode build_partition_scheme(int m, int t, const PartitionPlan& plan, const PrimeField& f) {
  Matrix rows;
  for (const auto& p : plan.parts) {
    if (p.strategy == PartStrategy::Uncoded) {
      const int count = p.sizes.back() + t;
      if (count > m) throw PreconditionError("uncoded part needs more than m unit rows");
      for (int i = 0; i < count; ++i) rows.push_back(unit_row(m, i));
    } else {
      auto g = mds_rows(m - p.sizes.front(), m, f);
      rows.insert(rows.end(), g.begin(), g.end());
    }
  }
  return LinearCode(f, m, std::move(rows));
}

}  // namespace picod
