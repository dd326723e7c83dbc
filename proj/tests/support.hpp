#pragma once

// Brute-force oracles and random generators shared by the test binaries. Nothing
// here calls the library routines it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "picod/picod.hpp"

namespace picod::testing {

// Sets written the way the math does, 1-based.
inline MessageSet one_based(std::initializer_list<int> xs) {
  MessageSet s;
  for (int x : xs) s.insert(x - 1);
  return s;
}

inline Row row(std::initializer_list<std::uint32_t> xs) { return Row(xs); }

inline Instance random_instance(std::mt19937_64& rng, int m_lo, int m_hi, int n_hi, int t_hi) {
  const int m = std::uniform_int_distribution<int>(m_lo, m_hi)(rng);
  const int t = std::uniform_int_distribution<int>(1, std::min(t_hi, m))(rng);
  const int n = std::uniform_int_distribution<int>(1, n_hi)(rng);
  std::vector<MessageSet> users;
  for (int i = 0; i < n; ++i) {
    const int size = std::uniform_int_distribution<int>(0, m - t)(rng);
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(size);
    users.push_back(MessageSet::from_indices(idx));
  }
  return Instance(m, t, std::move(users));
}

// Acyclicity of the digraph on `picked` unicast users, edge u -> v whenever u
// already knows the message v wants. Kahn's algorithm.
inline bool acyclic(const std::vector<std::pair<MessageSet, int>>& picked) {
  const int k = static_cast<int>(picked.size());
  std::vector<int> indeg(k, 0);
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v)
      if (u != v && picked[u].first.contains(picked[v].second)) ++indeg[v];
  std::vector<int> ready;
  for (int v = 0; v < k; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  int done = 0;
  while (!ready.empty()) {
    const int u = ready.back();
    ready.pop_back();
    ++done;
    for (int v = 0; v < k; ++v)
      if (u != v && picked[u].first.contains(picked[v].second) && --indeg[v] == 0) ready.push_back(v);
  }
  return done == k;
}

// Largest acyclic set of unicast users with pairwise distinct wanted messages.
inline int brute_mais(const Instance& inst, const DesiredAssignment& a) {
  std::vector<std::pair<MessageSet, int>> uni;
  for (int i = 0; i < inst.n(); ++i)
    for (int d : a.desired[i].elements()) uni.emplace_back(inst.side_info(i), d);
  const int k = static_cast<int>(uni.size());
  if (k > 22) throw std::runtime_error("brute_mais oracle limited to 22 unicast users");
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    std::vector<std::pair<MessageSet, int>> picked;
    MessageSet wanted;
    bool distinct = true;
    for (int i = 0; i < k && distinct; ++i)
      if (mask >> i & 1) {
        distinct = !wanted.contains(uni[i].second);
        wanted.insert(uni[i].second);
        picked.push_back(uni[i]);
      }
    if (distinct && acyclic(picked)) best = size;
  }
  return best;
}

// min over every assignment of brute_mais, by recursive enumeration.
inline int brute_min_mais(const Instance& inst) {
  DesiredAssignment a;
  a.desired.resize(inst.n());
  int best = 1 << 30;
  std::function<void(int)> rec = [&](int u) {
    if (u == inst.n()) {
      best = std::min(best, brute_mais(inst, a));
      return;
    }
    const MessageSet free = inst.messages() - inst.side_info(u);
    for (std::uint32_t b = 0; b < (1u << inst.m()); ++b) {
      const MessageSet d(b);
      if (d.size() == inst.t() && d.subset_of(free)) {
        a.desired[u] = d;
        rec(u + 1);
      }
    }
  };
  rec(0);
  return best;
}

// Every set partition of `items`, via restricted growth strings.
inline void for_each_set_partition(const std::vector<int>& items,
                                   const std::function<void(const std::vector<std::vector<int>>&)>& f) {
  const int k = static_cast<int>(items.size());
  std::vector<int> label(k, 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == k) {
      std::vector<std::vector<int>> parts(blocks);
      for (int j = 0; j < k; ++j) parts[label[j]].push_back(items[j]);
      f(parts);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      label[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
}

inline int brute_partition_cost(int m, int t, const std::vector<int>& S) {
  int best = 1 << 30;
  for_each_set_partition(S, [&](const std::vector<std::vector<int>>& parts) {
    int cost = 0;
    for (const auto& p : parts) {
      const int lo = *std::min_element(p.begin(), p.end());
      const int hi = *std::max_element(p.begin(), p.end());
      cost += std::min(hi + t, m - lo);
    }
    best = std::min(best, cost);
  });
  return best;
}

// Every vector in the span of `gens` over GF(q), as base-q integers.
inline std::set<std::uint64_t> span_set(const Matrix& gens, int cols, std::uint32_t q) {
  std::set<std::uint64_t> out;
  const int k = static_cast<int>(gens.size());
  std::vector<std::uint32_t> coef(k, 0);
  while (true) {
    std::uint64_t code = 0;
    for (int c = cols - 1; c >= 0; --c) {
      std::uint64_t v = 0;
      for (int r = 0; r < k; ++r) v += static_cast<std::uint64_t>(coef[r]) * gens[r][c];
      code = code * q + v % q;
    }
    out.insert(code);
    int p = 0;
    while (p < k && ++coef[p] == q) coef[p++] = 0;
    if (p == k) break;
  }
  return out;
}

inline int brute_rank(const Matrix& gens, int cols, std::uint32_t q) {
  const auto n = span_set(gens, cols, q).size();
  int r = 0;
  for (std::uint64_t p = 1; p < n; p *= q) ++r;
  return r;
}

inline std::uint64_t unit_code(int cols, int i, std::uint32_t q) {
  std::uint64_t code = 1;
  for (int c = 0; c < i; ++c) code *= q;
  (void)cols;
  return code;
}

// Messages decodable from `known` plus the broadcast: e_j in span(rows, e_known).
inline MessageSet brute_decodable(const LinearCode& code, MessageSet known) {
  Matrix gens = code.rows();
  for (int a : known.elements()) gens.push_back(unit_row(code.m(), a));
  const auto span = span_set(gens, code.m(), code.field().q());
  MessageSet out;
  for (int j = 0; j < code.m(); ++j)
    if (span.count(unit_code(code.m(), j, code.field().q()))) out.insert(j);
  return out;
}

inline bool brute_valid(const LinearCode& code, const Instance& inst) {
  for (int i = 0; i < inst.n(); ++i)
    if ((brute_decodable(code, inst.side_info(i)) - inst.side_info(i)).size() < inst.t()) return false;
  return true;
}

// Smallest ℓ with some ℓ x m matrix over GF(q) valid for the instance; every
// matrix is tried, so keep q^(ℓ m) small.
inline int brute_min_length(const Instance& inst, std::uint32_t q, int ell_max) {
  const PrimeField f(q);
  const int m = inst.m();
  for (int ell = 0; ell <= ell_max; ++ell) {
    const int cells = ell * m;
    std::vector<std::uint32_t> v(cells, 0);
    while (true) {
      Matrix g(ell, Row(m));
      for (int c = 0; c < cells; ++c) g[c / m][c % m] = v[c];
      if (brute_valid(LinearCode(f, m, g), inst)) return ell;
      int p = 0;
      while (p < cells && ++v[p] == q) v[p++] = 0;
      if (p == cells) break;
    }
  }
  return -1;
}

inline bool brute_has_one_factor(const Hypergraph& h) {
  const int k = h.edge_count();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> hits(h.n, 0);
    for (int j = 0; j < k; ++j)
      if (mask >> j & 1)
        for (int v : h.edges[j]) ++hits[v];
    if (std::all_of(hits.begin(), hits.end(), [](int c) { return c == 1; })) return true;
  }
  return false;
}

struct ArcInstance {
  Instance inst;
  std::vector<int> order;  // order[p] is the user at cyclic position p
};

// Random arcs on n cyclic positions, one per message, until every position is
// covered; users are a random relabeling of positions.
inline ArcInstance random_circular_arc(std::mt19937_64& rng, int n_hi, int m_hi) {
  const int n = std::uniform_int_distribution<int>(1, n_hi)(rng);
  const int m = std::uniform_int_distribution<int>(1, m_hi)(rng);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  while (true) {
    std::vector<MessageSet> lacks(n);  // indexed by position
    for (int j = 0; j < m; ++j) {
      const int start = std::uniform_int_distribution<int>(0, n - 1)(rng);
      const int len = std::uniform_int_distribution<int>(1, n)(rng);
      for (int k = 0; k < len; ++k) lacks[(start + k) % n].insert(j);
    }
    if (std::any_of(lacks.begin(), lacks.end(), [](MessageSet s) { return s.empty(); })) continue;
    std::vector<MessageSet> users(n);
    for (int p = 0; p < n; ++p) users[order[p]] = MessageSet::full(m) - lacks[p];
    return {Instance(m, 1, std::move(users)), order};
  }
}

inline DesiredAssignment random_assignment(std::mt19937_64& rng, const Instance& inst) {
  DesiredAssignment a;
  for (int i = 0; i < inst.n(); ++i) {
    auto opts = desired_options(inst, i);
    a.desired.push_back(opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)]);
  }
  return a;
}

}  // namespace picod::testing
