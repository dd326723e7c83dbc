#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "picod/caps.hpp"
#include "picod/errors.hpp"
#include "picod/gf.hpp"
#include "picod/instance.hpp"
#include "picod/linear_code.hpp"
#include "picod/verifier.hpp"

namespace picod {

/// Vertices 0..n-1, edge j is a sorted vertex list labelled j.
struct Hypergraph {
  int n = 0;
  std::vector<std::vector<int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool operator==(const Hypergraph&) const = default;
};

inline void check_hypergraph(const Hypergraph& h) {
  if (h.n < 0) throw PreconditionError("hypergraph has a negative vertex count");
  for (std::size_t j = 0; j < h.edges.size(); ++j) {
    const auto& e = h.edges[j];
    if (!std::is_sorted(e.begin(), e.end()) || std::adjacent_find(e.begin(), e.end()) != e.end())
      throw PreconditionError("edge " + std::to_string(j + 1) + " is not a sorted set");
    for (int v : e)
      if (v < 0 || v >= h.n) throw PreconditionError("edge " + std::to_string(j + 1) + " has a vertex out of range");
  }
}

// Users are vertices, messages are edges: user i lies on edge j iff it lacks message j.
inline Hypergraph network_topology(const Instance& inst) {
  Hypergraph h;
  h.n = inst.n();
  h.edges.resize(inst.m());
  for (int i = 0; i < inst.n(); ++i)
    for (int j = 0; j < inst.m(); ++j)
      if (!inst.side_info(i).contains(j)) h.edges[j].push_back(i);
  return h;
}

// Edges become vertices and vice versa.
inline Hypergraph dual(const Hypergraph& h) {
  check_hypergraph(h);
  Hypergraph d;
  d.n = h.edge_count();
  d.edges.resize(h.n);
  for (int j = 0; j < h.edge_count(); ++j)
    for (int v : h.edges[j]) d.edges[v].push_back(j);
  return d;
}

/// Exact cover of the vertices by edges. Branches on the uncovered vertex with the
/// fewest compatible edges; std::nullopt means no factor exists. Exhausting
/// caps.search_nodes raises SearchOverflow.
inline std::optional<std::vector<int>> has_one_factor(const Hypergraph& h, const Caps& caps = {}) {
  check_hypergraph(h);
  std::vector<std::vector<int>> incident(h.n);
  for (int j = 0; j < h.edge_count(); ++j)
    for (int v : h.edges[j]) incident[v].push_back(j);
  std::vector<char> covered(h.n, 0);
  std::vector<int> chosen;
  std::uint64_t nodes = 0;

  auto fits = [&](int j) {
    for (int v : h.edges[j])
      if (covered[v]) return false;
    return !h.edges[j].empty();
  };
  auto dfs = [&](auto&& self) -> bool {
    if (++nodes > caps.search_nodes)
      throw SearchOverflow("1-factor search exceeded " + std::to_string(caps.search_nodes) + " nodes");
    int pick = -1;
    std::size_t best = SIZE_MAX;
    for (int v = 0; v < h.n; ++v) {
      if (covered[v]) continue;
      std::size_t options = 0;
      for (int j : incident[v]) options += fits(j);
      if (options < best) {
        best = options;
        pick = v;
        if (options == 0) break;
      }
    }
    if (pick < 0) return true;
    if (best == 0) return false;
    for (int j : incident[pick]) {
      if (!fits(j)) continue;
      for (int v : h.edges[j]) covered[v] = 1;
      chosen.push_back(j);
      if (self(self)) return true;
      chosen.pop_back();
      for (int v : h.edges[j]) covered[v] = 0;
    }
    return false;
  };
  if (!dfs(dfs)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

inline bool is_one_factor(const Hypergraph& h, const std::vector<int>& labels) {
  std::vector<int> hits(h.n, 0);
  for (int j : labels) {
    if (j < 0 || j >= h.edge_count()) return false;
    for (int v : h.edges[j]) ++hits[v];
  }
  return std::all_of(hits.begin(), hits.end(), [](int c) { return c == 1; });
}

// The sum of the factor's messages: one row, 1 on each factor label.
inline LinearCode one_transmission_code(const Hypergraph& h, const std::vector<int>& factor, const PrimeField& f) {
  if (h.n == 0) throw PreconditionError("one-transmission code needs at least one user");
  if (!is_one_factor(h, factor)) throw PreconditionError("edge set is not a 1-factor");
  Row r(h.edge_count(), 0);
  for (int j : factor) r[j] = 1;
  return LinearCode(f, h.edge_count(), Matrix{r});
}

inline void check_cyclic_order(int n, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != n) throw PreconditionError("cyclic order must list every vertex once");
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) throw PreconditionError("cyclic order is not a permutation");
    seen[v] = 1;
  }
}

// An edge seen through the cyclic order: positions start, start+1, ..., start+len-1 (mod n).
struct Arc {
  int label;
  int start;
  int len;
};

// Arc of `edge` under `pos` (vertex -> position), or nullopt if not contiguous.
inline std::optional<Arc> as_arc(int n, const std::vector<int>& edge, const std::vector<int>& pos, int label) {
  if (edge.empty()) return std::nullopt;
  std::vector<char> in(n, 0);
  for (int v : edge) in[pos[v]] = 1;
  const int len = static_cast<int>(edge.size());
  if (len == n) return Arc{label, 0, n};
  int starts = 0, start = -1;
  for (int p = 0; p < n; ++p)
    if (in[p] && !in[(p + n - 1) % n]) {
      ++starts;
      start = p;
    }
  if (starts != 1) return std::nullopt;
  return Arc{label, start, len};
}

// Every non-empty edge is a contiguous cyclic run of positions under `order`.
inline bool verify_circular_arc(const Hypergraph& h, const std::vector<int>& order) {
  check_hypergraph(h);
  check_cyclic_order(h.n, order);
  std::vector<int> pos(h.n);
  for (int p = 0; p < h.n; ++p) pos[order[p]] = p;
  for (int j = 0; j < h.edge_count(); ++j)
    if (!h.edges[j].empty() && !as_arc(h.n, h.edges[j], pos, j)) return false;
  return true;
}

struct GapCover {
  std::vector<int> positions;  // uncovered cyclic positions, in scan order
  int label;                   // edge containing all of them
};

/// What the two-transmission construction did, one field per stage.
struct CircularArcWitness {
  std::optional<std::vector<int>> factor;  // set when a 1-factor short-circuits the construction
  std::vector<int> dropped;                // Step0 removals in drop order
  std::vector<int> first;                  // Step1 edges in scan order
  std::vector<std::string> tie_notes;      // Step1 starts with several candidate arcs
  std::vector<int> overlap_positions;      // covered by both the first and last Step1 edge
  std::vector<GapCover> gaps;              // Step2 covers
};

struct CircularArcResult {
  LinearCode code;
  CircularArcWitness witness;
};

/// Code of length <= 2 for a t = 1 instance whose topology is circular-arc under
/// `order` (vertex labels are user indices).
///
/// A 1-factor, when one exists, gives a single row. Otherwise: drop edges that are
/// inside the union of the remaining ones (lowest label first, to a fixpoint), scan
/// positions picking at each start the longest arc and jumping past it, send the
/// sum of the picked messages, then send the sum of one full cover per uncovered
/// run plus the first picked message.
inline CircularArcResult circular_arc_scheme(const Instance& inst, const std::vector<int>& order,
                                             const PrimeField& f, const Caps& caps = {}) {
  if (inst.t() != 1) throw PreconditionError("circular-arc scheme needs t = 1");
  if (inst.n() == 0) throw PreconditionError("circular-arc scheme needs at least one user");
  for (int i = 0; i < inst.n(); ++i)
    if (inst.side_info(i) == inst.messages())
      throw PreconditionError("user " + std::to_string(i + 1) + " is isolated: it already has every message");
  const Hypergraph h = network_topology(inst);
  check_cyclic_order(h.n, order);
  if (!verify_circular_arc(h, order)) throw PreconditionError("topology is not circular-arc under the given order");

  const int n = h.n, m = inst.m();
  CircularArcWitness w;
  auto finish = [&](Matrix rows) {
    LinearCode code(f, m, std::move(rows));
    if (!is_valid(code, inst).valid) throw std::logic_error("circular-arc scheme produced an invalid code");
    return CircularArcResult{std::move(code), std::move(w)};
  };

  if (auto factor = has_one_factor(h, caps)) {
    w.factor = *factor;
    return finish(one_transmission_code(h, *factor, f).rows());
  }

  std::vector<int> pos(n);
  for (int p = 0; p < n; ++p) pos[order[p]] = p;

  // Step0.
  std::vector<int> live;
  for (int j = 0; j < h.edge_count(); ++j)
    if (!h.edges[j].empty()) live.push_back(j);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < live.size(); ++k) {
      std::vector<int> cover(n, 0);
      for (std::size_t o = 0; o < live.size(); ++o)
        if (o != k)
          for (int v : h.edges[live[o]]) cover[v] = 1;
      const auto& e = h.edges[live[k]];
      if (std::all_of(e.begin(), e.end(), [&](int v) { return cover[v]; })) {
        w.dropped.push_back(live[k]);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
    }
  }

  std::vector<Arc> arcs;
  for (int j : live) arcs.push_back(*as_arc(n, h.edges[j], pos, j));

  // Step1.
  std::vector<Arc> first;
  for (int i = 0; i < n;) {
    const Arc* best = nullptr;
    int candidates = 0;
    for (const auto& a : arcs) {
      if (a.start != i) continue;
      ++candidates;
      if (!best || a.len > best->len || (a.len == best->len && a.label < best->label)) best = &a;
    }
    if (!best) {
      ++i;
      continue;
    }
    if (candidates > 1)
      w.tie_notes.push_back("position " + std::to_string(i + 1) + ": " + std::to_string(candidates) +
                            " arcs start here, kept message " + std::to_string(best->label + 1));
    first.push_back(*best);
    w.first.push_back(best->label);
    i += best->len;
  }

  std::vector<int> hits(n, 0);
  for (const auto& a : first)
    for (int k = 0; k < a.len; ++k) ++hits[(a.start + k) % n];
  for (int p = 0; p < n; ++p)
    if (hits[p] >= 2) w.overlap_positions.push_back(p);

  Row r1(m, 0);
  for (int j : w.first) r1[j] = 1;
  if (std::all_of(hits.begin(), hits.end(), [](int c) { return c == 1; })) return finish(Matrix{r1});

  // Step2: maximal uncovered cyclic runs, each taken whole by one edge.
  std::vector<std::vector<int>> runs;
  int anchor = 0;
  while (anchor < n && hits[anchor] == 0) ++anchor;
  for (int k = 1; k <= n; ++k) {
    const int p = (anchor + k) % n;
    if (hits[p] != 0) continue;
    if (runs.empty() || (runs.back().back() + 1) % n != p) runs.emplace_back();
    runs.back().push_back(p);
  }
  Row r2(m, 0);
  for (auto& run : runs) {
    int pick = -1;
    std::size_t pick_len = SIZE_MAX;
    for (int j : live) {
      const auto& e = h.edges[j];
      const bool covers = std::all_of(run.begin(), run.end(), [&](int p) {
        return std::binary_search(e.begin(), e.end(), order[p]);
      });
      if (covers && e.size() < pick_len) {
        pick = j;
        pick_len = e.size();
      }
    }
    if (pick < 0) throw std::logic_error("uncovered run has no single covering edge");
    w.gaps.push_back({run, pick});
    r2[pick] = f.add(r2[pick], 1);
  }
  r2[w.first.front()] = f.add(r2[w.first.front()], 1);
  return finish(Matrix{r1, r2});
}

}  // namespace picod
