#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "picod/caps.hpp"
#include "picod/errors.hpp"
#include "picod/instance.hpp"
#include "picod/message_set.hpp"

namespace picod {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Block covers

struct BlockCover {
  int m = 0;
  int s = 0;
  int t = 1;
  std::vector<MessageSet> blocks;
};

inline void check_block_cover_params(const BlockCover& bc) {
  if (bc.m < 1 || bc.m > kMaxMessages) throw PreconditionError("block cover ground size out of range");
  if (bc.s < 0 || bc.t < 1 || bc.s + bc.t > bc.m) throw PreconditionError("block cover needs s >= 0, t >= 1, s + t <= m");
  for (auto b : bc.blocks) {
    if (b.empty()) throw PreconditionError("block cover contains an empty block");
    if (!b.subset_of(MessageSet::full(bc.m))) throw PreconditionError("block outside the ground set");
  }
}

struct BlockCoverReport {
  bool p1 = true;  // every s-subset lies in a block
  bool p2 = true;  // s < |C| <= m
  bool p3 = true;  // no intersection size in [s, s+t-1]
  std::optional<MessageSet> uncovered;  // P1 witness
  std::optional<int> bad_block;         // P2 witness (block index)
  std::optional<std::vector<int>> bad_intersection;  // P3 witness (block indices, ascending)

  bool all() const { return p1 && p2 && p3; }
};

/// P3 ranges over non-empty index sets P. Intersections only shrink as P grows, so
/// the search abandons a branch once the running intersection drops below s.
inline BlockCoverReport check_block_cover(const BlockCover& bc, const Caps& caps = {}) {
  check_block_cover_params(bc);
  BlockCoverReport rep;

  const BigCount subsets = binomial(bc.m, bc.s);
  if (subsets > caps.search_nodes)
    throw SearchSpaceTooLarge("s-subsets for P1", subsets.str(), std::to_string(caps.search_nodes));
  for (auto a : k_subsets(MessageSet::full(bc.m), bc.s)) {
    bool hit = false;
    for (auto b : bc.blocks) hit = hit || a.subset_of(b);
    if (!hit) {
      rep.p1 = false;
      rep.uncovered = a;
      break;
    }
  }

  for (std::size_t i = 0; i < bc.blocks.size(); ++i) {
    if (bc.blocks[i].size() <= bc.s) {
      rep.p2 = false;
      rep.bad_block = static_cast<int>(i);
      break;
    }
  }

  const int k = static_cast<int>(bc.blocks.size());
  const int lo = bc.s, hi = bc.s + bc.t - 1;
  std::vector<int> chosen;
  std::uint64_t nodes = 0;
  auto dfs = [&](auto&& self, int next, MessageSet inter) -> bool {
    for (int i = next; i < k; ++i) {
      if (++nodes > caps.search_nodes)
        throw SearchOverflow("P3 intersection search exceeded " + std::to_string(caps.search_nodes) + " nodes");
      const MessageSet x = chosen.empty() ? bc.blocks[i] : (inter & bc.blocks[i]);
      if (x.size() < lo) continue;
      chosen.push_back(i);
      if (x.size() <= hi) return true;
      if (self(self, i + 1, x)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (dfs(dfs, 0, MessageSet::full(bc.m))) {
    rep.p3 = false;
    rep.bad_intersection = chosen;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cross lemma: blocks B_1..B_x over a y-element ground set

struct CrossPair {
  int i;  // block
  int j;  // element of B_i
  int c_j;
  int block_size;
};

/// Picks the column j with the largest weight Σ_{k: j ∈ B_k} 1/|B_k| (lowest j on
/// ties), then the smallest block i containing j (lowest i on ties), and checks
/// c_j / |B_i| >= x / y by cross-multiplication.
inline CrossPair cross_lemma_pair(const std::vector<MessageSet>& blocks, int y) {
  const int x = static_cast<int>(blocks.size());
  if (x < 1 || y < 1 || y > kMaxMessages) throw PreconditionError("cross lemma needs x, y >= 1");
  for (auto b : blocks) {
    if (b.empty()) throw PreconditionError("cross lemma rejects empty blocks");
    if (!b.subset_of(MessageSet::full(y))) throw PreconditionError("block outside the y-element ground set");
  }
  int best_j = -1;
  Rational best_w = -1;
  for (int j = 0; j < y; ++j) {
    Rational w = 0;
    for (auto b : blocks)
      if (b.contains(j)) w += Rational(1, b.size());
    if (w > best_w) {
      best_w = w;
      best_j = j;
    }
  }
  int best_i = -1, c = 0;
  for (int i = 0; i < x; ++i) {
    if (!blocks[i].contains(best_j)) continue;
    ++c;
    if (best_i < 0 || blocks[i].size() < blocks[best_i].size()) best_i = i;
  }
  const int bi = blocks[best_i].size();
  if (static_cast<std::int64_t>(c) * y < static_cast<std::int64_t>(x) * bi)
    throw std::logic_error("cross lemma pair fails c_j / |B_i| >= x / y");
  return {best_i, best_j, c, bi};
}

// ---------------------------------------------------------------------------
// s+1 subsets of an s-element ground set: some P has |∩_{i∈P} B_i| = |P| - 1

struct Lemma3Step {
  MessageSet ground;
  std::vector<int> family;      // indices into the original family
  std::optional<int> empty_at;  // block that is empty on `ground`
  std::optional<CrossPair> pivot;  // i is an original index, j a ground element
};

struct Lemma3Witness {
  std::vector<int> P;  // ascending original indices
  std::vector<Lemma3Step> trace;
  bool brute_force_found = false;
};

inline int intersection_size(const std::vector<MessageSet>& blocks, const std::vector<int>& P) {
  MessageSet x = blocks.at(P.at(0));
  for (int i : P) x &= blocks[i];
  return x.size();
}

inline bool is_lemma3_witness(const std::vector<MessageSet>& blocks, const std::vector<int>& P) {
  return !P.empty() && intersection_size(blocks, P) == static_cast<int>(P.size()) - 1;
}

// First non-empty P (in increasing bitmask order) with the required intersection size.
inline std::optional<std::vector<int>> lemma3_brute_force(const std::vector<MessageSet>& blocks) {
  const int k = static_cast<int>(blocks.size());
  if (k > 30) throw SearchSpaceTooLarge("index sets P", "2^" + std::to_string(k), "2^30");
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    MessageSet x = MessageSet::full(kMaxMessages);
    int size = 0;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) {
        x &= blocks[i];
        ++size;
      }
    if (x.size() == size - 1) return MessageSet(mask).elements();
  }
  return std::nullopt;
}

/// The inductive construction: an empty block ends it; otherwise the cross-lemma
/// pivot (i, j) fixes the block B_i that plays the role of [j], and the recursion
/// runs on the first |B_i| other blocks containing j, restricted to B_i \ {j}.
/// The brute-force search is run too and must agree that a witness exists.
inline Lemma3Witness intersection_family_witness(const std::vector<MessageSet>& blocks, int s) {
  if (s < 0 || s >= kMaxMessages) throw PreconditionError("ground size out of range");
  if (static_cast<int>(blocks.size()) != s + 1) throw PreconditionError("need exactly s + 1 subsets");
  for (auto b : blocks)
    if (!b.subset_of(MessageSet::full(s))) throw PreconditionError("subset outside the s-element ground set");

  Lemma3Witness out;
  MessageSet ground = MessageSet::full(s);
  std::vector<int> family(s + 1);
  for (int i = 0; i <= s; ++i) family[i] = i;
  std::vector<int> pivots;
  while (true) {
    Lemma3Step step{ground, family, std::nullopt, std::nullopt};
    std::optional<int> empty;
    for (int i : family)
      if ((blocks[i] & ground).empty()) {
        empty = i;
        break;
      }
    if (empty) {
      step.empty_at = *empty;
      out.trace.push_back(step);
      pivots.push_back(*empty);
      break;
    }
    // Re-index the ground set to 0..|ground|-1 for the cross lemma.
    const auto g = ground.elements();
    std::vector<MessageSet> local;
    for (int i : family) {
      MessageSet b;
      for (std::size_t k = 0; k < g.size(); ++k)
        if (blocks[i].contains(g[k])) b.insert(static_cast<int>(k));
      local.push_back(b);
    }
    CrossPair cp = cross_lemma_pair(local, static_cast<int>(g.size()));
    cp.i = family[cp.i];
    cp.j = g[cp.j];
    step.pivot = cp;
    out.trace.push_back(step);
    pivots.push_back(cp.i);

    const MessageSet pivot_block = blocks[cp.i] & ground;
    std::vector<int> next;
    for (int i : family)
      if (i != cp.i && blocks[i].contains(cp.j) && static_cast<int>(next.size()) < pivot_block.size())
        next.push_back(i);
    MessageSet reduced = pivot_block;
    reduced.erase(cp.j);
    ground = reduced;
    family = std::move(next);
  }
  out.P = pivots;
  std::sort(out.P.begin(), out.P.end());

  const auto brute = lemma3_brute_force(blocks);
  out.brute_force_found = brute.has_value();
  if (!brute) throw std::logic_error("no witness P exists; the family contradicts the lemma");
  if (!is_lemma3_witness(blocks, out.P)) throw std::logic_error("recursive construction returned an invalid P");
  return out;
}

struct Lemma3SweepResult {
  int s;
  std::uint64_t families = 0;
  std::uint64_t failures = 0;
  std::optional<std::vector<MessageSet>> first_failure;
};

/// Every (s+1)-tuple of non-empty subsets of an s-element ground set.
inline Lemma3SweepResult lemma3_sweep(int s) {
  if (s < 1 || s > 6) throw PreconditionError("sweep supports 1 <= s <= 6");
  const std::uint32_t radix = (1u << s) - 1;
  std::vector<std::uint32_t> digits(s + 1, 0);
  Lemma3SweepResult res;
  res.s = s;
  std::vector<MessageSet> blocks(s + 1);
  while (true) {
    for (int i = 0; i <= s; ++i) blocks[i] = MessageSet(digits[i] + 1);
    ++res.families;
    bool ok = false;
    try {
      ok = is_lemma3_witness(blocks, intersection_family_witness(blocks, s).P);
    } catch (const std::logic_error&) {
      ok = false;
    }
    if (!ok) {
      ++res.failures;
      if (!res.first_failure) res.first_failure = blocks;
    }
    int p = 0;
    while (p <= s && ++digits[p] == radix) digits[p++] = 0;
    if (p > s) break;
  }
  return res;
}

}  // namespace picod
