#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "picod/caps.hpp"
#include "picod/errors.hpp"
#include "picod/instance.hpp"
#include "picod/linear_code.hpp"
#include "picod/verifier.hpp"

namespace picod {

struct UnicastUser {
  MessageSet side;
  int desired;
  int source;  // index of the PICOD user it was split from
};

// Each PICOD user becomes t unicast users sharing its side information.
inline std::vector<UnicastUser> unicast_expansion(const Instance& inst, const DesiredAssignment& a) {
  std::vector<UnicastUser> out;
  for (int i = 0; i < inst.n(); ++i)
    for (int d : a.desired[i].elements()) out.push_back({inst.side_info(i), d, i});
  return out;
}

/// Acyclic induced subgraphs of the demand digraph, computed over message sets.
///
/// A set M of distinct desired messages is acyclic iff it can be emptied by
/// repeatedly removing a sink: a message d ∈ M with some unicast user desiring d
/// whose side information misses M. avail_[M] holds those d for every M, kept
/// in sync under add/remove through per-(M, d) counters.
class AcyclicSubsetDp {
 public:
  explicit AcyclicSubsetDp(int m)
      : m_(checked_size(m)),
        full_(static_cast<std::uint32_t>(MessageSet::full(m_).bits())),
        count_((std::size_t{1} << m_) * m_, 0),
        avail_(std::size_t{1} << m_, 0),
        peel_(std::size_t{1} << m_, 0) {}

  static constexpr int kMaxDpMessages = 24;

  int m() const { return m_; }

  void add(MessageSet side, int desired) { update(side, desired, +1); }
  void remove(MessageSet side, int desired) { update(side, desired, -1); }

  // Size of the largest acyclic set; its mask goes to *mask when given.
  int max_size(std::uint32_t* mask = nullptr) const {
    int best = 0;
    std::uint32_t arg = 0;
    peel_[0] = 1;
    for (std::uint32_t M = 1; M <= full_; ++M) {
      peel_[M] = peelable(M);
      if (peel_[M] && std::popcount(M) > best) {
        best = std::popcount(M);
        arg = M;
      }
    }
    if (mask) *mask = arg;
    return best;
  }

  // True iff some acyclic set has at least k messages.
  bool reaches(int k) const {
    if (k <= 0) return true;
    peel_[0] = 1;
    for (std::uint32_t M = 1; M <= full_; ++M) {
      peel_[M] = peelable(M);
      if (peel_[M] && std::popcount(M) >= k) return true;
    }
    return false;
  }

  // Sink-removal order of an acyclic set M (after max_size/reaches filled peel_).
  std::vector<int> removal_order(std::uint32_t M) const {
    std::vector<int> order;
    while (M) {
      std::uint32_t cand = avail_[M] & M;
      int pick = -1;
      while (cand) {
        const int d = std::countr_zero(cand);
        if (peel_[M ^ (1u << d)]) {
          pick = d;
          break;
        }
        cand &= cand - 1;
      }
      if (pick < 0) throw std::logic_error("removal_order called on a cyclic set");
      order.push_back(pick);
      M ^= 1u << pick;
    }
    return order;
  }

  // Messages that are removable sinks of M.
  std::uint32_t sinks(std::uint32_t M) const { return avail_[M] & M; }

 private:
  static int checked_size(int m) {
    if (m < 1) throw PreconditionError("subset DP needs at least one message");
    if (m > kMaxDpMessages)
      throw SearchSpaceTooLarge("message subsets", (BigCount(1) << m).str(),
                                (BigCount(1) << kMaxDpMessages).str());
    return m;
  }

  bool peelable(std::uint32_t M) const {
    std::uint32_t cand = avail_[M] & M;
    while (cand) {
      const int d = std::countr_zero(cand);
      if (peel_[M ^ (1u << d)]) return true;
      cand &= cand - 1;
    }
    return false;
  }

  void update(MessageSet side, int d, int delta) {
    const std::uint32_t bit = 1u << d;
    const std::uint32_t comp = full_ & ~side.bits() & ~bit;
    for (std::uint32_t sub = comp;; sub = (sub - 1) & comp) {
      const std::uint32_t M = sub | bit;
      auto& c = count_[static_cast<std::size_t>(M) * m_ + d];
      c += delta;
      if (c) avail_[M] |= bit;
      else avail_[M] &= ~bit;
      if (sub == 0) break;
    }
  }

  int m_;
  std::uint32_t full_;
  std::vector<std::int32_t> count_;
  std::vector<std::uint32_t> avail_;
  mutable std::vector<std::uint8_t> peel_;
};

struct MaisResult {
  int size = 0;
  // Witness unicast users in chain order: user k's side information misses the
  // desired messages of every later user.
  std::vector<UnicastUser> chain;
};

inline void check_mais_size(const Instance& inst, const Caps& caps) {
  if (inst.m() > caps.mais_messages)
    throw SearchSpaceTooLarge("MAIS message subsets", "2^" + std::to_string(inst.m()),
                              "2^" + std::to_string(caps.mais_messages));
}

/// Maximum acyclic induced subgraph over unicast users with distinct desired
/// messages, for a fixed desired assignment.
inline MaisResult mais(const Instance& inst, const DesiredAssignment& a, const Caps& caps = {}) {
  if (auto why = assignment_violation(inst, a); !why.empty()) throw PreconditionError(why);
  check_mais_size(inst, caps);
  const auto users = unicast_expansion(inst, a);
  AcyclicSubsetDp dp(inst.m());
  for (const auto& u : users) dp.add(u.side, u.desired);
  std::uint32_t mask = 0;
  MaisResult res;
  res.size = dp.max_size(&mask);
  std::uint32_t rest = mask;
  for (int d : dp.removal_order(mask)) {
    for (const auto& u : users) {
      if (u.desired == d && (u.side.bits() & rest) == 0) {
        res.chain.push_back(u);
        break;
      }
    }
    rest &= ~(1u << d);
  }
  return res;
}

struct MinMaisResult {
  int value = 0;
  DesiredAssignment witness;
  std::uint64_t explored = 0;  // assignments (exhaustive) or search nodes (branch and bound)
};

/// min over every desired assignment of the MAIS size, by full enumeration.
/// `jobs` splits the assignment index range; the witness is the first minimizer
/// in enumeration order regardless of the split.
inline MinMaisResult min_mais_lower_bound(const Instance& inst, const Caps& caps = {}, int jobs = 1) {
  check_mais_size(inst, caps);
  const auto total = AssignmentStream(inst, caps.assignments).total();
  if (total == 0) throw PreconditionError("instance has a user with no admissible desired set");
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::min<std::uint64_t>(total, 64))));

  struct Local {
    int value = kMaxMessages + 1;
    std::uint64_t index = 0;
    DesiredAssignment witness;
  };
  std::vector<Local> locals(jobs);
  // A worker stops once its own range hits the trivial floor t; ranges are
  // merged by index afterwards so the witness does not depend on `jobs`.
  const int floor = inst.n() > 0 ? inst.t() : 0;

  auto work = [&](int j) {
    const std::uint64_t lo = total * j / jobs;
    const std::uint64_t hi = total * (j + 1) / jobs;
    AssignmentStream stream(inst, caps.assignments);
    stream.seek(lo);
    AcyclicSubsetDp dp(inst.m());
    std::vector<MessageSet> applied(inst.n());
    bool first = true;
    for (std::uint64_t k = lo; k < hi && stream.next(); ++k) {
      const auto& cur = stream.current();
      const int from = first ? 0 : stream.first_changed();
      for (int u = from; u < inst.n(); ++u) {
        if (!first) {
          if (applied[u] == cur.desired[u]) continue;
          for (int d : applied[u].elements()) dp.remove(inst.side_info(u), d);
        }
        for (int d : cur.desired[u].elements()) dp.add(inst.side_info(u), d);
        applied[u] = cur.desired[u];
      }
      first = false;
      auto& loc = locals[j];
      if (!dp.reaches(loc.value)) {
        loc.value = dp.max_size();
        loc.index = k;
        loc.witness = cur;
        if (loc.value <= floor) break;
      }
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (auto& th : pool) th.join();
  }
  MinMaisResult res;
  res.value = kMaxMessages + 1;
  for (const auto& loc : locals) {
    if (loc.value < res.value) {
      res.value = loc.value;
      res.witness = loc.witness;
    }
  }
  res.explored = total;
  return res;
}

// True iff every relabeling of the messages permutes the users among themselves:
// distinct side-information sets and, per size present, all C(m, s) of them.
inline bool permutation_closed(const Instance& inst) {
  std::vector<std::uint32_t> seen;
  std::vector<int> per_size(inst.m() + 1, 0);
  for (auto a : inst.users()) {
    seen.push_back(a.bits());
    ++per_size[a.size()];
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  for (int k = 0; k <= inst.m(); ++k)
    if (per_size[k] != 0 && per_size[k] != binomial(inst.m(), k)) return false;
  return true;
}

/// Same minimum as min_mais_lower_bound, found by depth-first search over
/// partial assignments. MAIS never decreases when users gain a desired set, so a
/// partial assignment whose MAIS already reaches the incumbent is pruned; options
/// that would do so are filtered per user and the user with the fewest surviving
/// options, counted up to the symmetry below, is branched on next. Throws
/// SearchOverflow past caps.search_nodes.
///
/// When the user list is closed under relabeling the messages (complete-S), any
/// relabeling of messages not yet mentioned by the partial assignment maps the
/// search state to itself, so a branching user only tries options whose untouched
/// part is the smallest untouched messages outside its side information.
inline MinMaisResult min_mais_search(const Instance& inst, const Caps& caps = {},
                                     const std::optional<DesiredAssignment>& incumbent = std::nullopt) {
  check_mais_size(inst, caps);
  const int n = inst.n();
  MinMaisResult res;
  if (n == 0) return res;

  std::vector<std::vector<MessageSet>> options(n);
  for (int u = 0; u < n; ++u) {
    options[u] = desired_options(inst, u);
    if (options[u].empty()) throw PreconditionError("user " + std::to_string(u + 1) + " has no admissible desired set");
  }
  res.value = inst.m() + 1;  // MAIS never exceeds m
  if (incumbent) {
    res.value = mais(inst, *incumbent, caps).size;
    res.witness = *incumbent;
  }
  const int floor = inst.t();

  AcyclicSubsetDp dp(inst.m());
  std::vector<int> choice(n, -1);
  auto apply = [&](int u, int o, bool on) {
    for (int d : options[u][o].elements()) {
      if (on) dp.add(inst.side_info(u), d);
      else dp.remove(inst.side_info(u), d);
    }
  };

  using Domains = std::vector<std::vector<std::uint8_t>>;
  Domains root(n);
  for (int u = 0; u < n; ++u)
    for (int o = 0; o < static_cast<int>(options[u].size()); ++o) root[u].push_back(static_cast<std::uint8_t>(o));

  std::uint64_t nodes = 0;
  const bool symmetric = permutation_closed(inst);
  auto dfs = [&](auto&& self, const Domains& dom, int assigned, MessageSet touched) -> void {
    if (res.value <= floor) return;
    if (++nodes > caps.search_nodes)
      throw SearchOverflow("min-MAIS search exceeded " + std::to_string(caps.search_nodes) + " nodes");
    if (dp.reaches(res.value)) return;
    if (assigned == n) {
      res.value = dp.max_size();
      res.witness.desired.resize(n);
      for (int u = 0; u < n; ++u) res.witness.desired[u] = options[u][choice[u]];
      return;
    }
    auto canonical = [&](int u, int o) {
      if (!symmetric) return true;
      const MessageSet fresh = inst.messages() - touched - inst.side_info(u);
      const MessageSet in_fresh = options[u][o] & fresh;
      return in_fresh == fresh.smallest(in_fresh.size());
    };
    Domains next = dom;
    int pick = -1;
    std::size_t pick_size = SIZE_MAX;
    for (int u = 0; u < n; ++u) {
      if (choice[u] >= 0) continue;
      auto& d = next[u];
      std::size_t keep = 0, distinct = 0;
      for (std::size_t k = 0; k < d.size(); ++k) {
        apply(u, d[k], true);
        const bool dead = dp.reaches(res.value);
        apply(u, d[k], false);
        if (!dead) {
          distinct += canonical(u, d[k]);
          d[keep++] = d[k];
        }
      }
      d.resize(keep);
      if (keep == 0) return;
      if (distinct < pick_size) {
        pick_size = distinct;
        pick = u;
      }
    }
    const auto branch = next[pick];
    const MessageSet side = inst.side_info(pick);
    for (auto o : branch) {
      if (!canonical(pick, o)) continue;
      choice[pick] = o;
      apply(pick, o, true);
      self(self, next, assigned + 1, touched | side | options[pick][o]);
      apply(pick, o, false);
      choice[pick] = -1;
      if (res.value <= floor) break;
    }
  };
  dfs(dfs, root, 0, MessageSet{});
  if (res.value > inst.m()) throw std::logic_error("min-MAIS search found no assignment");
  res.explored = nodes;
  return res;
}

/// Σ_i |D_i \ ∪_{j<i} (A_j ∪ D_j)| along `ordering` (distinct user indices).
inline int chain_bound(const Instance& inst, const DesiredAssignment& a, const std::vector<int>& ordering) {
  MessageSet seen;
  int total = 0;
  for (int u : ordering) {
    if (u < 0 || u >= inst.n()) throw std::out_of_range("chain ordering references a missing user");
    total += (a.desired[u] - seen).size();
    seen |= inst.side_info(u) | a.desired[u];
  }
  return total;
}

/// The layer-by-layer chain: start at the lowest layer, then for each higher size
/// s' in the instance pick the user whose side information is the previous
/// user's A ∪ D padded with the smallest unused messages (when |A ∪ D| <= s'),
/// or A plus the smallest desired messages (otherwise). Stops at the first
/// missing target user.
inline std::vector<int> layered_chain_ordering(const Instance& inst, const DesiredAssignment& a) {
  std::map<std::uint32_t, int> by_side;
  std::vector<int> sizes;
  for (int u = 0; u < inst.n(); ++u) {
    by_side.emplace(inst.side_info(u).bits(), u);
    sizes.push_back(inst.side_info(u).size());
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::vector<int> order;
  if (sizes.empty()) return order;

  // First user of the lowest layer.
  int cur = -1;
  for (int u = 0; u < inst.n(); ++u)
    if (inst.side_info(u).size() == sizes.front()) {
      cur = u;
      break;
    }
  order.push_back(cur);
  for (std::size_t li = 1; li < sizes.size(); ++li) {
    const int target = sizes[li];
    const MessageSet side = inst.side_info(cur);
    const MessageSet known = side | a.desired[cur];
    MessageSet want;
    if (known.size() <= target) {
      want = known | (inst.messages() - known).smallest(target - known.size());
    } else {
      want = side | a.desired[cur].smallest(target - side.size());
    }
    auto it = by_side.find(want.bits());
    if (it == by_side.end()) break;
    cur = it->second;
    order.push_back(cur);
  }
  return order;
}

enum class ChainMode { Auto, Exact, Heuristic };

struct ChainResult {
  int value = 0;
  std::vector<int> ordering;
  bool exact = false;
};

/// max over orderings of chain_bound. Exact mode runs a DP over user subsets (the
/// bound of an ordering depends on its prefix only through the prefix set);
/// heuristic mode extends chains greedily by largest novelty.
inline ChainResult best_chain_bound(const Instance& inst, const DesiredAssignment& a, ChainMode mode = ChainMode::Auto,
                                    const Caps& caps = {}) {
  if (auto why = assignment_violation(inst, a); !why.empty()) throw PreconditionError(why);
  const int n = inst.n();
  ChainResult res;
  if (n == 0) {
    res.exact = true;
    return res;
  }
  constexpr int kExactHardLimit = 22;
  const bool exact = mode == ChainMode::Exact ? n <= kExactHardLimit
                     : mode == ChainMode::Auto ? n <= caps.exact_chain_users
                                               : false;
  if (mode == ChainMode::Exact && !exact)
    throw SearchSpaceTooLarge("ordering subsets", "2^" + std::to_string(n), "2^" + std::to_string(kExactHardLimit));

  std::vector<std::uint32_t> known(n), want(n);
  for (int u = 0; u < n; ++u) {
    known[u] = (inst.side_info(u) | a.desired[u]).bits();
    want[u] = a.desired[u].bits();
  }

  if (exact) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::uint32_t> uni(size, 0);
    std::vector<std::int16_t> best(size, 0);
    std::vector<std::int8_t> last(size, -1);
    std::size_t arg = 0;
    for (std::size_t T = 1; T < size; ++T) {
      const int low = std::countr_zero(T);
      uni[T] = uni[T & (T - 1)] | known[low];
      for (std::size_t rest = T; rest; rest &= rest - 1) {
        const int u = std::countr_zero(rest);
        const std::size_t prev = T & ~(std::size_t{1} << u);
        const int v = best[prev] + std::popcount(want[u] & ~uni[prev]);
        if (last[T] < 0 || v > best[T]) {
          best[T] = static_cast<std::int16_t>(v);
          last[T] = static_cast<std::int8_t>(u);
        }
      }
      if (best[T] > best[arg]) arg = T;
    }
    res.value = best[arg];
    for (std::size_t T = arg; T; T &= ~(std::size_t{1} << last[T])) res.ordering.push_back(last[T]);
    std::reverse(res.ordering.begin(), res.ordering.end());
    res.exact = true;
    return res;
  }

  auto consider = [&](std::vector<int> order) {
    const int v = chain_bound(inst, a, order);
    if (v > res.value || res.ordering.empty()) {
      res.value = v;
      res.ordering = std::move(order);
    }
  };
  for (int start = 0; start < n; ++start) {
    std::vector<int> order{start};
    std::vector<bool> used(n, false);
    used[start] = true;
    std::uint32_t seen = known[start];
    while (true) {
      int pick = -1, pick_gain = 0, pick_noise = 0;
      for (int u = 0; u < n; ++u) {
        if (used[u]) continue;
        const int gain = std::popcount(want[u] & ~seen);
        const int noise = std::popcount(known[u] & ~seen);
        if (gain > pick_gain || (gain == pick_gain && gain > 0 && noise < pick_noise)) {
          pick = u;
          pick_gain = gain;
          pick_noise = noise;
        }
      }
      if (pick < 0) break;
      used[pick] = true;
      order.push_back(pick);
      seen |= known[pick];
    }
    consider(std::move(order));
  }
  if (auto layered = layered_chain_ordering(inst, a); !layered.empty()) consider(std::move(layered));
  res.exact = false;
  return res;
}

enum class ClosedFormTag { Prop7, Thm2, Thm1, Prop3, Prop4, Prop5, TableI };

inline const char* to_string(ClosedFormTag t) {
  switch (t) {
    case ClosedFormTag::Prop7: return "Prop7";
    case ClosedFormTag::Thm2: return "Thm2";
    case ClosedFormTag::Thm1: return "Thm1";
    case ClosedFormTag::Prop3: return "Prop3";
    case ClosedFormTag::Prop4: return "Prop4";
    case ClosedFormTag::Prop5: return "Prop5";
    case ClosedFormTag::TableI: return "TableI";
  }
  return "?";
}

struct ClosedForm {
  int value;
  ClosedFormTag tag;
  bool operator==(const ClosedForm&) const = default;
};

struct TableRow {
  int m;
  std::vector<int> S;
  std::vector<int> ts;
  int base;      // value is base, or t + base when plus_t
  bool plus_t;
  int value(int t) const { return plus_t ? t + base : base; }
};

// Optimal lengths listed for the small instances outside the general results,
// one entry per (m, S) with the t values it covers.
inline const std::vector<TableRow>& table_one() {
  static const std::vector<TableRow> rows = {
      {4, {0, 2}, {1, 2}, 2, true},    {4, {1, 3}, {1}, 3, false},
      {5, {0, 3}, {1, 2}, 2, true},    {5, {1, 4}, {1}, 3, false},
      {5, {1, 3}, {1, 2}, 4, false},   {5, {0, 1, 3}, {1, 2}, 4, false},
      {5, {1, 3, 4}, {1}, 4, false},   {5, {0, 2, 3}, {1, 2}, 4, false},
      {5, {0, 2, 4}, {1}, 4, false},   {5, {1, 2, 4}, {1}, 4, false},
  };
  return rows;
}

inline std::optional<int> table_one_lookup(int m, int t, const SizeProfile& S) {
  for (const auto& row : table_one())
    if (row.m == m && row.S == S.sizes() && std::find(row.ts.begin(), row.ts.end(), t) != row.ts.end())
      return row.value(t);
  return std::nullopt;
}

inline int floor_half(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }
inline int ceil_half(int x) { return -floor_half(-x); }

// S == [0, m-t] minus a non-empty run [a, b] with 0 < a <= b < m-t.
inline bool complement_consecutive(int m, int t, const SizeProfile& S) {
  const int top = m - t;
  if (!S.contains(0) || !S.contains(top)) return false;
  std::vector<int> missing;
  for (int s = 0; s <= top; ++s)
    if (!S.contains(s)) missing.push_back(s);
  if (missing.empty()) return false;
  return missing.back() - missing.front() + 1 == static_cast<int>(missing.size());
}

/// Known closed-form optimal length for complete-S PICOD(t), when one applies.
/// Checked in order: |S| = 1, consecutive S, complement-consecutive S, s_max below
/// the middle layer, s_min above it, a full band around it, the small-m table.
inline std::optional<ClosedForm> closed_form_length(int m, int t, const SizeProfile& S) {
  if (S.empty() || m < 1 || t < 1 || S.min() < 0 || S.max() > m - t) return std::nullopt;
  const int smin = S.min(), smax = S.max();
  if (S.size() == 1) return ClosedForm{std::min(smin + t, m - smin), ClosedFormTag::Prop7};
  if (S.consecutive()) return ClosedForm{std::min(smax + t, m - smin), ClosedFormTag::Thm2};
  if (complement_consecutive(m, t, S))
    return ClosedForm{std::min(m, S.size() + 2 * t - 2), ClosedFormTag::Thm1};
  const int lo = floor_half(m - t), hi = ceil_half(m - t);
  if (smax <= lo) return ClosedForm{smax + t, ClosedFormTag::Prop3};
  if (smin >= hi) return ClosedForm{m - smin, ClosedFormTag::Prop4};
  const int delta = std::min(smax - hi, lo - smin);
  if (delta >= 0) {
    bool band = true;
    for (int s = lo - delta; s <= hi + delta; ++s) band = band && S.contains(s);
    if (band) return ClosedForm{std::min(smax + t, m - smin), ClosedFormTag::Prop5};
  }
  if (auto v = table_one_lookup(m, t, S)) return ClosedForm{*v, ClosedFormTag::TableI};
  return std::nullopt;
}

enum class LowerBoundSource { MinMaisExhaustive, MinMaisSearch, ChainOnWitness };

inline const char* to_string(LowerBoundSource s) {
  switch (s) {
    case LowerBoundSource::MinMaisExhaustive: return "min_mais_exhaustive";
    case LowerBoundSource::MinMaisSearch: return "min_mais_search";
    case LowerBoundSource::ChainOnWitness: return "chain_on_witness";
  }
  return "?";
}

struct BoundReport {
  int m = 0, t = 0;
  SizeProfile S;
  int lower_bound = 0;
  LowerBoundSource source = LowerBoundSource::ChainOnWitness;
  // False when the lower bound holds only for codes inducing the witness assignment.
  bool certified = false;
  int achieved = 0;
  PartitionPlan plan;
  std::optional<LinearCode> witness_code;
  std::optional<DesiredAssignment> witness_assignment;
  std::optional<ClosedForm> closed_form;
  bool tight = false;
  std::string note;
};

struct ReportOptions {
  std::optional<PrimeField> field;
  Caps caps;
  ChainMode chain_mode = ChainMode::Auto;
  int jobs = 1;
};

/// Ties the partition scheme (verified), the min-MAIS lower bound and the closed
/// form together for complete-S PICOD(t).
inline BoundReport full_report(int m, int t, const SizeProfile& S, const ReportOptions& opt = {}) {
  const Instance inst = build_complete_s(m, t, S, opt.caps);
  BoundReport rep;
  rep.m = m;
  rep.t = t;
  rep.S = S;
  rep.plan = optimal_partition(m, t, S);
  const PrimeField field = opt.field ? *opt.field : default_field(m, rep.plan);
  LinearCode code = build_partition_scheme(m, t, rep.plan, field);
  const auto check = is_valid(code, inst);
  if (!check.valid) throw std::logic_error("partition scheme failed verification");
  rep.achieved = code.length();
  rep.closed_form = closed_form_length(m, t, S);
  const DesiredAssignment induced = induced_assignment(code, inst);

  bool done = false;
  if (count_assignments(inst) <= opt.caps.assignments && inst.m() <= opt.caps.mais_messages) {
    auto r = min_mais_lower_bound(inst, opt.caps, opt.jobs);
    rep.lower_bound = r.value;
    rep.witness_assignment = r.witness;
    rep.source = LowerBoundSource::MinMaisExhaustive;
    rep.certified = true;
    done = true;
  } else if (inst.m() <= opt.caps.mais_messages) {
    try {
      auto r = min_mais_search(inst, opt.caps, induced);
      rep.lower_bound = r.value;
      rep.witness_assignment = r.witness;
      rep.source = LowerBoundSource::MinMaisSearch;
      rep.certified = true;
      done = true;
    } catch (const SearchOverflow& e) {
      rep.note = e.what();
    }
  }
  if (!done) {
    auto chain = best_chain_bound(inst, induced, opt.chain_mode, opt.caps);
    rep.lower_bound = chain.value;
    rep.witness_assignment = induced;
    rep.source = LowerBoundSource::ChainOnWitness;
    rep.certified = false;
  }
  rep.witness_code = std::move(code);
  rep.tight = rep.certified && rep.lower_bound == rep.achieved;
  return rep;
}

}  // namespace picod
