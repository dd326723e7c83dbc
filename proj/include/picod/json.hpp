#pragma once

// JSON (de)serialization. External formats use 1-based message, user and vertex
// indices; everything in the library is 0-based.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "picod/bounds.hpp"
#include "picod/hypergraph.hpp"
#include "picod/instance.hpp"
#include "picod/linear_code.hpp"
#include "picod/oracles.hpp"
#include "picod/verifier.hpp"

namespace picod::json {

using nlohmann::json;

inline json set_to_json(MessageSet s) {
  json out = json::array();
  for (int e : s.elements()) out.push_back(e + 1);
  return out;
}

inline MessageSet set_from_json(const json& j, int ground) {
  if (!j.is_array()) throw PreconditionError("expected an array of indices");
  MessageSet s;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw PreconditionError("index is not an integer");
    const int i = v.get<int>();
    if (i < 1 || i > ground)
      throw PreconditionError("index " + std::to_string(i) + " outside [1.." + std::to_string(ground) + "]");
    s.insert(i - 1);
  }
  return s;
}

inline json ints_plus_one(const std::vector<int>& v) {
  json out = json::array();
  for (int x : v) out.push_back(x + 1);
  return out;
}

inline std::vector<int> ints_minus_one(const json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array of indices");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw PreconditionError("index is not an integer");
    out.push_back(v.get<int>() - 1);
  }
  return out;
}

inline json to_json(const Instance& inst) {
  json users = json::array();
  for (auto a : inst.users()) users.push_back(set_to_json(a));
  return {{"m", inst.m()}, {"t", inst.t()}, {"users", users}};
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("t") || !j.contains("users"))
    throw PreconditionError("instance JSON needs m, t and users");
  const int m = j.at("m").get<int>();
  const int t = j.at("t").get<int>();
  if (m < 1 || m > kMaxMessages) throw PreconditionError("m out of range");
  std::vector<MessageSet> users;
  for (const auto& u : j.at("users")) users.push_back(set_from_json(u, m));
  return Instance(m, t, std::move(users));
}

inline json to_json(const LinearCode& code) {
  json rows = json::array();
  for (const auto& r : code.rows()) rows.push_back(r);
  return {{"q", code.field().q()}, {"rows", rows}};
}

// `m` fixes the column count when the code has no rows.
inline LinearCode code_from_json(const json& j, int m) {
  if (!j.is_object() || !j.contains("q") || !j.contains("rows")) throw PreconditionError("code JSON needs q and rows");
  const PrimeField f(j.at("q").get<std::uint32_t>());
  Matrix rows;
  for (const auto& r : j.at("rows")) {
    Row row;
    for (const auto& v : r) {
      const auto x = v.get<std::int64_t>();
      if (x < 0 || x >= static_cast<std::int64_t>(f.q())) throw PreconditionError("code entry not in [0, q)");
      row.push_back(static_cast<std::uint32_t>(x));
    }
    rows.push_back(std::move(row));
  }
  return LinearCode(f, m, std::move(rows));
}

inline json to_json(const DecodabilityReport& rep) {
  json users = json::array();
  for (std::size_t i = 0; i < rep.side_info.size(); ++i)
    users.push_back({{"A", set_to_json(rep.side_info[i])}, {"B", set_to_json(rep.decodable[i])}});
  return {{"valid", rep.valid}, {"per_user", users}};
}

inline json to_json(const DesiredAssignment& a) {
  json out = json::array();
  for (auto d : a.desired) out.push_back(set_to_json(d));
  return out;
}

inline DesiredAssignment assignment_from_json(const json& j, int m) {
  DesiredAssignment a;
  for (const auto& d : j) a.desired.push_back(set_from_json(d, m));
  return a;
}

inline json to_json(const PartitionPlan& plan) {
  json parts = json::array();
  for (const auto& p : plan.parts)
    parts.push_back({{"sizes", p.sizes}, {"strategy", to_string(p.strategy)}, {"cost", p.cost}});
  return {{"cost", plan.cost()}, {"parts", parts}};
}

inline json to_json(const ClosedForm& c) { return {{"value", c.value}, {"tag", to_string(c.tag)}}; }

inline json to_json(const BoundReport& r) {
  json out = {{"m", r.m},
              {"t", r.t},
              {"S", r.S.sizes()},
              {"lower_bound", r.lower_bound},
              {"lower_bound_source", to_string(r.source)},
              {"certified", r.certified},
              {"achieved", r.achieved},
              {"plan", to_json(r.plan)},
              {"tight", r.tight}};
  out["witness_code"] = r.witness_code ? to_json(*r.witness_code) : json(nullptr);
  out["witness_assignment"] = r.witness_assignment ? to_json(*r.witness_assignment) : json(nullptr);
  out["closed_form"] = r.closed_form ? to_json(*r.closed_form) : json(nullptr);
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

inline json to_json(const Hypergraph& h) {
  json edges = json::array();
  for (const auto& e : h.edges) edges.push_back(ints_plus_one(e));
  return {{"n", h.n}, {"edges", edges}};
}

inline Hypergraph hypergraph_from_json(const json& j) {
  Hypergraph h;
  h.n = j.at("n").get<int>();
  for (const auto& e : j.at("edges")) {
    auto v = ints_minus_one(e);
    std::sort(v.begin(), v.end());
    h.edges.push_back(std::move(v));
  }
  check_hypergraph(h);
  return h;
}

inline json to_json(const CircularArcWitness& w) {
  json gaps = json::array();
  for (const auto& g : w.gaps) gaps.push_back({{"positions", ints_plus_one(g.positions)}, {"edge", g.label + 1}});
  json out = {{"dropped", ints_plus_one(w.dropped)},
              {"first", ints_plus_one(w.first)},
              {"tie_notes", w.tie_notes},
              {"overlap_positions", ints_plus_one(w.overlap_positions)},
              {"gaps", gaps}};
  out["factor"] = w.factor ? ints_plus_one(*w.factor) : json(nullptr);
  return out;
}

inline json to_json(const BlockCoverReport& r) {
  json out = {{"P1", r.p1}, {"P2", r.p2}, {"P3", r.p3}, {"all", r.all()}};
  if (r.uncovered) out["P1_witness"] = set_to_json(*r.uncovered);
  if (r.bad_block) out["P2_witness"] = *r.bad_block + 1;
  if (r.bad_intersection) out["P3_witness"] = ints_plus_one(*r.bad_intersection);
  return out;
}

inline BlockCover block_cover_from_json(const json& j) {
  BlockCover bc;
  bc.m = j.at("m").get<int>();
  bc.s = j.at("s").get<int>();
  bc.t = j.at("t").get<int>();
  if (bc.m < 1 || bc.m > kMaxMessages) throw PreconditionError("block cover ground size out of range");
  for (const auto& b : j.at("blocks")) bc.blocks.push_back(set_from_json(b, bc.m));
  return bc;
}

inline json to_json(const CrossPair& p) {
  return {{"i", p.i + 1}, {"j", p.j + 1}, {"c_j", p.c_j}, {"block_size", p.block_size}};
}

inline json to_json(const Lemma3Witness& w, bool trace) {
  json out = {{"P", ints_plus_one(w.P)}, {"brute_force_found", w.brute_force_found}};
  if (trace) {
    json steps = json::array();
    for (const auto& s : w.trace) {
      json step = {{"ground", set_to_json(s.ground)}, {"family", ints_plus_one(s.family)}};
      if (s.empty_at) step["empty_block"] = *s.empty_at + 1;
      if (s.pivot) step["pivot"] = to_json(*s.pivot);
      steps.push_back(step);
    }
    out["trace"] = steps;
  }
  return out;
}

}  // namespace picod::json
