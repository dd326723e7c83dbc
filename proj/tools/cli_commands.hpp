#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "picod/json.hpp"
#include "picod/picod.hpp"

namespace picod::cli {

using nlohmann::json;
namespace pj = picod::json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kError = 2 };

struct RunConfig {
  std::optional<int> m, t;
  std::optional<std::string> S;
  std::optional<std::string> instance_path;
  std::optional<std::uint32_t> field;
  Caps caps;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool trace = false;
  ChainMode chain_mode = ChainMode::Auto;
};

struct CommandResult {
  json out;
  int code = kOk;
};

// "1,3", "1-3", "0,2-4"; whitespace ignored.
inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string cleaned;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) cleaned += c;
  std::stringstream ss(cleaned);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw PreconditionError("empty item in list '" + text + "'");
    const auto dash = item.find('-', 1);
    try {
      std::size_t used = 0;
      if (dash == std::string::npos) {
        out.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } else {
        const int lo = std::stoi(item.substr(0, dash), &used);
        if (used != dash) throw std::invalid_argument(item);
        const std::string rest = item.substr(dash + 1);
        const int hi = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(item);
        if (hi < lo) throw PreconditionError("descending range '" + item + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const PreconditionError&) {
      throw;
    } catch (const std::exception&) {
      throw PreconditionError("cannot parse '" + item + "' as an integer or range");
    }
  }
  if (out.empty()) throw PreconditionError("empty list");
  return out;
}

inline SizeProfile parse_profile(const std::string& text) { return SizeProfile(parse_int_list(text)); }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw PreconditionError("invalid JSON in " + path + ": " + e.what());
  }
}

struct LoadedInstance {
  Instance inst;
  std::optional<SizeProfile> S;
};

// From --instance when given, otherwise generated from -m -t -S.
inline LoadedInstance load_instance(const RunConfig& cfg) {
  if (cfg.instance_path) {
    Instance inst = pj::instance_from_json(read_json_file(*cfg.instance_path));
    if (auto v = validate_instance(inst)) throw PreconditionError(v->reason);
    return {inst, complete_profile(inst)};
  }
  if (!cfg.m || !cfg.t || !cfg.S) throw PreconditionError("give --instance or all of -m, -t, -S");
  const SizeProfile S = parse_profile(*cfg.S);
  return {build_complete_s(*cfg.m, *cfg.t, S, cfg.caps), S};
}

inline CommandResult cmd_gen(const RunConfig& cfg) {
  if (!cfg.m || !cfg.t || !cfg.S) throw PreconditionError("gen needs -m, -t and -S");
  const auto inst = build_complete_s(*cfg.m, *cfg.t, parse_profile(*cfg.S), cfg.caps);
  return {pj::to_json(inst), kOk};
}

// Smallest prime q whose field admits a valid code of the achieved length, scanning
// primes up to the scheme's own field. Skipped (nullopt) when a subspace count
// exceeds the cap.
inline std::optional<std::uint32_t> smallest_achieving_field(const Instance& inst, const BoundReport& rep,
                                                             const Caps& caps) {
  const std::uint32_t top = rep.witness_code ? rep.witness_code->field().q() : 2;
  for (std::uint32_t q = 2; q <= top; q = next_prime(q + 1)) {
    if (q == top) return q;
    const PrimeField f(q);
    if (gaussian_binomial(inst.m(), rep.achieved, q) > caps.subspaces) return std::nullopt;
    SubspaceEnumerator it(inst.m(), rep.achieved, f);
    Matrix basis;
    while (it.next(basis))
      if (is_valid(LinearCode(f, inst.m(), basis), inst).valid) return q;
  }
  return top;
}

inline CommandResult cmd_report(const RunConfig& cfg) {
  const auto loaded = load_instance(cfg);
  if (!loaded.S) throw PreconditionError("report needs a complete-S instance (user list must match build_complete_s)");
  ReportOptions opt;
  if (cfg.field) opt.field = PrimeField(*cfg.field);
  opt.caps = cfg.caps;
  opt.chain_mode = cfg.chain_mode;
  opt.jobs = cfg.jobs;
  const auto rep = full_report(loaded.inst.m(), loaded.inst.t(), *loaded.S, opt);
  json out = pj::to_json(rep);
  const auto q = smallest_achieving_field(loaded.inst, rep, cfg.caps);
  out["smallest_field"] = q ? json(*q) : json(nullptr);
  return {out, kOk};
}

inline CommandResult cmd_verify(const RunConfig& cfg, const std::string& code_path) {
  const auto loaded = load_instance(cfg);
  const auto code = pj::code_from_json(read_json_file(code_path), loaded.inst.m());
  const auto rep = is_valid(code, loaded.inst);
  return {pj::to_json(rep), rep.valid ? kOk : kCheckFailed};
}

inline CommandResult cmd_hypergraph(const RunConfig& cfg, const std::string& sub,
                                    const std::optional<std::string>& order_text) {
  const auto loaded = load_instance(cfg);
  const Hypergraph h = network_topology(loaded.inst);
  if (sub == "topology") return {pj::to_json(h), kOk};
  if (sub == "one-factor") {
    const auto factor = has_one_factor(h, cfg.caps);
    json out = {{"found", factor.has_value()}};
    out["factor"] = factor ? pj::ints_plus_one(*factor) : json(nullptr);
    if (factor && loaded.inst.t() == 1) {
      const auto code = one_transmission_code(h, *factor, PrimeField(cfg.field.value_or(2)));
      out["code"] = pj::to_json(code);
      out["valid"] = is_valid(code, loaded.inst).valid;
    }
    return {out, kOk};
  }
  if (sub == "circular-arc") {
    std::vector<int> order(h.n);
    for (int i = 0; i < h.n; ++i) order[i] = i;
    if (order_text) {
      order = parse_int_list(*order_text);
      for (int& v : order) --v;
    }
    check_cyclic_order(h.n, order);
    if (!verify_circular_arc(h, order))
      return {{{"circular_arc", false}, {"order", pj::ints_plus_one(order)}}, kCheckFailed};
    const auto res = circular_arc_scheme(loaded.inst, order, PrimeField(cfg.field.value_or(2)), cfg.caps);
    const auto check = is_valid(res.code, loaded.inst);
    json out = {{"circular_arc", true},
                {"order", pj::ints_plus_one(order)},
                {"length", res.code.length()},
                {"code", pj::to_json(res.code)},
                {"valid", check.valid},
                {"witness", pj::to_json(res.witness)}};
    return {out, check.valid ? kOk : kCheckFailed};
  }
  throw PreconditionError("unknown hypergraph subcommand '" + sub + "'");
}

struct OracleArgs {
  int s_max = 4;
  int count = 10'000;
  int x_max = 8;
  int y_max = 8;
  std::optional<std::string> input_path;
  std::optional<std::string> family;  // "1;1,2;" for lemma3-witness
  std::optional<int> s;
};

// "1,2;2,3;" style list of 1-based sets; an empty item is the empty set.
inline std::vector<MessageSet> parse_family(const std::string& text, int ground) {
  std::vector<MessageSet> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ';')) {
    MessageSet b;
    bool blank = true;
    for (char c : item) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (!blank)
      for (int v : parse_int_list(item)) {
        if (v < 1 || v > ground) throw PreconditionError("family element " + std::to_string(v) + " out of range");
        b.insert(v - 1);
      }
    out.push_back(b);
  }
  if (!text.empty() && text.back() == ';') out.push_back(MessageSet{});
  return out;
}

// Exhaustive: any collection of blocks of size <= 2 over [3] with s = t = 1.
inline json critical_block_cover_search() {
  std::vector<MessageSet> candidates;
  for (int k = 1; k <= 2; ++k)
    for (auto b : k_subsets(MessageSet::full(3), k)) candidates.push_back(b);
  int passing = 0, total = 0;
  json first = nullptr;
  for (std::uint32_t mask = 0; mask < (1u << candidates.size()); ++mask) {
    BlockCover bc{3, 1, 1, {}};
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (mask >> i & 1) bc.blocks.push_back(candidates[i]);
    ++total;
    if (check_block_cover(bc).all()) {
      ++passing;
      if (first.is_null()) {
        first = json::array();
        for (auto b : bc.blocks) first.push_back(pj::set_to_json(b));
      }
    }
  }
  return {{"collections", total}, {"passing", passing}, {"first_passing", first}, {"pass", passing == 0}};
}

inline CommandResult cmd_oracle(const RunConfig& cfg, const std::string& sub, const OracleArgs& a) {
  if (sub == "lemma3-sweep") {
    json rows = json::array();
    bool ok = true;
    for (int s = 1; s <= a.s_max; ++s) {
      const auto r = lemma3_sweep(s);
      json row = {{"s", s}, {"families", r.families}, {"failures", r.failures}};
      if (r.first_failure) {
        json fam = json::array();
        for (auto b : *r.first_failure) fam.push_back(pj::set_to_json(b));
        row["first_failure"] = fam;
      }
      ok = ok && r.failures == 0;
      rows.push_back(row);
    }
    return {{{"sweep", rows}, {"pass", ok}}, ok ? kOk : kCheckFailed};
  }
  if (sub == "lemma4-random") {
    if (!cfg.seed) throw PreconditionError("lemma4-random needs --seed");
    std::mt19937_64 rng(*cfg.seed);
    int failures = 0;
    json first = nullptr;
    for (int k = 0; k < a.count; ++k) {
      const int x = 1 + static_cast<int>(rng() % a.x_max);
      const int y = 1 + static_cast<int>(rng() % a.y_max);
      std::vector<MessageSet> blocks;
      for (int i = 0; i < x; ++i) {
        const std::uint32_t bits = 1 + static_cast<std::uint32_t>(rng() % ((1u << y) - 1));
        blocks.emplace_back(bits);
      }
      try {
        const auto p = cross_lemma_pair(blocks, y);
        if (!blocks[p.i].contains(p.j) || static_cast<long>(p.c_j) * y < static_cast<long>(x) * p.block_size)
          throw std::logic_error("bad pair");
      } catch (const std::logic_error&) {
        ++failures;
        if (first.is_null()) {
          first = json::array();
          for (auto b : blocks) first.push_back(pj::set_to_json(b));
        }
      }
    }
    return {{{"families", a.count}, {"failures", failures}, {"first_failure", first}, {"seed", *cfg.seed},
             {"pass", failures == 0}},
            failures == 0 ? kOk : kCheckFailed};
  }
  if (sub == "block-cover") {
    if (!a.input_path) throw PreconditionError("block-cover needs --input");
    const auto bc = pj::block_cover_from_json(read_json_file(*a.input_path));
    const auto rep = check_block_cover(bc, cfg.caps);
    return {pj::to_json(rep), rep.all() ? kOk : kCheckFailed};
  }
  if (sub == "critical-block-cover") {
    auto out = critical_block_cover_search();
    return {out, out["pass"].get<bool>() ? kOk : kCheckFailed};
  }
  if (sub == "lemma3-witness") {
    if (!a.family || !a.s) throw PreconditionError("lemma3-witness needs --family and -s");
    const auto blocks = parse_family(*a.family, *a.s);
    const auto w = intersection_family_witness(blocks, *a.s);
    json out = pj::to_json(w, cfg.trace);
    out["intersection_size"] = intersection_size(blocks, w.P);
    return {out, kOk};
  }
  throw PreconditionError("unknown oracle subcommand '" + sub + "'");
}

// Top-level entries as "key: value" lines; nested values as indented JSON.
inline std::string pretty(const json& j) {
  if (!j.is_object()) return j.dump(2) + "\n";
  std::size_t width = 0;
  for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out += it.key() + std::string(width - it.key().size() + 2, ' ');
    const std::string v = it.value().dump();
    out += (v.size() <= 72 ? v : it.value().dump(2)) + "\n";
  }
  return out;
}

}  // namespace picod::cli
