#pragma once

#include <cstdint>

namespace picod {

// Configurable limits for every exhaustive or exponential routine. Defaults are
// sized for desktop runs; raise them deliberately.
struct Caps {
  std::uint64_t users = 1'000'000;          // complete-S instance size
  std::uint64_t assignments = 10'000'000;   // desired-assignment enumeration
  std::uint64_t search_nodes = 50'000'000;  // branch-and-bound / exact-cover nodes
  std::uint64_t subspaces = 5'000'000;      // row spaces per code length
  int mais_messages = 20;                   // subset DP works over 2^m message sets
  int exact_chain_users = 12;               // exact decoding-chain DP over 2^n orders
};

}  // namespace picod
