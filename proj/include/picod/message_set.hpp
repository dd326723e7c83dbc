#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace picod {

// Largest ground set a MessageSet can represent.
inline constexpr int kMaxMessages = 32;

/// A subset of the message indices {0, ..., kMaxMessages-1}, stored as a bit mask.
///
/// Indices are 0-based everywhere in the library; the JSON layer shifts them to
/// 1-based on the way in and out.
class MessageSet {
 public:
  constexpr MessageSet() = default;
  constexpr explicit MessageSet(std::uint32_t bits) : bits_(bits) {}
  MessageSet(std::initializer_list<int> indices) {
    for (int i : indices) insert(i);
  }

  static MessageSet from_indices(const std::vector<int>& indices) {
    MessageSet s;
    for (int i : indices) s.insert(i);
    return s;
  }

  // [0, m)
  static constexpr MessageSet full(int m) {
    return MessageSet(m >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << m) - 1));
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool subset_of(MessageSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool disjoint(MessageSet o) const { return (bits_ & o.bits_) == 0; }

  void insert(int i) {
    if (i < 0 || i >= kMaxMessages)
      throw std::out_of_range("message index " + std::to_string(i) + " out of range");
    bits_ |= std::uint32_t{1} << i;
  }
  void erase(int i) { bits_ &= ~(std::uint32_t{1} << i); }

  // Smallest element; undefined on the empty set.
  constexpr int min() const { return std::countr_zero(bits_); }
  // Largest element; undefined on the empty set.
  constexpr int max() const { return 31 - std::countl_zero(bits_); }

  // Elements in ascending order.
  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  // The k smallest elements.
  MessageSet smallest(int k) const {
    MessageSet out;
    for (std::uint32_t b = bits_; b != 0 && k > 0; b &= b - 1, --k)
      out.bits_ |= b & (~b + 1);
    return out;
  }

  constexpr MessageSet operator|(MessageSet o) const { return MessageSet(bits_ | o.bits_); }
  constexpr MessageSet operator&(MessageSet o) const { return MessageSet(bits_ & o.bits_); }
  // Set difference.
  constexpr MessageSet operator-(MessageSet o) const { return MessageSet(bits_ & ~o.bits_); }
  MessageSet& operator|=(MessageSet o) { bits_ |= o.bits_; return *this; }
  MessageSet& operator&=(MessageSet o) { bits_ &= o.bits_; return *this; }

  constexpr auto operator<=>(const MessageSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

// Lexicographic comparison of the sorted element sequences ({0,1} < {0,2} < {1,2}).
inline bool lex_less(MessageSet a, MessageSet b) {
  auto ea = a.elements();
  auto eb = b.elements();
  return ea < eb;
}

// All k-subsets of `ground`, in lexicographic order of their sorted element lists.
inline std::vector<MessageSet> k_subsets(MessageSet ground, int k) {
  std::vector<MessageSet> out;
  const auto elems = ground.elements();
  const int n = static_cast<int>(elems.size());
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    MessageSet s;
    for (int i : idx) s.insert(elems[i]);
    out.push_back(s);
    int p = k - 1;
    while (p >= 0 && idx[p] == n - k + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int i = p + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

inline std::string to_string(MessageSet s) {
  std::string out = "{";
  bool first = true;
  for (int e : s.elements()) {
    if (!first) out += ",";
    out += std::to_string(e + 1);
    first = false;
  }
  return out + "}";
}

}  // namespace picod
