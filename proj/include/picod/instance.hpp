#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "picod/caps.hpp"
#include "picod/errors.hpp"
#include "picod/message_set.hpp"

namespace picod {

using BigCount = boost::multiprecision::cpp_int;

inline BigCount binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigCount r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// A PICOD(t) instance: m messages, each user must decode t messages outside its
/// side-information set. Immutable after construction.
class Instance {
 public:
  Instance(int m, int t, std::vector<MessageSet> users) : m_(m), t_(t), users_(std::move(users)) {
    if (m < 1 || m > kMaxMessages)
      throw std::invalid_argument("m must be in [1, " + std::to_string(kMaxMessages) + "]");
    if (t < 1) throw std::invalid_argument("t must be positive");
    const MessageSet ground = MessageSet::full(m);
    for (std::size_t i = 0; i < users_.size(); ++i)
      if (!users_[i].subset_of(ground))
        throw std::invalid_argument("user " + std::to_string(i + 1) +
                                    " has a side-information index outside [1.." +
                                    std::to_string(m) + "]");
  }

  int m() const { return m_; }
  int t() const { return t_; }
  int n() const { return static_cast<int>(users_.size()); }
  const std::vector<MessageSet>& users() const { return users_; }
  MessageSet side_info(int user) const { return users_[user]; }
  MessageSet messages() const { return MessageSet::full(m_); }

  bool operator==(const Instance&) const = default;

 private:
  int m_;
  int t_;
  std::vector<MessageSet> users_;
};

/// The set S of side-information sizes in a complete-S instance, kept sorted
/// and duplicate-free.
class SizeProfile {
 public:
  SizeProfile() = default;
  explicit SizeProfile(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    std::sort(sizes_.begin(), sizes_.end());
    sizes_.erase(std::unique(sizes_.begin(), sizes_.end()), sizes_.end());
  }
  SizeProfile(std::initializer_list<int> sizes) : SizeProfile(std::vector<int>(sizes)) {}

  // [lo, hi]
  static SizeProfile range(int lo, int hi) {
    std::vector<int> v;
    for (int s = lo; s <= hi; ++s) v.push_back(s);
    return SizeProfile(std::move(v));
  }

  const std::vector<int>& sizes() const { return sizes_; }
  bool empty() const { return sizes_.empty(); }
  int size() const { return static_cast<int>(sizes_.size()); }
  int min() const { return sizes_.front(); }
  int max() const { return sizes_.back(); }
  bool contains(int s) const { return std::binary_search(sizes_.begin(), sizes_.end(), s); }
  bool consecutive() const { return !empty() && max() - min() + 1 == size(); }

  bool operator==(const SizeProfile&) const = default;

 private:
  std::vector<int> sizes_;
};

inline std::string to_string(const SizeProfile& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.sizes().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.sizes()[i]);
  }
  return out + "}";
}

// Throws PreconditionError unless S is non-empty and S ⊆ [0, m-t].
inline void check_profile(int m, int t, const SizeProfile& S) {
  if (m < 1) throw PreconditionError("m must be positive");
  if (t < 1) throw PreconditionError("t must be positive");
  if (S.empty()) throw PreconditionError("size profile S is empty");
  if (S.min() < 0 || S.max() > m - t)
    throw PreconditionError("size profile " + to_string(S) + " is not a subset of [0.." +
                            std::to_string(m - t) + "]");
}

/// Every s-subset of [m] for each s in S. Layers ascend in s; users inside a
/// layer are in lexicographic order.
inline Instance build_complete_s(int m, int t, const SizeProfile& S, const Caps& caps = {}) {
  check_profile(m, t, S);
  if (m > kMaxMessages) throw PreconditionError("m exceeds " + std::to_string(kMaxMessages));
  BigCount n = 0;
  for (int s : S.sizes()) n += binomial(m, s);
  if (n > caps.users)
    throw SearchSpaceTooLarge("complete-S user set", n.str(), std::to_string(caps.users));
  std::vector<MessageSet> users;
  users.reserve(static_cast<std::size_t>(n));
  for (int s : S.sizes()) {
    auto layer = k_subsets(MessageSet::full(m), s);
    users.insert(users.end(), layer.begin(), layer.end());
  }
  return Instance(m, t, std::move(users));
}

/// Per-user choice of exactly t desired messages.
struct DesiredAssignment {
  std::vector<MessageSet> desired;

  int n() const { return static_cast<int>(desired.size()); }
  bool operator==(const DesiredAssignment&) const = default;
};

// Empty string when valid, otherwise a description of the first problem.
inline std::string assignment_violation(const Instance& inst, const DesiredAssignment& a) {
  if (a.n() != inst.n())
    return "assignment has " + std::to_string(a.n()) + " users, instance has " +
           std::to_string(inst.n());
  for (int i = 0; i < inst.n(); ++i) {
    if (a.desired[i].size() != inst.t())
      return "user " + std::to_string(i + 1) + " desires " +
             std::to_string(a.desired[i].size()) + " messages, expected " +
             std::to_string(inst.t());
    if (!a.desired[i].disjoint(inst.side_info(i)))
      return "user " + std::to_string(i + 1) + " desires a message it already has";
    if (!a.desired[i].subset_of(inst.messages()))
      return "user " + std::to_string(i + 1) + " desires a message outside [1..m]";
  }
  return {};
}

struct InstanceViolation {
  int user;  // 0-based
  std::string reason;
};

/// First user violating |A_i| <= m - t, or nullopt.
inline std::optional<InstanceViolation> validate_instance(const Instance& inst) {
  for (int i = 0; i < inst.n(); ++i) {
    const int a = inst.side_info(i).size();
    if (a > inst.m() - inst.t())
      return InstanceViolation{i, "user " + std::to_string(i + 1) + " has |A| = " +
                                      std::to_string(a) + " > m - t = " +
                                      std::to_string(inst.m() - inst.t())};
  }
  return std::nullopt;
}

// Options for one user: all t-subsets outside its side information, lexicographic.
inline std::vector<MessageSet> desired_options(const Instance& inst, int user) {
  return k_subsets(inst.messages() - inst.side_info(user), inst.t());
}

// Π_i C(m - |A_i|, t).
inline BigCount count_assignments(const Instance& inst) {
  BigCount c = 1;
  for (int i = 0; i < inst.n(); ++i) c *= binomial(inst.m() - inst.side_info(i).size(), inst.t());
  return c;
}

/// Single-pass stream over every DesiredAssignment. Mixed-radix odometer with user
/// 0 most significant, so the order is lexicographic per user.
class AssignmentStream {
 public:
  AssignmentStream(const Instance& inst, std::uint64_t cap) {
    const BigCount total = count_assignments(inst);
    if (total > cap)
      throw SearchSpaceTooLarge("desired-assignment space", total.str(), std::to_string(cap));
    total_ = static_cast<std::uint64_t>(total);
    options_.reserve(inst.n());
    for (int i = 0; i < inst.n(); ++i) options_.push_back(desired_options(inst, i));
    digits_.assign(inst.n(), 0);
    current_.desired.resize(inst.n());
  }

  std::uint64_t total() const { return total_; }
  // Index of the assignment returned by the last next().
  std::uint64_t index() const { return index_ - 1; }
  const DesiredAssignment& current() const { return current_; }
  const std::vector<std::vector<MessageSet>>& options() const { return options_; }
  // Users whose choice changed in the last next(); all users on the first call.
  int first_changed() const { return first_changed_; }

  // Positions the stream so the next call to next() yields assignment `start`.
  void seek(std::uint64_t start) {
    index_ = start;
    std::uint64_t rest = start;
    for (int i = static_cast<int>(digits_.size()) - 1; i >= 0; --i) {
      const auto radix = options_[i].size();
      digits_[i] = radix == 0 ? 0 : static_cast<int>(rest % radix);
      rest = radix == 0 ? 0 : rest / radix;
    }
    primed_ = false;
  }

  bool next() {
    if (index_ >= total_) return false;
    if (!primed_) {
      for (std::size_t i = 0; i < digits_.size(); ++i) current_.desired[i] = options_[i][digits_[i]];
      primed_ = true;
      first_changed_ = 0;
      ++index_;
      return true;
    }
    int p = static_cast<int>(digits_.size()) - 1;
    while (p >= 0 && digits_[p] + 1 == static_cast<int>(options_[p].size())) {
      digits_[p] = 0;
      current_.desired[p] = options_[p][0];
      --p;
    }
    if (p < 0) return false;  // unreachable while index_ < total_
    ++digits_[p];
    current_.desired[p] = options_[p][digits_[p]];
    first_changed_ = p;
    ++index_;
    return true;
  }

 private:
  std::vector<std::vector<MessageSet>> options_;
  std::vector<int> digits_;
  DesiredAssignment current_;
  std::uint64_t total_ = 0;
  std::uint64_t index_ = 0;
  int first_changed_ = 0;
  bool primed_ = false;
};

inline AssignmentStream enumerate_assignments(const Instance& inst, const Caps& caps = {}) {
  return AssignmentStream(inst, caps.assignments);
}

// Sizes present among the users, or nullopt if `inst` is not exactly the
// complete-S instance for its own size profile (same order as build_complete_s).
inline std::optional<SizeProfile> complete_profile(const Instance& inst) {
  std::vector<int> sizes;
  for (auto a : inst.users()) sizes.push_back(a.size());
  SizeProfile S(sizes);
  if (S.empty() || S.max() > inst.m() - inst.t()) return std::nullopt;
  BigCount n = 0;
  for (int s : S.sizes()) n += binomial(inst.m(), s);
  if (n != inst.n()) return std::nullopt;
  if (build_complete_s(inst.m(), inst.t(), S) != inst) return std::nullopt;
  return S;
}

}  // namespace picod
