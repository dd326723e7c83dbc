#pragma once

#include <stdexcept>
#include <string>

namespace picod {

// Raised when an exhaustive search would exceed a configured cap. `count` is the
// exact size of the search space in decimal (it may not fit in 64 bits).
class SearchSpaceTooLarge : public std::runtime_error {
 public:
  SearchSpaceTooLarge(const std::string& what_space, std::string count, std::string cap)
      : std::runtime_error("search space too large: " + what_space + " has " + count +
                           " elements, cap is " + cap),
        count_(std::move(count)) {}

  const std::string& count() const { return count_; }

 private:
  std::string count_;
};

// A bounded search ran out of nodes before reaching a verdict. Distinct from a
// negative answer.
class SearchOverflow : public std::runtime_error {
 public:
  explicit SearchOverflow(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace picod
