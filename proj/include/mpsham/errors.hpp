#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpsham {

/// A dense allocation would exceed the configured memory budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::size_t requested, std::size_t in_use, std::size_t budget)
      : std::runtime_error("memory budget exceeded: requested " +
                           std::to_string(requested) + " bytes with " +
                           std::to_string(in_use) + " in use, budget " +
                           std::to_string(budget)),
        requested_bytes(requested),
        in_use_bytes(in_use),
        budget_bytes(budget) {}

  std::size_t requested_bytes;
  std::size_t in_use_bytes;
  std::size_t budget_bytes;
};

/// An operation was called on inputs violating its stated precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mpsham
