#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ggc {

/// Malformed or inconsistent input (bad graph, bad group table, bad morphism).
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionFailed : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// An internal consistency check fired. Always a bug.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Exhaustive enumeration would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(std::string what, double cocycle_space, double cochain_space)
        : std::runtime_error(std::move(what)), cocycle_space_(cocycle_space),
          cochain_space_(cochain_space) {}

    /// Size of the product of the edge groups (as a double, it may overflow).
    double cocycle_space() const { return cocycle_space_; }
    /// Size of the product of the vertex groups.
    double cochain_space() const { return cochain_space_; }

  private:
    double cocycle_space_;
    double cochain_space_;
};

inline constexpr std::size_t kDefaultBudget = 10'000'000;

} // namespace ggc
