#pragma once

#include <stdexcept>

namespace polya {

/* Raised when an operation would need more work than its budget allows.
 * Callers report "unfactored"/"undecided" instead of hanging. */
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A norm-equation search ran out of budget: neither "solvable" nor "no solution".
class Undecided : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

/// The field has the wrong signature for the request (e.g. units of Q(sqrt d), d < 0).
class SignatureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested witness does not exist for this input (e.g. norm -1 unit).
class Inapplicable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace polya
