#pragma once

#include <stdexcept>
#include <string>

namespace vdck {

// Invalid user-supplied configuration (bad prime, malformed polynomial, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation ran out of certified series coefficients.
struct HorizonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation would exceed a configured size budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structural claim that should hold for the inputs failed computationally.
// This is a meaningful scientific outcome, kept distinct from tool errors.
struct FalsificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace vdck
