#pragma once

#include <stdexcept>

namespace mdlbound {

// Bad input data or a computation that cannot proceed (empty sequence,
// symbol outside the alphabet, oracle guard exceeded).
class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed request: unknown model label, invalid option value.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace mdlbound
