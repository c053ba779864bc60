#pragma once

#include <stdexcept>
#include <string>

namespace rrg {

// Invalid argument or malformed input data.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested computation is outside the feasible scope (enumeration too
// large, sample count too small, band undefined below d=16, ...).
struct scope_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejection sampling exhausted its attempt budget.
struct sampling_error : std::runtime_error {
    long long attempts;

    explicit sampling_error(long long n_attempts)
        : std::runtime_error("rejection sampling failed after " +
                             std::to_string(n_attempts) + " attempts"),
          attempts(n_attempts) {}
};

// Iterative numerical routine failed to converge.
struct numerical_error : std::runtime_error {
    double residual;

    numerical_error(const std::string& what, double res)
        : std::runtime_error(what), residual(res) {}
};

// Ratio with a zero denominator class.
struct undefined_ratio_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rrg
