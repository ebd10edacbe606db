#pragma once

#include <stdexcept>
#include <string>

namespace hyplatt {

// Bad input data or file contents (CLI exit code 3).
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated numeric precondition or contract (CLI exit code 4).
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hyplatt
