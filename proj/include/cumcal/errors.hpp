#pragma once

#include <stdexcept>
#include <string>

namespace cumcal {

// Bad input values or parameters. The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Filesystem failures. The CLI maps this to exit code 2.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace cumcal
