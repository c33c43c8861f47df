#pragma once

#include <stdexcept>
#include <string>

namespace wmw {

// Invalid distribution parameters, probabilities outside their domain,
// malformed designs.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical routine could not meet its accuracy contract. Carries the
// error bound that was actually achieved.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved_bound)
        : std::runtime_error(what), achieved_bound_(achieved_bound) {}

    double achieved_bound() const noexcept { return achieved_bound_; }

private:
    double achieved_bound_;
};

// Requested object exceeds a configured size limit.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wmw
