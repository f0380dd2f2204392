#pragma once

#include <stdexcept>
#include <string>

namespace nbv {

// Exit-code classes used by the CLI: validation 2, pole/precondition 3.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string pointer, const std::string& what)
        : std::runtime_error(what), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A named denominator factor vanished at the requested point.
class PoleError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class ArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace nbv
