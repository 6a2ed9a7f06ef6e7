#pragma once

#include <stdexcept>
#include <string>

namespace tate {

/// Malformed or out-of-range user input (bad file, unknown name, unmet precondition).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A caller violated an operation's contract, e.g. passing a complex that fails validation.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An internal invariant of the engine failed. Valid inputs never raise this.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace tate
