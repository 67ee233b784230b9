#pragma once

#include <stdexcept>
#include <string>

namespace vsg {

/// Raised when an input violates a documented precondition
/// (bad subgroup quadruple, growth violation, zero polynomial, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails. Seeing one of these
/// means the library has a bug, not that the input was wrong.
class DefectError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace vsg
