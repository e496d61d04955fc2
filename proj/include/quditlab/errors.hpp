// errors.hpp
// Exception types shared across the library. Each maps to one failure
// contract of the public API.

#pragma once

#include <stdexcept>
#include <string>

namespace quditlab {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidState : Error {
    using Error::Error;
};
struct DimMismatch : Error {
    using Error::Error;
};
struct NotCommuting : Error {
    using Error::Error;
};
struct InvalidDimension : Error {
    using Error::Error;
};
struct InvalidIndex : Error {
    using Error::Error;
};
struct InvalidTable : Error {
    using Error::Error;
};
struct InvalidInput : Error {
    using Error::Error;
};
struct MissingCounts : Error {
    using Error::Error;
};
struct DegenerateBounds : Error {
    using Error::Error;
};
struct TrivialRegime : Error {
    using Error::Error;
};
struct IncompleteData : Error {
    using Error::Error;
};
struct Infeasible : Error {
    using Error::Error;
};
struct Unbounded : Error {
    using Error::Error;
};
struct NumericalFailure : Error {
    using Error::Error;
};

}  // namespace quditlab
