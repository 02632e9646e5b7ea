#pragma once

#include <stdexcept>
#include <string>

namespace tmesh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};
struct InvalidGeometry : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct NotDiagonalizable : Error {
    using Error::Error;
};
struct ConsistencyError : Error {
    using Error::Error;
};

}  // namespace tmesh
